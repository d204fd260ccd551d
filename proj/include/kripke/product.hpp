#pragma once

#include "kripke/logic.hpp"
#include "kripke/pmorphism.hpp"

#include <utility>
#include <vector>

namespace kripke {

/// Stepwise approximations X^0 (empty) through X^max_depth of the product
/// of two reflexive transitive frames, built depth layer by depth layer.
///
/// Each layer adds blocks: a block is an admissible pair (Y, G) where Y is
/// a nonempty set of coordinate pairs inside a single cluster pair of the
/// factors and G is a generated subframe of the previous level whose depth
/// is exactly one less than the block's.  The block contributes one fresh
/// world per pair in Y; fresh worlds form a cluster sitting immediately on
/// top of G.  Admissibility:
///   (i)   G is up-closed in the previous level, with the right depth;
///   (ii)  for every (a, b) in Y the successor sets satisfy
///         up(a) = proj0(Y) + p0(G) and up(b) = proj1(Y) + p1(G);
///   (iii) Y is not contained in the pair set of an existing block whose
///         cone equals G (otherwise nothing new is described).
///
/// World indices are stable across levels: level k is the frame induced on
/// the first level_sizes[k] worlds, and that prefix is up-closed.
struct ProductLevels {
    Frame w0, w1;
    int max_depth = 0;

    struct Block {
        int depth;                                  // level where it appears
        std::vector<std::pair<int, int>> pairs;     // Y, sorted
        std::vector<int> g_worlds;                  // G, sorted world ids
        int first_world;                            // first member's index
        Bits cone;                                  // members + G, over all worlds
    };
    std::vector<Block> blocks;

    Frame frame;                     // the deepest computed level
    std::vector<int> p0, p1;         // world -> factor worlds
    std::vector<int> world_block;    // world -> owning block
    std::vector<int> world_depth;    // world -> depth
    std::vector<int> level_sizes;    // |X^k| for k = 0..max_depth

    Frame level_frame(int k) const;
    /// Projection of level k onto factor side (0 or 1); validated.
    PMorphism projection(int k, int side) const;
};

/// One level as a standalone record: the frame, its projections, the
/// (identity-prefix) embedding of the previous level, and for each world
/// the block it descends from.
struct ProductLevel {
    int n = 0;
    Frame frame;
    PMorphism p0, p1;
    std::vector<int> prev_embedding; // previous level world -> this level world
    std::vector<int> world_block;    // genealogy: world -> block index
};

ProductLevel make_level(const ProductLevels& levels, int k);

/// Build the levels.  max_candidates caps the admissibility search and
/// max_worlds the total world count; both raise BudgetExceeded, they never
/// silently truncate.
ProductLevels product_levels(const Frame& w0, const Frame& w1, int max_depth,
                             size_t max_candidates = 4000000, int max_worlds = 200000);

/// A span over the two factors.
struct Cone {
    Frame apex;        // reflexive transitive
    PMorphism to_w0;
    PMorphism to_w1;
};

/// The map from the apex into the levels that commutes with both
/// projections, built cluster by cluster along the depth order.  Raises
/// InvalidInput when the apex is deeper than the computed levels.
PMorphism mediate(const Cone& cone, const ProductLevels& levels);

/// Exhaustive count of commuting p-morphisms from the apex into the
/// levels, by searching block assignments per apex cluster and validating
/// each complete assignment.  Independent oracle for mediate.
long long count_mediators(const Cone& cone, const ProductLevels& levels,
                          size_t max_steps = 10000000);

/// Like count_mediators with the apex allowed one depth layer beyond the
/// materialized levels: top-layer clusters may map to admissible blocks of
/// the next level, which are enumerated locally instead of materializing
/// that level.
long long count_mediators_with_frontier(const Cone& cone, const ProductLevels& levels,
                                        size_t max_steps = 10000000);

/// Keep exactly the worlds whose cone lies in L.  Keeps or drops whole
/// blocks; the kept set is up-closed, so the result is again a valid
/// stepwise structure over the same factors.
ProductLevels restrict_to_logic(const ProductLevels& levels, const LogicSpec& L);

} // namespace kripke
