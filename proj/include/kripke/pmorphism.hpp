#pragma once

#include "kripke/frame.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kripke {

/// A validated p-morphism between frames.  Construct through
/// make_pmorphism so that the two defining conditions are checked:
///   stability: u < v in dom implies map(u) < map(v) in cod;
///   openness:  map(u) < y in cod implies some v with u < v, map(v) = y.
struct PMorphism {
    Frame dom;
    Frame cod;
    std::vector<int> map;

    int operator()(int w) const { return map[static_cast<size_t>(w)]; }
    bool operator==(const PMorphism& o) const {
        return dom == o.dom && cod == o.cod && map == o.map;
    }
};

/// Check the p-morphism conditions without constructing.  When the answer
/// is negative and why != nullptr, *why describes one offending world.
bool is_pmorphism(const Frame& dom, const Frame& cod, const std::vector<int>& map,
                  std::string* why = nullptr);

/// Validate and construct; raises InvalidInput with the offending world or
/// edge when the map is not a p-morphism.
PMorphism make_pmorphism(Frame dom, Frame cod, std::vector<int> map);

PMorphism identity(const Frame& f);

/// g after f (f applied first); domains must match.
PMorphism compose(const PMorphism& g, const PMorphism& f);

bool is_surjective(const PMorphism& f);
bool is_injective(const PMorphism& f);

/// Surjection-followed-by-inclusion factorization of f.  The image is a
/// generated subframe of the codomain.
struct ImageFactorization {
    Bits image;            // subset of cod worlds
    PMorphism surjection;  // dom -> image frame
    PMorphism inclusion;   // image frame -> cod
};

ImageFactorization image_factorization(const PMorphism& f);

/// All p-morphisms dom -> cod in lexicographic order of their map vectors.
/// Raises BudgetExceeded when the backtracking search would visit more
/// than max_steps nodes.
std::vector<PMorphism> enumerate_pmorphisms(const Frame& dom, const Frame& cod,
                                            bool surjective_only = false,
                                            size_t max_steps = 1000000);

/// A subreduction witness: an up-closed subset of the source together with
/// a surjective p-morphism from the induced subframe onto the target.
struct Subreduction {
    Bits domain_set;       // up-closed subset of the source frame
    Restriction sub;       // frame induced on domain_set
    PMorphism onto;        // sub.frame -> target, surjective
};

/// First witness (by subset order, then lexicographic map order) that the
/// source subreduces onto the target, if any.
std::optional<Subreduction> subreduces(const Frame& source, const Frame& target,
                                       size_t max_steps = 1000000);

/// Decide monomorphism status by searching for a distinct parallel pair
/// h0, h1 : T -> dom with f.h0 = f.h1, over probe frames T of size up to
/// probe_size.  Probes range over rooted frames, transitive when both
/// endpoints of f are transitive (a merged pair restricts to the cone of
/// a world where the maps differ, so rooted probes lose nothing).
bool is_monomorphism_oracle(const PMorphism& f, int probe_size, size_t max_steps = 50000000);

/// Collapse each cluster of a transitive frame to a point.  Returns the
/// resulting partial order together with the collapse p-morphism.
std::pair<Frame, PMorphism> posetal_reflection(const Frame& f);

} // namespace kripke
