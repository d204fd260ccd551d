#pragma once

#include <boost/dynamic_bitset.hpp>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kripke {

using Bits = boost::dynamic_bitset<>;

/// A finite Kripke frame: a set of worlds {0, ..., n-1} together with an
/// arbitrary binary accessibility relation.  adj[u].test(v) holds exactly
/// when u sees v (written u < v throughout the docs).
///
/// No structural condition (reflexivity, transitivity, ...) is imposed by
/// the type itself; operations that need one state it as a precondition.
struct Frame {
    int n = 0;
    std::vector<Bits> adj;

    Frame() = default;
    explicit Frame(int size);

    int size() const { return n; }
    bool has(int u, int v) const { return adj[static_cast<size_t>(u)].test(static_cast<size_t>(v)); }
    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    bool operator==(const Frame& o) const { return n == o.n && adj == o.adj; }
    bool operator!=(const Frame& o) const { return !(*this == o); }
};

// ---------------------------------------------------------------------------
// Structural predicates
// ---------------------------------------------------------------------------

bool is_reflexive(const Frame& f);
bool is_irreflexive(const Frame& f);
bool is_transitive(const Frame& f);
bool is_symmetric(const Frame& f);
bool is_antisymmetric(const Frame& f);
/// w < v1 and w < v2 imply v1 < v2 or v1 == v2 or v2 < v1.
bool is_locally_linear(const Frame& f);
/// Every pair of successors of a common world has a common successor.
bool is_confluent(const Frame& f);
bool is_equivalence(const Frame& f);
bool is_partial_order(const Frame& f);

/// Dispatch by property name.  Accepted names: reflexive, transitive,
/// irreflexive, confluent, locally-linear, antisymmetric,
/// equivalence-relation.  Unknown names raise InvalidInput.
bool check_property(const Frame& f, std::string_view name);

// ---------------------------------------------------------------------------
// Reachability
// ---------------------------------------------------------------------------

/// Immediate successors of w (one relation step).
Bits up_set(const Frame& f, int w);

/// Reflexive-transitive reachability set of w; equals up_set(f, w) plus w
/// when the frame is reflexive and transitive.
Bits star(const Frame& f, int w);

/// Union of star over a set of worlds.
Bits star_of_set(const Frame& f, const Bits& s);

/// True when s is closed under the relation (w in s and w < v imply v in s).
bool is_up_closed(const Frame& f, const Bits& s);

/// All up-closed subsets of the worlds, including the empty set and the
/// full set, ordered by (cardinality, lowest-world-first lexicographic).
/// Raises BudgetExceeded when more than max_count subsets exist.
std::vector<Bits> generated_subframes(const Frame& f, size_t max_count = 1u << 20);

/// True when some world reaches every world (star(w) = everything).
bool is_rooted(const Frame& f);

// ---------------------------------------------------------------------------
// Depth and clusters (transitive frames)
// ---------------------------------------------------------------------------

/// Length of the longest chain w = w1 < w2 < ... < wk with wi != w(i+1) and
/// never w(i+1) < wi.  Defined for transitive frames only (InvalidInput
/// otherwise); a world with no proper successors has depth 1.
int depth(const Frame& f, int w);

/// Maximum depth over all worlds; 0 for the empty frame.
int frame_depth(const Frame& f);

/// Worlds of depth at most k (transitive frames).
Bits depth_slice(const Frame& f, int k);

/// Partition of a transitive frame into clusters and irreflexive points.
/// A cluster is a maximal set of worlds related in both directions (each
/// member sees itself and every other member).  Irreflexive worlds that
/// are not part of any two-way loop stand alone and are marked with
/// cluster_of == -1.
struct ClusterPartition {
    std::vector<std::vector<int>> clusters; // sorted members, ordered by least member
    std::vector<int> cluster_of;            // world -> cluster index, or -1 for a lone irreflexive point
    std::vector<int> irreflexive_points;    // sorted
};

ClusterPartition clusters(const Frame& f);

// ---------------------------------------------------------------------------
// Subframes and sums
// ---------------------------------------------------------------------------

/// Frame induced on the worlds in s, together with the world map from new
/// indices to old ones (ascending).
struct Restriction {
    Frame frame;
    std::vector<int> worlds; // new index -> old index
};

Restriction restriction(const Frame& f, const Bits& s);

/// fs glued side by side with no relation across summands; offsets[i] is
/// the index shift of summand i.
struct DisjointSum {
    Frame frame;
    std::vector<int> offsets;
};

DisjointSum disjoint_sum(const std::vector<Frame>& fs);

// ---------------------------------------------------------------------------
// Basic constructors
// ---------------------------------------------------------------------------

/// n mutually related reflexive worlds (n >= 1).
Frame cluster(int n);

/// Reflexive transitive chain on n worlds: i < j iff i <= j.  World 0 is
/// the root (sees everything); depth of world i is n - i.
Frame chain(int n);

/// Strict chain on n worlds: i < j iff i < j (irreflexive, transitive).
Frame strict_chain(int n);

/// Copy of f with one new reflexive world appended (index f.n) that sees
/// every world.  Existing indices are unchanged.
Frame add_root(const Frame& f);

/// Copy of f with one new reflexive world appended (index f.n) seen by
/// every world.  Existing indices are unchanged.
Frame add_final(const Frame& f);

/// k disjoint copies of f (k >= 0; 0 gives the empty frame).
Frame copies(int k, const Frame& f);

/// n reflexive points below a fresh reflexive root: add_root(copies(n, chain(1))).
/// The root has index n.
Frame fork(int n);

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

/// Backtracking test for relation-preserving bijections.
bool isomorphic(const Frame& a, const Frame& b);

/// A label that is equal for two frames iff they are isomorphic.  Exact
/// (canonical form via permutation search); intended for small frames.
std::string canonical_key(const Frame& f);

} // namespace kripke
