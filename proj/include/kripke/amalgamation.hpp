#pragma once

#include "kripke/frame.hpp"
#include "kripke/logic.hpp"
#include "kripke/pmorphism.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kripke {

/// A cospan of surjective p-morphisms onto a shared base frame.
struct Cospan {
    PMorphism f0; // W0 -> V
    PMorphism f1; // W1 -> V
};

/// Throws InvalidInput unless both legs are surjective p-morphisms with the
/// same codomain.
void validate_cospan(const Cospan& c);

/// A solution for a cospan: surjections from a common apex closing the
/// square.  `route` names the solver that produced it.
struct Coamalgamation {
    Frame apex;
    PMorphism g0; // apex -> W0
    PMorphism g1; // apex -> W1
    std::string route;
};

/// Throws InvalidInput unless g0 and g1 are surjective p-morphisms from the
/// same apex, f0 g0 = f1 g1, and the apex lies in the logic.
void validate_coamalgamation(const Cospan& c, const Coamalgamation& a, const LogicSpec& logic);

/// Pullback route: the graph pullback of a cospan of p-morphisms always has
/// p-morphism projections, surjective when the legs are, so the cospan is
/// solved whenever the pullback frame lies in the logic; otherwise nullopt.
std::optional<Coamalgamation> coamalgamate_horn(const Cospan& c, const LogicSpec& logic);

/// Linear-order route: both legs must be surjections between finite linear
/// posets (chains up to relabeling).  Produces an apex chain with
/// |apex| = |dom f0| + |dom f1| - |cod|, by peeling one merge of f0 at a
/// time.  Throws InvalidInput when the inputs are not chain surjections.
Coamalgamation coamalgamate_chain(const PMorphism& f0, const PMorphism& f1);

/// Fiberwise pairing of two surjections s0 : A -> C, s1 : B -> C onto a
/// common finite set {0..base_size-1}: over each point the shorter fiber
/// repeats its last element, giving max(|s0^-1(c)|, |s1^-1(c)|) pairs whose
/// coordinate projections are onto.  Throws InvalidInput when a map is not
/// a surjection onto the base, BudgetExceeded when the result would exceed
/// size_cap.
std::vector<std::pair<int, int>> set_coamalgamation(const std::vector<int>& s0,
                                                    const std::vector<int>& s1, int base_size,
                                                    size_t size_cap);

/// Cluster-collapse route for preorder cospans: solve the posetal
/// reflection of the cospan in the logic with both cluster sizes capped at
/// one, then re-inflate each apex point into a cluster by fiberwise pairing,
/// capped by the logic's final/internal cluster-size bounds.  Soft failures
/// (reflected cospan unsolved, a one-sided empty fiber, or a cap overflow)
/// give nullopt.
std::optional<Coamalgamation> coamalgamate_reflect(const Cospan& c, const LogicSpec& logic);

using InnerSolver = std::function<std::optional<Coamalgamation>(const Cospan&, const LogicSpec&)>;

/// Pointed decomposition: for every pair of worlds with a common image the
/// cospan restricts to the cones over that pair; solving each restricted
/// cospan and summing the apexes solves the original, since every frame
/// condition in the vocabulary is cone-local.  nullopt when any piece fails.
std::optional<Coamalgamation> amalgamate_rooted_reduction(const Cospan& c, const LogicSpec& logic,
                                                          const InnerSolver& inner);

/// Exhaustive search over the logic's representatives ascending by size,
/// with a deterministic first hit.  nullopt means the complete candidate
/// list up to max_size is exhausted; BudgetExceeded means the search could
/// not be completed and says nothing about existence.
std::optional<Coamalgamation> coamalgamate_bruteforce(const Cospan& c, const LogicSpec& logic,
                                                      int max_size, size_t max_steps = 1000000);

/// Route pipeline.  strategy "auto" tries horn, chain (when all three
/// frames are linear posets), reflect, bruteforce up to max_size, and
/// finally the pointed decomposition with the same routes inside; the other
/// strategies ("horn", "chain", "reflect", "bruteforce", "sum") run a
/// single route.  Every returned solution is validated.
std::optional<Coamalgamation> coamalgamate(const Cospan& c, const LogicSpec& logic, int max_size,
                                           const std::string& strategy = "auto");

/// Systematic solvability report over every cospan of surjections between
/// rooted representatives of the logic up to size_bound.  Unsolved cospans
/// are listed, with the budget flag separating "search could not finish"
/// from "every candidate apex up to apex_bound failed"; neither is read as
/// a refutation of amalgamability.
struct AmalgamationAudit {
    LogicSpec logic;
    int size_bound = 0;
    int apex_bound = 0;
    long long cospans = 0;
    long long solved = 0;
    std::map<std::string, long long> solved_by_route;
    struct Unsolved {
        Cospan cospan;
        bool budget_exceeded = false;
        std::string note;
    };
    std::vector<Unsolved> unsolved;
};

AmalgamationAudit audit_amalgamability(const LogicSpec& logic, int size_bound,
                                       int apex_bound = -1);

} // namespace kripke
