#pragma once

#include "kripke/frame.hpp"
#include "kripke/pmorphism.hpp"
#include "kripke/product.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kripke {

/// A pair selection on a frame W: a table assigning to every pair of worlds
/// (a, b) a set of admissible pairs A_(a,b), subject to three axioms:
///   (1) a' in star(a) implies (a', a') in A_(a,a);
///   (2) (a', b') in A_(a,b) implies (b', a') in A_(b,a);
///   (3) (a', b') in A_(a,b) and (b', c') in A_(b,c) imply (a', c') in A_(a,c).
/// The table is stored explicitly: entry a * n + b is a bitset over ordered
/// pairs, with pair (a', b') at bit a' * n + b'.
struct PairSelection {
    Frame base;
    std::vector<Bits> table;

    bool contains(int a, int b, int ap, int bp) const {
        return table[static_cast<size_t>(a) * base.n + b].test(
            static_cast<size_t>(ap) * base.n + bp);
    }
    void insert(int a, int b, int ap, int bp) {
        table[static_cast<size_t>(a) * base.n + b].set(static_cast<size_t>(ap) * base.n + bp);
    }
};

/// Selection with every A_(a,b) = W x W; always valid.
PairSelection full_selection(const Frame& w);

/// Selection with every A_(a,b) = the diagonal; always valid.
PairSelection diagonal_selection(const Frame& w);

/// Which axiom failed and on which worlds.
struct SelectionViolation {
    int axiom = 0;  // 1, 2, or 3
    std::string text;
};

/// First violated axiom instance, if any.
std::optional<SelectionViolation> selection_violation(const PairSelection& a);

bool validate_pair_selection(const PairSelection& a);

/// For parallel p-morphisms g0, g1 : U -> W write pi(u) = (g0(u), g1(u)).
/// The admissible subframe U_A keeps the worlds u such that every y in
/// star(u) and y' in star(y) satisfy pi(y') in A_pi(y); it is up-closed.
Bits admissible_subframe(const PMorphism& g0, const PMorphism& g1, const PairSelection& a);

/// Outcome of the non-effectiveness test for a parallel pair and selection.
/// f_a is the coequalizer of the restrictions of g0, g1 to U_A; the verdict
/// is the conjunction of the two conditions below, and a true verdict means
/// the governing logic's frame category is not Barr exact.
struct WitnessReport {
    Bits u_a;                           // the admissible subframe
    bool u_minus_ua_nonempty = false;   // condition 1
    int sample_world = -1;              // a world outside U_A, if any
    PMorphism f_a;                      // W -> V_A
    bool coequalizer_merges = false;    // condition 2: f_a g0 = f_a g1 on all of U
    bool verdict = false;
};

WitnessReport non_effectiveness_witness(const PMorphism& g0, const PMorphism& g1,
                                        const PairSelection& a);

/// The equivalence relation X_A carved out of the depth-truncated product
/// W x W by a selection, together with the reflexivity and symmetry
/// exhibits of its construction:
///   r : W -> X_A      mediator of the identity cone (lands in X_A);
///   s : X_A -> X_A    mediator of the swapped-projection cone;
///   q0, q1 : X_A -> W the restricted projections.
struct SelectionEquivalence {
    ProductLevels levels;
    Bits x_a;
    Restriction sub;
    PMorphism q0, q1;
    PMorphism r;
    PMorphism s;
};

/// Requires w reflexive transitive, a valid selection, and depth at least
/// frame_depth(w) (otherwise the identity cone cannot mediate).
SelectionEquivalence equivalence_from_selection(const Frame& w, const PairSelection& a,
                                                int depth);

/// One built-in configuration reproducing a non-exactness argument.
struct ExactnessFixture {
    std::string name;
    PMorphism g0, g1;
    PairSelection selection;
    std::vector<int> expected_ua;  // worlds of U_A, ascending
    std::vector<int> expected_fa;  // the coequalizer map on W
};

/// The five configurations whose source frames no Barr-exact frame category
/// can contain: chain4, fork2, cluster3, cluster2-root, cluster3-final.
const std::vector<ExactnessFixture>& builtin_fixtures();

} // namespace kripke
