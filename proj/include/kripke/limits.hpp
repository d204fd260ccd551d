#pragma once

#include "kripke/pmorphism.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace kripke {

/// The one-point reflexive frame: every frame has exactly one map into it.
Frame terminal_frame();

/// Equalizer of a parallel pair f, g : W -> V: the largest up-closed
/// subset of W on which f and g agree everywhere reachable, with its
/// inclusion.
struct Equalizer {
    Bits set;
    Restriction sub;
    PMorphism inclusion; // sub.frame -> W
};

Equalizer equalizer(const PMorphism& f, const PMorphism& g);

struct Coproduct {
    Frame frame;
    std::vector<PMorphism> injections;
};

Coproduct coproduct(const std::vector<Frame>& fs);

/// Coequalizer of a parallel pair f, g : U -> W: quotient of W by the
/// equivalence generated by f(u) ~ g(u), with the induced relation.  The
/// projection is checked to be a p-morphism on every call.
struct Coequalizer {
    Frame frame;
    PMorphism projection; // W -> frame
};

Coequalizer coequalizer(const PMorphism& f, const PMorphism& g);

/// Cokernel pair of f : W -> V: two pushout injections i0, i1 : V -> U.
/// U keeps one shared copy of the image and two copies of everything
/// else; worlds outside the image come first in the i1 copy and then in
/// the i0 copy.
struct CokernelPair {
    Frame frame;
    PMorphism i0;
    PMorphism i1;
};

CokernelPair cokernel_pair(const PMorphism& f);

/// Pushout of b : A -> B and c : A -> C, as the coequalizer of the two
/// coproduct legs.  Pushing f out along itself agrees with cokernel_pair
/// up to a relabeling, which the tests confirm.
struct Pushout {
    Frame frame;
    PMorphism from_b;
    PMorphism from_c;
};

Pushout pushout(const PMorphism& b, const PMorphism& c);

/// Pullback of f0 : W0 -> V and f1 : W1 -> V in the ambient category of
/// directed graphs: pairs with equal images, coordinatewise relation.
/// The projections are p-morphisms when f0 and f1 are surjective, but not
/// in general; each is present only when it validates, and the failure
/// reason is kept otherwise.
struct DgrphPullback {
    Frame frame;
    std::vector<std::pair<int, int>> worlds; // index -> (w0, w1)
    std::optional<PMorphism> p0;
    std::optional<PMorphism> p1;
    std::string p0_failure;
    std::string p1_failure;
};

DgrphPullback dgrph_pullback(const PMorphism& f0, const PMorphism& f1);

/// Pullback of a surjection s : W -> V along an injection m : A -> V:
/// the inverse image of m's image, a genuine frame pullback.
struct InverseImage {
    Bits set;          // subset of W
    Restriction sub;
    PMorphism to_w;    // sub.frame -> W (inclusion)
    PMorphism to_a;    // sub.frame -> A
};

InverseImage pullback_along_injective(const PMorphism& s, const PMorphism& m);

} // namespace kripke
