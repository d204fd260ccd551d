#pragma once

#include "kripke/frame.hpp"
#include "kripke/logic.hpp"
#include "kripke/pmorphism.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kripke {

// ---------------------------------------------------------------------------
// Finite categories
// ---------------------------------------------------------------------------

/// A finite category: objects {0, ..., num_objects-1}, a finite list of
/// arrows with source/target, an identity arrow per object, and a full
/// composition table.  compose_of[g][f] is the arrow g∘f when the pair is
/// composable (src(g) == dst(f)) and -1 otherwise.
///
/// Use make_category to build one with the laws checked, or one of the
/// shape helpers below.
struct FinCategory {
    struct Arrow {
        int src = 0;
        int dst = 0;
        std::string name;
    };

    int num_objects = 0;
    std::vector<Arrow> arrows;
    std::vector<int> identity;                // object -> arrow id
    std::vector<std::vector<int>> compose_of; // [g][f] -> arrow id or -1
    std::string name;

    int num_arrows() const { return static_cast<int>(arrows.size()); }

    /// g∘f; InvalidInput when the pair is not composable.
    int compose(int g, int f) const;

    /// Arrows c -> d in ascending id order (the canonical element order of
    /// the representable presheaves).
    std::vector<int> hom(int c, int d) const;
    bool hom_empty(int c, int d) const;
};

/// Validates identity and associativity laws; InvalidInput on violation.
FinCategory make_category(int num_objects, std::vector<FinCategory::Arrow> arrows,
                          std::vector<int> identity,
                          std::vector<std::vector<int>> compose_of, std::string name);

/// One-object category from a monoid multiplication table:
/// mult[a][b] = a·b, composition a∘b = a·b.  Laws validated.
FinCategory monoid_category(std::string name, const std::vector<std::string>& element_names,
                            const std::vector<std::vector<int>>& mult, int identity_index);

/// The poset {0 < 1 < ... < n-1} as a category: one arrow i -> j per i <= j.
FinCategory chain_poset_category(int n);

// Built-in monoids.  Element 0 is always the monoid identity.
FinCategory z2_mult_category(); // ({1, 0}, ·)
FinCategory z3_mult_category(); // ({1, 2, 0}, · mod 3)
FinCategory trivial_category(); // one element
FinCategory z2_add_category();  // ({0, 1}, + mod 2)

/// Lookup by CLI name: "z2-mult", "z3-mult", "trivial", "z2-add",
/// "chain-poset:<n>".  Unknown names raise InvalidInput.
FinCategory builtin_category(const std::string& name);

// ---------------------------------------------------------------------------
// Presheaves and natural transformations
// ---------------------------------------------------------------------------

/// A presheaf F on a FinCategory: a finite set F(c) = {0, ..., sizes[c]-1}
/// per object and, for each arrow h: d -> c, a function
/// F(h): F(c) -> F(d), stored as action[h] indexed by elements of F(dst h).
/// Contravariance: F(id) = id and F(g∘f) = F(f)∘F(g).
struct Presheaf {
    std::vector<int> sizes;
    std::vector<std::vector<int>> action; // per arrow: F(dst) -> F(src)

    int total() const;
};

/// First law violation as text, or nullopt when F is a valid presheaf on C.
std::optional<std::string> presheaf_violation(const FinCategory& c, const Presheaf& f);
void require_presheaf(const FinCategory& c, const Presheaf& f); // InvalidInput

/// The representable presheaf C[-, c]: component at e is hom(e, c) in
/// canonical order; action of h: d -> e is precomposition u -> u∘h.
Presheaf representable_presheaf(const FinCategory& c, int obj);

/// A natural transformation F -> G: a function per object.
struct NatTrans {
    std::vector<std::vector<int>> at; // per object: F(c) -> G(c)
};

std::optional<std::string> nat_trans_violation(const FinCategory& c, const Presheaf& f,
                                               const Presheaf& g, const NatTrans& a);
void require_nat_trans(const FinCategory& c, const Presheaf& f, const Presheaf& g,
                       const NatTrans& a); // InvalidInput

// ---------------------------------------------------------------------------
// Frames of elements
// ---------------------------------------------------------------------------

/// The frame of elements of a presheaf.  Worlds are pairs (c, x) with
/// x in F(c), laid out object-by-object in canonical element order;
/// (c, x) sees (d, y) exactly when some arrow h: d -> c has F(h)(x) = y,
/// and in strict mode additionally hom(c, d) must be empty.
///
/// The plain frame is always a preorder and the strict frame is always
/// irreflexive and transitive; both facts are re-checked on construction
/// (logic_error on failure, as they hold for every valid presheaf).
struct ElementsFrame {
    Frame frame;
    std::vector<int> object_of;  // world -> object
    std::vector<int> element_of; // world -> element index within F(object)
    std::vector<int> first_world; // object -> index of (object, 0)

    int world_of(int c, int x) const { return first_world[static_cast<size_t>(c)] + x; }
};

ElementsFrame elements_frame(const FinCategory& c, const Presheaf& f, bool strict);

/// The p-morphism induced on element frames by a natural transformation:
/// (c, x) -> (c, a_c(x)).  The transformation is validated (InvalidInput);
/// the induced map being a p-morphism is a theorem (logic_error otherwise).
PMorphism k_on_morphism(const FinCategory& c, const Presheaf& f, const Presheaf& g,
                        const NatTrans& a, bool strict);

// ---------------------------------------------------------------------------
// The frame-to-presheaf functor and the adjunction data
// ---------------------------------------------------------------------------

/// The presheaf of p-morphisms into a frame w: component at c is the list
/// of p-morphisms from the element frame of the representable at c into w
/// (in enumeration order); the action of h: d -> c precomposes with the
/// induced map on representables.
struct FramePresheaf {
    Frame base; // the frame the p-morphisms land in
    Presheaf presheaf;
    // maps[c][i] is the world map of the i-th p-morphism from
    // rep_frames[c].frame into base.
    std::vector<std::vector<std::vector<int>>> maps;
    std::vector<ElementsFrame> rep_frames; // per object: element frame of the representable
    std::vector<int> id_world;             // per object c: world (c, id_c) in rep_frames[c]

    /// Index of a world map in component c, or -1.
    int index_of(int c, const std::vector<int>& map) const;
};

/// BudgetExceeded when p-morphism enumeration overruns max_steps.
FramePresheaf frame_presheaf(const FinCategory& c, const Frame& w, bool strict,
                             size_t max_steps = 1u << 24);

/// Post-composition with a p-morphism phi: V -> W as a natural
/// transformation F(V) -> F(W); naturality is a theorem (logic_error).
NatTrans frame_presheaf_on_morphism(const FinCategory& c, const FramePresheaf& fv,
                                    const FramePresheaf& fw, const PMorphism& phi);

/// Counit at a frame w: the evaluation map from the frame of elements of
/// the presheaf of p-morphisms back to w, g -> g(id).  That it is a
/// p-morphism is a theorem (logic_error on failure).
struct Counit {
    FramePresheaf fw;  // presheaf of p-morphisms into w
    ElementsFrame kfw; // its frame of elements
    PMorphism epsilon; // kfw.frame -> w
};

Counit counit(const FinCategory& c, const Frame& w, bool strict,
              size_t max_steps = 1u << 24);

/// Unit at a presheaf f: per element x of F(c), the p-morphism from the
/// representable's element frame into the element frame of f given by
/// (e, u) -> (e, F(u)(x)).  Naturality and membership of each component
/// in the enumerated presheaf are theorems (logic_error on failure).
struct Unit {
    ElementsFrame kf;  // frame of elements of f
    FramePresheaf fkf; // presheaf of p-morphisms into that frame
    NatTrans eta;      // f -> fkf.presheaf
};

Unit unit(const FinCategory& c, const Presheaf& f, bool strict,
          size_t max_steps = 1u << 24);

/// Triangle identity on the frame side: counit after the induced map of
/// the unit is the identity on the frame of elements of f.
bool triangle_frame_identity(const FinCategory& c, const Presheaf& f, bool strict);

/// Triangle identity on the presheaf side: the functorial action of the
/// counit after the unit of the p-morphism presheaf is the identity.
bool triangle_presheaf_identity(const FinCategory& c, const Counit& cu, bool strict);
bool triangle_presheaf_identity(const FinCategory& c, const Frame& w, bool strict);

// ---------------------------------------------------------------------------
// Enumeration and the equivalence check
// ---------------------------------------------------------------------------

/// All presheaves on c with at most max_total elements in the sum of the
/// component sizes, in a deterministic order.  With up_to_iso, one
/// representative is kept per isomorphism class (canonical relabeling over
/// per-component permutations; intended for one-object categories, where
/// class counts stay small).
std::vector<Presheaf> enumerate_presheaves(const FinCategory& c, int max_total,
                                           bool up_to_iso);

/// True when no two worlds of the element frame of the p-morphism presheaf
/// share a counit image.  Direct construction; any category.
bool counit_injective(const FinCategory& c, const Frame& w, bool strict);

/// Closed-form version for the built-in monoids (selected by category
/// name), characterizing the p-morphisms from the representable's element
/// frame by their world tuples.  InvalidInput for other categories.
bool counit_injective_fast(const FinCategory& c, const Frame& w);

struct EquivalenceReport {
    bool ok = true;
    long long presheaves_checked = 0;  // element frames in the logic + frame triangle
    long long logic_frames_checked = 0; // counit bijective + presheaf triangle
    long long all_frames_checked = 0;   // counit injectivity sweep
    int all_frames_bound = 0;           // bound actually used for the sweep
    long long triangles_checked = 0;
    std::vector<std::string> violations;
};

/// Checks, for a category c and a logic l:
///   (a) the element frame of every presheaf with at most presheaf_bound
///       elements lies in l, and the frame-side triangle identity holds;
///   (b) for every l-frame with at most frame_bound worlds (up to
///       isomorphism), the counit is a bijective p-morphism and the
///       presheaf-side triangle identity holds;
///   (c) the counit is injective for EVERY frame up to frame_bound (full
///       labeled sweep; closed-form tuple check for the built-in monoids,
///       direct construction capped at size 3 otherwise).
/// Violations are reported as text; ok means none were found.
EquivalenceReport verify_equivalence(const FinCategory& c, const LogicSpec& l,
                                     int frame_bound, int presheaf_bound, bool strict);

} // namespace kripke
