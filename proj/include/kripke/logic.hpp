#pragma once

#include "kripke/formula.hpp"
#include "kripke/frame.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kripke {

/// Base logics with their finite-frame conditions:
///   K      - no condition
///   K4     - transitive
///   S4     - reflexive transitive
///   S4.2   - reflexive transitive confluent
///   S4.3   - reflexive transitive locally linear
///   Grz    - partial order
///   Grz.3  - locally linear partial order
///   S5     - equivalence relation
///   GL     - irreflexive transitive
///   GL.3   - irreflexive transitive locally linear
///   Inconsistent - the empty frame only
enum class Base { K, K4, S4, S4_2, S4_3, Grz, Grz_3, S5, GL, GL_3, Inconsistent };

/// A base logic extended by bounded-parameter axioms.  Each bound is a
/// positive integer or absent (the trivial, unbounded case):
///   bd n - cone depth at most n
///   bw n - cone width (largest antichain of clusters) at most n
///   bf n - at most n final (depth-1) clusters per cone
///   be n - final clusters have at most n worlds
///   bi n - internal (depth >= 2) clusters have at most n worlds
/// Bounds are only meaningful over a transitive base; parse_logic rejects
/// them on K and on Inconsistent.
struct LogicSpec {
    Base base = Base::K;
    std::optional<int> bd, bw, bf, be, bi;

    bool operator==(const LogicSpec& o) const {
        return base == o.base && bd == o.bd && bw == o.bw && bf == o.bf && be == o.be && bi == o.bi;
    }
    bool operator!=(const LogicSpec& o) const { return !(*this == o); }
};

/// Parse e.g. "S4.2+bd2+be1+bi2", "GL.3+bd3", "inconsistent".  Only this
/// vocabulary is accepted; anything else raises InvalidInput.
LogicSpec parse_logic(const std::string& text);
std::string to_string(const LogicSpec& L);
std::string to_string(Base b);

/// Structural membership test for a finite frame.
bool frame_in_logic(const LogicSpec& L, const Frame& f);

/// Rewrite to a canonical form with the same finite frames: dotted bases
/// become S4/GL plus bounds (S4.2 = S4+bf1, S4.3 = S4+bw1, Grz = S4+be1+bi1,
/// S5 = S4+bd1, GL.3 = GL+bw1), and redundant bounds are dropped (depth-1
/// cones force bw/bf to 1 and have no internal clusters; irreflexive frames
/// have no clusters at all).  Membership is unchanged, which the tests
/// verify by enumeration.
LogicSpec normalize(const LogicSpec& L);

/// The logics with the amalgamation property (as a catalog of specs,
/// inconsistent logic included).  Membership testing is up to normalize().
const std::vector<LogicSpec>& regular_catalog();
bool is_regular(const LogicSpec& L);

/// The logics whose frame category is Barr-exact.
const std::vector<LogicSpec>& exact_catalog();
bool is_barr_exact(const LogicSpec& L);

// ---------------------------------------------------------------------------
// Axioms and semantic bound checks
// ---------------------------------------------------------------------------

/// Axiom texts (in the formula syntax) whose joint validity on a finite
/// frame characterizes the base, on top of K.
const std::vector<std::string>& base_axiom_texts(Base b);

/// All eleven bases in a fixed order (for table-driven tests).
const std::vector<Base>& all_bases();

/// The canonical frame whose avoidance defines the bound: bd n -> chain of
/// n+1, bw n -> fork of n+1, bf n -> n+1 isolated reflexive points,
/// be n -> cluster of n+1, bi n -> cluster of n+1 below a final point.
Frame bound_target(const std::string& which, int n);

/// Semantic route to the bound axioms: the bound "which n" holds on a
/// transitive frame iff no cone subreduces onto bound_target(which, n).
bool bound_via_subreduction(const Frame& f, const std::string& which, int n,
                            size_t max_steps = 1000000);

/// Largest antichain of the condensation poset of a transitive frame
/// (via the chain-cover dual, so polynomial in the frame size).
int cluster_width(const Frame& f);

} // namespace kripke
