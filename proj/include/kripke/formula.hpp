#pragma once

#include "kripke/frame.hpp"

#include <string>
#include <vector>

namespace kripke {

/// Modal formulas over propositional variables p1, p2, ...
///
/// Concrete syntax: ~ (not), & (and), | (or), -> (implies, right
/// associative), dia / box / boxp (prefix modalities; boxp x abbreviates
/// x & box x), true, false, parentheses.  Prefix operators bind tightest,
/// then &, then |, then ->.
///
/// Nodes are stored in a DAG; evaluation is bottom-up over world sets.
struct Formula {
    enum class Op { False, True, Var, Not, And, Or, Imp, Dia, Box };
    struct Node {
        Op op;
        int var = -1; // 0-based variable index for Op::Var
        int a = -1;   // child indices into nodes
        int b = -1;
    };
    std::vector<Node> nodes;
    int root = -1;
    int num_vars = 0; // 1 + highest variable index used
};

/// Parse the concrete syntax; errors report the byte offset of the
/// offending token.
Formula parse_formula(const std::string& text);

/// Worlds where the formula holds under the given valuation (one world
/// set per variable index).
Bits evaluate(const Frame& f, const Formula& phi, const std::vector<Bits>& valuation);

/// True when the formula holds at every world under every valuation.
/// Raises BudgetExceeded when 2^(num_vars * f.n) exceeds max_valuations.
bool frame_validates(const Frame& f, const Formula& phi, size_t max_valuations = 4096);

} // namespace kripke
