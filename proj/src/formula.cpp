#include "kripke/formula.hpp"
#include "kripke/errors.hpp"

#include <cctype>

namespace kripke {

namespace {

struct Token {
    enum class Kind { Var, True, False, Not, And, Or, Imp, Dia, Box, Boxp, LParen, RParen, End };
    Kind kind;
    int var = -1;   // for Var
    size_t offset;  // byte offset in the input
};

[[noreturn]] void fail(size_t offset, const std::string& msg) {
    throw InvalidInput("offset " + std::to_string(offset) + ": " + msg);
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        size_t start = i;
        if (c == '~') { out.push_back({Token::Kind::Not, -1, start}); ++i; continue; }
        if (c == '&') { out.push_back({Token::Kind::And, -1, start}); ++i; continue; }
        if (c == '|') { out.push_back({Token::Kind::Or, -1, start}); ++i; continue; }
        if (c == '(') { out.push_back({Token::Kind::LParen, -1, start}); ++i; continue; }
        if (c == ')') { out.push_back({Token::Kind::RParen, -1, start}); ++i; continue; }
        if (c == '-') {
            if (i + 1 < text.size() && text[i + 1] == '>') {
                out.push_back({Token::Kind::Imp, -1, start});
                i += 2;
                continue;
            }
            fail(start, "expected '->' after '-'");
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])))) ++j;
            std::string word = text.substr(i, j - i);
            if (word == "dia") out.push_back({Token::Kind::Dia, -1, start});
            else if (word == "box") out.push_back({Token::Kind::Box, -1, start});
            else if (word == "boxp") out.push_back({Token::Kind::Boxp, -1, start});
            else if (word == "true") out.push_back({Token::Kind::True, -1, start});
            else if (word == "false") out.push_back({Token::Kind::False, -1, start});
            else if (word.size() >= 2 && word[0] == 'p') {
                int v = 0;
                bool digits = true;
                for (size_t k = 1; k < word.size(); ++k) {
                    if (!std::isdigit(static_cast<unsigned char>(word[k]))) { digits = false; break; }
                    v = v * 10 + (word[k] - '0');
                    if (v > 64) fail(start, "variable index too large in '" + word + "'");
                }
                if (!digits || v == 0) fail(start, "unknown token '" + word + "'");
                out.push_back({Token::Kind::Var, v - 1, start});
            } else {
                fail(start, "unknown token '" + word + "'");
            }
            i = j;
            continue;
        }
        fail(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::End, -1, text.size()});
    return out;
}

struct Parser {
    const std::vector<Token>& toks;
    size_t pos = 0;
    Formula out;

    const Token& peek() const { return toks[pos]; }
    Token take() { return toks[pos++]; }

    int add(Formula::Op op, int var, int a, int b) {
        out.nodes.push_back({op, var, a, b});
        return static_cast<int>(out.nodes.size()) - 1;
    }

    int parse_imp() {
        int lhs = parse_or();
        if (peek().kind == Token::Kind::Imp) {
            take();
            int rhs = parse_imp(); // right associative
            return add(Formula::Op::Imp, -1, lhs, rhs);
        }
        return lhs;
    }

    int parse_or() {
        int lhs = parse_and();
        while (peek().kind == Token::Kind::Or) {
            take();
            int rhs = parse_and();
            lhs = add(Formula::Op::Or, -1, lhs, rhs);
        }
        return lhs;
    }

    int parse_and() {
        int lhs = parse_unary();
        while (peek().kind == Token::Kind::And) {
            take();
            int rhs = parse_unary();
            lhs = add(Formula::Op::And, -1, lhs, rhs);
        }
        return lhs;
    }

    int parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
        case Token::Kind::Not: take(); return add(Formula::Op::Not, -1, parse_unary(), -1);
        case Token::Kind::Dia: take(); return add(Formula::Op::Dia, -1, parse_unary(), -1);
        case Token::Kind::Box: take(); return add(Formula::Op::Box, -1, parse_unary(), -1);
        case Token::Kind::Boxp: {
            take();
            int body = parse_unary();
            int boxed = add(Formula::Op::Box, -1, body, -1);
            return add(Formula::Op::And, -1, body, boxed);
        }
        default: return parse_atom();
        }
    }

    int parse_atom() {
        Token t = take();
        switch (t.kind) {
        case Token::Kind::Var:
            out.num_vars = std::max(out.num_vars, t.var + 1);
            return add(Formula::Op::Var, t.var, -1, -1);
        case Token::Kind::True: return add(Formula::Op::True, -1, -1, -1);
        case Token::Kind::False: return add(Formula::Op::False, -1, -1, -1);
        case Token::Kind::LParen: {
            int inner = parse_imp();
            if (peek().kind != Token::Kind::RParen) fail(peek().offset, "expected ')'");
            take();
            return inner;
        }
        case Token::Kind::End: fail(t.offset, "unexpected end of formula");
        default: fail(t.offset, "expected a variable, constant, prefix operator, or '('");
        }
    }
};

} // namespace

Formula parse_formula(const std::string& text) {
    std::vector<Token> toks = tokenize(text);
    Parser p{toks, 0, {}};
    p.out.root = p.parse_imp();
    if (p.peek().kind != Token::Kind::End)
        fail(p.peek().offset, "unexpected trailing input");
    return p.out;
}

Bits evaluate(const Frame& f, const Formula& phi, const std::vector<Bits>& valuation) {
    if (valuation.size() < static_cast<size_t>(phi.num_vars))
        throw InvalidInput("valuation provides " + std::to_string(valuation.size()) +
                           " variables, formula uses " + std::to_string(phi.num_vars));
    size_t n = static_cast<size_t>(f.n);
    Bits all(n);
    all.set();
    std::vector<Bits> val(phi.nodes.size());
    for (size_t i = 0; i < phi.nodes.size(); ++i) {
        const Formula::Node& node = phi.nodes[i];
        switch (node.op) {
        case Formula::Op::False: val[i] = Bits(n); break;
        case Formula::Op::True: val[i] = all; break;
        case Formula::Op::Var: val[i] = valuation[static_cast<size_t>(node.var)]; break;
        case Formula::Op::Not: val[i] = all - val[static_cast<size_t>(node.a)]; break;
        case Formula::Op::And:
            val[i] = val[static_cast<size_t>(node.a)] & val[static_cast<size_t>(node.b)];
            break;
        case Formula::Op::Or:
            val[i] = val[static_cast<size_t>(node.a)] | val[static_cast<size_t>(node.b)];
            break;
        case Formula::Op::Imp:
            val[i] = (all - val[static_cast<size_t>(node.a)]) | val[static_cast<size_t>(node.b)];
            break;
        case Formula::Op::Dia: {
            Bits r(n);
            const Bits& x = val[static_cast<size_t>(node.a)];
            for (size_t w = 0; w < n; ++w)
                if (f.adj[w].intersects(x)) r.set(w);
            val[i] = std::move(r);
            break;
        }
        case Formula::Op::Box: {
            Bits r(n);
            const Bits& x = val[static_cast<size_t>(node.a)];
            for (size_t w = 0; w < n; ++w)
                if (f.adj[w].is_subset_of(x)) r.set(w);
            val[i] = std::move(r);
            break;
        }
        }
    }
    return val[static_cast<size_t>(phi.root)];
}

namespace {

// Fast path for frames with at most 32 worlds: world sets as plain words.
bool validates_small(const Frame& f, const Formula& phi) {
    int n = f.n;
    uint32_t all = n == 32 ? 0xffffffffu : ((1u << n) - 1u);
    std::vector<uint32_t> rows(static_cast<size_t>(n), 0);
    for (int w = 0; w < n; ++w) {
        const Bits& row = f.adj[static_cast<size_t>(w)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
            rows[static_cast<size_t>(w)] |= 1u << v;
    }
    int vars = phi.num_vars;
    std::vector<uint32_t> val(phi.nodes.size());
    std::vector<uint32_t> assignment(static_cast<size_t>(std::max(vars, 1)), 0);
    uint64_t combos = uint64_t{1} << (static_cast<uint64_t>(vars) * static_cast<uint64_t>(n));
    for (uint64_t code = 0; code < combos; ++code) {
        uint64_t rem = code;
        for (int v = 0; v < vars; ++v) {
            assignment[static_cast<size_t>(v)] = static_cast<uint32_t>(rem & all);
            rem >>= n;
        }
        for (size_t i = 0; i < phi.nodes.size(); ++i) {
            const Formula::Node& node = phi.nodes[i];
            switch (node.op) {
            case Formula::Op::False: val[i] = 0; break;
            case Formula::Op::True: val[i] = all; break;
            case Formula::Op::Var: val[i] = assignment[static_cast<size_t>(node.var)]; break;
            case Formula::Op::Not: val[i] = all & ~val[static_cast<size_t>(node.a)]; break;
            case Formula::Op::And: val[i] = val[static_cast<size_t>(node.a)] & val[static_cast<size_t>(node.b)]; break;
            case Formula::Op::Or: val[i] = val[static_cast<size_t>(node.a)] | val[static_cast<size_t>(node.b)]; break;
            case Formula::Op::Imp: val[i] = (all & ~val[static_cast<size_t>(node.a)]) | val[static_cast<size_t>(node.b)]; break;
            case Formula::Op::Dia: {
                uint32_t x = val[static_cast<size_t>(node.a)];
                uint32_t r = 0;
                for (int w = 0; w < n; ++w)
                    if (rows[static_cast<size_t>(w)] & x) r |= 1u << w;
                val[i] = r;
                break;
            }
            case Formula::Op::Box: {
                uint32_t x = val[static_cast<size_t>(node.a)];
                uint32_t r = 0;
                for (int w = 0; w < n; ++w)
                    if ((rows[static_cast<size_t>(w)] & ~x) == 0) r |= 1u << w;
                val[i] = r;
                break;
            }
            }
        }
        if (val[static_cast<size_t>(phi.root)] != all) return false;
    }
    return true;
}

} // namespace

bool frame_validates(const Frame& f, const Formula& phi, size_t max_valuations) {
    if (f.n == 0) return true;
    uint64_t bits = static_cast<uint64_t>(phi.num_vars) * static_cast<uint64_t>(f.n);
    if (bits >= 63 || (uint64_t{1} << bits) > max_valuations)
        throw BudgetExceeded("formula check needs 2^" + std::to_string(bits) +
                             " valuations, budget is " + std::to_string(max_valuations));
    if (f.n <= 32) return validates_small(f, phi);
    // General path: enumerate valuations as bit sets.
    std::vector<Bits> valuation(static_cast<size_t>(std::max(phi.num_vars, 1)),
                                Bits(static_cast<size_t>(f.n)));
    uint64_t combos = uint64_t{1} << bits;
    Bits all(static_cast<size_t>(f.n));
    all.set();
    for (uint64_t code = 0; code < combos; ++code) {
        uint64_t rem = code;
        for (int v = 0; v < phi.num_vars; ++v) {
            Bits& b = valuation[static_cast<size_t>(v)];
            for (int w = 0; w < f.n; ++w) {
                if (rem & 1) b.set(static_cast<size_t>(w)); else b.reset(static_cast<size_t>(w));
                rem >>= 1;
            }
        }
        if (evaluate(f, phi, valuation) != all) return false;
    }
    return true;
}

} // namespace kripke
