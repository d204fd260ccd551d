#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kripke/enumeration.hpp"
#include "kripke/errors.hpp"
#include "kripke/formula.hpp"

using namespace kripke;

namespace {

Bits bits(int n, std::initializer_list<int> members) {
    Bits b(static_cast<size_t>(n));
    for (int m : members) b.set(static_cast<size_t>(m));
    return b;
}

int offset_of_error(const std::string& text) {
    try {
        parse_formula(text);
        return -1;
    } catch (const InvalidInput& e) {
        std::string msg = e.what();
        size_t at = msg.find("offset ");
        REQUIRE(at != std::string::npos);
        return std::stoi(msg.substr(at + 7));
    }
}

} // namespace

TEST_CASE("parsing accepts the documented syntax") {
    CHECK_NOTHROW(parse_formula("p1"));
    CHECK_NOTHROW(parse_formula("~p1 & p2 | p3 -> true"));
    CHECK_NOTHROW(parse_formula("box(box(p1 -> box p1) -> p1) -> p1"));
    CHECK_NOTHROW(parse_formula("dia dia p1 -> dia p1"));
    CHECK_NOTHROW(parse_formula("boxp p1"));
    CHECK_NOTHROW(parse_formula("false"));
    CHECK(parse_formula("p3").num_vars == 3);
    CHECK(parse_formula("p1 & p2").num_vars == 2);
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK(offset_of_error("") >= 0);
    CHECK(offset_of_error("p") == 0);
    CHECK(offset_of_error("p1 &") == 4);
    CHECK(offset_of_error("p1 & & p2") == 5);
    CHECK(offset_of_error("(p1") == 3);
    CHECK(offset_of_error("p1)") == 2);
    CHECK(offset_of_error("p0") == 0);
    CHECK(offset_of_error("p1 - p2") == 3);
}

TEST_CASE("precedence and associativity") {
    // -> is right associative: a -> b -> c == a -> (b -> c).
    Formula right = parse_formula("false -> (false -> false)");
    Formula flat = parse_formula("false -> false -> false");
    Frame f = chain(1);
    CHECK(evaluate(f, flat, {}) == evaluate(f, right, {}));
    // & binds tighter than |, | tighter than ->.
    Frame two(2);
    two.add_edge(0, 0);
    two.add_edge(1, 1);
    std::vector<Bits> val = {bits(2, {0}), bits(2, {1}), bits(2, {})};
    Formula mix = parse_formula("p1 & p2 | p3");
    Formula expl = parse_formula("(p1 & p2) | p3");
    CHECK(evaluate(two, mix, val) == evaluate(two, expl, val));
    // Prefix binds tightest: box p1 & p2 == (box p1) & p2.
    Formula pre = parse_formula("box p1 & p2");
    Formula pre_expl = parse_formula("(box p1) & p2");
    CHECK(evaluate(two, pre, val) == evaluate(two, pre_expl, val));
}

TEST_CASE("evaluation matches the Kripke semantics by hand") {
    // chain(3): world 0 sees {0,1,2}, 1 sees {1,2}, 2 sees {2}.
    Frame f = chain(3);
    std::vector<Bits> val = {bits(3, {2})};  // p1 holds only at the top
    Formula dia1 = parse_formula("dia p1");
    CHECK(evaluate(f, dia1, val) == bits(3, {0, 1, 2}));
    Formula box1 = parse_formula("box p1");
    CHECK(evaluate(f, box1, val) == bits(3, {2}));
    Formula not1 = parse_formula("~p1");
    CHECK(evaluate(f, not1, val) == bits(3, {0, 1}));
    Formula imp = parse_formula("p1 -> false");
    CHECK(evaluate(f, imp, val) == bits(3, {0, 1}));
    Formula t = parse_formula("true");
    CHECK(evaluate(f, t, {}) == bits(3, {0, 1, 2}));
    // boxp x == x & box x.
    Formula bp = parse_formula("boxp p1");
    Formula bp_expl = parse_formula("p1 & box p1");
    CHECK(evaluate(f, bp, val) == evaluate(f, bp_expl, val));
}

TEST_CASE("evaluate rejects wrong valuation arity") {
    Formula phi = parse_formula("p2");
    CHECK_THROWS_AS(evaluate(chain(2), phi, {bits(2, {})}), InvalidInput);
}

TEST_CASE("the T axiom characterizes reflexivity") {
    Formula t_axiom = parse_formula("box p1 -> p1");
    for (int n = 1; n <= 3; ++n) {
        for_each_frame(n, [&](const Frame& f) {
            CHECK(frame_validates(f, t_axiom) == is_reflexive(f));
            return true;
        });
    }
}

TEST_CASE("the 4 axiom characterizes transitivity") {
    Formula four = parse_formula("box p1 -> box box p1");
    for (int n = 1; n <= 3; ++n) {
        for_each_frame(n, [&](const Frame& f) {
            CHECK(frame_validates(f, four) == is_transitive(f));
            return true;
        });
    }
}

TEST_CASE("the B axiom characterizes symmetry") {
    Formula b = parse_formula("p1 -> box dia p1");
    for (int n = 1; n <= 3; ++n) {
        for_each_frame(n, [&](const Frame& f) {
            CHECK(frame_validates(f, b) == is_symmetric(f));
            return true;
        });
    }
}

TEST_CASE("the characteristic partial-order axiom separates posets from clusters") {
    // On preorders this axiom holds exactly when every cluster is a point.
    Formula grz = parse_formula("box(box(p1 -> box p1) -> p1) -> p1");
    CHECK(frame_validates(chain(3), grz));
    CHECK(frame_validates(fork(2), grz));
    CHECK(!frame_validates(cluster(2), grz));
    CHECK(!frame_validates(add_root(cluster(2)), grz));
    for_each_preorder(3, [&](const Frame& f) {
        CHECK(frame_validates(f, grz) == is_partial_order(f));
        return true;
    });
}

TEST_CASE("validation budget raises instead of truncating") {
    Formula phi = parse_formula("p1 & p2 & p3");
    // 2^(3 vars * 5 worlds) = 2^15 > 4096.
    CHECK_THROWS_AS(frame_validates(cluster(5), phi), BudgetExceeded);
    CHECK_NOTHROW(frame_validates(cluster(5), phi, 1u << 16));
}
