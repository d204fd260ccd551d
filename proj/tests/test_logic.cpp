#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kripke/enumeration.hpp"
#include "kripke/errors.hpp"
#include "kripke/formula.hpp"
#include "kripke/logic.hpp"

#include <set>

using namespace kripke;

namespace {

LogicSpec L(const std::string& s) { return parse_logic(s); }

} // namespace

TEST_CASE("parse_logic round-trips through to_string") {
    for (const char* text : {"K", "K4", "S4", "S4.2", "S4.3", "Grz", "Grz.3", "S5", "GL",
                             "GL.3", "inconsistent", "S4+bd2", "S4.2+bd2+be1+bi2",
                             "GL.3+bd3", "S5+be2", "S4+bd1+bw1+bf1+be2"}) {
        LogicSpec spec = parse_logic(text);
        CHECK(parse_logic(to_string(spec)) == spec);
    }
    CHECK(to_string(L("S4.2+bd2+be1+bi2")) == "S4.2+bd2+be1+bi2");
}

TEST_CASE("parse_logic rejects junk and misplaced bounds") {
    CHECK_THROWS_AS(parse_logic("S6"), InvalidInput);
    CHECK_THROWS_AS(parse_logic(""), InvalidInput);
    CHECK_THROWS_AS(parse_logic("S4+bd0"), InvalidInput);
    CHECK_THROWS_AS(parse_logic("S4+bq2"), InvalidInput);
    CHECK_THROWS_AS(parse_logic("K+bd2"), InvalidInput);
    CHECK_THROWS_AS(parse_logic("inconsistent+bd1"), InvalidInput);
    CHECK_THROWS_AS(parse_logic("S4+bd2+bd3"), InvalidInput);
}

TEST_CASE("frame_in_logic agrees with the structural predicates") {
    CHECK(frame_in_logic(L("K"), strict_chain(3)));
    CHECK(frame_in_logic(L("K4"), strict_chain(3)));
    CHECK(!frame_in_logic(L("S4"), strict_chain(3)));
    CHECK(frame_in_logic(L("S4"), fork(2)));
    CHECK(!frame_in_logic(L("S4.3"), fork(2)));
    CHECK(frame_in_logic(L("S4.2"), add_final(fork(2))));
    CHECK(frame_in_logic(L("S4.3"), chain(4)));
    CHECK(frame_in_logic(L("Grz"), chain(4)));
    CHECK(!frame_in_logic(L("Grz"), cluster(2)));
    CHECK(frame_in_logic(L("S5"), cluster(4)));
    CHECK(!frame_in_logic(L("S5"), chain(2)));
    CHECK(frame_in_logic(L("GL"), strict_chain(3)));
    CHECK(frame_in_logic(L("GL.3"), strict_chain(3)));
    CHECK(!frame_in_logic(L("GL"), chain(1)));
    CHECK(frame_in_logic(L("inconsistent"), Frame(0)));
    CHECK(!frame_in_logic(L("inconsistent"), chain(1)));
    // Bounds.
    CHECK(frame_in_logic(L("S4+bd2"), chain(2)));
    CHECK(!frame_in_logic(L("S4+bd2"), chain(3)));
    CHECK(frame_in_logic(L("S4+bw2"), fork(2)));
    CHECK(!frame_in_logic(L("S4+bw2"), fork(3)));
    CHECK(frame_in_logic(L("S5+be2"), disjoint_sum({cluster(2), cluster(1)}).frame));
    CHECK(!frame_in_logic(L("S5+be2"), cluster(3)));
    // In add_final(cluster(2)) the 2-cluster sits at depth 2 (internal);
    // in add_root(cluster(2)) it is the final cluster of the cone.
    CHECK(frame_in_logic(L("S4+bi1"), add_final(cluster(2))) == false);
    CHECK(frame_in_logic(L("S4+bi2"), add_final(cluster(2))));
    CHECK(frame_in_logic(L("S4+bi1"), add_root(cluster(2))));
    CHECK(frame_in_logic(L("S4+be1"), add_root(cluster(2))) == false);
    CHECK(frame_in_logic(L("S4+be1"), add_final(cluster(2))));
}

TEST_CASE("the bf bound counts final clusters per cone, not globally") {
    // Two disjoint reflexive points: each cone has one final cluster.
    Frame two = copies(2, chain(1));
    CHECK(frame_in_logic(L("S4+bf1"), two));
    // A fork has one cone with two final clusters.
    CHECK(!frame_in_logic(L("S4+bf1"), fork(2)));
    CHECK(frame_in_logic(L("S4+bf2"), fork(2)));
}

TEST_CASE("normalize rewrites dotted bases to bounds") {
    CHECK(normalize(L("S4.2")) == L("S4+bf1"));
    // Width 1 forces a unique final cluster, so bf1 is set explicitly.
    CHECK(normalize(L("S4.3")) == L("S4+bw1+bf1"));
    CHECK(normalize(L("Grz")) == L("S4+be1+bi1"));
    // Depth 1 forces width and final-cluster count 1 and bans internal clusters.
    CHECK(normalize(L("S5")) == L("S4+bd1+bw1+bf1"));
    CHECK(normalize(L("GL.3")) == L("GL+bw1"));
    CHECK(normalize(L("Grz.3")) == L("S4+bw1+bf1+be1+bi1"));
    CHECK(normalize(L("S5+be2")) == L("S4+bd1+bw1+bf1+be2"));
    CHECK(normalize(L("K")) == L("K"));
    CHECK(normalize(L("GL")) == L("GL"));
    // Cluster bounds are meaningless on irreflexive frames and are dropped.
    CHECK(normalize(L("GL+be2+bi1")) == L("GL"));
    // Idempotent on the whole vocabulary we use elsewhere.
    for (const LogicSpec& spec : regular_catalog())
        CHECK(normalize(normalize(spec)) == normalize(spec));
}

TEST_CASE("normalize preserves membership on every frame up to size 4") {
    std::vector<LogicSpec> specs;
    for (const char* text : {"S4.2", "S4.3", "Grz", "Grz.3", "S5", "GL.3", "S5+be2",
                             "Grz.3+bd2", "S4.2+bd2+be1+bi2", "S4+bw2+bi1"})
        specs.push_back(L(text));
    for (int n = 0; n <= 4; ++n) {
        for_each_frame(n, [&](const Frame& f) {
            for (const LogicSpec& spec : specs)
                CHECK(frame_in_logic(spec, f) == frame_in_logic(normalize(spec), f));
            return true;
        });
    }
}

TEST_CASE("catalog sizes and containment") {
    CHECK(regular_catalog().size() == 50);
    CHECK(exact_catalog().size() == 5);
    for (const LogicSpec& spec : exact_catalog()) {
        CHECK(is_barr_exact(spec));
        CHECK(is_regular(spec));
    }
    for (const LogicSpec& spec : regular_catalog()) CHECK(is_regular(spec));
    // Exactly five of the regular catalog are exact.
    int exact = 0;
    for (const LogicSpec& spec : regular_catalog())
        if (is_barr_exact(spec)) ++exact;
    CHECK(exact == 5);
    // Membership is up to normalization.
    CHECK(is_regular(L("S4+bd1")));       // = S5
    CHECK(is_barr_exact(L("S4+bd1+be1")));  // = S5+be1
    CHECK(is_regular(L("S4")));
    CHECK(is_regular(L("Grz")));          // = S4+be1+bi1
    CHECK(!is_regular(L("S4.3")));
    CHECK(!is_regular(L("K4")));
    CHECK(!is_barr_exact(L("S4.3")));
    CHECK(!is_barr_exact(L("Grz")));
}

TEST_CASE("the five exact logics are the expected ones") {
    std::set<std::string> names;
    for (const LogicSpec& spec : exact_catalog()) names.insert(to_string(normalize(spec)));
    std::set<std::string> expect = {
        to_string(normalize(L("S4.2+bd2+be1+bi1"))),
        to_string(normalize(L("S4.2+bd2+be1+bi2"))),
        to_string(normalize(L("S5+be1"))),
        to_string(normalize(L("S5+be2"))),
        to_string(normalize(L("inconsistent"))),
    };
    CHECK(names == expect);
}

TEST_CASE("base axioms characterize the bases on frames up to size 4") {
    // Collect parsed axioms once.
    for (Base b : all_bases()) {
        if (b == Base::Inconsistent) continue;
        std::vector<Formula> axioms;
        for (const std::string& text : base_axiom_texts(b))
            axioms.push_back(parse_formula(text));
        LogicSpec spec{b, {}, {}, {}, {}, {}};
        for (int n = 0; n <= 3; ++n) {
            for_each_frame(n, [&](const Frame& f) {
                bool valid = true;
                for (const Formula& ax : axioms)
                    if (!frame_validates(f, ax, 1u << 18)) { valid = false; break; }
                CHECK(valid == frame_in_logic(spec, f));
                return true;
            });
        }
    }
}

TEST_CASE("inconsistent logic validates false and has only the empty frame") {
    const std::vector<std::string>& texts = base_axiom_texts(Base::Inconsistent);
    REQUIRE(!texts.empty());
    Formula falsum = parse_formula(texts[0]);
    CHECK(frame_validates(Frame(0), falsum));
    CHECK(!frame_validates(chain(1), falsum));
}

TEST_CASE("bound targets have the documented shapes") {
    CHECK(bound_target("bd", 2) == chain(3));
    CHECK(bound_target("bw", 2) == fork(3));
    CHECK(bound_target("bf", 2) == copies(3, chain(1)));
    CHECK(bound_target("be", 2) == cluster(3));
    CHECK(bound_target("bi", 2) == add_final(cluster(3)));
    CHECK_THROWS_AS(bound_target("bq", 1), InvalidInput);
    CHECK_THROWS_AS(bound_target("bd", 0), InvalidInput);
}

TEST_CASE("structural bounds agree with the subreduction route on preorders") {
    const char* bounds[] = {"bd", "bw", "bf", "be", "bi"};
    for (int size = 0; size <= 3; ++size) {
        for_each_preorder(size, [&](const Frame& f) {
            for (const char* which : bounds) {
                for (int n = 1; n <= 3; ++n) {
                    LogicSpec spec = L(std::string("S4+") + which + std::to_string(n));
                    CHECK(frame_in_logic(spec, f) == bound_via_subreduction(f, which, n));
                }
            }
            return true;
        });
    }
}

TEST_CASE("cluster_width computes the largest antichain of clusters") {
    CHECK(cluster_width(chain(4)) == 1);
    CHECK(cluster_width(fork(3)) == 3);
    CHECK(cluster_width(cluster(5)) == 1);
    CHECK(cluster_width(add_root(copies(2, cluster(2)))) == 2);
    CHECK(cluster_width(Frame(0)) == 0);
    CHECK(cluster_width(strict_chain(3)) == 1);
    // Cross-check by brute force on transitive frames of size 4: the width
    // equals the largest set of pairwise incomparable worlds.
    for_each_transitive_frame(4, [&](const Frame& f) {
        int best = 0;
        for (int mask = 0; mask < 16; ++mask) {
            bool anti = true;
            for (int u = 0; u < 4 && anti; ++u)
                for (int v = 0; v < 4 && anti; ++v) {
                    if (u == v || !(mask & (1 << u)) || !(mask & (1 << v))) continue;
                    // Same cluster counts as comparable; distinct comparable
                    // worlds break the antichain.
                    if (f.has(u, v) || f.has(v, u)) anti = false;
                }
            if (anti) best = std::max(best, __builtin_popcount(static_cast<unsigned>(mask)));
        }
        CHECK(cluster_width(f) == best);
        return true;
    });
}
