#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kripke/enumeration.hpp"
#include "kripke/errors.hpp"
#include "kripke/pmorphism.hpp"

#include <set>

using namespace kripke;

TEST_CASE("make_pmorphism enforces stability and openness") {
    // Identity is always fine.
    CHECK_NOTHROW(make_pmorphism(chain(2), chain(2), {0, 1}));
    // Stability failure: an edge collapsing against the order.
    Frame s2 = strict_chain(2);
    CHECK_THROWS_AS(make_pmorphism(s2, copies(2, strict_chain(1)), {0, 1}), InvalidInput);
    // Openness failure: constant map from a chain misses the top.
    CHECK_THROWS_AS(make_pmorphism(chain(2), chain(2), {0, 0}), InvalidInput);
    // Collapsing a chain onto a shorter chain from the top is fine.
    CHECK_NOTHROW(make_pmorphism(chain(3), chain(2), {0, 1, 1}));
    // Wrong lengths and out-of-range targets are input errors.
    CHECK_THROWS_AS(make_pmorphism(chain(2), chain(2), {0}), InvalidInput);
    CHECK_THROWS_AS(make_pmorphism(chain(2), chain(2), {0, 2}), InvalidInput);
}

TEST_CASE("is_pmorphism reports the failing condition") {
    std::string why;
    CHECK(!is_pmorphism(strict_chain(2), copies(2, strict_chain(1)), {0, 1}, &why));
    CHECK(why.find("stability") != std::string::npos);
    why.clear();
    CHECK(!is_pmorphism(chain(2), chain(2), {0, 0}, &why));
    CHECK(why.find("openness") != std::string::npos);
}

TEST_CASE("composition and identity") {
    PMorphism f = make_pmorphism(chain(3), chain(2), {0, 1, 1});
    PMorphism g = make_pmorphism(chain(2), chain(1), {0, 0});
    PMorphism gf = compose(g, f);
    CHECK(gf.dom == chain(3));
    CHECK(gf.cod == chain(1));
    CHECK(gf.map == std::vector<int>{0, 0, 0});
    PMorphism id3 = identity(chain(3));
    CHECK(compose(f, id3) == f);
    CHECK(compose(identity(chain(2)), f) == f);
    // Mismatched middle frames are rejected.
    CHECK_THROWS_AS(compose(f, f), InvalidInput);
}

TEST_CASE("enumerate_pmorphisms finds exactly the valid maps") {
    // chain(2) -> chain(2): only the identity and the collapse to the top.
    auto fs = enumerate_pmorphisms(chain(2), chain(2));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].map == std::vector<int>{0, 1});
    CHECK(fs[1].map == std::vector<int>{1, 1});
    // Exhaustive cross-check at size <= 3: the enumeration equals the
    // brute-force filter of all functions.
    auto& reps = frame_representatives(3);
    for (const Frame& a : reps) {
        for (const Frame& b : reps) {
            std::set<std::vector<int>> got;
            for (auto& f : enumerate_pmorphisms(a, b)) got.insert(f.map);
            std::vector<int> m(static_cast<size_t>(a.n), 0);
            long long total = 1;
            for (int i = 0; i < a.n; ++i) total *= b.n;
            if (a.n == 0) total = 1;
            std::set<std::vector<int>> expect;
            for (long long code = 0; code < total; ++code) {
                long long c = code;
                for (int i = 0; i < a.n; ++i) {
                    m[static_cast<size_t>(i)] = static_cast<int>(c % b.n);
                    c /= b.n;
                }
                if (b.n == 0 && a.n > 0) break;
                if (is_pmorphism(a, b, m)) expect.insert(m);
            }
            CHECK(got == expect);
        }
    }
}

TEST_CASE("surjective_only filters the enumeration") {
    auto all = enumerate_pmorphisms(chain(3), chain(2));
    auto surj = enumerate_pmorphisms(chain(3), chain(2), true);
    CHECK(all.size() > surj.size());
    for (auto& f : surj) CHECK(is_surjective(f));
    std::set<std::vector<int>> surj_set;
    for (auto& f : surj) surj_set.insert(f.map);
    for (auto& f : all)
        if (is_surjective(f)) CHECK(surj_set.count(f.map) == 1);
}

TEST_CASE("enumeration budget raises instead of truncating") {
    CHECK_THROWS_AS(enumerate_pmorphisms(cluster(5), cluster(5), false, 10), BudgetExceeded);
}

TEST_CASE("image_factorization splits into surjection and inclusion") {
    PMorphism f = make_pmorphism(chain(2), chain(3), {1, 2});
    ImageFactorization m = image_factorization(f);
    CHECK(is_surjective(m.surjection));
    CHECK(is_injective(m.inclusion));
    CHECK(compose(m.inclusion, m.surjection) == f);
    CHECK(m.image.count() == 2);
    CHECK(m.image.test(1));
    CHECK(m.image.test(2));
}

TEST_CASE("subreduction witnesses and refusals") {
    // A chain subreduces onto every shorter chain.
    auto s = subreduces(chain(3), chain(2));
    REQUIRE(s.has_value());
    CHECK(is_up_closed(chain(3), s->domain_set));
    CHECK(is_surjective(s->onto));
    CHECK(s->onto.cod == chain(2));
    // A proper cluster is no p-morphic image of any poset's subframe.
    CHECK(!subreduces(chain(3), cluster(2)).has_value());
    // A cluster has only itself and the empty set as up-closed subsets, and
    // cannot map onto a two-chain.
    CHECK(!subreduces(cluster(2), chain(2)).has_value());
    // Everything subreduces onto the one-point frame except the empty frame.
    CHECK(subreduces(cluster(3), chain(1)).has_value());
    CHECK(!subreduces(Frame(0), chain(1)).has_value());
}

TEST_CASE("subreduction onto chains measures depth on preorders") {
    // On reflexive transitive frames, a subreduction onto chain(n) exists
    // exactly when the depth reaches n.
    for_each_preorder(4, [&](const Frame& f) {
        int d = frame_depth(f);
        for (int n = 1; n <= 4; ++n) {
            bool sub = subreduces(f, chain(n)).has_value();
            CHECK(sub == (d >= n));
        }
        return true;
    });
}

TEST_CASE("depth-subreduction equivalence fails on irreflexive frames") {
    // The strict two-chain has depth 2 but admits no subreduction onto the
    // reflexive two-chain: openness cannot be satisfied at the top.
    Frame s2 = strict_chain(2);
    CHECK(frame_depth(s2) == 2);
    CHECK(!subreduces(s2, chain(2)).has_value());
}

TEST_CASE("monomorphism oracle matches injectivity on transitive frames up to size 3") {
    auto& reps = frame_representatives(3, true);
    long long maps = 0;
    for (const Frame& a : reps) {
        for (const Frame& b : reps) {
            for (auto& f : enumerate_pmorphisms(a, b)) {
                ++maps;
                CHECK(is_monomorphism_oracle(f, 3) == is_injective(f));
            }
        }
    }
    CHECK(maps == 1561);
}

TEST_CASE("monomorphism oracle handles non-transitive endpoints") {
    Frame point = chain(1);
    PMorphism f = make_pmorphism(copies(2, point), point, {0, 0});
    CHECK(!is_monomorphism_oracle(f, 2));
    // A genuinely non-transitive frame: 0 -> 1 -> 2 without the shortcut.
    Frame path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(!is_transitive(path));
    PMorphism g = identity(path);
    CHECK(is_monomorphism_oracle(g, 3));
    // Collapsing a loopless two-cycle onto a reflexive point is not monic:
    // the cycle's two automorphisms have equal composites.
    Frame cycle(2);
    cycle.add_edge(0, 1);
    cycle.add_edge(1, 0);
    CHECK(!is_transitive(cycle));
    PMorphism h = make_pmorphism(cycle, point, {0, 0});
    CHECK(!is_injective(h));
    CHECK(!is_monomorphism_oracle(h, 3));
}

TEST_CASE("posetal reflection collapses clusters and fixes posets") {
    auto [p1, c1] = posetal_reflection(cluster(3));
    CHECK(p1 == chain(1));
    CHECK(is_surjective(c1));
    auto [p2, c2] = posetal_reflection(add_root(cluster(2)));
    CHECK(isomorphic(p2, chain(2)));
    auto [p3, c3] = posetal_reflection(chain(3));
    CHECK(p3 == chain(3));
    CHECK(c3.map == std::vector<int>{0, 1, 2});
    // Reflection is idempotent up to equality on every preorder <= 4.
    for_each_preorder(4, [&](const Frame& f) {
        auto [p, c] = posetal_reflection(f);
        CHECK(is_partial_order(p));
        auto [pp, cc] = posetal_reflection(p);
        CHECK(pp == p);
        return true;
    });
    // Non-transitive input is rejected.
    Frame path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK_THROWS_AS(posetal_reflection(path), InvalidInput);
}
