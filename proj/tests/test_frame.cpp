#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kripke/enumeration.hpp"
#include "kripke/errors.hpp"
#include "kripke/frame.hpp"

#include <map>
#include <set>

using namespace kripke;

TEST_CASE("builders produce the documented shapes") {
    Frame c3 = chain(3);
    CHECK(c3.n == 3);
    CHECK(c3.has(0, 0));
    CHECK(c3.has(0, 1));
    CHECK(c3.has(0, 2));
    CHECK(c3.has(1, 2));
    CHECK(!c3.has(1, 0));
    CHECK(is_reflexive(c3));
    CHECK(is_transitive(c3));
    CHECK(is_partial_order(c3));

    Frame s3 = strict_chain(3);
    CHECK(!s3.has(0, 0));
    CHECK(s3.has(0, 2));
    CHECK(is_transitive(s3));
    CHECK(is_irreflexive(s3));

    Frame k3 = cluster(3);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) CHECK(k3.has(u, v));
    CHECK(is_equivalence(k3));

    Frame f2 = fork(2);
    CHECK(f2.n == 3);  // two reflexive leaves plus the root at index 2
    CHECK(f2.has(2, 0));
    CHECK(f2.has(2, 1));
    CHECK(!f2.has(0, 1));
    CHECK(is_partial_order(f2));
    CHECK(!is_locally_linear(f2));
    CHECK(!is_confluent(f2));
    CHECK(is_confluent(chain(3)));
}

TEST_CASE("add_root and add_final extend preorders correctly") {
    Frame base = cluster(2);
    Frame rooted = add_root(base);
    CHECK(rooted.n == 3);
    CHECK(rooted.has(2, 0));
    CHECK(rooted.has(2, 1));
    CHECK(rooted.has(2, 2));
    CHECK(!rooted.has(0, 2));
    CHECK(is_reflexive(rooted));
    CHECK(is_transitive(rooted));
    CHECK(frame_depth(rooted) == 2);

    Frame finaled = add_final(cluster(2));
    CHECK(finaled.n == 3);
    CHECK(finaled.has(0, 2));
    CHECK(finaled.has(1, 2));
    CHECK(!finaled.has(2, 0));
    CHECK(frame_depth(finaled) == 2);
}

TEST_CASE("depth counts the longest cluster chain, minimum one") {
    CHECK(frame_depth(chain(1)) == 1);
    CHECK(frame_depth(chain(4)) == 4);
    CHECK(frame_depth(cluster(5)) == 1);
    CHECK(frame_depth(strict_chain(3)) == 3);
    CHECK(frame_depth(fork(3)) == 2);
    Frame deep = add_root(add_root(cluster(2)));
    CHECK(frame_depth(deep) == 3);
    CHECK(depth(deep, 3) == 3);  // the outer root
    CHECK(depth(deep, 0) == 1);  // inside the final cluster
    CHECK(frame_depth(Frame(0)) == 0);
}

TEST_CASE("up_set is one step, star is the reachability closure") {
    Frame s3 = strict_chain(3);
    CHECK(up_set(s3, 0) == star(s3, 1));  // {1, 2} either way
    CHECK(!up_set(s3, 0).test(0));
    CHECK(star(s3, 0).test(0));  // star always contains the world itself
    CHECK(star(s3, 0).count() == 3);

    Frame two_step(3);  // 0 -> 1 -> 2 without transitivity
    two_step.add_edge(0, 1);
    two_step.add_edge(1, 2);
    CHECK(!up_set(two_step, 0).test(2));
    CHECK(star(two_step, 0).test(2));
}

TEST_CASE("up-closed subsets and generated subframes") {
    Frame c3 = chain(3);
    Bits tail(3);
    tail.set(1);
    tail.set(2);
    CHECK(is_up_closed(c3, tail));
    Bits head(3);
    head.set(0);
    CHECK(!is_up_closed(c3, head));
    // chain(3) has exactly the four up-closed sets {}, {2}, {1,2}, {0,1,2}.
    CHECK(generated_subframes(c3).size() == 4);
}

TEST_CASE("restriction to an up-closed set keeps the induced edges") {
    Frame c3 = chain(3);
    Bits keep(3);
    keep.set(1);
    keep.set(2);
    Restriction r = restriction(c3, keep);
    CHECK(r.frame.n == 2);
    CHECK(r.worlds == std::vector<int>{1, 2});
    CHECK(r.frame.has(0, 1));
    CHECK(!r.frame.has(1, 0));
    CHECK(r.frame == chain(2));
}

TEST_CASE("copies and disjoint_sum keep summands separate") {
    Frame two = copies(2, chain(1));
    CHECK(two.n == 2);
    CHECK(two.has(0, 0));
    CHECK(two.has(1, 1));
    CHECK(!two.has(0, 1));
    CHECK(copies(0, cluster(3)).n == 0);

    DisjointSum du = disjoint_sum({chain(2), cluster(2)});
    CHECK(du.frame.n == 4);
    CHECK(du.offsets == std::vector<int>{0, 2});
    CHECK(du.frame.has(0, 1));
    CHECK(du.frame.has(2, 3));
    CHECK(du.frame.has(3, 2));
    CHECK(!du.frame.has(1, 2));
}

TEST_CASE("isomorphic agrees with canonical_key") {
    Frame c3 = chain(3);
    Frame p3(3);
    int perm[3] = {2, 0, 1};
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v)
            if (c3.has(u, v)) p3.add_edge(perm[u], perm[v]);
    CHECK(isomorphic(c3, p3));
    CHECK(canonical_key(c3) == canonical_key(p3));
    CHECK(!isomorphic(c3, cluster(3)));
    CHECK(canonical_key(c3) != canonical_key(cluster(3)));
    CHECK(!isomorphic(chain(2), chain(3)));
}

TEST_CASE("canonical_key separates exactly the isomorphism classes at size 3") {
    // 512 labeled frames on three worlds fall into 104 classes; the key
    // must make exactly the same identifications as the direct test.
    std::map<std::string, Frame> reps;
    long long labeled = 0;
    for_each_frame(3, [&](const Frame& f) {
        if (f.n != 3) return true;
        ++labeled;
        std::string k = canonical_key(f);
        auto it = reps.find(k);
        if (it == reps.end())
            reps.emplace(k, f);
        else
            CHECK(isomorphic(it->second, f));
        return true;
    });
    CHECK(labeled == 512);
    CHECK(reps.size() == 104);
    std::vector<Frame> cls;
    for (auto& [k, f] : reps) cls.push_back(f);
    for (size_t i = 0; i < cls.size(); ++i)
        for (size_t j = i + 1; j < cls.size(); ++j)
            CHECK(!isomorphic(cls[i], cls[j]));
}

TEST_CASE("clusters partition the reflexive worlds of a transitive frame") {
    Frame f = add_root(add_final(cluster(2)));  // root -> 2-cluster -> final point
    ClusterPartition cp = clusters(f);
    CHECK(cp.clusters.size() == 3);
    CHECK(cp.irreflexive_points.empty());
    std::set<int> seen;
    for (auto& c : cp.clusters)
        for (int w : c) CHECK(seen.insert(w).second);
    CHECK(seen.size() == 4);
    CHECK(cp.cluster_of[0] == cp.cluster_of[1]);
    CHECK(cp.cluster_of[0] != cp.cluster_of[2]);

    Frame s3 = strict_chain(3);
    ClusterPartition sp = clusters(s3);
    CHECK(sp.clusters.empty());
    CHECK(sp.irreflexive_points.size() == 3);
    CHECK(sp.cluster_of == std::vector<int>{-1, -1, -1});
}

TEST_CASE("depth_slice collects the shallow worlds") {
    Frame c3 = chain(3);
    Bits d1 = depth_slice(c3, 1);
    CHECK(d1.count() == 1);
    CHECK(d1.test(2));
    CHECK(depth_slice(c3, 3).count() == 3);
}

TEST_CASE("is_rooted detects a least world") {
    CHECK(is_rooted(chain(3)));
    CHECK(is_rooted(fork(2)));
    CHECK(!is_rooted(copies(2, chain(1))));
    CHECK(is_rooted(cluster(2)));
}

TEST_CASE("check_property dispatches by name and rejects unknown names") {
    CHECK(check_property(chain(2), "reflexive"));
    CHECK(check_property(strict_chain(2), "transitive"));
    CHECK(!check_property(strict_chain(2), "reflexive"));
    CHECK(check_property(cluster(2), "equivalence-relation"));
    CHECK_THROWS_AS(check_property(chain(2), "frobnicated"), InvalidInput);
}

TEST_CASE("frame equality is structural") {
    Frame a = chain(2);
    Frame b(2);
    b.add_edge(0, 0);
    b.add_edge(0, 1);
    b.add_edge(1, 1);
    CHECK(a == b);
    b.add_edge(1, 0);
    CHECK(a != b);
}

TEST_CASE("out-of-range edges are rejected") {
    Frame f(2);
    CHECK_THROWS_AS(f.add_edge(0, 2), InvalidInput);
    CHECK_THROWS_AS(f.add_edge(-1, 0), InvalidInput);
    CHECK_THROWS_AS(f.remove_edge(2, 0), InvalidInput);
}

TEST_CASE("depth requires transitivity") {
    Frame two_step(3);
    two_step.add_edge(0, 1);
    two_step.add_edge(1, 2);
    CHECK_THROWS_AS(frame_depth(two_step), InvalidInput);
}
