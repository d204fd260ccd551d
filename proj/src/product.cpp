#include "kripke/product.hpp"
#include "kripke/errors.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kripke {

// ---------------------------------------------------------------------------
// Level accessors
// ---------------------------------------------------------------------------

Frame ProductLevels::level_frame(int k) const {
    if (k < 0 || k > max_depth)
        throw InvalidInput("level " + std::to_string(k) + " out of range 0.." +
                           std::to_string(max_depth));
    Bits prefix(static_cast<size_t>(frame.n));
    for (int w = 0; w < level_sizes[static_cast<size_t>(k)]; ++w) prefix.set(static_cast<size_t>(w));
    return restriction(frame, prefix).frame;
}

PMorphism ProductLevels::projection(int k, int side) const {
    if (side != 0 && side != 1) throw InvalidInput("projection side must be 0 or 1");
    Frame lf = level_frame(k);
    const std::vector<int>& full = side == 0 ? p0 : p1;
    std::vector<int> m(full.begin(), full.begin() + level_sizes[static_cast<size_t>(k)]);
    return make_pmorphism(std::move(lf), side == 0 ? w0 : w1, std::move(m));
}

ProductLevel make_level(const ProductLevels& levels, int k) {
    ProductLevel lv;
    lv.n = k;
    lv.frame = levels.level_frame(k);
    lv.p0 = levels.projection(k, 0);
    lv.p1 = levels.projection(k, 1);
    if (k > 0) {
        int prev = levels.level_sizes[static_cast<size_t>(k - 1)];
        lv.prev_embedding.resize(static_cast<size_t>(prev));
        for (int w = 0; w < prev; ++w) lv.prev_embedding[static_cast<size_t>(w)] = w;
    }
    lv.world_block.assign(levels.world_block.begin(),
                          levels.world_block.begin() + levels.level_sizes[static_cast<size_t>(k)]);
    return lv;
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

namespace {

/// Clusters of a factor with the (shared) successor set of each.
struct FactorClusters {
    std::vector<std::vector<int>> members; // sorted
    std::vector<Bits> up;                  // successors of any member
    std::vector<Bits> strict;              // up minus the cluster itself
};

FactorClusters factor_clusters(const Frame& f) {
    FactorClusters fc;
    ClusterPartition cp = clusters(f);
    for (const std::vector<int>& c : cp.clusters) {
        Bits up = f.adj[static_cast<size_t>(c[0])];
        Bits strict = up;
        for (int m : c) strict.reset(static_cast<size_t>(m));
        fc.members.push_back(c);
        fc.up.push_back(std::move(up));
        fc.strict.push_back(std::move(strict));
    }
    return fc;
}

struct Budget {
    size_t used = 0;
    size_t cap;
    const char* what;
    void charge() {
        if (++used > cap)
            throw BudgetExceeded(std::string(what) + " exceeded its step budget (" +
                                 std::to_string(cap) + ")");
    }
};

/// Apex clusters ordered shallow to deep, so that by the time a cluster is
/// handled the images of all its strict successors are known.
struct ApexOrder {
    ClusterPartition cp;
    std::vector<int> cluster_depth; // per cluster
    std::vector<int> order;         // cluster indices, depth ascending
};

ApexOrder apex_order(const Frame& apex) {
    if (!is_reflexive(apex) || !is_transitive(apex))
        throw InvalidInput("the apex must be reflexive and transitive");
    ApexOrder a;
    a.cp = clusters(apex);
    a.cluster_depth.reserve(a.cp.clusters.size());
    for (const std::vector<int>& c : a.cp.clusters)
        a.cluster_depth.push_back(depth(apex, c[0]));
    a.order.resize(a.cp.clusters.size());
    for (size_t i = 0; i < a.order.size(); ++i) a.order[i] = static_cast<int>(i);
    std::sort(a.order.begin(), a.order.end(), [&](int x, int y) {
        if (a.cluster_depth[static_cast<size_t>(x)] != a.cluster_depth[static_cast<size_t>(y)])
            return a.cluster_depth[static_cast<size_t>(x)] < a.cluster_depth[static_cast<size_t>(y)];
        return a.cp.clusters[static_cast<size_t>(x)][0] < a.cp.clusters[static_cast<size_t>(y)][0];
    });
    return a;
}

void validate_cone(const Cone& cone, const ProductLevels& levels) {
    if (!(cone.to_w0.dom == cone.apex) || !(cone.to_w1.dom == cone.apex))
        throw InvalidInput("cone legs must start at the apex");
    if (!(cone.to_w0.cod == levels.w0) || !(cone.to_w1.cod == levels.w1))
        throw InvalidInput("cone legs must end at the two factors of the levels");
    std::string why;
    if (!is_pmorphism(cone.apex, levels.w0, cone.to_w0.map, &why))
        throw InvalidInput("left cone leg: " + why);
    if (!is_pmorphism(cone.apex, levels.w1, cone.to_w1.map, &why))
        throw InvalidInput("right cone leg: " + why);
}

/// Distinct coordinate pairs taken by a cluster, sorted.
std::vector<std::pair<int, int>> cluster_pairs(const Cone& cone, const std::vector<int>& members) {
    std::vector<std::pair<int, int>> y;
    y.reserve(members.size());
    for (int u : members) y.emplace_back(cone.to_w0(u), cone.to_w1(u));
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());
    return y;
}

/// Strict successors of a cluster inside the apex.
Bits strict_up_of(const Frame& apex, const std::vector<int>& members) {
    Bits su = apex.adj[static_cast<size_t>(members[0])];
    for (int u : members) su.reset(static_cast<size_t>(u));
    return su;
}

} // namespace

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

ProductLevels product_levels(const Frame& w0, const Frame& w1, int max_depth,
                             size_t max_candidates, int max_worlds) {
    if (!is_reflexive(w0) || !is_transitive(w0) || !is_reflexive(w1) || !is_transitive(w1))
        throw InvalidInput("product levels require reflexive transitive factors");
    if (max_depth < 0) throw InvalidInput("depth must be non-negative");

    ProductLevels L;
    L.w0 = w0;
    L.w1 = w1;
    L.max_depth = max_depth;
    L.level_sizes = {0};

    FactorClusters f0 = factor_clusters(w0);
    FactorClusters f1 = factor_clusters(w1);
    Budget budget{0, max_candidates, "product level construction"};

    // Incremental world data; the frame is assembled at the end.
    std::vector<std::vector<int>> succ;             // world -> sorted successor ids
    std::vector<std::vector<int>> cone_list;        // block -> sorted cone world ids
    std::vector<std::vector<int>> cone_block_ids;   // block -> block ids of its G part
    std::vector<Bits> proj0_members, proj1_members; // block -> factor worlds covered by Y

    for (int level = 1; level <= max_depth; ++level) {
        int prev_count = L.level_sizes.back();
        int g_depth = level - 1; // required depth of G
        struct Staged {
            std::vector<std::pair<int, int>> pairs;
            std::vector<int> g_worlds;
        };
        std::vector<Staged> staged;

        for (size_t i0 = 0; i0 < f0.members.size(); ++i0) {
            for (size_t i1 = 0; i1 < f1.members.size(); ++i1) {
                const std::vector<int>& m0 = f0.members[i0];
                const std::vector<int>& m1 = f1.members[i1];
                size_t pool_size = m0.size() * m1.size();
                if (pool_size > 16)
                    throw BudgetExceeded("cluster pair with " + std::to_string(pool_size) +
                                         " coordinate pairs is beyond the admissibility search");

                // Blocks usable inside G for this cluster pair: their pairs
                // must project into the successor sets, recursively.
                std::vector<int> allowed;
                std::vector<char> allowed_flag(cone_list.size(), 0);
                for (size_t b = 0; b < cone_list.size(); ++b) {
                    if (!proj0_members[b].is_subset_of(f0.up[i0])) continue;
                    if (!proj1_members[b].is_subset_of(f1.up[i1])) continue;
                    bool deps_ok = true;
                    for (int dep : cone_block_ids[b])
                        if (!allowed_flag[static_cast<size_t>(dep)]) { deps_ok = false; break; }
                    if (!deps_ok) continue;
                    allowed_flag[b] = 1;
                    allowed.push_back(static_cast<int>(b));
                }

                Bits chosen_blocks(cone_list.size());
                Bits chosen_worlds(static_cast<size_t>(prev_count));
                Bits acc0(static_cast<size_t>(w0.n)), acc1(static_cast<size_t>(w1.n));
                int depth_hits = 0;

                // Enumerates the pair sets Y for one admissible G.
                auto emit_blocks = [&]() {
                    if (level > 1 && depth_hits == 0) return;
                    if (!f0.strict[i0].is_subset_of(acc0)) return;
                    if (!f1.strict[i1].is_subset_of(acc1)) return;
                    uint32_t need_a = 0, need_b = 0;
                    for (size_t ia = 0; ia < m0.size(); ++ia)
                        if (!acc0.test(static_cast<size_t>(m0[ia]))) need_a |= 1u << ia;
                    for (size_t ib = 0; ib < m1.size(); ++ib)
                        if (!acc1.test(static_cast<size_t>(m1[ib]))) need_b |= 1u << ib;

                    // Pairs already described: the block whose cone equals G.
                    uint32_t described = 0;
                    size_t g_count = chosen_worlds.count();
                    for (size_t b = 0; b < cone_list.size(); ++b) {
                        if (L.blocks[b].depth != g_depth) continue;
                        if (cone_list[b].size() != g_count) continue;
                        bool same = true;
                        for (int x : cone_list[b])
                            if (!chosen_worlds.test(static_cast<size_t>(x))) { same = false; break; }
                        if (!same) continue;
                        for (const std::pair<int, int>& pr : L.blocks[b].pairs) {
                            auto ita = std::find(m0.begin(), m0.end(), pr.first);
                            auto itb = std::find(m1.begin(), m1.end(), pr.second);
                            if (ita != m0.end() && itb != m1.end())
                                described |= 1u << (static_cast<size_t>(ita - m0.begin()) * m1.size() +
                                                    static_cast<size_t>(itb - m1.begin()));
                        }
                        break;
                    }

                    std::vector<int> g_sorted;
                    g_sorted.reserve(g_count);
                    for (size_t x = chosen_worlds.find_first(); x != Bits::npos;
                         x = chosen_worlds.find_next(x))
                        g_sorted.push_back(static_cast<int>(x));

                    uint32_t full = (1u << pool_size) - 1u;
                    for (uint32_t mask = 1; mask <= full; ++mask) {
                        budget.charge();
                        uint32_t ca = 0, cb = 0;
                        for (uint32_t rest = mask; rest; rest &= rest - 1) {
                            size_t p = static_cast<size_t>(__builtin_ctz(rest));
                            ca |= 1u << (p / m1.size());
                            cb |= 1u << (p % m1.size());
                        }
                        if ((need_a & ~ca) || (need_b & ~cb)) continue;
                        if ((mask & ~described) == 0) continue; // nothing new
                        Staged st;
                        st.g_worlds = g_sorted;
                        for (size_t p = 0; p < pool_size; ++p)
                            if (mask & (1u << p))
                                st.pairs.emplace_back(m0[p / m1.size()], m1[p % m1.size()]);
                        staged.push_back(std::move(st));
                    }
                };

                // Up-closed subsets of the allowed blocks, by inclusion DFS.
                std::function<void(size_t)> dfs = [&](size_t idx) {
                    budget.charge();
                    if (idx == allowed.size()) {
                        emit_blocks();
                        return;
                    }
                    dfs(idx + 1); // exclude allowed[idx]
                    int b = allowed[idx];
                    for (int dep : cone_block_ids[static_cast<size_t>(b)])
                        if (!chosen_blocks.test(static_cast<size_t>(dep))) return; // not up-closed
                    const ProductLevels::Block& blk = L.blocks[static_cast<size_t>(b)];
                    chosen_blocks.set(static_cast<size_t>(b));
                    Bits save0 = acc0, save1 = acc1;
                    for (size_t j = 0; j < blk.pairs.size(); ++j)
                        chosen_worlds.set(static_cast<size_t>(blk.first_world + static_cast<int>(j)));
                    acc0 |= proj0_members[static_cast<size_t>(b)];
                    acc1 |= proj1_members[static_cast<size_t>(b)];
                    bool hit = blk.depth == g_depth;
                    if (hit) ++depth_hits;
                    dfs(idx + 1); // include allowed[idx]
                    if (hit) --depth_hits;
                    for (size_t j = 0; j < blk.pairs.size(); ++j)
                        chosen_worlds.reset(static_cast<size_t>(blk.first_world + static_cast<int>(j)));
                    chosen_blocks.reset(static_cast<size_t>(b));
                    acc0 = std::move(save0);
                    acc1 = std::move(save1);
                };
                dfs(0);
            }
        }

        for (const Staged& st : staged) {
            int first = static_cast<int>(succ.size());
            int block_id = static_cast<int>(L.blocks.size());
            int count = static_cast<int>(st.pairs.size());
            if (first + count > max_worlds)
                throw BudgetExceeded("product levels exceeded " + std::to_string(max_worlds) +
                                     " worlds");
            std::vector<int> members(static_cast<size_t>(count));
            for (int j = 0; j < count; ++j) members[static_cast<size_t>(j)] = first + j;
            for (int j = 0; j < count; ++j) {
                std::vector<int> s = st.g_worlds;
                s.insert(s.end(), members.begin(), members.end());
                succ.push_back(std::move(s));
                L.p0.push_back(st.pairs[static_cast<size_t>(j)].first);
                L.p1.push_back(st.pairs[static_cast<size_t>(j)].second);
                L.world_block.push_back(block_id);
                L.world_depth.push_back(level);
            }
            ProductLevels::Block blk;
            blk.depth = level;
            blk.pairs = st.pairs;
            blk.g_worlds = st.g_worlds;
            blk.first_world = first;
            L.blocks.push_back(std::move(blk));

            std::vector<int> cl = st.g_worlds;
            cl.insert(cl.end(), members.begin(), members.end());
            cone_list.push_back(std::move(cl));
            std::vector<int> cb;
            for (int x : st.g_worlds) cb.push_back(L.world_block[static_cast<size_t>(x)]);
            std::sort(cb.begin(), cb.end());
            cb.erase(std::unique(cb.begin(), cb.end()), cb.end());
            cone_block_ids.push_back(std::move(cb));
            Bits pm0(static_cast<size_t>(w0.n)), pm1(static_cast<size_t>(w1.n));
            for (const std::pair<int, int>& pr : st.pairs) {
                pm0.set(static_cast<size_t>(pr.first));
                pm1.set(static_cast<size_t>(pr.second));
            }
            proj0_members.push_back(std::move(pm0));
            proj1_members.push_back(std::move(pm1));
        }
        L.level_sizes.push_back(static_cast<int>(succ.size()));
    }

    int total = static_cast<int>(succ.size());
    L.frame = Frame(total);
    for (int u = 0; u < total; ++u)
        for (int v : succ[static_cast<size_t>(u)]) L.frame.add_edge(u, v);
    for (size_t b = 0; b < L.blocks.size(); ++b) {
        Bits cone(static_cast<size_t>(total));
        for (int x : cone_list[b]) cone.set(static_cast<size_t>(x));
        L.blocks[b].cone = std::move(cone);
    }
    return L;
}

// ---------------------------------------------------------------------------
// Mediation
// ---------------------------------------------------------------------------

PMorphism mediate(const Cone& cone, const ProductLevels& levels) {
    validate_cone(cone, levels);
    ApexOrder a = apex_order(cone.apex);
    const Frame& apex = cone.apex;
    int d = frame_depth(apex);
    if (d > levels.max_depth)
        throw InvalidInput("depth insufficient for mediation: the levels reach depth " +
                           std::to_string(levels.max_depth) + " but the apex needs depth >= " +
                           std::to_string(d));

    std::vector<int> g(static_cast<size_t>(apex.n), -1);
    for (int ci : a.order) {
        const std::vector<int>& members = a.cp.clusters[static_cast<size_t>(ci)];
        std::vector<std::pair<int, int>> y = cluster_pairs(cone, members);

        Bits su = strict_up_of(apex, members);
        Bits s(static_cast<size_t>(levels.frame.n));
        for (size_t x = su.find_first(); x != Bits::npos; x = su.find_next(x))
            s.set(static_cast<size_t>(g[x]));
        int n = 0;
        std::vector<int> s_sorted;
        for (size_t x = s.find_first(); x != Bits::npos; x = s.find_next(x)) {
            s_sorted.push_back(static_cast<int>(x));
            n = std::max(n, levels.world_depth[x]);
        }

        // Either a fresh block carrying exactly these pairs over exactly
        // this image, or the block whose cone equals the image (whose pair
        // set then covers these pairs).  Exactly one of the two exists.
        const ProductLevels::Block* target = nullptr;
        for (const ProductLevels::Block& b : levels.blocks)
            if (b.depth == n + 1 && b.pairs == y && b.g_worlds == s_sorted) { target = &b; break; }
        if (!target)
            for (const ProductLevels::Block& b : levels.blocks)
                if (b.depth == n && b.cone == s) { target = &b; break; }
        if (!target)
            throw std::logic_error("mediation found no admissible block for an apex cluster");

        for (int u : members) {
            std::pair<int, int> pr{cone.to_w0(u), cone.to_w1(u)};
            auto it = std::find(target->pairs.begin(), target->pairs.end(), pr);
            if (it == target->pairs.end())
                throw std::logic_error("mediation target block misses a coordinate pair");
            g[static_cast<size_t>(u)] =
                target->first_world + static_cast<int>(it - target->pairs.begin());
        }
    }

    std::string why;
    if (!is_pmorphism(apex, levels.frame, g, &why))
        throw std::logic_error("mediation produced an invalid map: " + why);
    for (int u = 0; u < apex.n; ++u)
        if (levels.p0[static_cast<size_t>(g[static_cast<size_t>(u)])] != cone.to_w0(u) ||
            levels.p1[static_cast<size_t>(g[static_cast<size_t>(u)])] != cone.to_w1(u))
            throw std::logic_error("mediation result does not commute with the projections");
    return PMorphism{apex, levels.frame, std::move(g)};
}

// ---------------------------------------------------------------------------
// Mediator counting
// ---------------------------------------------------------------------------

long long count_mediators(const Cone& cone, const ProductLevels& levels, size_t max_steps) {
    validate_cone(cone, levels);
    ApexOrder a = apex_order(cone.apex);
    const Frame& apex = cone.apex;
    Budget budget{0, max_steps, "mediator counting"};

    size_t k = a.order.size();
    // A commuting map sends each apex cluster into a single block and the
    // world per member is forced by its coordinate pair, so searching block
    // assignments is complete.  Candidate blocks must carry the cluster's
    // pairs and cannot sit deeper than the cluster itself (a p-morphism never
    // increases depth); the leaf check keeps exactly the p-morphisms.
    std::vector<std::vector<std::pair<int, int>>> ys(k);
    std::vector<std::vector<int>> candidates(k);
    for (size_t i = 0; i < k; ++i) {
        int ci = a.order[i];
        ys[i] = cluster_pairs(cone, a.cp.clusters[static_cast<size_t>(ci)]);
        int depth_cap = a.cluster_depth[static_cast<size_t>(ci)];
        for (size_t b = 0; b < levels.blocks.size(); ++b)
            if (levels.blocks[b].depth <= depth_cap &&
                std::includes(levels.blocks[b].pairs.begin(), levels.blocks[b].pairs.end(),
                              ys[i].begin(), ys[i].end()))
                candidates[i].push_back(static_cast<int>(b));
    }

    std::vector<int> g(static_cast<size_t>(apex.n), -1);
    long long found = 0;
    std::string why;
    std::function<void(size_t)> dfs = [&](size_t i) {
        budget.charge();
        if (i == k) {
            if (is_pmorphism(apex, levels.frame, g, &why)) ++found;
            return;
        }
        const std::vector<int>& members = a.cp.clusters[static_cast<size_t>(a.order[i])];
        Bits su = strict_up_of(apex, members);
        for (int b : candidates[i]) {
            const ProductLevels::Block& blk = levels.blocks[static_cast<size_t>(b)];
            for (int u : members) {
                std::pair<int, int> pr{cone.to_w0(u), cone.to_w1(u)};
                auto it = std::find(blk.pairs.begin(), blk.pairs.end(), pr);
                g[static_cast<size_t>(u)] =
                    blk.first_world + static_cast<int>(it - blk.pairs.begin());
            }
            bool ok = true;
            for (int u : members) {
                for (size_t v = su.find_first(); v != Bits::npos; v = su.find_next(v))
                    if (!levels.frame.has(g[static_cast<size_t>(u)],
                                          g[static_cast<size_t>(v)])) { ok = false; break; }
                if (!ok) break;
            }
            if (ok) dfs(i + 1);
        }
        for (int u : members) g[static_cast<size_t>(u)] = -1;
    };
    dfs(0);
    return found;
}

long long count_mediators_with_frontier(const Cone& cone, const ProductLevels& levels,
                                        size_t max_steps) {
    validate_cone(cone, levels);
    ApexOrder a = apex_order(cone.apex);
    const Frame& apex = cone.apex;
    if (frame_depth(apex) > levels.max_depth + 1)
        throw InvalidInput("frontier counting extends the levels by one layer only");
    Budget budget{0, max_steps, "frontier mediator counting"};

    size_t k = a.order.size();
    std::vector<std::vector<std::pair<int, int>>> ys(k);
    std::vector<std::vector<int>> candidates(k);
    std::vector<int> cdepth(k);
    for (size_t i = 0; i < k; ++i) {
        int ci = a.order[i];
        ys[i] = cluster_pairs(cone, a.cp.clusters[static_cast<size_t>(ci)]);
        cdepth[i] = a.cluster_depth[static_cast<size_t>(ci)];
        for (size_t b = 0; b < levels.blocks.size(); ++b)
            if (levels.blocks[b].depth <= cdepth[i] &&
                std::includes(levels.blocks[b].pairs.begin(), levels.blocks[b].pairs.end(),
                              ys[i].begin(), ys[i].end()))
                candidates[i].push_back(static_cast<int>(b));
    }

    // Frontier blocks discovered along the current path.  Clusters sharing a
    // key share its worlds, exactly as they would share the block one layer
    // up; keys follow stack discipline (each is popped by its creator).
    struct FrontierKey {
        std::vector<std::pair<int, int>> pairs;
        std::vector<int> g_worlds; // sorted materialized world ids
        Bits base_bits;            // g_worlds as a bitset over the levels
        int base;                  // first extension world id
        int refs;
    };
    std::vector<FrontierKey> keys;
    int next_ext = levels.frame.n;

    std::vector<int> g(static_cast<size_t>(apex.n), -1);
    long long found = 0;

    // Validate a complete assignment against the materialized worlds plus
    // the frontier blocks chosen along this path.  A frontier world's cone
    // is its key's worlds plus the key's materialized base, and nothing
    // materialized sees a frontier world, so openness reduces to exact row
    // comparisons and stability comes along for free.
    Bits image(static_cast<size_t>(levels.frame.n));
    auto leaf_valid = [&]() {
        const int nw = levels.frame.n;
        for (int u = 0; u < apex.n; ++u) {
            int gu = g[static_cast<size_t>(u)];
            const Bits& up = apex.adj[static_cast<size_t>(u)];
            if (gu < nw) {
                image.reset();
                for (size_t v = up.find_first(); v != Bits::npos; v = up.find_next(v)) {
                    int gv = g[v];
                    if (gv >= nw) return false; // old worlds never see new ones
                    image.set(static_cast<size_t>(gv));
                }
                if (image != levels.frame.adj[static_cast<size_t>(gu)]) return false;
            } else {
                const FrontierKey* key = nullptr;
                for (const FrontierKey& kk : keys)
                    if (gu >= kk.base && gu < kk.base + static_cast<int>(kk.pairs.size())) {
                        key = &kk;
                        break;
                    }
                image.reset();
                unsigned hit = 0, all = (1u << key->pairs.size()) - 1u;
                for (size_t v = up.find_first(); v != Bits::npos; v = up.find_next(v)) {
                    int gv = g[v];
                    if (gv < nw) {
                        image.set(static_cast<size_t>(gv));
                    } else {
                        if (gv < key->base ||
                            gv >= key->base + static_cast<int>(key->pairs.size()))
                            return false; // distinct frontier blocks are unrelated
                        hit |= 1u << (gv - key->base);
                    }
                }
                if (hit != all || image != key->base_bits) return false;
            }
        }
        return true;
    };

    std::function<void(size_t)> dfs = [&](size_t i) {
        budget.charge();
        if (i == k) {
            if (leaf_valid()) ++found;
            return;
        }
        const std::vector<int>& members = a.cp.clusters[static_cast<size_t>(a.order[i])];
        Bits su = strict_up_of(apex, members);

        for (int b : candidates[i]) {
            const ProductLevels::Block& blk = levels.blocks[static_cast<size_t>(b)];
            for (int u : members) {
                std::pair<int, int> pr{cone.to_w0(u), cone.to_w1(u)};
                auto it = std::find(blk.pairs.begin(), blk.pairs.end(), pr);
                g[static_cast<size_t>(u)] =
                    blk.first_world + static_cast<int>(it - blk.pairs.begin());
            }
            bool ok = true;
            for (int u : members) {
                for (size_t v = su.find_first(); v != Bits::npos; v = su.find_next(v))
                    if (!levels.frame.has(g[static_cast<size_t>(u)],
                                          g[static_cast<size_t>(v)])) { ok = false; break; }
                if (!ok) break;
            }
            if (ok) dfs(i + 1);
        }

        // One layer beyond the levels: the only viable frontier block for
        // this cluster carries exactly its pairs over exactly the image of
        // its strict successors (anything larger fails back-lifting), and
        // it must be admissible and genuinely new.
        if (cdepth[i] == levels.max_depth + 1) {
            Bits s(static_cast<size_t>(levels.frame.n));
            bool viable = true;
            for (size_t v = su.find_first(); v != Bits::npos; v = su.find_next(v)) {
                int gv = g[static_cast<size_t>(v)];
                if (gv < 0 || gv >= levels.frame.n) { viable = false; break; }
                s.set(static_cast<size_t>(gv));
            }
            int n = 0;
            std::vector<int> s_sorted;
            if (viable) {
                Bits s_up(static_cast<size_t>(levels.frame.n));
                for (size_t x = s.find_first(); x != Bits::npos; x = s.find_next(x)) {
                    s_sorted.push_back(static_cast<int>(x));
                    n = std::max(n, levels.world_depth[x]);
                    s_up |= levels.frame.adj[x];
                }
                // the image must be up-closed and have full depth, otherwise
                // a materialized block already covers this case
                viable = n == levels.max_depth && s_up.is_subset_of(s);
            }
            if (viable) {
                // A block with closed cone s, if any, contains a maximal-depth
                // world of s, and a block's worlds are contiguous, so checking
                // the block of each deepest world finds it without a full scan.
                int last_block = -1;
                for (int x : s_sorted) {
                    if (levels.world_depth[static_cast<size_t>(x)] != n) continue;
                    int bid = levels.world_block[static_cast<size_t>(x)];
                    if (bid == last_block) continue;
                    last_block = bid;
                    const ProductLevels::Block& b = levels.blocks[static_cast<size_t>(bid)];
                    if (b.pairs.size() + b.g_worlds.size() != s_sorted.size()) continue;
                    bool same = true;
                    for (int y : b.g_worlds)
                        if (!s.test(static_cast<size_t>(y))) { same = false; break; }
                    for (size_t j = 0; same && j < b.pairs.size(); ++j)
                        if (!s.test(static_cast<size_t>(b.first_world + static_cast<int>(j))))
                            same = false;
                    if (!same) continue;
                    if (std::includes(b.pairs.begin(), b.pairs.end(), ys[i].begin(), ys[i].end()))
                        viable = false; // already described one layer down
                    break;
                }
            }
            if (viable) {
                int reuse = -1;
                for (size_t j = 0; j < keys.size(); ++j)
                    if (keys[j].pairs == ys[i] && keys[j].g_worlds == s_sorted) {
                        reuse = static_cast<int>(j);
                        break;
                    }
                bool created = false;
                if (reuse < 0) {
                    if (ys[i].size() >= 32)
                        throw BudgetExceeded("frontier cluster too wide to track");
                    keys.push_back(FrontierKey{ys[i], s_sorted, s, next_ext, 1});
                    reuse = static_cast<int>(keys.size()) - 1;
                    next_ext += static_cast<int>(ys[i].size());
                    created = true;
                } else {
                    ++keys[static_cast<size_t>(reuse)].refs;
                }
                {
                    const FrontierKey& key = keys[static_cast<size_t>(reuse)];
                    for (int u : members) {
                        std::pair<int, int> pr{cone.to_w0(u), cone.to_w1(u)};
                        auto it = std::find(key.pairs.begin(), key.pairs.end(), pr);
                        g[static_cast<size_t>(u)] =
                            key.base + static_cast<int>(it - key.pairs.begin());
                    }
                }
                // stability into the image holds by construction
                dfs(i + 1);
                if (created) {
                    next_ext -= static_cast<int>(keys.back().pairs.size());
                    keys.pop_back();
                } else {
                    --keys[static_cast<size_t>(reuse)].refs;
                }
            }
        }
        for (int u : members) g[static_cast<size_t>(u)] = -1;
    };
    dfs(0);
    return found;
}

// ---------------------------------------------------------------------------
// Logic restriction
// ---------------------------------------------------------------------------

ProductLevels restrict_to_logic(const ProductLevels& levels, const LogicSpec& L) {
    int n = levels.frame.n;
    std::vector<char> keep_block(levels.blocks.size(), 0);
    Bits keep(static_cast<size_t>(n));
    for (size_t b = 0; b < levels.blocks.size(); ++b) {
        Restriction cone = restriction(levels.frame, levels.blocks[b].cone);
        if (!frame_in_logic(L, cone.frame)) continue;
        keep_block[b] = 1;
        int count = static_cast<int>(levels.blocks[b].pairs.size());
        for (int j = 0; j < count; ++j)
            keep.set(static_cast<size_t>(levels.blocks[b].first_world + j));
    }
    // Dropping a block must drop everything stacked on it, so the kept
    // worlds stay up-closed and the result is again a level tower.
    for (size_t b = 0; b < levels.blocks.size(); ++b) {
        if (!keep_block[b]) continue;
        for (int x : levels.blocks[b].g_worlds)
            if (!keep_block[static_cast<size_t>(levels.world_block[static_cast<size_t>(x)])])
                throw std::logic_error("logic restriction would break the level structure");
    }

    std::vector<int> remap(static_cast<size_t>(n), -1);
    int next = 0;
    for (int w = 0; w < n; ++w)
        if (keep.test(static_cast<size_t>(w))) remap[static_cast<size_t>(w)] = next++;
    std::vector<int> block_remap(levels.blocks.size(), -1);
    int next_block = 0;
    for (size_t b = 0; b < levels.blocks.size(); ++b)
        if (keep_block[b]) block_remap[b] = next_block++;

    ProductLevels r;
    r.w0 = levels.w0;
    r.w1 = levels.w1;
    r.max_depth = levels.max_depth;
    r.frame = restriction(levels.frame, keep).frame;
    for (size_t b = 0; b < levels.blocks.size(); ++b) {
        if (!keep_block[b]) continue;
        const ProductLevels::Block& old = levels.blocks[b];
        ProductLevels::Block nb;
        nb.depth = old.depth;
        nb.pairs = old.pairs;
        for (int x : old.g_worlds) nb.g_worlds.push_back(remap[static_cast<size_t>(x)]);
        nb.first_world = remap[static_cast<size_t>(old.first_world)];
        Bits cone(static_cast<size_t>(next));
        for (size_t x = old.cone.find_first(); x != Bits::npos; x = old.cone.find_next(x))
            cone.set(static_cast<size_t>(remap[x]));
        nb.cone = std::move(cone);
        r.blocks.push_back(std::move(nb));
    }
    for (int w = 0; w < n; ++w) {
        if (!keep.test(static_cast<size_t>(w))) continue;
        r.p0.push_back(levels.p0[static_cast<size_t>(w)]);
        r.p1.push_back(levels.p1[static_cast<size_t>(w)]);
        r.world_block.push_back(
            block_remap[static_cast<size_t>(levels.world_block[static_cast<size_t>(w)])]);
        r.world_depth.push_back(levels.world_depth[static_cast<size_t>(w)]);
    }
    r.level_sizes.clear();
    for (int sz : levels.level_sizes) {
        int c = 0;
        for (int w = 0; w < sz; ++w)
            if (keep.test(static_cast<size_t>(w))) ++c;
        r.level_sizes.push_back(c);
    }
    return r;
}

} // namespace kripke
