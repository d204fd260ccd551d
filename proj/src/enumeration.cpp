#include "kripke/enumeration.hpp"

#include "kripke/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <utility>

namespace kripke {

namespace {

Frame frame_from_rows(int n, const std::uint32_t* rows) {
    Frame f(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (rows[u] & (1u << v)) f.add_edge(u, v);
    return f;
}

bool rows_transitive(int n, const std::uint32_t* rows) {
    for (int u = 0; u < n; ++u) {
        std::uint32_t reach = 0;
        for (int v = 0; v < n; ++v)
            if (rows[u] & (1u << v)) reach |= rows[v];
        if (reach & ~rows[u]) return false;
    }
    return true;
}

void check_size(int size) {
    if (size < 0 || size > 5)
        throw InvalidInput("labeled frame sweeps support sizes 0..5, got " +
                           std::to_string(size));
}

// All multisets of positive parts summing to at most `total`, each part at
// most `max_part`, handed to fn as a nonincreasing sequence.
void for_each_partition(int total, int max_part,
                        const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int remaining, int cap) {
        if (!parts.empty()) fn(parts);
        for (int p = std::min(remaining, cap); p >= 1; --p) {
            parts.push_back(p);
            rec(remaining - p, p);
            parts.pop_back();
        }
    };
    rec(total, std::min(total, max_part));
}

// All ordered sequences of positive parts summing to at most `total`.
void for_each_composition(int total,
                          const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int remaining) {
        if (!parts.empty()) fn(parts);
        for (int p = 1; p <= remaining; ++p) {
            parts.push_back(p);
            rec(remaining - p);
            parts.pop_back();
        }
    };
    rec(total);
}

// A chain of clusters with the given sizes, deepest cluster first: every
// world of an earlier cluster sees every world of a later one.
Frame cluster_chain(const std::vector<int>& sizes) {
    int n = 0;
    for (int s : sizes) n += s;
    Frame f(n);
    int start = 0;
    for (int s : sizes) {
        for (int a = 0; a < s; ++a)
            for (int b = 0; b < s; ++b) f.add_edge(start + a, start + b);
        for (int a = 0; a < start; ++a)
            for (int b = start; b < start + s; ++b) f.add_edge(a, b);
        start += s;
    }
    return f;
}

Frame disjoint_union(const std::vector<Frame>& parts) {
    int n = 0;
    for (const Frame& p : parts) n += p.n;
    Frame f(n);
    int start = 0;
    for (const Frame& p : parts) {
        for (int u = 0; u < p.n; ++u)
            for (int v = 0; v < p.n; ++v)
                if (p.has(u, v)) f.add_edge(start + u, start + v);
        start += p.n;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Width-one frames: a transitive frame whose cones are all linear has at most
// one upper-cover cluster per cluster (two upper covers of the same cluster
// would be incomparable members of one cone).  Its connected components are
// therefore trees of clusters growing downward from a unique top cluster, and
// enumerating these trees up to isomorphism is a complete generator.
// ---------------------------------------------------------------------------

// A cluster tree: node 0 is the top cluster, parent[] points toward the top,
// nodes appear in depth-first order, weight[] holds cluster sizes.
struct ClusterTree {
    int total = 0;          // sum of weights
    std::string code;       // canonical encoding for ordering and dedup
    std::vector<int> parent; // -1 for the top node
    std::vector<int> weight;
};

// All non-increasing index sequences into `trees` whose totals sum to
// exactly `target`, i.e. all multisets of trees of combined weight target.
void for_each_tree_multiset(const std::vector<ClusterTree>& trees, int target, int max_index,
                            std::vector<int>& acc,
                            const std::function<void(const std::vector<int>&)>& fn) {
    if (target == 0) {
        fn(acc);
        return;
    }
    for (int i = std::min<int>(max_index, static_cast<int>(trees.size()) - 1); i >= 0; --i) {
        if (trees[static_cast<size_t>(i)].total > target) continue;
        acc.push_back(i);
        for_each_tree_multiset(trees, target - trees[static_cast<size_t>(i)].total, i, acc, fn);
        acc.pop_back();
    }
}

ClusterTree assemble_tree(int root_weight, const std::vector<ClusterTree>& trees,
                          const std::vector<int>& children) {
    ClusterTree t;
    t.total = root_weight;
    t.parent.push_back(-1);
    t.weight.push_back(root_weight);
    t.code = "(" + std::string(1, static_cast<char>('a' + root_weight));
    for (int ci : children) {
        const ClusterTree& c = trees[static_cast<size_t>(ci)];
        int offset = static_cast<int>(t.parent.size());
        for (size_t j = 0; j < c.parent.size(); ++j) {
            t.parent.push_back(c.parent[j] == -1 ? 0 : offset + c.parent[j]);
            t.weight.push_back(c.weight[j]);
        }
        t.total += c.total;
        t.code += c.code;
    }
    t.code += ")";
    return t;
}

// All cluster trees of total weight 1..max_total up to isomorphism, sorted by
// (total, code).  weight_cap <= 0 means unbounded cluster sizes.
std::vector<ClusterTree> cluster_trees(int max_total, int weight_cap) {
    std::vector<ClusterTree> trees;
    for (int s = 1; s <= max_total; ++s) {
        std::vector<ClusterTree> batch;
        int wmax = weight_cap > 0 ? std::min(weight_cap, s) : s;
        for (int w = 1; w <= wmax; ++w) {
            std::vector<int> acc;
            for_each_tree_multiset(trees, s - w, static_cast<int>(trees.size()) - 1, acc,
                                   [&](const std::vector<int>& children) {
                                       batch.push_back(assemble_tree(w, trees, children));
                                   });
        }
        std::sort(batch.begin(), batch.end(),
                  [](const ClusterTree& a, const ClusterTree& b) { return a.code < b.code; });
        trees.insert(trees.end(), batch.begin(), batch.end());
    }
    return trees;
}

// Realize one cluster tree as a frame: each world sees its own cluster (when
// reflexive) and every cluster on the path to the top.
Frame tree_frame(const ClusterTree& t, bool reflexive) {
    std::vector<int> start(t.weight.size());
    int n = 0;
    for (size_t i = 0; i < t.weight.size(); ++i) {
        start[i] = n;
        n += t.weight[i];
    }
    Frame f(n);
    for (size_t u = 0; u < t.weight.size(); ++u) {
        for (int a = reflexive ? static_cast<int>(u) : t.parent[u]; a != -1;
             a = t.parent[static_cast<size_t>(a)])
            for (int x = start[u]; x < start[u] + t.weight[u]; ++x)
                for (int y = start[static_cast<size_t>(a)];
                     y < start[static_cast<size_t>(a)] + t.weight[static_cast<size_t>(a)]; ++y)
                    f.add_edge(x, y);
    }
    return f;
}

// Every transitive width-one frame up to isomorphism: disjoint unions of
// cluster trees (single points per cluster when irreflexive).
std::vector<Frame> width_one_frames(int max_size, int weight_cap, bool reflexive) {
    std::vector<ClusterTree> trees = cluster_trees(max_size, reflexive ? weight_cap : 1);
    std::vector<Frame> out;
    std::vector<int> acc;
    for (int total = 1; total <= max_size; ++total)
        for_each_tree_multiset(trees, total, static_cast<int>(trees.size()) - 1, acc,
                               [&](const std::vector<int>& comps) {
                                   std::vector<Frame> parts;
                                   for (int ci : comps)
                                       parts.push_back(
                                           tree_frame(trees[static_cast<size_t>(ci)], reflexive));
                                   out.push_back(disjoint_union(parts));
                               });
    return out;
}

} // namespace

bool for_each_frame_rows(int size, const std::function<bool(const std::uint32_t*)>& fn) {
    check_size(size);
    std::uint32_t rows[5] = {0, 0, 0, 0, 0};
    if (size == 0) return fn(rows);
    const std::uint32_t row_mask = (1u << size) - 1u;
    const std::uint64_t total = std::uint64_t(1) << (size * size);
    for (std::uint64_t code = 0; code < total; ++code) {
        for (int u = 0; u < size; ++u)
            rows[u] = static_cast<std::uint32_t>(code >> (u * size)) & row_mask;
        if (!fn(rows)) return false;
    }
    return true;
}

bool for_each_frame(int size, const std::function<bool(const Frame&)>& fn) {
    return for_each_frame_rows(
        size, [&](const std::uint32_t* rows) { return fn(frame_from_rows(size, rows)); });
}

bool for_each_transitive_frame(int size, const std::function<bool(const Frame&)>& fn) {
    return for_each_frame_rows(size, [&](const std::uint32_t* rows) {
        if (!rows_transitive(size, rows)) return true;
        return fn(frame_from_rows(size, rows));
    });
}

bool for_each_preorder(int size, const std::function<bool(const Frame&)>& fn) {
    check_size(size);
    if (size == 0) return fn(Frame(0));
    // Only the off-diagonal bits vary; the diagonal is forced by reflexivity.
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < size; ++u)
        for (int v = 0; v < size; ++v)
            if (u != v) slots.emplace_back(u, v);
    std::uint32_t rows[5];
    const std::uint64_t total = std::uint64_t(1) << slots.size();
    for (std::uint64_t code = 0; code < total; ++code) {
        for (int u = 0; u < size; ++u) rows[u] = 1u << u;
        for (size_t i = 0; i < slots.size(); ++i)
            if (code & (std::uint64_t(1) << i))
                rows[slots[i].first] |= 1u << slots[i].second;
        if (!rows_transitive(size, rows)) continue;
        if (!fn(frame_from_rows(size, rows))) return false;
    }
    return true;
}

const std::vector<Frame>& frame_representatives(int max_size, bool transitive_only,
                                                bool rooted_only) {
    if (max_size < 0 || (transitive_only ? max_size > 5 : max_size > 4))
        throw InvalidInput("frame representatives are limited to size 4 (5 when transitive)");
    static std::map<std::tuple<int, bool, bool>, std::vector<Frame>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(max_size, transitive_only, rooted_only);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Frame> reps;
    for (int n = 1; n <= max_size; ++n) {
        std::map<std::string, Frame> by_key;
        auto visit = [&](const Frame& f) {
            if (rooted_only && !is_rooted(f)) return true;
            by_key.emplace(canonical_key(f), f);
            return true;
        };
        if (transitive_only)
            for_each_transitive_frame(n, visit);
        else
            for_each_frame(n, visit);
        for (auto& [k, f] : by_key) reps.push_back(std::move(f));
    }
    return cache.emplace(key, std::move(reps)).first->second;
}

std::vector<Frame> logic_representatives(const LogicSpec& logic, int max_size,
                                         bool rooted_only) {
    LogicSpec l = normalize(logic);
    if (max_size < 0) throw InvalidInput("negative size bound");
    if (l.base == Base::Inconsistent) return {};

    std::vector<Frame> pool;
    bool shaped = false;

    if (l.base == Base::S4 && l.bd && *l.bd == 1) {
        // Depth-one frames over S4 are exactly disjoint unions of clusters,
        // so both the rooted and the general generators are complete.
        shaped = true;
        if (rooted_only) {
            for (int s = 1; s <= max_size; ++s) pool.push_back(cluster(s));
        } else {
            for_each_partition(max_size, max_size, [&](const std::vector<int>& parts) {
                std::vector<Frame> cs;
                for (int s : parts) cs.push_back(cluster(s));
                pool.push_back(disjoint_union(cs));
            });
        }
    } else if (rooted_only && l.base == Base::S4 && l.bw && *l.bw == 1) {
        // A rooted locally-linear preorder is a chain of clusters (the root's
        // cone is the whole frame), so ordered cluster-size sequences are a
        // complete generator.
        shaped = true;
        for_each_composition(max_size, [&](const std::vector<int>& sizes) {
            pool.push_back(cluster_chain(sizes));
        });
    } else if (rooted_only && l.base == Base::GL && l.bw && *l.bw == 1) {
        // Same shape in the irreflexive world: clusters are single points.
        shaped = true;
        for (int s = 1; s <= max_size; ++s) pool.push_back(strict_chain(s));
    } else if (l.base == Base::S4 && l.bw && *l.bw == 1) {
        shaped = true;
        int weight_cap = (l.be && l.bi) ? std::max(*l.be, *l.bi) : 0;
        pool = width_one_frames(max_size, weight_cap, true);
    } else if (l.base == Base::GL && l.bw && *l.bw == 1) {
        shaped = true;
        pool = width_one_frames(max_size, 1, false);
    }

    if (!shaped) {
        if (max_size > 4)
            throw BudgetExceeded(
                "no shaped generator for " + to_string(logic) +
                "; labeled enumeration covers sizes up to 4, requested " +
                std::to_string(max_size));
        const std::vector<Frame>& all = frame_representatives(max_size, false, rooted_only);
        std::vector<Frame> out;
        for (const Frame& f : all)
            if (frame_in_logic(l, f)) out.push_back(f);
        return out;
    }

    std::vector<Frame> out;
    for (Frame& f : pool)
        if (f.n <= max_size && frame_in_logic(l, f)) out.push_back(std::move(f));
    std::stable_sort(out.begin(), out.end(),
                     [](const Frame& a, const Frame& b) { return a.n < b.n; });
    return out;
}

} // namespace kripke
