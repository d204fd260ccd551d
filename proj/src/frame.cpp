#include "kripke/frame.hpp"
#include "kripke/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace kripke {

Frame::Frame(int size) : n(size) {
    if (size < 0) throw InvalidInput("frame size must be non-negative");
    adj.assign(static_cast<size_t>(size), Bits(static_cast<size_t>(size)));
}

void Frame::add_edge(int u, int v) {
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw InvalidInput("edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") out of range for " + std::to_string(n) + " worlds");
    adj[static_cast<size_t>(u)].set(static_cast<size_t>(v));
}

void Frame::remove_edge(int u, int v) {
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw InvalidInput("edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") out of range for " + std::to_string(n) + " worlds");
    adj[static_cast<size_t>(u)].reset(static_cast<size_t>(v));
}

// ---------------------------------------------------------------------------
// Structural predicates
// ---------------------------------------------------------------------------

bool is_reflexive(const Frame& f) {
    for (int w = 0; w < f.n; ++w)
        if (!f.has(w, w)) return false;
    return true;
}

bool is_irreflexive(const Frame& f) {
    for (int w = 0; w < f.n; ++w)
        if (f.has(w, w)) return false;
    return true;
}

bool is_transitive(const Frame& f) {
    for (int u = 0; u < f.n; ++u) {
        const Bits& row = f.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v)) {
            // successors of v must already be successors of u
            if (!f.adj[v].is_subset_of(row)) return false;
        }
    }
    return true;
}

bool is_symmetric(const Frame& f) {
    for (int u = 0; u < f.n; ++u)
        for (int v = u + 1; v < f.n; ++v)
            if (f.has(u, v) != f.has(v, u)) return false;
    return true;
}

bool is_antisymmetric(const Frame& f) {
    for (int u = 0; u < f.n; ++u)
        for (int v = u + 1; v < f.n; ++v)
            if (f.has(u, v) && f.has(v, u)) return false;
    return true;
}

bool is_locally_linear(const Frame& f) {
    for (int w = 0; w < f.n; ++w) {
        const Bits& row = f.adj[static_cast<size_t>(w)];
        for (size_t a = row.find_first(); a != Bits::npos; a = row.find_next(a))
            for (size_t b = row.find_next(a); b != Bits::npos; b = row.find_next(b))
                if (!f.adj[a].test(b) && !f.adj[b].test(a)) return false;
    }
    return true;
}

bool is_confluent(const Frame& f) {
    for (int w = 0; w < f.n; ++w) {
        const Bits& row = f.adj[static_cast<size_t>(w)];
        for (size_t a = row.find_first(); a != Bits::npos; a = row.find_next(a))
            for (size_t b = row.find_next(a); b != Bits::npos; b = row.find_next(b))
                if (!f.adj[a].intersects(f.adj[b])) return false;
    }
    return true;
}

bool is_equivalence(const Frame& f) {
    return is_reflexive(f) && is_transitive(f) && is_symmetric(f);
}

bool is_partial_order(const Frame& f) {
    return is_reflexive(f) && is_transitive(f) && is_antisymmetric(f);
}

bool check_property(const Frame& f, std::string_view name) {
    if (name == "reflexive") return is_reflexive(f);
    if (name == "transitive") return is_transitive(f);
    if (name == "irreflexive") return is_irreflexive(f);
    if (name == "confluent") return is_confluent(f);
    if (name == "locally-linear") return is_locally_linear(f);
    if (name == "antisymmetric") return is_antisymmetric(f);
    if (name == "equivalence-relation") return is_equivalence(f);
    throw InvalidInput("unknown property '" + std::string(name) +
                       "'; expected one of: reflexive, transitive, irreflexive, "
                       "confluent, locally-linear, antisymmetric, equivalence-relation");
}

// ---------------------------------------------------------------------------
// Reachability
// ---------------------------------------------------------------------------

Bits up_set(const Frame& f, int w) {
    if (w < 0 || w >= f.n) throw InvalidInput("world " + std::to_string(w) + " out of range");
    return f.adj[static_cast<size_t>(w)];
}

Bits star(const Frame& f, int w) {
    if (w < 0 || w >= f.n) throw InvalidInput("world " + std::to_string(w) + " out of range");
    Bits seen(static_cast<size_t>(f.n));
    seen.set(static_cast<size_t>(w));
    Bits frontier = seen;
    while (frontier.any()) {
        Bits next(static_cast<size_t>(f.n));
        for (size_t u = frontier.find_first(); u != Bits::npos; u = frontier.find_next(u))
            next |= f.adj[u];
        frontier = next - seen;
        seen |= next;
    }
    return seen;
}

Bits star_of_set(const Frame& f, const Bits& s) {
    Bits seen = s;
    Bits frontier = s;
    while (frontier.any()) {
        Bits next(static_cast<size_t>(f.n));
        for (size_t u = frontier.find_first(); u != Bits::npos; u = frontier.find_next(u))
            next |= f.adj[u];
        frontier = next - seen;
        seen |= next;
    }
    return seen;
}

bool is_up_closed(const Frame& f, const Bits& s) {
    for (size_t u = s.find_first(); u != Bits::npos; u = s.find_next(u))
        if (!f.adj[u].is_subset_of(s)) return false;
    return true;
}

bool is_rooted(const Frame& f) {
    if (f.n == 0) return false;
    for (int w = 0; w < f.n; ++w)
        if (star(f, w).count() == static_cast<size_t>(f.n)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Strongly connected components (two-way reachability classes)
// ---------------------------------------------------------------------------

namespace {

struct SccData {
    std::vector<std::vector<int>> comps; // ordered by least member
    std::vector<int> comp_of;
    std::vector<Bits> comp_succ; // comp -> set of distinct successor comps (transitively closed)
};

SccData scc_decompose(const Frame& f) {
    SccData d;
    d.comp_of.assign(static_cast<size_t>(f.n), -1);
    std::vector<Bits> reach(static_cast<size_t>(f.n));
    for (int w = 0; w < f.n; ++w) reach[static_cast<size_t>(w)] = star(f, w);
    for (int w = 0; w < f.n; ++w) {
        if (d.comp_of[static_cast<size_t>(w)] != -1) continue;
        std::vector<int> members{w};
        for (int v = w + 1; v < f.n; ++v) {
            if (d.comp_of[static_cast<size_t>(v)] != -1) continue;
            if (reach[static_cast<size_t>(w)].test(static_cast<size_t>(v)) &&
                reach[static_cast<size_t>(v)].test(static_cast<size_t>(w)))
                members.push_back(v);
        }
        int ci = static_cast<int>(d.comps.size());
        for (int m : members) d.comp_of[static_cast<size_t>(m)] = ci;
        d.comps.push_back(std::move(members));
    }
    size_t k = d.comps.size();
    d.comp_succ.assign(k, Bits(k));
    for (int u = 0; u < f.n; ++u) {
        const Bits& row = f.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v)) {
            int cu = d.comp_of[static_cast<size_t>(u)];
            int cv = d.comp_of[v];
            if (cu != cv) d.comp_succ[static_cast<size_t>(cu)].set(static_cast<size_t>(cv));
        }
    }
    // transitive closure over components
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t c = 0; c < k; ++c) {
            Bits before = d.comp_succ[c];
            for (size_t s = before.find_first(); s != Bits::npos; s = before.find_next(s))
                d.comp_succ[c] |= d.comp_succ[s];
            if (d.comp_succ[c] != before) changed = true;
        }
    }
    return d;
}

} // namespace

std::vector<Bits> generated_subframes(const Frame& f, size_t max_count) {
    SccData d = scc_decompose(f);
    size_t k = d.comps.size();
    // Up-closed sets of worlds correspond to successor-closed sets of
    // components.  Process components in an order where successors come
    // first, then extend by include/exclude decisions.
    std::vector<int> order; // indices into comps, successors before predecessors
    {
        std::vector<char> done(k, 0);
        std::function<void(int)> visit = [&](int c) {
            if (done[static_cast<size_t>(c)]) return;
            done[static_cast<size_t>(c)] = 1;
            const Bits& s = d.comp_succ[static_cast<size_t>(c)];
            for (size_t t = s.find_first(); t != Bits::npos; t = s.find_next(t))
                visit(static_cast<int>(t));
            order.push_back(c);
        };
        for (size_t c = 0; c < k; ++c) visit(static_cast<int>(c));
    }
    std::vector<Bits> comp_sets; // chosen component subsets, as bitsets over comps
    comp_sets.emplace_back(k);
    for (int c : order) {
        size_t cur = comp_sets.size();
        for (size_t i = 0; i < cur; ++i) {
            // include component c only when all its successors are present
            if (d.comp_succ[static_cast<size_t>(c)].is_subset_of(comp_sets[i])) {
                Bits ext = comp_sets[i];
                ext.set(static_cast<size_t>(c));
                comp_sets.push_back(std::move(ext));
                if (comp_sets.size() > max_count)
                    throw BudgetExceeded("more than " + std::to_string(max_count) +
                                         " generated subframes");
            }
        }
    }
    std::vector<Bits> out;
    out.reserve(comp_sets.size());
    for (const Bits& cs : comp_sets) {
        Bits s(static_cast<size_t>(f.n));
        for (size_t c = cs.find_first(); c != Bits::npos; c = cs.find_next(c))
            for (int m : d.comps[c]) s.set(static_cast<size_t>(m));
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        for (size_t w = 0; w < a.size(); ++w)
            if (a.test(w) != b.test(w)) return a.test(w);
        return false;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Depth and clusters
// ---------------------------------------------------------------------------

namespace {

void require_transitive(const Frame& f, const char* op) {
    if (!is_transitive(f))
        throw InvalidInput(std::string(op) + " requires a transitive frame");
}

std::vector<int> component_depths(const SccData& d) {
    size_t k = d.comps.size();
    std::vector<int> dep(k, 0);
    std::function<int(int)> go = [&](int c) -> int {
        if (dep[static_cast<size_t>(c)] != 0) return dep[static_cast<size_t>(c)];
        int best = 0;
        const Bits& s = d.comp_succ[static_cast<size_t>(c)];
        for (size_t t = s.find_first(); t != Bits::npos; t = s.find_next(t))
            best = std::max(best, go(static_cast<int>(t)));
        dep[static_cast<size_t>(c)] = best + 1;
        return best + 1;
    };
    for (size_t c = 0; c < k; ++c) go(static_cast<int>(c));
    return dep;
}

} // namespace

int depth(const Frame& f, int w) {
    require_transitive(f, "depth");
    if (w < 0 || w >= f.n) throw InvalidInput("world " + std::to_string(w) + " out of range");
    SccData d = scc_decompose(f);
    return component_depths(d)[static_cast<size_t>(d.comp_of[static_cast<size_t>(w)])];
}

int frame_depth(const Frame& f) {
    require_transitive(f, "frame_depth");
    if (f.n == 0) return 0;
    SccData d = scc_decompose(f);
    std::vector<int> dep = component_depths(d);
    return *std::max_element(dep.begin(), dep.end());
}

Bits depth_slice(const Frame& f, int k) {
    require_transitive(f, "depth_slice");
    SccData d = scc_decompose(f);
    std::vector<int> dep = component_depths(d);
    Bits s(static_cast<size_t>(f.n));
    for (int w = 0; w < f.n; ++w)
        if (dep[static_cast<size_t>(d.comp_of[static_cast<size_t>(w)])] <= k)
            s.set(static_cast<size_t>(w));
    return s;
}

ClusterPartition clusters(const Frame& f) {
    require_transitive(f, "clusters");
    SccData d = scc_decompose(f);
    ClusterPartition p;
    p.cluster_of.assign(static_cast<size_t>(f.n), -1);
    for (const std::vector<int>& comp : d.comps) {
        bool is_cluster = comp.size() > 1 || f.has(comp[0], comp[0]);
        if (is_cluster) {
            int ci = static_cast<int>(p.clusters.size());
            for (int m : comp) p.cluster_of[static_cast<size_t>(m)] = ci;
            p.clusters.push_back(comp);
        } else {
            p.irreflexive_points.push_back(comp[0]);
        }
    }
    std::sort(p.irreflexive_points.begin(), p.irreflexive_points.end());
    return p;
}

// ---------------------------------------------------------------------------
// Subframes and sums
// ---------------------------------------------------------------------------

Restriction restriction(const Frame& f, const Bits& s) {
    if (s.size() != static_cast<size_t>(f.n))
        throw InvalidInput("restriction set has wrong universe size");
    Restriction r;
    r.worlds.reserve(s.count());
    std::vector<int> new_of(static_cast<size_t>(f.n), -1);
    for (size_t w = s.find_first(); w != Bits::npos; w = s.find_next(w)) {
        new_of[w] = static_cast<int>(r.worlds.size());
        r.worlds.push_back(static_cast<int>(w));
    }
    r.frame = Frame(static_cast<int>(r.worlds.size()));
    for (size_t i = 0; i < r.worlds.size(); ++i) {
        const Bits& row = f.adj[static_cast<size_t>(r.worlds[i])];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
            if (new_of[v] != -1) r.frame.add_edge(static_cast<int>(i), new_of[v]);
    }
    return r;
}

DisjointSum disjoint_sum(const std::vector<Frame>& fs) {
    DisjointSum d;
    int total = 0;
    for (const Frame& f : fs) {
        d.offsets.push_back(total);
        total += f.n;
    }
    d.frame = Frame(total);
    for (size_t i = 0; i < fs.size(); ++i) {
        int off = d.offsets[i];
        for (int u = 0; u < fs[i].n; ++u) {
            const Bits& row = fs[i].adj[static_cast<size_t>(u)];
            for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
                d.frame.add_edge(off + u, off + static_cast<int>(v));
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Basic constructors
// ---------------------------------------------------------------------------

Frame cluster(int n) {
    if (n < 1) throw InvalidInput("cluster size must be at least 1");
    Frame f(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) f.add_edge(u, v);
    return f;
}

Frame chain(int n) {
    if (n < 1) throw InvalidInput("chain length must be at least 1");
    Frame f(n);
    for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v) f.add_edge(u, v);
    return f;
}

Frame strict_chain(int n) {
    if (n < 1) throw InvalidInput("chain length must be at least 1");
    Frame f(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) f.add_edge(u, v);
    return f;
}

Frame add_root(const Frame& f) {
    Frame g(f.n + 1);
    for (int u = 0; u < f.n; ++u) {
        const Bits& row = f.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
            g.add_edge(u, static_cast<int>(v));
    }
    for (int v = 0; v <= f.n; ++v) g.add_edge(f.n, v);
    return g;
}

Frame add_final(const Frame& f) {
    Frame g(f.n + 1);
    for (int u = 0; u < f.n; ++u) {
        const Bits& row = f.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
            g.add_edge(u, static_cast<int>(v));
        g.add_edge(u, f.n);
    }
    g.add_edge(f.n, f.n);
    return g;
}

Frame copies(int k, const Frame& f) {
    if (k < 0) throw InvalidInput("number of copies must be non-negative");
    std::vector<Frame> fs(static_cast<size_t>(k), f);
    return disjoint_sum(fs).frame;
}

Frame fork(int n) {
    if (n < 1) throw InvalidInput("fork width must be at least 1");
    return add_root(copies(n, chain(1)));
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<int, int>> degree_signature(const Frame& f) {
    std::vector<std::pair<int, int>> sig;
    sig.reserve(static_cast<size_t>(f.n));
    std::vector<int> indeg(static_cast<size_t>(f.n), 0);
    for (int u = 0; u < f.n; ++u) {
        const Bits& row = f.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
            ++indeg[v];
    }
    for (int u = 0; u < f.n; ++u)
        sig.emplace_back(static_cast<int>(f.adj[static_cast<size_t>(u)].count()), indeg[static_cast<size_t>(u)]);
    std::sort(sig.begin(), sig.end());
    return sig;
}

bool extend_iso(const Frame& a, const Frame& b, std::vector<int>& map, std::vector<char>& used, int u) {
    if (u == a.n) return true;
    for (int v = 0; v < b.n; ++v) {
        if (used[static_cast<size_t>(v)]) continue;
        if (a.has(u, u) != b.has(v, v)) continue;
        bool ok = true;
        for (int w = 0; w < u && ok; ++w) {
            if (a.has(u, w) != b.has(v, map[static_cast<size_t>(w)])) ok = false;
            if (ok && a.has(w, u) != b.has(map[static_cast<size_t>(w)], v)) ok = false;
        }
        if (!ok) continue;
        map[static_cast<size_t>(u)] = v;
        used[static_cast<size_t>(v)] = 1;
        if (extend_iso(a, b, map, used, u + 1)) return true;
        used[static_cast<size_t>(v)] = 0;
    }
    return false;
}

} // namespace

bool isomorphic(const Frame& a, const Frame& b) {
    if (a.n != b.n) return false;
    size_t ea = 0, eb = 0;
    for (int u = 0; u < a.n; ++u) ea += a.adj[static_cast<size_t>(u)].count();
    for (int u = 0; u < b.n; ++u) eb += b.adj[static_cast<size_t>(u)].count();
    if (ea != eb) return false;
    if (degree_signature(a) != degree_signature(b)) return false;
    std::vector<int> map(static_cast<size_t>(a.n), -1);
    std::vector<char> used(static_cast<size_t>(a.n), 0);
    return extend_iso(a, b, map, used, 0);
}

std::string canonical_key(const Frame& f) {
    if (f.n > 8) throw InvalidInput("canonical_key supports at most 8 worlds");
    std::vector<int> perm(static_cast<size_t>(f.n));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string cur;
        cur.reserve(static_cast<size_t>(f.n) * static_cast<size_t>(f.n));
        for (int u = 0; u < f.n; ++u)
            for (int v = 0; v < f.n; ++v)
                cur.push_back(f.has(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]) ? '1' : '0');
        if (best.empty() || cur < best) best = cur;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::to_string(f.n) + ":" + best;
}

} // namespace kripke
