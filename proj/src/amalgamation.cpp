#include "kripke/amalgamation.hpp"

#include "kripke/enumeration.hpp"
#include "kripke/errors.hpp"
#include "kripke/limits.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kripke {

namespace {

void require_pmorphism(const PMorphism& f, const char* what) {
    std::string why;
    if (!is_pmorphism(f.dom, f.cod, f.map, &why))
        throw InvalidInput(std::string(what) + ": " + why);
}

bool is_linear_poset(const Frame& f) {
    if (!is_partial_order(f)) return false;
    for (int u = 0; u < f.n; ++u)
        for (int v = u + 1; v < f.n; ++v)
            if (!f.has(u, v) && !f.has(v, u)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Chain route
// ---------------------------------------------------------------------------

// Index relabeling turning a linear poset into the canonical chain, where
// world 0 is the deepest (the root) and indices ascend along the order.
// to_chain[w] is the chain position of world w; from_chain inverts it.
struct ChainLabels {
    std::vector<int> to_chain;
    std::vector<int> from_chain;
};

ChainLabels chain_labels(const Frame& f) {
    ChainLabels l;
    l.from_chain.resize(static_cast<size_t>(f.n));
    std::iota(l.from_chain.begin(), l.from_chain.end(), 0);
    std::sort(l.from_chain.begin(), l.from_chain.end(),
              [&](int a, int b) { return depth(f, a) > depth(f, b); });
    l.to_chain.assign(static_cast<size_t>(f.n), -1);
    for (int i = 0; i < f.n; ++i)
        l.to_chain[static_cast<size_t>(l.from_chain[static_cast<size_t>(i)])] = i;
    return l;
}

// A surjective p-morphism between canonical chains is exactly a monotone
// staircase: it starts at 0, moves in steps of 0 or +1, and ends on top.
void require_staircase(int n, int k, const std::vector<int>& h, const char* what) {
    bool ok = n >= 1 && k >= 1 && h.front() == 0 && h.back() == k - 1;
    for (size_t i = 0; ok && i + 1 < h.size(); ++i)
        ok = h[i + 1] == h[i] || h[i + 1] == h[i] + 1;
    if (!ok)
        throw std::logic_error(std::string(what) +
                               ": chain surjection is not a monotone staircase");
}

// Solves f g0 = g g1 for staircases f : [n] -> [k] and g : [m] -> [k],
// returning (g0 : [t] -> [n], g1 : [t] -> [m]) with t = n + m - k, by
// peeling the first merged step of f.
std::pair<std::vector<int>, std::vector<int>> chain_solve(int n, int k,
                                                          const std::vector<int>& f, int m,
                                                          const std::vector<int>& g) {
    if (n == k) {
        // f is the identity staircase, so g itself closes the square.
        std::vector<int> g1(static_cast<size_t>(m));
        std::iota(g1.begin(), g1.end(), 0);
        return {g, g1};
    }
    int i0 = 0;
    while (f[static_cast<size_t>(i0)] != f[static_cast<size_t>(i0) + 1]) ++i0;
    if (n == k + 1) {
        // Single merge: duplicate the last g-position sitting on the plateau
        // value, sending the lower copy left of the merge and the upper copy
        // right of it.
        int plateau = f[static_cast<size_t>(i0)];
        int j0 = m - 1;
        while (g[static_cast<size_t>(j0)] != plateau) --j0;
        std::vector<int> g0(static_cast<size_t>(m) + 1), g1(static_cast<size_t>(m) + 1);
        for (int y = 0; y <= m; ++y) {
            if (y <= j0) {
                g0[static_cast<size_t>(y)] = g[static_cast<size_t>(y)];
                g1[static_cast<size_t>(y)] = y;
            } else {
                g0[static_cast<size_t>(y)] = g[static_cast<size_t>(y) - 1] + 1;
                g1[static_cast<size_t>(y)] = y - 1;
            }
        }
        return {g0, g1};
    }
    // Split f into one merge after the rest: f = f2 . f1 with f1 : [n] -> [n-1]
    // merging (i0, i0+1) and f2 keeping f's remaining merges.
    std::vector<int> f1(static_cast<size_t>(n)), f2(static_cast<size_t>(n) - 1);
    for (int z = 0; z < n; ++z) f1[static_cast<size_t>(z)] = z <= i0 ? z : z - 1;
    for (int z = 0; z + 1 < n; ++z)
        f2[static_cast<size_t>(z)] = z <= i0 ? f[static_cast<size_t>(z)] : f[static_cast<size_t>(z) + 1];
    auto [a, b] = chain_solve(n - 1, k, f2, m, g);
    int t1 = (n - 1) + m - k;
    auto [c, d] = chain_solve(n, n - 1, f1, t1, a);
    std::vector<int> bd(d.size());
    for (size_t y = 0; y < d.size(); ++y) bd[y] = b[static_cast<size_t>(d[y])];
    return {c, bd};
}

// ---------------------------------------------------------------------------
// Reflection route helpers
// ---------------------------------------------------------------------------

struct ReflectedCospan {
    Frame v, w0, w1;
    PMorphism rho_v, rho_0, rho_1; // collapse maps of the three frames
    Cospan cospan;                 // the induced cospan between reflections
};

ReflectedCospan reflect_cospan(const Cospan& c) {
    ReflectedCospan r;
    auto [pv, rv] = posetal_reflection(c.f0.cod);
    auto [p0, r0] = posetal_reflection(c.f0.dom);
    auto [p1, r1] = posetal_reflection(c.f1.dom);
    r.v = pv;
    r.w0 = p0;
    r.w1 = p1;
    r.rho_v = rv;
    r.rho_0 = r0;
    r.rho_1 = r1;
    auto induce = [&](const PMorphism& f, const PMorphism& rho_dom, const Frame& dom_r) {
        std::vector<int> map(static_cast<size_t>(dom_r.n), -1);
        for (int w = 0; w < f.dom.n; ++w) {
            int cl = rho_dom(w);
            int img = r.rho_v(f(w));
            if (map[static_cast<size_t>(cl)] == -1)
                map[static_cast<size_t>(cl)] = img;
            else if (map[static_cast<size_t>(cl)] != img)
                throw std::logic_error("collapse of a p-morphism is not well defined");
        }
        return make_pmorphism(dom_r, r.v, map);
    };
    r.cospan = Cospan{induce(c.f0, r.rho_0, r.w0), induce(c.f1, r.rho_1, r.w1)};
    return r;
}

std::optional<Coamalgamation> solve_poset_cospan(const Cospan& c, const LogicSpec& logic) {
    if (std::optional<Coamalgamation> horn = coamalgamate_horn(c, logic)) return horn;
    if (is_linear_poset(c.f0.cod) && is_linear_poset(c.f0.dom) && is_linear_poset(c.f1.dom)) {
        Coamalgamation chain = coamalgamate_chain(c.f0, c.f1);
        if (frame_in_logic(logic, chain.apex)) return chain;
    }
    return std::nullopt;
}

int bound_or_max(const std::optional<int>& b) {
    return b ? *b : std::numeric_limits<int>::max();
}

// ---------------------------------------------------------------------------
// Brute-force joint search
// ---------------------------------------------------------------------------

struct JointSearch {
    const Frame& apex;
    const Frame& w0;
    const Frame& w1;
    const std::vector<std::pair<int, int>>& pool; // pairs with a common image
    size_t max_steps;
    size_t& steps;
    std::vector<int> g0, g1;
    std::vector<int> hits0, hits1;
    int missing0, missing1;

    bool go(int u) {
        if (++steps > max_steps)
            throw BudgetExceeded("coamalgamation search exceeded " + std::to_string(max_steps) +
                                 " steps");
        int remaining = apex.n - u;
        if (std::max(missing0, missing1) > remaining) return false;
        if (u == apex.n) {
            std::string why;
            return is_pmorphism(apex, w0, g0, &why) && is_pmorphism(apex, w1, g1, &why);
        }
        for (const auto& [a, b] : pool) {
            if (apex.has(u, u) && (!w0.has(a, a) || !w1.has(b, b))) continue;
            bool ok = true;
            for (int v = 0; v < u && ok; ++v) {
                if (apex.has(u, v) &&
                    (!w0.has(a, g0[static_cast<size_t>(v)]) || !w1.has(b, g1[static_cast<size_t>(v)])))
                    ok = false;
                if (ok && apex.has(v, u) &&
                    (!w0.has(g0[static_cast<size_t>(v)], a) || !w1.has(g1[static_cast<size_t>(v)], b)))
                    ok = false;
            }
            if (!ok) continue;
            g0[static_cast<size_t>(u)] = a;
            g1[static_cast<size_t>(u)] = b;
            if (hits0[static_cast<size_t>(a)]++ == 0) --missing0;
            if (hits1[static_cast<size_t>(b)]++ == 0) --missing1;
            if (go(u + 1)) return true;
            if (--hits0[static_cast<size_t>(a)] == 0) ++missing0;
            if (--hits1[static_cast<size_t>(b)] == 0) ++missing1;
        }
        return false;
    }
};

std::optional<Coamalgamation> route_pipeline(const Cospan& c, const LogicSpec& logic,
                                             int max_size, bool allow_sum, bool* budget_hit);

} // namespace

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

void validate_cospan(const Cospan& c) {
    require_pmorphism(c.f0, "left cospan leg");
    require_pmorphism(c.f1, "right cospan leg");
    if (!(c.f0.cod == c.f1.cod)) throw InvalidInput("cospan legs have different codomains");
    if (!is_surjective(c.f0)) throw InvalidInput("left cospan leg is not surjective");
    if (!is_surjective(c.f1)) throw InvalidInput("right cospan leg is not surjective");
}

void validate_coamalgamation(const Cospan& c, const Coamalgamation& a, const LogicSpec& logic) {
    validate_cospan(c);
    require_pmorphism(a.g0, "left apex leg");
    require_pmorphism(a.g1, "right apex leg");
    if (!(a.g0.dom == a.apex) || !(a.g1.dom == a.apex))
        throw InvalidInput("apex legs do not start at the apex");
    if (!(a.g0.cod == c.f0.dom) || !(a.g1.cod == c.f1.dom))
        throw InvalidInput("apex legs do not end at the cospan domains");
    if (!is_surjective(a.g0)) throw InvalidInput("left apex leg is not surjective");
    if (!is_surjective(a.g1)) throw InvalidInput("right apex leg is not surjective");
    for (int u = 0; u < a.apex.n; ++u)
        if (c.f0(a.g0(u)) != c.f1(a.g1(u)))
            throw InvalidInput("apex square does not commute at world " + std::to_string(u));
    if (!frame_in_logic(logic, a.apex))
        throw InvalidInput("apex frame is outside " + to_string(logic));
}

// ---------------------------------------------------------------------------
// Horn (pullback) route
// ---------------------------------------------------------------------------

std::optional<Coamalgamation> coamalgamate_horn(const Cospan& c, const LogicSpec& logic) {
    validate_cospan(c);
    DgrphPullback pb = dgrph_pullback(c.f0, c.f1);
    if (!pb.p0 || !pb.p1)
        throw std::logic_error("pullback projections of a p-morphism cospan must validate: " +
                               pb.p0_failure + pb.p1_failure);
    if (!is_surjective(*pb.p0) || !is_surjective(*pb.p1))
        throw std::logic_error("pullback projections of a surjective cospan must be surjective");
    if (!frame_in_logic(logic, pb.frame)) return std::nullopt;
    return Coamalgamation{pb.frame, *pb.p0, *pb.p1, "horn"};
}

// ---------------------------------------------------------------------------
// Chain route
// ---------------------------------------------------------------------------

Coamalgamation coamalgamate_chain(const PMorphism& f0, const PMorphism& f1) {
    require_pmorphism(f0, "left chain leg");
    require_pmorphism(f1, "right chain leg");
    if (!(f0.cod == f1.cod)) throw InvalidInput("chain legs have different codomains");
    if (!is_surjective(f0) || !is_surjective(f1))
        throw InvalidInput("chain legs must be surjective");
    if (!is_linear_poset(f0.cod) || !is_linear_poset(f0.dom) || !is_linear_poset(f1.dom))
        throw InvalidInput("chain coamalgamation needs linear posets on all three corners");
    int n = f0.dom.n, m = f1.dom.n, k = f0.cod.n;
    if (k == 0) throw InvalidInput("chain coamalgamation needs a nonempty base");

    ChainLabels lv = chain_labels(f0.cod);
    ChainLabels l0 = chain_labels(f0.dom);
    ChainLabels l1 = chain_labels(f1.dom);
    std::vector<int> f(static_cast<size_t>(n)), g(static_cast<size_t>(m));
    for (int i = 0; i < n; ++i)
        f[static_cast<size_t>(i)] = lv.to_chain[static_cast<size_t>(f0(l0.from_chain[static_cast<size_t>(i)]))];
    for (int j = 0; j < m; ++j)
        g[static_cast<size_t>(j)] = lv.to_chain[static_cast<size_t>(f1(l1.from_chain[static_cast<size_t>(j)]))];
    require_staircase(n, k, f, "left chain leg");
    require_staircase(m, k, g, "right chain leg");

    auto [g0c, g1c] = chain_solve(n, k, f, m, g);
    int t = n + m - k;
    Frame apex = chain(t);
    std::vector<int> m0(static_cast<size_t>(t)), m1(static_cast<size_t>(t));
    for (int y = 0; y < t; ++y) {
        m0[static_cast<size_t>(y)] = l0.from_chain[static_cast<size_t>(g0c[static_cast<size_t>(y)])];
        m1[static_cast<size_t>(y)] = l1.from_chain[static_cast<size_t>(g1c[static_cast<size_t>(y)])];
    }
    Coamalgamation out{apex, make_pmorphism(apex, f0.dom, m0), make_pmorphism(apex, f1.dom, m1),
                       "chain"};
    for (int y = 0; y < t; ++y)
        if (f0(out.g0(y)) != f1(out.g1(y)))
            throw std::logic_error("chain coamalgamation square does not commute");
    if (!is_surjective(out.g0) || !is_surjective(out.g1))
        throw std::logic_error("chain coamalgamation legs are not surjective");
    return out;
}

// ---------------------------------------------------------------------------
// Set-level fiber pairing
// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> set_coamalgamation(const std::vector<int>& s0,
                                                    const std::vector<int>& s1, int base_size,
                                                    size_t size_cap) {
    std::vector<std::vector<int>> fib0(static_cast<size_t>(base_size)),
        fib1(static_cast<size_t>(base_size));
    for (size_t a = 0; a < s0.size(); ++a) {
        if (s0[a] < 0 || s0[a] >= base_size) throw InvalidInput("left map leaves the base");
        fib0[static_cast<size_t>(s0[a])].push_back(static_cast<int>(a));
    }
    for (size_t b = 0; b < s1.size(); ++b) {
        if (s1[b] < 0 || s1[b] >= base_size) throw InvalidInput("right map leaves the base");
        fib1[static_cast<size_t>(s1[b])].push_back(static_cast<int>(b));
    }
    size_t total = 0;
    for (int c = 0; c < base_size; ++c) {
        if (fib0[static_cast<size_t>(c)].empty() || fib1[static_cast<size_t>(c)].empty())
            throw InvalidInput("maps are not surjections onto the base");
        total += std::max(fib0[static_cast<size_t>(c)].size(), fib1[static_cast<size_t>(c)].size());
    }
    if (total > size_cap)
        throw BudgetExceeded("fiber pairing needs " + std::to_string(total) +
                             " points, cap is " + std::to_string(size_cap));
    std::vector<std::pair<int, int>> out;
    out.reserve(total);
    for (int c = 0; c < base_size; ++c) {
        const std::vector<int>& a = fib0[static_cast<size_t>(c)];
        const std::vector<int>& b = fib1[static_cast<size_t>(c)];
        size_t width = std::max(a.size(), b.size());
        for (size_t i = 0; i < width; ++i)
            out.emplace_back(a[std::min(i, a.size() - 1)], b[std::min(i, b.size() - 1)]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reflection route
// ---------------------------------------------------------------------------

std::optional<Coamalgamation> coamalgamate_reflect(const Cospan& c, const LogicSpec& logic) {
    validate_cospan(c);
    const Frame& v = c.f0.cod;
    const Frame& w0 = c.f0.dom;
    const Frame& w1 = c.f1.dom;
    // Cluster inflation produces reflexive clusters, so this route only
    // speaks about preorder cospans.
    for (const Frame* f : {&v, &w0, &w1})
        if (!is_reflexive(*f) || !is_transitive(*f)) return std::nullopt;

    LogicSpec l = normalize(logic);
    LogicSpec collapsed = l;
    collapsed.be = 1;
    collapsed.bi = 1;
    collapsed = normalize(collapsed);

    ReflectedCospan r = reflect_cospan(c);
    std::optional<Coamalgamation> flat = solve_poset_cospan(r.cospan, collapsed);
    if (!flat) return std::nullopt;
    const Frame& u_flat = flat->apex;

    // Fibers of the three collapse maps.
    auto fibers_of = [](const PMorphism& rho, int count) {
        std::vector<std::vector<int>> fib(static_cast<size_t>(count));
        for (int w = 0; w < rho.dom.n; ++w) fib[static_cast<size_t>(rho(w))].push_back(w);
        return fib;
    };
    std::vector<std::vector<int>> cl_v = fibers_of(r.rho_v, r.v.n);
    std::vector<std::vector<int>> cl_0 = fibers_of(r.rho_0, r.w0.n);
    std::vector<std::vector<int>> cl_1 = fibers_of(r.rho_1, r.w1.n);

    int be_cap = bound_or_max(l.be);
    int bi_cap = bound_or_max(l.bi);

    // Inflate each flat apex point into a cluster of world pairs.
    std::vector<std::vector<std::pair<int, int>>> inflated(static_cast<size_t>(u_flat.n));
    for (int u = 0; u < u_flat.n; ++u) {
        const std::vector<int>& c0 = cl_0[static_cast<size_t>(flat->g0(u))];
        const std::vector<int>& c1 = cl_1[static_cast<size_t>(flat->g1(u))];
        const std::vector<int>& cv = cl_v[static_cast<size_t>(r.cospan.f0(flat->g0(u)))];
        // Index the base cluster's worlds that are hit from either side;
        // a world hit from exactly one side cannot be paired.
        std::vector<int> base_index(static_cast<size_t>(v.n), -1);
        std::vector<char> hit0(cv.size(), 0), hit1(cv.size(), 0);
        for (size_t i = 0; i < cv.size(); ++i) base_index[static_cast<size_t>(cv[i])] = static_cast<int>(i);
        for (int a : c0) hit0[static_cast<size_t>(base_index[static_cast<size_t>(c.f0(a))])] = 1;
        for (int b : c1) hit1[static_cast<size_t>(base_index[static_cast<size_t>(c.f1(b))])] = 1;
        std::vector<int> used(static_cast<size_t>(v.n), -1);
        int used_count = 0;
        for (size_t i = 0; i < cv.size(); ++i) {
            if (hit0[i] != hit1[i]) return std::nullopt; // one-sided fiber
            if (hit0[i]) used[static_cast<size_t>(cv[i])] = used_count++;
        }
        std::vector<int> s0, s1;
        for (int a : c0) s0.push_back(used[static_cast<size_t>(c.f0(a))]);
        for (int b : c1) s1.push_back(used[static_cast<size_t>(c.f1(b))]);
        int cap = depth(u_flat, u) == 1 ? be_cap : bi_cap;
        std::vector<std::pair<int, int>> pairs;
        try {
            pairs = set_coamalgamation(s0, s1, used_count, static_cast<size_t>(cap));
        } catch (const BudgetExceeded&) {
            return std::nullopt; // cluster-size cap overflow
        }
        for (std::pair<int, int>& p : pairs)
            p = {c0[static_cast<size_t>(p.first)], c1[static_cast<size_t>(p.second)]};
        inflated[static_cast<size_t>(u)] = std::move(pairs);
    }

    std::vector<int> first(static_cast<size_t>(u_flat.n) + 1, 0);
    for (int u = 0; u < u_flat.n; ++u)
        first[static_cast<size_t>(u) + 1] =
            first[static_cast<size_t>(u)] + static_cast<int>(inflated[static_cast<size_t>(u)].size());
    Frame apex(first.back());
    std::vector<int> m0, m1;
    for (int u = 0; u < u_flat.n; ++u)
        for (const auto& [a, b] : inflated[static_cast<size_t>(u)]) {
            m0.push_back(a);
            m1.push_back(b);
        }
    for (int u = 0; u < u_flat.n; ++u)
        for (int x = 0; x < u_flat.n; ++x) {
            if (!u_flat.has(u, x)) continue;
            for (int i = first[static_cast<size_t>(u)]; i < first[static_cast<size_t>(u) + 1]; ++i)
                for (int j = first[static_cast<size_t>(x)]; j < first[static_cast<size_t>(x) + 1]; ++j)
                    apex.add_edge(i, j);
        }

    Coamalgamation out{apex, make_pmorphism(apex, w0, m0), make_pmorphism(apex, w1, m1),
                       "reflect"};
    auto [re_flat, re_rho] = posetal_reflection(apex);
    if (!isomorphic(re_flat, u_flat))
        throw std::logic_error("cluster inflation changed the collapsed shape");
    if (!frame_in_logic(l, apex)) return std::nullopt;
    validate_coamalgamation(c, out, l);
    return out;
}

// ---------------------------------------------------------------------------
// Pointed decomposition
// ---------------------------------------------------------------------------

std::optional<Coamalgamation> amalgamate_rooted_reduction(const Cospan& c, const LogicSpec& logic,
                                                          const InnerSolver& inner) {
    validate_cospan(c);
    const Frame& v = c.f0.cod;
    const Frame& w0 = c.f0.dom;
    const Frame& w1 = c.f1.dom;

    std::vector<Frame> apexes;
    std::vector<std::vector<int>> maps0, maps1;
    std::vector<std::pair<Bits, Bits>> seen;
    for (int a = 0; a < w0.n; ++a) {
        for (int b = 0; b < w1.n; ++b) {
            if (c.f0(a) != c.f1(b)) continue;
            Bits s0 = star(w0, a), s1 = star(w1, b);
            bool dup = false;
            for (const auto& [x, y] : seen)
                if (x == s0 && y == s1) { dup = true; break; }
            if (dup) continue;
            seen.emplace_back(s0, s1);

            Restriction x0 = restriction(w0, s0);
            Restriction x1 = restriction(w1, s1);
            Bits sv = star(v, c.f0(a));
            Restriction xv = restriction(v, sv);
            std::vector<int> v_index(static_cast<size_t>(v.n), -1);
            for (size_t i = 0; i < xv.worlds.size(); ++i)
                v_index[static_cast<size_t>(xv.worlds[i])] = static_cast<int>(i);
            std::vector<int> h0, h1;
            for (int w : x0.worlds) h0.push_back(v_index[static_cast<size_t>(c.f0(w))]);
            for (int w : x1.worlds) h1.push_back(v_index[static_cast<size_t>(c.f1(w))]);
            Cospan piece{make_pmorphism(x0.frame, xv.frame, h0),
                         make_pmorphism(x1.frame, xv.frame, h1)};
            std::optional<Coamalgamation> sol = inner(piece, logic);
            if (!sol) return std::nullopt;
            std::vector<int> pm0(static_cast<size_t>(sol->apex.n)),
                pm1(static_cast<size_t>(sol->apex.n));
            for (int u = 0; u < sol->apex.n; ++u) {
                pm0[static_cast<size_t>(u)] = x0.worlds[static_cast<size_t>(sol->g0(u))];
                pm1[static_cast<size_t>(u)] = x1.worlds[static_cast<size_t>(sol->g1(u))];
            }
            apexes.push_back(sol->apex);
            maps0.push_back(std::move(pm0));
            maps1.push_back(std::move(pm1));
        }
    }

    DisjointSum sum = disjoint_sum(apexes);
    std::vector<int> m0, m1;
    for (size_t i = 0; i < apexes.size(); ++i) {
        m0.insert(m0.end(), maps0[i].begin(), maps0[i].end());
        m1.insert(m1.end(), maps1[i].begin(), maps1[i].end());
    }
    Coamalgamation out{sum.frame, make_pmorphism(sum.frame, w0, m0),
                       make_pmorphism(sum.frame, w1, m1), "sum"};
    validate_coamalgamation(c, out, logic);
    return out;
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

std::optional<Coamalgamation> coamalgamate_bruteforce(const Cospan& c, const LogicSpec& logic,
                                                      int max_size, size_t max_steps) {
    validate_cospan(c);
    const Frame& w0 = c.f0.dom;
    const Frame& w1 = c.f1.dom;
    std::vector<std::pair<int, int>> pool;
    for (int a = 0; a < w0.n; ++a)
        for (int b = 0; b < w1.n; ++b)
            if (c.f0(a) == c.f1(b)) pool.emplace_back(a, b);

    if (w0.n == 0 && w1.n == 0)
        return Coamalgamation{Frame(0), PMorphism{Frame(0), w0, {}}, PMorphism{Frame(0), w1, {}},
                              "bruteforce"};

    // A surjection cannot come from a smaller frame, nor (between transitive
    // frames) from a shallower one, since images never gain depth.
    bool transitive_corners = is_transitive(w0) && is_transitive(w1);
    int need_depth =
        transitive_corners ? std::max(frame_depth(w0), frame_depth(w1)) : 0;
    size_t steps = 0;
    for (const Frame& apex : logic_representatives(logic, max_size, false)) {
        if (apex.n < std::max(w0.n, w1.n)) continue;
        if (need_depth > 0 && is_transitive(apex) && frame_depth(apex) < need_depth) continue;
        JointSearch js{apex,
                       w0,
                       w1,
                       pool,
                       max_steps,
                       steps,
                       std::vector<int>(static_cast<size_t>(apex.n), -1),
                       std::vector<int>(static_cast<size_t>(apex.n), -1),
                       std::vector<int>(static_cast<size_t>(w0.n), 0),
                       std::vector<int>(static_cast<size_t>(w1.n), 0),
                       w0.n,
                       w1.n};
        if (js.go(0))
            return Coamalgamation{apex, make_pmorphism(apex, w0, js.g0),
                                  make_pmorphism(apex, w1, js.g1), "bruteforce"};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pipeline and audit
// ---------------------------------------------------------------------------

namespace {

std::optional<Coamalgamation> route_pipeline(const Cospan& c, const LogicSpec& logic,
                                             int max_size, bool allow_sum, bool* budget_hit) {
    if (std::optional<Coamalgamation> horn = coamalgamate_horn(c, logic)) return horn;
    if (is_linear_poset(c.f0.cod) && is_linear_poset(c.f0.dom) && is_linear_poset(c.f1.dom)) {
        Coamalgamation chain = coamalgamate_chain(c.f0, c.f1);
        if (frame_in_logic(logic, chain.apex)) return chain;
    }
    if (std::optional<Coamalgamation> refl = coamalgamate_reflect(c, logic)) return refl;
    try {
        if (std::optional<Coamalgamation> bf = coamalgamate_bruteforce(c, logic, max_size))
            return bf;
    } catch (const BudgetExceeded&) {
        if (budget_hit) *budget_hit = true;
    }
    if (allow_sum) {
        InnerSolver inner = [max_size, budget_hit](const Cospan& piece, const LogicSpec& l) {
            return route_pipeline(piece, l, max_size, false, budget_hit);
        };
        try {
            if (std::optional<Coamalgamation> sum = amalgamate_rooted_reduction(c, logic, inner))
                return sum;
        } catch (const BudgetExceeded&) {
            if (budget_hit) *budget_hit = true;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<Coamalgamation> coamalgamate(const Cospan& c, const LogicSpec& logic, int max_size,
                                           const std::string& strategy) {
    validate_cospan(c);
    std::optional<Coamalgamation> out;
    if (strategy == "horn") {
        out = coamalgamate_horn(c, logic);
    } else if (strategy == "chain") {
        Coamalgamation chain = coamalgamate_chain(c.f0, c.f1);
        if (frame_in_logic(logic, chain.apex)) out = chain;
    } else if (strategy == "reflect") {
        out = coamalgamate_reflect(c, logic);
    } else if (strategy == "bruteforce") {
        out = coamalgamate_bruteforce(c, logic, max_size);
    } else if (strategy == "sum") {
        InnerSolver inner = [max_size](const Cospan& piece, const LogicSpec& l) {
            return route_pipeline(piece, l, max_size, false, nullptr);
        };
        out = amalgamate_rooted_reduction(c, logic, inner);
    } else if (strategy == "auto") {
        bool budget_hit = false;
        out = route_pipeline(c, logic, max_size, true, &budget_hit);
        if (!out && budget_hit)
            throw BudgetExceeded("no coamalgamation found before hitting the search budget");
    } else {
        throw InvalidInput("unknown strategy '" + strategy +
                           "' (expected auto, horn, chain, reflect, bruteforce, or sum)");
    }
    if (out) validate_coamalgamation(c, *out, logic);
    return out;
}

AmalgamationAudit audit_amalgamability(const LogicSpec& logic, int size_bound, int apex_bound) {
    AmalgamationAudit audit;
    audit.logic = logic;
    audit.size_bound = size_bound;
    audit.apex_bound = apex_bound < 0 ? 2 * size_bound : apex_bound;

    std::vector<Frame> reps = logic_representatives(logic, size_bound, true);
    for (const Frame& v : reps) {
        for (const Frame& w0 : reps) {
            std::vector<PMorphism> f0s = enumerate_pmorphisms(w0, v, true);
            if (f0s.empty()) continue;
            for (const Frame& w1 : reps) {
                std::vector<PMorphism> f1s = enumerate_pmorphisms(w1, v, true);
                for (const PMorphism& f0 : f0s) {
                    for (const PMorphism& f1 : f1s) {
                        Cospan c{f0, f1};
                        ++audit.cospans;
                        bool budget_hit = false;
                        std::optional<Coamalgamation> sol =
                            route_pipeline(c, logic, audit.apex_bound, true, &budget_hit);
                        if (sol) {
                            validate_coamalgamation(c, *sol, logic);
                            ++audit.solved;
                            ++audit.solved_by_route[sol->route];
                        } else {
                            audit.unsolved.push_back(
                                {c, budget_hit,
                                 budget_hit ? "search budget exhausted"
                                            : "no apex within size " +
                                                  std::to_string(audit.apex_bound)});
                        }
                    }
                }
            }
        }
    }
    return audit;
}

} // namespace kripke
