#include "kripke/limits.hpp"
#include "kripke/errors.hpp"

#include <numeric>

namespace kripke {

Frame terminal_frame() {
    return chain(1);
}

// ---------------------------------------------------------------------------
// Equalizer
// ---------------------------------------------------------------------------

Equalizer equalizer(const PMorphism& f, const PMorphism& g) {
    if (f.dom != g.dom || f.cod != g.cod)
        throw InvalidInput("equalizer requires a parallel pair");
    const Frame& w = f.dom;
    Bits agree(static_cast<size_t>(w.n));
    for (int u = 0; u < w.n; ++u)
        if (f.map[static_cast<size_t>(u)] == g.map[static_cast<size_t>(u)])
            agree.set(static_cast<size_t>(u));
    // keep the worlds whose entire reachable part agrees
    Equalizer e;
    e.set = Bits(static_cast<size_t>(w.n));
    for (int u = 0; u < w.n; ++u)
        if (star(w, u).is_subset_of(agree)) e.set.set(static_cast<size_t>(u));
    e.sub = restriction(w, e.set);
    std::vector<int> incl(e.sub.worlds.begin(), e.sub.worlds.end());
    e.inclusion = make_pmorphism(e.sub.frame, w, std::move(incl));
    return e;
}

// ---------------------------------------------------------------------------
// Coproduct and coequalizer
// ---------------------------------------------------------------------------

Coproduct coproduct(const std::vector<Frame>& fs) {
    DisjointSum d = disjoint_sum(fs);
    Coproduct c;
    c.frame = d.frame;
    for (size_t i = 0; i < fs.size(); ++i) {
        std::vector<int> m(static_cast<size_t>(fs[i].n));
        std::iota(m.begin(), m.end(), d.offsets[i]);
        c.injections.push_back(make_pmorphism(fs[i], c.frame, std::move(m)));
    }
    return c;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

} // namespace

Coequalizer coequalizer(const PMorphism& f, const PMorphism& g) {
    if (f.dom != g.dom || f.cod != g.cod)
        throw InvalidInput("coequalizer requires a parallel pair");
    const Frame& w = f.cod;
    UnionFind uf(w.n);
    for (int u = 0; u < f.dom.n; ++u)
        uf.unite(f.map[static_cast<size_t>(u)], g.map[static_cast<size_t>(u)]);
    // classes numbered by first occurrence
    std::vector<int> class_of(static_cast<size_t>(w.n), -1);
    int k = 0;
    for (int v = 0; v < w.n; ++v) {
        int r = uf.find(v);
        if (class_of[static_cast<size_t>(r)] == -1) class_of[static_cast<size_t>(r)] = k++;
        class_of[static_cast<size_t>(v)] = class_of[static_cast<size_t>(r)];
    }
    Coequalizer q;
    q.frame = Frame(k);
    for (int u = 0; u < w.n; ++u) {
        const Bits& row = w.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
            q.frame.add_edge(class_of[static_cast<size_t>(u)], class_of[v]);
    }
    // validated on every call; failure would mean the construction is wrong
    q.projection = make_pmorphism(w, q.frame, class_of);
    return q;
}

// ---------------------------------------------------------------------------
// Cokernel pair
// ---------------------------------------------------------------------------

CokernelPair cokernel_pair(const PMorphism& f) {
    const Frame& v = f.cod;
    Bits image(static_cast<size_t>(v.n));
    for (int u = 0; u < f.dom.n; ++u) image.set(static_cast<size_t>(f.map[static_cast<size_t>(u)]));
    // worlds: the i1 copy of V first, then the i0 copies of non-image worlds
    std::vector<int> extra_index(static_cast<size_t>(v.n), -1);
    int total = v.n;
    for (int x = 0; x < v.n; ++x)
        if (!image.test(static_cast<size_t>(x))) extra_index[static_cast<size_t>(x)] = total++;

    // (x, i) < (y, j) iff x < y in V and (i == j, or i < j and y is in the image)
    auto copy_of = [&](int world) { return world < v.n ? 1 : 0; };
    auto base_of = [&](int world) {
        if (world < v.n) return world;
        for (int x = 0; x < v.n; ++x)
            if (extra_index[static_cast<size_t>(x)] == world) return x;
        return -1;
    };
    Frame u(total);
    for (int a = 0; a < total; ++a) {
        int xa = base_of(a), ia = copy_of(a);
        for (int b = 0; b < total; ++b) {
            int xb = base_of(b), ib = copy_of(b);
            if (!v.has(xa, xb)) continue;
            if (ia == ib || (ia < ib && image.test(static_cast<size_t>(xb))))
                u.add_edge(a, b);
        }
    }
    std::vector<int> m0(static_cast<size_t>(v.n)), m1(static_cast<size_t>(v.n));
    for (int x = 0; x < v.n; ++x) {
        m1[static_cast<size_t>(x)] = x;
        m0[static_cast<size_t>(x)] = image.test(static_cast<size_t>(x)) ? x : extra_index[static_cast<size_t>(x)];
    }
    CokernelPair c;
    c.frame = u;
    c.i0 = make_pmorphism(v, u, std::move(m0));
    c.i1 = make_pmorphism(v, u, std::move(m1));
    return c;
}

// ---------------------------------------------------------------------------
// Pushout
// ---------------------------------------------------------------------------

Pushout pushout(const PMorphism& b, const PMorphism& c) {
    if (b.dom != c.dom)
        throw InvalidInput("pushout requires a common source");
    Coproduct cp = coproduct({b.cod, c.cod});
    PMorphism leg_b = compose(cp.injections[0], b);
    PMorphism leg_c = compose(cp.injections[1], c);
    Coequalizer q = coequalizer(leg_b, leg_c);
    Pushout p;
    p.frame = q.frame;
    p.from_b = compose(q.projection, cp.injections[0]);
    p.from_c = compose(q.projection, cp.injections[1]);
    return p;
}

// ---------------------------------------------------------------------------
// Pullbacks
// ---------------------------------------------------------------------------

DgrphPullback dgrph_pullback(const PMorphism& f0, const PMorphism& f1) {
    if (f0.cod != f1.cod)
        throw InvalidInput("pullback requires a common target");
    DgrphPullback p;
    for (int a = 0; a < f0.dom.n; ++a)
        for (int b = 0; b < f1.dom.n; ++b)
            if (f0.map[static_cast<size_t>(a)] == f1.map[static_cast<size_t>(b)])
                p.worlds.emplace_back(a, b);
    p.frame = Frame(static_cast<int>(p.worlds.size()));
    for (size_t i = 0; i < p.worlds.size(); ++i)
        for (size_t j = 0; j < p.worlds.size(); ++j)
            if (f0.dom.has(p.worlds[i].first, p.worlds[j].first) &&
                f1.dom.has(p.worlds[i].second, p.worlds[j].second))
                p.frame.add_edge(static_cast<int>(i), static_cast<int>(j));
    std::vector<int> m0(p.worlds.size()), m1(p.worlds.size());
    for (size_t i = 0; i < p.worlds.size(); ++i) {
        m0[i] = p.worlds[i].first;
        m1[i] = p.worlds[i].second;
    }
    std::string why;
    if (is_pmorphism(p.frame, f0.dom, m0, &why))
        p.p0 = PMorphism{p.frame, f0.dom, std::move(m0)};
    else
        p.p0_failure = why;
    if (is_pmorphism(p.frame, f1.dom, m1, &why))
        p.p1 = PMorphism{p.frame, f1.dom, std::move(m1)};
    else
        p.p1_failure = why;
    return p;
}

InverseImage pullback_along_injective(const PMorphism& s, const PMorphism& m) {
    if (s.cod != m.cod)
        throw InvalidInput("pullback requires a common target");
    if (!is_injective(m))
        throw InvalidInput("pullback_along_injective requires an injective second leg");
    std::vector<int> a_of(static_cast<size_t>(s.cod.n), -1);
    for (int a = 0; a < m.dom.n; ++a) a_of[static_cast<size_t>(m.map[static_cast<size_t>(a)])] = a;
    InverseImage r;
    r.set = Bits(static_cast<size_t>(s.dom.n));
    for (int w = 0; w < s.dom.n; ++w)
        if (a_of[static_cast<size_t>(s.map[static_cast<size_t>(w)])] != -1)
            r.set.set(static_cast<size_t>(w));
    r.sub = restriction(s.dom, r.set);
    std::vector<int> incl(r.sub.worlds.begin(), r.sub.worlds.end());
    std::vector<int> toa(r.sub.worlds.size());
    for (size_t i = 0; i < r.sub.worlds.size(); ++i)
        toa[i] = a_of[static_cast<size_t>(s.map[static_cast<size_t>(r.sub.worlds[i])])];
    r.to_w = make_pmorphism(r.sub.frame, s.dom, std::move(incl));
    r.to_a = make_pmorphism(r.sub.frame, m.dom, std::move(toa));
    return r;
}

} // namespace kripke
