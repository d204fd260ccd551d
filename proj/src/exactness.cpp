#include "kripke/exactness.hpp"

#include "kripke/errors.hpp"
#include "kripke/limits.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace kripke {

namespace {

PairSelection blank_selection(const Frame& w) {
    PairSelection a;
    a.base = w;
    a.table.assign(static_cast<size_t>(w.n) * static_cast<size_t>(w.n),
                   Bits(static_cast<size_t>(w.n) * static_cast<size_t>(w.n)));
    return a;
}

std::string pair_text(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void require_selection(const PairSelection& a, const Frame& expected_base, const char* what) {
    if (!(a.base == expected_base))
        throw InvalidInput(std::string(what) + ": selection is based on a different frame");
    if (std::optional<SelectionViolation> v = selection_violation(a))
        throw InvalidInput(std::string(what) + ": invalid selection, " + v->text);
}

} // namespace

PairSelection full_selection(const Frame& w) {
    PairSelection a = blank_selection(w);
    for (Bits& cell : a.table) cell.set();
    return a;
}

PairSelection diagonal_selection(const Frame& w) {
    PairSelection a = blank_selection(w);
    for (int x = 0; x < w.n; ++x)
        for (int y = 0; y < w.n; ++y)
            for (int d = 0; d < w.n; ++d) a.insert(x, y, d, d);
    return a;
}

std::optional<SelectionViolation> selection_violation(const PairSelection& a) {
    const Frame& w = a.base;
    const size_t nn = static_cast<size_t>(w.n) * static_cast<size_t>(w.n);
    if (a.table.size() != nn)
        return SelectionViolation{0, "table has " + std::to_string(a.table.size()) +
                                         " entries, expected " + std::to_string(nn)};
    for (const Bits& cell : a.table)
        if (cell.size() != nn)
            return SelectionViolation{0, "table entry has the wrong bit width"};

    for (int x = 0; x < w.n; ++x) {
        Bits st = star(w, x);
        for (size_t ap = st.find_first(); ap != Bits::npos; ap = st.find_next(ap))
            if (!a.contains(x, x, static_cast<int>(ap), static_cast<int>(ap)))
                return SelectionViolation{
                    1, "axiom 1: " + pair_text(static_cast<int>(ap), static_cast<int>(ap)) +
                           " missing from A_" + pair_text(x, x)};
    }
    for (int x = 0; x < w.n; ++x)
        for (int y = 0; y < w.n; ++y)
            for (int ap = 0; ap < w.n; ++ap)
                for (int bp = 0; bp < w.n; ++bp)
                    if (a.contains(x, y, ap, bp) && !a.contains(y, x, bp, ap))
                        return SelectionViolation{2, "axiom 2: " + pair_text(ap, bp) +
                                                         " in A_" + pair_text(x, y) + " but " +
                                                         pair_text(bp, ap) + " not in A_" +
                                                         pair_text(y, x)};
    for (int x = 0; x < w.n; ++x)
        for (int y = 0; y < w.n; ++y)
            for (int z = 0; z < w.n; ++z)
                for (int ap = 0; ap < w.n; ++ap)
                    for (int bp = 0; bp < w.n; ++bp) {
                        if (!a.contains(x, y, ap, bp)) continue;
                        for (int cp = 0; cp < w.n; ++cp)
                            if (a.contains(y, z, bp, cp) && !a.contains(x, z, ap, cp))
                                return SelectionViolation{
                                    3, "axiom 3: " + pair_text(ap, bp) + " in A_" +
                                           pair_text(x, y) + " and " + pair_text(bp, cp) +
                                           " in A_" + pair_text(y, z) + " but " +
                                           pair_text(ap, cp) + " not in A_" + pair_text(x, z)};
                    }
    return std::nullopt;
}

bool validate_pair_selection(const PairSelection& a) { return !selection_violation(a); }

Bits admissible_subframe(const PMorphism& g0, const PMorphism& g1, const PairSelection& a) {
    if (!(g0.dom == g1.dom) || !(g0.cod == g1.cod))
        throw InvalidInput("admissible subframe needs a parallel pair");
    if (!(a.base == g0.cod))
        throw InvalidInput("selection is based on a different frame than the codomain");
    const Frame& u = g0.dom;
    Bits keep(static_cast<size_t>(u.n));
    for (int w = 0; w < u.n; ++w) {
        bool ok = true;
        Bits ws = star(u, w);
        for (size_t y = ws.find_first(); ok && y != Bits::npos; y = ws.find_next(y)) {
            Bits ys = star(u, static_cast<int>(y));
            for (size_t yp = ys.find_first(); ok && yp != Bits::npos; yp = ys.find_next(yp))
                ok = a.contains(g0(static_cast<int>(y)), g1(static_cast<int>(y)),
                                g0(static_cast<int>(yp)), g1(static_cast<int>(yp)));
        }
        if (ok) keep.set(static_cast<size_t>(w));
    }
    return keep;
}

WitnessReport non_effectiveness_witness(const PMorphism& g0, const PMorphism& g1,
                                        const PairSelection& a) {
    require_selection(a, g0.cod, "non-effectiveness witness");
    WitnessReport rep;
    rep.u_a = admissible_subframe(g0, g1, a);
    const Frame& u = g0.dom;
    if (!is_up_closed(u, rep.u_a))
        throw std::logic_error("admissible subframe of a valid selection must be up-closed");
    for (int w = 0; w < u.n; ++w)
        if (!rep.u_a.test(static_cast<size_t>(w))) {
            rep.u_minus_ua_nonempty = true;
            rep.sample_world = w;
            break;
        }

    Restriction sub = restriction(u, rep.u_a);
    std::vector<int> m0, m1;
    for (int w : sub.worlds) {
        m0.push_back(g0(w));
        m1.push_back(g1(w));
    }
    Coequalizer q = coequalizer(make_pmorphism(sub.frame, g0.cod, m0),
                                make_pmorphism(sub.frame, g1.cod, m1));
    rep.f_a = q.projection;

    rep.coequalizer_merges = true;
    for (int w = 0; w < u.n; ++w)
        if (rep.f_a(g0(w)) != rep.f_a(g1(w))) {
            rep.coequalizer_merges = false;
            break;
        }
    rep.verdict = rep.u_minus_ua_nonempty && rep.coequalizer_merges;
    return rep;
}

SelectionEquivalence equivalence_from_selection(const Frame& w, const PairSelection& a,
                                                int depth) {
    if (!is_reflexive(w) || !is_transitive(w))
        throw InvalidInput("equivalence construction needs a reflexive transitive frame");
    require_selection(a, w, "equivalence construction");
    if (w.n > 0 && depth < frame_depth(w))
        throw InvalidInput("depth " + std::to_string(depth) +
                           " cannot exhibit the reflexivity map; needs depth >= " +
                           std::to_string(frame_depth(w)));

    SelectionEquivalence out;
    out.levels = product_levels(w, w, depth);
    const Frame& x = out.levels.frame;

    out.x_a = Bits(static_cast<size_t>(x.n));
    for (int u = 0; u < x.n; ++u) {
        bool ok = true;
        Bits us = star(x, u);
        for (size_t y = us.find_first(); ok && y != Bits::npos; y = us.find_next(y)) {
            Bits ys = star(x, static_cast<int>(y));
            for (size_t yp = ys.find_first(); ok && yp != Bits::npos; yp = ys.find_next(yp))
                ok = a.contains(out.levels.p0[y], out.levels.p1[y], out.levels.p0[yp],
                                out.levels.p1[yp]);
        }
        if (ok) out.x_a.set(static_cast<size_t>(u));
    }
    if (!is_up_closed(x, out.x_a))
        throw std::logic_error("selection subframe of the product must be up-closed");

    out.sub = restriction(x, out.x_a);
    std::vector<int> new_index(static_cast<size_t>(x.n), -1);
    for (size_t i = 0; i < out.sub.worlds.size(); ++i)
        new_index[static_cast<size_t>(out.sub.worlds[i])] = static_cast<int>(i);

    std::vector<int> q0m, q1m;
    for (int old : out.sub.worlds) {
        q0m.push_back(out.levels.p0[static_cast<size_t>(old)]);
        q1m.push_back(out.levels.p1[static_cast<size_t>(old)]);
    }
    out.q0 = make_pmorphism(out.sub.frame, w, q0m);
    out.q1 = make_pmorphism(out.sub.frame, w, q1m);

    // Reflexivity: the identity cone's mediator lands inside X_A (axiom 1).
    PMorphism diag = mediate(Cone{w, identity(w), identity(w)}, out.levels);
    std::vector<int> rm(static_cast<size_t>(w.n));
    for (int v = 0; v < w.n; ++v) {
        int img = diag(v);
        if (new_index[static_cast<size_t>(img)] == -1)
            throw std::logic_error("diagonal mediator left the selection subframe");
        rm[static_cast<size_t>(v)] = new_index[static_cast<size_t>(img)];
    }
    out.r = make_pmorphism(w, out.sub.frame, rm);

    // Symmetry: mediating the swapped projections stays inside X_A (axiom 2).
    PMorphism swapped = mediate(Cone{out.sub.frame, out.q1, out.q0}, out.levels);
    std::vector<int> sm(out.sub.worlds.size());
    for (size_t i = 0; i < out.sub.worlds.size(); ++i) {
        int img = swapped(static_cast<int>(i));
        if (new_index[static_cast<size_t>(img)] == -1)
            throw std::logic_error("swap mediator left the selection subframe");
        sm[i] = new_index[static_cast<size_t>(img)];
    }
    out.s = make_pmorphism(out.sub.frame, out.sub.frame, sm);
    return out;
}

namespace {

// i sees j exactly when j is at or below i; the last world is the root.
Frame descending_chain(int n) {
    Frame f(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) f.add_edge(i, j);
    return f;
}

// Worlds 1..count_a and count_a+1..count_a+count_b form two clusters, both
// seeing a shared reflexive final point at world 0.
Frame clusters_under_final(int count_a, int count_b) {
    Frame f(1 + count_a + count_b);
    f.add_edge(0, 0);
    for (int i = 1; i <= count_a; ++i)
        for (int j = 1; j <= count_a; ++j) f.add_edge(i, j);
    for (int i = count_a + 1; i <= count_a + count_b; ++i)
        for (int j = count_a + 1; j <= count_a + count_b; ++j) f.add_edge(i, j);
    for (int i = 1; i < f.n; ++i) f.add_edge(i, 0);
    return f;
}

// A_(a,b) = everything if neither a nor b is special, the diagonal if both
// are, and empty for mixed pairs.
PairSelection special_point_selection(const Frame& w, int special) {
    PairSelection a = blank_selection(w);
    for (int x = 0; x < w.n; ++x)
        for (int y = 0; y < w.n; ++y) {
            bool sx = x == special, sy = y == special;
            if (!sx && !sy)
                a.table[static_cast<size_t>(x) * w.n + y].set();
            else if (sx && sy)
                for (int d = 0; d < w.n; ++d) a.insert(x, y, d, d);
        }
    return a;
}

// A_(a,b) = pairs with the same cyclic difference as (a,b), over a single
// cluster labeled 0..modulus-1.
PairSelection residue_selection(const Frame& w, int modulus) {
    PairSelection a = blank_selection(w);
    for (int x = 0; x < modulus; ++x)
        for (int y = 0; y < modulus; ++y)
            for (int ap = 0; ap < modulus; ++ap)
                for (int bp = 0; bp < modulus; ++bp)
                    if ((y - x - (bp - ap)) % modulus == 0) a.insert(x, y, ap, bp);
    return a;
}

// Cluster worlds 1..2 carry the mod-2 residue pattern extended by (e,e)
// where e = world 0 is the final point; pairs mixing e with the cluster
// select nothing, and A_(e,e) = {(e,e)}.
PairSelection residue_under_final_selection(const Frame& w) {
    PairSelection a = blank_selection(w);
    a.insert(0, 0, 0, 0);
    for (int x = 1; x <= 2; ++x)
        for (int y = 1; y <= 2; ++y) {
            a.insert(x, y, 0, 0);
            for (int ap = 1; ap <= 2; ++ap)
                for (int bp = 1; bp <= 2; ++bp)
                    if ((y - x - (bp - ap)) % 2 == 0) a.insert(x, y, ap, bp);
        }
    return a;
}

} // namespace

const std::vector<ExactnessFixture>& builtin_fixtures() {
    static const std::vector<ExactnessFixture> fixtures = [] {
        std::vector<ExactnessFixture> out;

        {
            Frame u = descending_chain(4), w = descending_chain(3);
            out.push_back({"chain4", make_pmorphism(u, w, {0, 0, 1, 2}),
                           make_pmorphism(u, w, {0, 1, 1, 2}), special_point_selection(w, 2),
                           {0, 1, 2},
                           {0, 0, 1}});
        }
        {
            Frame f = fork(2);
            out.push_back({"fork2", make_pmorphism(f, f, {0, 1, 2}),
                           make_pmorphism(f, f, {1, 0, 2}), special_point_selection(f, 2),
                           {0, 1},
                           {0, 0, 1}});
        }
        {
            Frame u = disjoint_sum({cluster(3), cluster(3)}).frame;
            Frame w = cluster(3);
            out.push_back({"cluster3", make_pmorphism(u, w, {0, 1, 2, 0, 1, 2}),
                           make_pmorphism(u, w, {1, 2, 0, 0, 2, 1}), residue_selection(w, 3),
                           {0, 1, 2},
                           {0, 0, 0}});
        }
        {
            Frame u = add_root(cluster(2));
            Frame w = cluster(2);
            out.push_back({"cluster2-root", make_pmorphism(u, w, {0, 1, 0}),
                           make_pmorphism(u, w, {1, 0, 0}), residue_selection(w, 2),
                           {0, 1},
                           {0, 0}});
        }
        {
            Frame u = clusters_under_final(3, 2);
            Frame w = clusters_under_final(2, 0);
            out.push_back({"cluster3-final", make_pmorphism(u, w, {0, 1, 1, 2, 1, 2}),
                           make_pmorphism(u, w, {0, 1, 2, 1, 2, 1}),
                           residue_under_final_selection(w),
                           {0, 4, 5},
                           {0, 1, 1}});
        }
        return out;
    }();
    return fixtures;
}

} // namespace kripke
