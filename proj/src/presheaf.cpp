#include "kripke/presheaf.hpp"

#include "kripke/enumeration.hpp"
#include "kripke/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kripke {

namespace {

std::string frame_text(const Frame& f) {
    std::ostringstream out;
    out << "n=" << f.n << " edges";
    bool any = false;
    for (int u = 0; u < f.n; ++u)
        for (int v = 0; v < f.n; ++v)
            if (f.has(u, v)) {
                out << (any ? "," : " ") << u << ">" << v;
                any = true;
            }
    if (!any) out << " none";
    return out.str();
}

std::string sizes_text(const std::vector<int>& sizes) {
    std::ostringstream out;
    out << "[";
    for (size_t i = 0; i < sizes.size(); ++i) out << (i ? "," : "") << sizes[i];
    out << "]";
    return out.str();
}

// hom lists and arrow -> position tables for every object pair, so that
// representables and Yoneda lookups share one canonical element order.
struct HomTables {
    // list[c][d] = arrows c -> d ascending; pos[c][d][arrow] = index or -1
    std::vector<std::vector<std::vector<int>>> list;
    std::vector<std::vector<std::vector<int>>> pos;
};

HomTables hom_tables(const FinCategory& c) {
    HomTables t;
    size_t k = static_cast<size_t>(c.num_objects);
    t.list.assign(k, std::vector<std::vector<int>>(k));
    t.pos.assign(k, std::vector<std::vector<int>>(k, std::vector<int>(c.arrows.size(), -1)));
    for (int a = 0; a < c.num_arrows(); ++a) {
        const auto& ar = c.arrows[static_cast<size_t>(a)];
        auto& lst = t.list[static_cast<size_t>(ar.src)][static_cast<size_t>(ar.dst)];
        t.pos[static_cast<size_t>(ar.src)][static_cast<size_t>(ar.dst)][static_cast<size_t>(a)] =
            static_cast<int>(lst.size());
        lst.push_back(a);
    }
    return t;
}

} // namespace

// ---------------------------------------------------------------------------
// FinCategory
// ---------------------------------------------------------------------------

int FinCategory::compose(int g, int f) const {
    if (g < 0 || g >= num_arrows() || f < 0 || f >= num_arrows())
        throw InvalidInput("compose: arrow id out of range");
    if (arrows[static_cast<size_t>(g)].src != arrows[static_cast<size_t>(f)].dst)
        throw InvalidInput("compose: arrows " + arrows[static_cast<size_t>(g)].name + " and " +
                           arrows[static_cast<size_t>(f)].name + " are not composable");
    return compose_of[static_cast<size_t>(g)][static_cast<size_t>(f)];
}

std::vector<int> FinCategory::hom(int c, int d) const {
    std::vector<int> out;
    for (int a = 0; a < num_arrows(); ++a)
        if (arrows[static_cast<size_t>(a)].src == c && arrows[static_cast<size_t>(a)].dst == d)
            out.push_back(a);
    return out;
}

bool FinCategory::hom_empty(int c, int d) const {
    for (const auto& a : arrows)
        if (a.src == c && a.dst == d) return false;
    return true;
}

FinCategory make_category(int num_objects, std::vector<FinCategory::Arrow> arrows,
                          std::vector<int> identity,
                          std::vector<std::vector<int>> compose_of, std::string name) {
    FinCategory c;
    c.num_objects = num_objects;
    c.arrows = std::move(arrows);
    c.identity = std::move(identity);
    c.compose_of = std::move(compose_of);
    c.name = std::move(name);

    if (num_objects < 0) throw InvalidInput("category: negative object count");
    int na = c.num_arrows();
    for (const auto& a : c.arrows)
        if (a.src < 0 || a.src >= num_objects || a.dst < 0 || a.dst >= num_objects)
            throw InvalidInput("category: arrow endpoint out of range");
    if (static_cast<int>(c.identity.size()) != num_objects)
        throw InvalidInput("category: one identity arrow per object required");
    for (int o = 0; o < num_objects; ++o) {
        int id = c.identity[static_cast<size_t>(o)];
        if (id < 0 || id >= na) throw InvalidInput("category: identity arrow id out of range");
        const auto& a = c.arrows[static_cast<size_t>(id)];
        if (a.src != o || a.dst != o)
            throw InvalidInput("category: identity of object " + std::to_string(o) +
                               " is not an endo-arrow");
    }
    if (static_cast<int>(c.compose_of.size()) != na)
        throw InvalidInput("category: composition table must be arrows x arrows");
    for (const auto& row : c.compose_of)
        if (static_cast<int>(row.size()) != na)
            throw InvalidInput("category: composition table must be arrows x arrows");

    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f) {
            const auto& ag = c.arrows[static_cast<size_t>(g)];
            const auto& af = c.arrows[static_cast<size_t>(f)];
            int gf = c.compose_of[static_cast<size_t>(g)][static_cast<size_t>(f)];
            if (ag.src != af.dst) {
                if (gf != -1)
                    throw InvalidInput("category: non-composable pair has a composite entry");
                continue;
            }
            if (gf < 0 || gf >= na)
                throw InvalidInput("category: composable pair lacks a composite");
            const auto& agf = c.arrows[static_cast<size_t>(gf)];
            if (agf.src != af.src || agf.dst != ag.dst)
                throw InvalidInput("category: composite " + agf.name + " of " + ag.name + " and " +
                                   af.name + " has wrong endpoints");
        }

    for (int f = 0; f < na; ++f) {
        const auto& af = c.arrows[static_cast<size_t>(f)];
        if (c.compose(c.identity[static_cast<size_t>(af.dst)], f) != f ||
            c.compose(f, c.identity[static_cast<size_t>(af.src)]) != f)
            throw InvalidInput("category: identity law fails at arrow " + af.name);
    }
    for (int h = 0; h < na; ++h)
        for (int g = 0; g < na; ++g) {
            if (c.arrows[static_cast<size_t>(h)].src != c.arrows[static_cast<size_t>(g)].dst)
                continue;
            for (int f = 0; f < na; ++f) {
                if (c.arrows[static_cast<size_t>(g)].src != c.arrows[static_cast<size_t>(f)].dst)
                    continue;
                if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
                    throw InvalidInput("category: associativity fails");
            }
        }
    return c;
}

FinCategory monoid_category(std::string name, const std::vector<std::string>& element_names,
                            const std::vector<std::vector<int>>& mult, int identity_index) {
    int k = static_cast<int>(element_names.size());
    if (k <= 0) throw InvalidInput("monoid: at least one element required");
    if (static_cast<int>(mult.size()) != k)
        throw InvalidInput("monoid: multiplication table must be elements x elements");
    std::vector<FinCategory::Arrow> arrows;
    for (const auto& en : element_names) arrows.push_back({0, 0, en});
    std::vector<std::vector<int>> table(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k), -1));
    for (int a = 0; a < k; ++a) {
        if (static_cast<int>(mult[static_cast<size_t>(a)].size()) != k)
            throw InvalidInput("monoid: multiplication table must be elements x elements");
        for (int b = 0; b < k; ++b) {
            int ab = mult[static_cast<size_t>(a)][static_cast<size_t>(b)];
            if (ab < 0 || ab >= k) throw InvalidInput("monoid: product out of range");
            table[static_cast<size_t>(a)][static_cast<size_t>(b)] = ab;
        }
    }
    return make_category(1, std::move(arrows), {identity_index}, std::move(table), std::move(name));
}

FinCategory chain_poset_category(int n) {
    if (n < 1) throw InvalidInput("chain poset: at least one object required");
    std::vector<FinCategory::Arrow> arrows;
    std::vector<std::vector<int>> at(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            at[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<int>(arrows.size());
            arrows.push_back({i, j, std::to_string(i) + "<=" + std::to_string(j)});
        }
    std::vector<int> identity(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) identity[static_cast<size_t>(i)] = at[static_cast<size_t>(i)][static_cast<size_t>(i)];
    int na = static_cast<int>(arrows.size());
    std::vector<std::vector<int>> table(static_cast<size_t>(na), std::vector<int>(static_cast<size_t>(na), -1));
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f)
            if (arrows[static_cast<size_t>(g)].src == arrows[static_cast<size_t>(f)].dst)
                table[static_cast<size_t>(g)][static_cast<size_t>(f)] =
                    at[static_cast<size_t>(arrows[static_cast<size_t>(f)].src)]
                      [static_cast<size_t>(arrows[static_cast<size_t>(g)].dst)];
    return make_category(n, std::move(arrows), std::move(identity), std::move(table),
                         "chain-poset:" + std::to_string(n));
}

FinCategory z2_mult_category() {
    return monoid_category("z2-mult", {"1", "0"}, {{0, 1}, {1, 1}}, 0);
}

FinCategory z3_mult_category() {
    // elements 1, 2, 0 of (Z/3Z, ·): 2·2 = 1, 0 absorbing
    return monoid_category("z3-mult", {"1", "2", "0"}, {{0, 1, 2}, {1, 0, 2}, {2, 2, 2}}, 0);
}

FinCategory trivial_category() { return monoid_category("trivial", {"e"}, {{0}}, 0); }

FinCategory z2_add_category() {
    return monoid_category("z2-add", {"0", "1"}, {{0, 1}, {1, 0}}, 0);
}

FinCategory builtin_category(const std::string& name) {
    if (name == "z2-mult") return z2_mult_category();
    if (name == "z3-mult") return z3_mult_category();
    if (name == "trivial") return trivial_category();
    if (name == "z2-add") return z2_add_category();
    const std::string prefix = "chain-poset:";
    if (name.rfind(prefix, 0) == 0) {
        int n = 0;
        try {
            size_t used = 0;
            n = std::stoi(name.substr(prefix.size()), &used);
            if (used != name.size() - prefix.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw InvalidInput("unknown category '" + name + "'");
        }
        return chain_poset_category(n);
    }
    throw InvalidInput("unknown category '" + name +
                       "' (expected z2-mult, z3-mult, trivial, z2-add, chain-poset:<n>)");
}

// ---------------------------------------------------------------------------
// Presheaves and natural transformations
// ---------------------------------------------------------------------------

int Presheaf::total() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

std::optional<std::string> presheaf_violation(const FinCategory& c, const Presheaf& f) {
    if (static_cast<int>(f.sizes.size()) != c.num_objects)
        return "component count does not match object count";
    for (int s : f.sizes)
        if (s < 0) return "negative component size";
    if (static_cast<int>(f.action.size()) != c.num_arrows())
        return "action count does not match arrow count";
    for (int a = 0; a < c.num_arrows(); ++a) {
        const auto& ar = c.arrows[static_cast<size_t>(a)];
        const auto& fn = f.action[static_cast<size_t>(a)];
        if (static_cast<int>(fn.size()) != f.sizes[static_cast<size_t>(ar.dst)])
            return "action of " + ar.name + " has wrong domain size";
        for (int v : fn)
            if (v < 0 || v >= f.sizes[static_cast<size_t>(ar.src)])
                return "action of " + ar.name + " leaves its codomain";
    }
    for (int o = 0; o < c.num_objects; ++o) {
        const auto& fn = f.action[static_cast<size_t>(c.identity[static_cast<size_t>(o)])];
        for (int x = 0; x < static_cast<int>(fn.size()); ++x)
            if (fn[static_cast<size_t>(x)] != x)
                return "action of the identity at object " + std::to_string(o) + " is not the identity";
    }
    for (int g = 0; g < c.num_arrows(); ++g)
        for (int f2 = 0; f2 < c.num_arrows(); ++f2) {
            if (c.arrows[static_cast<size_t>(g)].src != c.arrows[static_cast<size_t>(f2)].dst) continue;
            int gf = c.compose_of[static_cast<size_t>(g)][static_cast<size_t>(f2)];
            const auto& ag = f.action[static_cast<size_t>(g)];
            const auto& af = f.action[static_cast<size_t>(f2)];
            const auto& agf = f.action[static_cast<size_t>(gf)];
            for (size_t x = 0; x < ag.size(); ++x)
                if (agf[x] != af[static_cast<size_t>(ag[x])])
                    return "contravariance fails: F(" + c.arrows[static_cast<size_t>(gf)].name +
                           ") != F(" + c.arrows[static_cast<size_t>(f2)].name + ") after F(" +
                           c.arrows[static_cast<size_t>(g)].name + ")";
        }
    return std::nullopt;
}

void require_presheaf(const FinCategory& c, const Presheaf& f) {
    if (auto why = presheaf_violation(c, f)) throw InvalidInput("invalid presheaf: " + *why);
}

Presheaf representable_presheaf(const FinCategory& c, int obj) {
    if (obj < 0 || obj >= c.num_objects) throw InvalidInput("representable: object out of range");
    HomTables t = hom_tables(c);
    Presheaf f;
    f.sizes.resize(static_cast<size_t>(c.num_objects));
    for (int e = 0; e < c.num_objects; ++e)
        f.sizes[static_cast<size_t>(e)] =
            static_cast<int>(t.list[static_cast<size_t>(e)][static_cast<size_t>(obj)].size());
    f.action.resize(static_cast<size_t>(c.num_arrows()));
    for (int a = 0; a < c.num_arrows(); ++a) {
        const auto& ar = c.arrows[static_cast<size_t>(a)]; // ar: d -> e, action: hom(e,obj) -> hom(d,obj)
        const auto& from = t.list[static_cast<size_t>(ar.dst)][static_cast<size_t>(obj)];
        auto& fn = f.action[static_cast<size_t>(a)];
        fn.resize(from.size());
        for (size_t x = 0; x < from.size(); ++x) {
            int composite = c.compose(from[x], a);
            fn[x] = t.pos[static_cast<size_t>(ar.src)][static_cast<size_t>(obj)]
                         [static_cast<size_t>(composite)];
        }
    }
    return f;
}

std::optional<std::string> nat_trans_violation(const FinCategory& c, const Presheaf& f,
                                               const Presheaf& g, const NatTrans& a) {
    if (static_cast<int>(a.at.size()) != c.num_objects)
        return "component count does not match object count";
    for (int o = 0; o < c.num_objects; ++o) {
        const auto& fn = a.at[static_cast<size_t>(o)];
        if (static_cast<int>(fn.size()) != f.sizes[static_cast<size_t>(o)])
            return "component at object " + std::to_string(o) + " has wrong domain size";
        for (int v : fn)
            if (v < 0 || v >= g.sizes[static_cast<size_t>(o)])
                return "component at object " + std::to_string(o) + " leaves its codomain";
    }
    for (int h = 0; h < c.num_arrows(); ++h) {
        const auto& ar = c.arrows[static_cast<size_t>(h)]; // h: d -> c
        int d = ar.src, cc = ar.dst;
        for (int x = 0; x < f.sizes[static_cast<size_t>(cc)]; ++x) {
            int lhs = a.at[static_cast<size_t>(d)]
                          [static_cast<size_t>(f.action[static_cast<size_t>(h)][static_cast<size_t>(x)])];
            int rhs = g.action[static_cast<size_t>(h)]
                              [static_cast<size_t>(a.at[static_cast<size_t>(cc)][static_cast<size_t>(x)])];
            if (lhs != rhs) return "naturality fails at arrow " + ar.name;
        }
    }
    return std::nullopt;
}

void require_nat_trans(const FinCategory& c, const Presheaf& f, const Presheaf& g,
                       const NatTrans& a) {
    if (auto why = nat_trans_violation(c, f, g, a))
        throw InvalidInput("invalid natural transformation: " + *why);
}

// ---------------------------------------------------------------------------
// Frames of elements
// ---------------------------------------------------------------------------

ElementsFrame elements_frame(const FinCategory& c, const Presheaf& f, bool strict) {
    require_presheaf(c, f);
    ElementsFrame e;
    e.first_world.resize(static_cast<size_t>(c.num_objects));
    int n = 0;
    for (int o = 0; o < c.num_objects; ++o) {
        e.first_world[static_cast<size_t>(o)] = n;
        for (int x = 0; x < f.sizes[static_cast<size_t>(o)]; ++x) {
            e.object_of.push_back(o);
            e.element_of.push_back(x);
            ++n;
        }
    }
    e.frame = Frame(n);
    for (int a = 0; a < c.num_arrows(); ++a) {
        const auto& ar = c.arrows[static_cast<size_t>(a)]; // a: d -> c, F(a): F(c) -> F(d)
        if (strict && !c.hom_empty(ar.dst, ar.src)) continue;
        for (int x = 0; x < f.sizes[static_cast<size_t>(ar.dst)]; ++x) {
            int y = f.action[static_cast<size_t>(a)][static_cast<size_t>(x)];
            e.frame.add_edge(e.world_of(ar.dst, x), e.world_of(ar.src, y));
        }
    }
    if (!strict) {
        if (!is_reflexive(e.frame) || !is_transitive(e.frame))
            throw std::logic_error("frame of elements is not a preorder");
    } else {
        if (!is_irreflexive(e.frame) || !is_transitive(e.frame))
            throw std::logic_error("strict frame of elements is not irreflexive transitive");
    }
    return e;
}

PMorphism k_on_morphism(const FinCategory& c, const Presheaf& f, const Presheaf& g,
                        const NatTrans& a, bool strict) {
    require_nat_trans(c, f, g, a);
    ElementsFrame ef = elements_frame(c, f, strict);
    ElementsFrame eg = elements_frame(c, g, strict);
    std::vector<int> map(static_cast<size_t>(ef.frame.n));
    for (int w = 0; w < ef.frame.n; ++w) {
        int o = ef.object_of[static_cast<size_t>(w)];
        int x = ef.element_of[static_cast<size_t>(w)];
        map[static_cast<size_t>(w)] =
            eg.world_of(o, a.at[static_cast<size_t>(o)][static_cast<size_t>(x)]);
    }
    std::string why;
    if (!is_pmorphism(ef.frame, eg.frame, map, &why))
        throw std::logic_error("induced map on element frames is not a p-morphism: " + why);
    return make_pmorphism(ef.frame, eg.frame, std::move(map));
}

// ---------------------------------------------------------------------------
// Frame-to-presheaf functor
// ---------------------------------------------------------------------------

int FramePresheaf::index_of(int c, const std::vector<int>& map) const {
    const auto& lst = maps[static_cast<size_t>(c)];
    for (size_t i = 0; i < lst.size(); ++i)
        if (lst[i] == map) return static_cast<int>(i);
    return -1;
}

FramePresheaf frame_presheaf(const FinCategory& c, const Frame& w, bool strict,
                             size_t max_steps) {
    HomTables t = hom_tables(c);
    FramePresheaf fp;
    fp.base = w;
    fp.presheaf.sizes.resize(static_cast<size_t>(c.num_objects));
    fp.presheaf.action.resize(static_cast<size_t>(c.num_arrows()));
    fp.maps.resize(static_cast<size_t>(c.num_objects));
    fp.rep_frames.resize(static_cast<size_t>(c.num_objects));
    fp.id_world.resize(static_cast<size_t>(c.num_objects));

    for (int o = 0; o < c.num_objects; ++o) {
        fp.rep_frames[static_cast<size_t>(o)] =
            elements_frame(c, representable_presheaf(c, o), strict);
        const auto& ef = fp.rep_frames[static_cast<size_t>(o)];
        int id_pos = t.pos[static_cast<size_t>(o)][static_cast<size_t>(o)]
                          [static_cast<size_t>(c.identity[static_cast<size_t>(o)])];
        fp.id_world[static_cast<size_t>(o)] = ef.world_of(o, id_pos);
        auto ms = enumerate_pmorphisms(ef.frame, w, false, max_steps);
        auto& out = fp.maps[static_cast<size_t>(o)];
        out.reserve(ms.size());
        for (auto& m : ms) out.push_back(std::move(m.map));
        fp.presheaf.sizes[static_cast<size_t>(o)] = static_cast<int>(out.size());
    }

    // per-object lookup from world map to component index
    std::vector<std::map<std::vector<int>, int>> index(static_cast<size_t>(c.num_objects));
    for (int o = 0; o < c.num_objects; ++o)
        for (size_t i = 0; i < fp.maps[static_cast<size_t>(o)].size(); ++i)
            index[static_cast<size_t>(o)].emplace(fp.maps[static_cast<size_t>(o)][i],
                                                  static_cast<int>(i));

    for (int a = 0; a < c.num_arrows(); ++a) {
        const auto& ar = c.arrows[static_cast<size_t>(a)]; // a: d -> c
        int d = ar.src, cc = ar.dst;
        const auto& ed = fp.rep_frames[static_cast<size_t>(d)];
        const auto& ec = fp.rep_frames[static_cast<size_t>(cc)];
        // the induced map on representables' element frames: (e, u) -> (e, a∘u)
        std::vector<int> kh(static_cast<size_t>(ed.frame.n));
        for (int wd = 0; wd < ed.frame.n; ++wd) {
            int e = ed.object_of[static_cast<size_t>(wd)];
            int ui = ed.element_of[static_cast<size_t>(wd)];
            int u = t.list[static_cast<size_t>(e)][static_cast<size_t>(d)][static_cast<size_t>(ui)];
            int au = c.compose(a, u);
            kh[static_cast<size_t>(wd)] = ec.world_of(
                e, t.pos[static_cast<size_t>(e)][static_cast<size_t>(cc)][static_cast<size_t>(au)]);
        }
        auto& fn = fp.presheaf.action[static_cast<size_t>(a)];
        fn.resize(fp.maps[static_cast<size_t>(cc)].size());
        for (size_t gi = 0; gi < fp.maps[static_cast<size_t>(cc)].size(); ++gi) {
            const auto& g = fp.maps[static_cast<size_t>(cc)][gi];
            std::vector<int> res(static_cast<size_t>(ed.frame.n));
            for (int wd = 0; wd < ed.frame.n; ++wd)
                res[static_cast<size_t>(wd)] = g[static_cast<size_t>(kh[static_cast<size_t>(wd)])];
            auto it = index[static_cast<size_t>(d)].find(res);
            if (it == index[static_cast<size_t>(d)].end())
                throw std::logic_error("precomposition left the enumerated p-morphism presheaf");
            fn[gi] = it->second;
        }
    }

    if (auto why = presheaf_violation(c, fp.presheaf))
        throw std::logic_error("p-morphism presheaf violates the presheaf laws: " + *why);
    return fp;
}

NatTrans frame_presheaf_on_morphism(const FinCategory& c, const FramePresheaf& fv,
                                    const FramePresheaf& fw, const PMorphism& phi) {
    if (phi.dom != fv.base || phi.cod != fw.base)
        throw InvalidInput("post-composition: p-morphism endpoints do not match the presheaves");
    NatTrans a;
    a.at.resize(static_cast<size_t>(c.num_objects));
    for (int o = 0; o < c.num_objects; ++o) {
        const auto& lst = fv.maps[static_cast<size_t>(o)];
        auto& fn = a.at[static_cast<size_t>(o)];
        fn.resize(lst.size());
        for (size_t i = 0; i < lst.size(); ++i) {
            std::vector<int> res(lst[i].size());
            for (size_t x = 0; x < lst[i].size(); ++x)
                res[x] = phi.map[static_cast<size_t>(lst[i][x])];
            int idx = fw.index_of(o, res);
            if (idx < 0)
                throw std::logic_error("post-composition left the enumerated p-morphism presheaf");
            fn[i] = idx;
        }
    }
    if (auto why = nat_trans_violation(c, fv.presheaf, fw.presheaf, a))
        throw std::logic_error("post-composition is not natural: " + *why);
    return a;
}

// ---------------------------------------------------------------------------
// Counit and unit
// ---------------------------------------------------------------------------

namespace {

// evaluation map of a p-morphism presheaf: world (c, g) -> g(id_c)
std::vector<int> evaluation_map(const FramePresheaf& fp, const ElementsFrame& kfw) {
    std::vector<int> map(static_cast<size_t>(kfw.frame.n));
    for (int wk = 0; wk < kfw.frame.n; ++wk) {
        int o = kfw.object_of[static_cast<size_t>(wk)];
        int gi = kfw.element_of[static_cast<size_t>(wk)];
        map[static_cast<size_t>(wk)] =
            fp.maps[static_cast<size_t>(o)][static_cast<size_t>(gi)]
                   [static_cast<size_t>(fp.id_world[static_cast<size_t>(o)])];
    }
    return map;
}

} // namespace

Counit counit(const FinCategory& c, const Frame& w, bool strict, size_t max_steps) {
    Counit cu;
    cu.fw = frame_presheaf(c, w, strict, max_steps);
    cu.kfw = elements_frame(c, cu.fw.presheaf, strict);
    std::vector<int> map = evaluation_map(cu.fw, cu.kfw);
    std::string why;
    if (!is_pmorphism(cu.kfw.frame, w, map, &why))
        throw std::logic_error("counit is not a p-morphism: " + why);
    cu.epsilon = make_pmorphism(cu.kfw.frame, w, std::move(map));
    return cu;
}

Unit unit(const FinCategory& c, const Presheaf& f, bool strict, size_t max_steps) {
    require_presheaf(c, f);
    HomTables t = hom_tables(c);
    Unit un;
    un.kf = elements_frame(c, f, strict);
    un.fkf = frame_presheaf(c, un.kf.frame, strict, max_steps);
    un.eta.at.resize(static_cast<size_t>(c.num_objects));
    for (int o = 0; o < c.num_objects; ++o) {
        const auto& rep = un.fkf.rep_frames[static_cast<size_t>(o)];
        auto& fn = un.eta.at[static_cast<size_t>(o)];
        fn.resize(static_cast<size_t>(f.sizes[static_cast<size_t>(o)]));
        for (int x = 0; x < f.sizes[static_cast<size_t>(o)]; ++x) {
            // the p-morphism (e, u) -> (e, F(u)(x)) out of the representable's frame
            std::vector<int> m(static_cast<size_t>(rep.frame.n));
            for (int wd = 0; wd < rep.frame.n; ++wd) {
                int e = rep.object_of[static_cast<size_t>(wd)];
                int ui = rep.element_of[static_cast<size_t>(wd)];
                int u = t.list[static_cast<size_t>(e)][static_cast<size_t>(o)]
                              [static_cast<size_t>(ui)];
                m[static_cast<size_t>(wd)] = un.kf.world_of(
                    e, f.action[static_cast<size_t>(u)][static_cast<size_t>(x)]);
            }
            int idx = un.fkf.index_of(o, m);
            if (idx < 0)
                throw std::logic_error("unit component is not among the enumerated p-morphisms");
            fn[static_cast<size_t>(x)] = idx;
        }
    }
    if (auto why = nat_trans_violation(c, f, un.fkf.presheaf, un.eta))
        throw std::logic_error("unit is not natural: " + *why);
    return un;
}

bool triangle_frame_identity(const FinCategory& c, const Presheaf& f, bool strict) {
    Unit un = unit(c, f, strict);
    for (int w = 0; w < un.kf.frame.n; ++w) {
        int o = un.kf.object_of[static_cast<size_t>(w)];
        int x = un.kf.element_of[static_cast<size_t>(w)];
        int gi = un.eta.at[static_cast<size_t>(o)][static_cast<size_t>(x)];
        int val = un.fkf.maps[static_cast<size_t>(o)][static_cast<size_t>(gi)]
                             [static_cast<size_t>(un.fkf.id_world[static_cast<size_t>(o)])];
        if (val != w) return false;
    }
    return true;
}

bool triangle_presheaf_identity(const FinCategory& c, const Counit& cu, bool strict) {
    Unit un = unit(c, cu.fw.presheaf, strict);
    if (un.kf.frame != cu.kfw.frame)
        throw std::logic_error("element frame of the p-morphism presheaf is not reproducible");
    NatTrans feps = frame_presheaf_on_morphism(c, un.fkf, cu.fw, cu.epsilon);
    for (int o = 0; o < c.num_objects; ++o)
        for (int i = 0; i < cu.fw.presheaf.sizes[static_cast<size_t>(o)]; ++i)
            if (feps.at[static_cast<size_t>(o)]
                       [static_cast<size_t>(un.eta.at[static_cast<size_t>(o)][static_cast<size_t>(i)])] != i)
                return false;
    return true;
}

bool triangle_presheaf_identity(const FinCategory& c, const Frame& w, bool strict) {
    return triangle_presheaf_identity(c, counit(c, w, strict), strict);
}

// ---------------------------------------------------------------------------
// Presheaf enumeration
// ---------------------------------------------------------------------------

namespace {

void size_vectors(int objects, int max_total, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == objects) {
        out.push_back(cur);
        return;
    }
    int used = std::accumulate(cur.begin(), cur.end(), 0);
    for (int s = 0; s + used <= max_total; ++s) {
        cur.push_back(s);
        size_vectors(objects, max_total, cur, out);
        cur.pop_back();
    }
}

std::string canonical_presheaf_key(const FinCategory& c, const Presheaf& f) {
    // canonical form under per-object relabelings: lexicographically least
    // serialization of the relabeled actions
    std::vector<std::vector<int>> perms(static_cast<size_t>(c.num_objects));
    for (int o = 0; o < c.num_objects; ++o) {
        perms[static_cast<size_t>(o)].resize(static_cast<size_t>(f.sizes[static_cast<size_t>(o)]));
        std::iota(perms[static_cast<size_t>(o)].begin(), perms[static_cast<size_t>(o)].end(), 0);
    }
    std::string best;
    bool have = false;
    std::vector<std::vector<int>> inv = perms;
    // iterate the product of per-object permutations with an odometer of
    // std::next_permutation states
    std::vector<std::vector<int>> p = perms;
    while (true) {
        for (int o = 0; o < c.num_objects; ++o)
            for (int x = 0; x < f.sizes[static_cast<size_t>(o)]; ++x)
                inv[static_cast<size_t>(o)][static_cast<size_t>(p[static_cast<size_t>(o)][static_cast<size_t>(x)])] = x;
        std::ostringstream out;
        for (int s : f.sizes) out << s << ";";
        for (int a = 0; a < c.num_arrows(); ++a) {
            const auto& ar = c.arrows[static_cast<size_t>(a)];
            const auto& fn = f.action[static_cast<size_t>(a)];
            out << "|";
            for (int x2 = 0; x2 < f.sizes[static_cast<size_t>(ar.dst)]; ++x2) {
                int x = inv[static_cast<size_t>(ar.dst)][static_cast<size_t>(x2)];
                out << p[static_cast<size_t>(ar.src)][static_cast<size_t>(fn[static_cast<size_t>(x)])]
                    << ",";
            }
        }
        std::string s = out.str();
        if (!have || s < best) {
            best = std::move(s);
            have = true;
        }
        int o = 0;
        while (o < c.num_objects &&
               !std::next_permutation(p[static_cast<size_t>(o)].begin(), p[static_cast<size_t>(o)].end()))
            ++o;
        if (o == c.num_objects) break;
    }
    return best;
}

} // namespace

std::vector<Presheaf> enumerate_presheaves(const FinCategory& c, int max_total, bool up_to_iso) {
    std::vector<std::vector<int>> sizes;
    {
        std::vector<int> cur;
        size_vectors(c.num_objects, max_total, cur, sizes);
    }
    std::vector<int> free_arrows;
    for (int a = 0; a < c.num_arrows(); ++a) {
        bool is_id = false;
        for (int o = 0; o < c.num_objects; ++o)
            if (c.identity[static_cast<size_t>(o)] == a) is_id = true;
        if (!is_id) free_arrows.push_back(a);
    }

    std::vector<Presheaf> out;
    std::set<std::string> seen;
    for (const auto& sz : sizes) {
        Presheaf f;
        f.sizes = sz;
        f.action.resize(static_cast<size_t>(c.num_arrows()));
        for (int o = 0; o < c.num_objects; ++o) {
            auto& fn = f.action[static_cast<size_t>(c.identity[static_cast<size_t>(o)])];
            fn.resize(static_cast<size_t>(sz[static_cast<size_t>(o)]));
            std::iota(fn.begin(), fn.end(), 0);
        }
        bool impossible = false;
        for (int a : free_arrows) {
            const auto& ar = c.arrows[static_cast<size_t>(a)];
            if (sz[static_cast<size_t>(ar.src)] == 0 && sz[static_cast<size_t>(ar.dst)] > 0)
                impossible = true;
            f.action[static_cast<size_t>(a)].assign(
                static_cast<size_t>(sz[static_cast<size_t>(ar.dst)]), 0);
        }
        if (impossible) continue;

        // odometer over the free arrows' function choices
        while (true) {
            if (!presheaf_violation(c, f)) {
                if (up_to_iso) {
                    if (seen.insert(canonical_presheaf_key(c, f)).second) out.push_back(f);
                } else {
                    out.push_back(f);
                }
            }
            size_t ai = 0;
            for (; ai < free_arrows.size(); ++ai) {
                auto& fn = f.action[static_cast<size_t>(free_arrows[ai])];
                int cod = sz[static_cast<size_t>(
                    c.arrows[static_cast<size_t>(free_arrows[ai])].src)];
                bool carried = true;
                for (size_t x = 0; x < fn.size(); ++x) {
                    if (fn[x] + 1 < cod) {
                        ++fn[x];
                        for (size_t y = 0; y < x; ++y) fn[y] = 0;
                        carried = false;
                        break;
                    }
                }
                if (!carried) break;
                for (auto& v : fn) v = 0;
            }
            if (ai == free_arrows.size()) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Counit injectivity
// ---------------------------------------------------------------------------

bool counit_injective(const FinCategory& c, const Frame& w, bool strict) {
    Counit cu = counit(c, w, strict);
    std::vector<char> seen(static_cast<size_t>(w.n), 0);
    for (int v : cu.epsilon.map) {
        if (seen[static_cast<size_t>(v)]) return false;
        seen[static_cast<size_t>(v)] = 1;
    }
    return true;
}

namespace {

enum class MonoidKind { None, Z2Mult, Z3Mult, Trivial, Z2Add };

MonoidKind monoid_kind(const std::string& name) {
    if (name == "z2-mult") return MonoidKind::Z2Mult;
    if (name == "z3-mult") return MonoidKind::Z3Mult;
    if (name == "trivial") return MonoidKind::Trivial;
    if (name == "z2-add") return MonoidKind::Z2Add;
    return MonoidKind::None;
}

// The closed-form tuple characterizations of the p-morphisms from the
// representable's element frame into an arbitrary frame, by successor
// rows.  Injectivity of the counit means: no root value is shared by two
// distinct valid tuples (the counit image is the tuple's first entry).

bool rows_injective_trivial(int, const std::uint32_t*) {
    // maps from the one-point reflexive frame are the worlds w with
    // row(w) = {w}; the counit image is w itself, so images never collide
    return true;
}

bool rows_injective_z2_mult(int n, const std::uint32_t* rows) {
    // maps from the two-chain are pairs (r, t) with row(r) = {r, t} and
    // row(t) = {t}; the counit image is r
    for (int r = 0; r < n; ++r) {
        std::uint32_t m = rows[r];
        if (!(m >> r & 1u)) continue;
        int cnt = 0;
        for (int t2 = 0; t2 < n; ++t2) {
            if (!(m >> t2 & 1u)) continue;
            if (rows[t2] == (1u << t2) && m == ((1u << r) | (1u << t2)) && ++cnt > 1) return false;
        }
    }
    return true;
}

bool rows_injective_z2_add(int n, const std::uint32_t* rows) {
    // maps from the two-cluster are pairs (x0, x1) with
    // row(x0) = row(x1) = {x0, x1}; the counit image is x0
    for (int x0 = 0; x0 < n; ++x0) {
        std::uint32_t m = rows[x0];
        if (!(m >> x0 & 1u)) continue;
        int cnt = 0;
        for (int x1 = 0; x1 < n; ++x1) {
            if (!(m >> x1 & 1u)) continue;
            if (m == ((1u << x0) | (1u << x1)) && rows[x1] == m && ++cnt > 1) return false;
        }
    }
    return true;
}

bool rows_injective_z3_mult(int n, const std::uint32_t* rows) {
    // maps from the two-cluster-below-a-final-point are triples
    // (x1, x2, e) with row(x1) = row(x2) = {x1, x2, e} and row(e) = {e};
    // the counit image is x1
    for (int x1 = 0; x1 < n; ++x1) {
        std::uint32_t m = rows[x1];
        if (!(m >> x1 & 1u)) continue;
        int cnt = 0;
        for (int x2 = 0; x2 < n; ++x2) {
            if (!(m >> x2 & 1u)) continue;
            if (rows[x2] != m) continue;
            for (int e = 0; e < n; ++e) {
                if (!(m >> e & 1u)) continue;
                if (rows[e] == (1u << e) && m == ((1u << x1) | (1u << x2) | (1u << e)) &&
                    ++cnt > 1)
                    return false;
            }
        }
    }
    return true;
}

bool rows_injective(MonoidKind kind, int n, const std::uint32_t* rows) {
    switch (kind) {
    case MonoidKind::Z2Mult: return rows_injective_z2_mult(n, rows);
    case MonoidKind::Z3Mult: return rows_injective_z3_mult(n, rows);
    case MonoidKind::Trivial: return rows_injective_trivial(n, rows);
    case MonoidKind::Z2Add: return rows_injective_z2_add(n, rows);
    case MonoidKind::None: break;
    }
    throw std::logic_error("no closed-form counit check for this category");
}

} // namespace

bool counit_injective_fast(const FinCategory& c, const Frame& w) {
    MonoidKind kind = monoid_kind(c.name);
    if (kind == MonoidKind::None)
        throw InvalidInput("no closed-form counit check for category '" + c.name + "'");
    if (w.n > 31) throw InvalidInput("closed-form counit check supports at most 31 worlds");
    std::vector<std::uint32_t> rows(static_cast<size_t>(w.n), 0);
    for (int u = 0; u < w.n; ++u)
        for (int v = 0; v < w.n; ++v)
            if (w.has(u, v)) rows[static_cast<size_t>(u)] |= 1u << v;
    return rows_injective(kind, w.n, rows.data());
}

// ---------------------------------------------------------------------------
// verify_equivalence
// ---------------------------------------------------------------------------

EquivalenceReport verify_equivalence(const FinCategory& c, const LogicSpec& l,
                                     int frame_bound, int presheaf_bound, bool strict) {
    EquivalenceReport rep;
    auto violation = [&](const std::string& text) {
        rep.ok = false;
        if (rep.violations.size() < 50) rep.violations.push_back(text);
    };

    // (a) element frames of presheaves land in the logic; frame-side
    //     triangles; evaluation map surjective for every presheaf
    auto presheaves = enumerate_presheaves(c, presheaf_bound, c.num_objects == 1);
    for (size_t pi = 0; pi < presheaves.size(); ++pi) {
        const Presheaf& f = presheaves[pi];
        Unit un = unit(c, f, strict);
        ++rep.presheaves_checked;
        if (!frame_in_logic(l, un.kf.frame))
            violation("presheaf #" + std::to_string(pi) + " sizes " + sizes_text(f.sizes) +
                      ": element frame (" + frame_text(un.kf.frame) + ") is not in " +
                      to_string(l));
        bool tri = true;
        for (int w = 0; w < un.kf.frame.n && tri; ++w) {
            int o = un.kf.object_of[static_cast<size_t>(w)];
            int x = un.kf.element_of[static_cast<size_t>(w)];
            int gi = un.eta.at[static_cast<size_t>(o)][static_cast<size_t>(x)];
            tri = un.fkf.maps[static_cast<size_t>(o)][static_cast<size_t>(gi)]
                             [static_cast<size_t>(un.fkf.id_world[static_cast<size_t>(o)])] == w;
        }
        ++rep.triangles_checked;
        if (!tri)
            violation("presheaf #" + std::to_string(pi) + " sizes " + sizes_text(f.sizes) +
                      ": frame-side triangle identity fails");
        // the evaluation map of the p-morphism presheaf covers the element frame
        std::vector<char> hit(static_cast<size_t>(un.kf.frame.n), 0);
        for (int o = 0; o < c.num_objects; ++o)
            for (const auto& g : un.fkf.maps[static_cast<size_t>(o)])
                hit[static_cast<size_t>(
                    g[static_cast<size_t>(un.fkf.id_world[static_cast<size_t>(o)])])] = 1;
        if (std::find(hit.begin(), hit.end(), 0) != hit.end())
            violation("presheaf #" + std::to_string(pi) + " sizes " + sizes_text(f.sizes) +
                      ": counit at the element frame is not surjective");
    }

    // (b) counit bijective on logic frames; presheaf-side triangles
    std::set<std::string> seen;
    auto check_frame = [&](const Frame& w) {
        if (!frame_in_logic(l, w)) return true;
        if (w.n <= 8 && !seen.insert(canonical_key(w)).second) return true;
        Counit cu = counit(c, w, strict);
        ++rep.logic_frames_checked;
        bool bij = cu.kfw.frame.n == w.n && is_injective(cu.epsilon) && is_surjective(cu.epsilon);
        if (!bij)
            violation("frame " + frame_text(w) + ": counit is not bijective (" +
                      std::to_string(cu.kfw.frame.n) + " worlds above " + std::to_string(w.n) +
                      ")");
        ++rep.triangles_checked;
        if (!triangle_presheaf_identity(c, cu, strict))
            violation("frame " + frame_text(w) + ": presheaf-side triangle identity fails");
        return true;
    };
    check_frame(Frame(0));
    bool preorder_base = l.base == Base::S4 || l.base == Base::S4_2 || l.base == Base::S4_3 ||
                         l.base == Base::Grz || l.base == Base::Grz_3 || l.base == Base::S5;
    for (int n = 1; n <= frame_bound; ++n) {
        if (preorder_base)
            for_each_preorder(n, check_frame);
        else if (l.base == Base::K)
            for_each_frame(n, check_frame);
        else
            for_each_transitive_frame(n, check_frame);
    }

    // (c) counit injective for every frame up to the bound
    MonoidKind kind = strict ? MonoidKind::None : monoid_kind(c.name);
    rep.all_frames_bound = kind != MonoidKind::None ? frame_bound : std::min(frame_bound, 3);
    ++rep.all_frames_checked; // the empty frame
    for (int n = 1; n <= rep.all_frames_bound; ++n) {
        if (kind != MonoidKind::None) {
            for_each_frame_rows(n, [&](const std::uint32_t* rows) {
                ++rep.all_frames_checked;
                if (!rows_injective(kind, n, rows)) {
                    Frame f(n);
                    for (int u = 0; u < n; ++u)
                        for (int v = 0; v < n; ++v)
                            if (rows[u] >> v & 1u) f.add_edge(u, v);
                    violation("frame " + frame_text(f) + ": counit is not injective");
                    return false;
                }
                return true;
            });
        } else {
            for_each_frame(n, [&](const Frame& f) {
                ++rep.all_frames_checked;
                if (!counit_injective(c, f, strict)) {
                    violation("frame " + frame_text(f) + ": counit is not injective");
                    return false;
                }
                return true;
            });
        }
    }
    return rep;
}

} // namespace kripke
