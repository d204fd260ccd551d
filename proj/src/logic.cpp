#include "kripke/logic.hpp"
#include "kripke/errors.hpp"
#include "kripke/pmorphism.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace kripke {

// ---------------------------------------------------------------------------
// Names and parsing
// ---------------------------------------------------------------------------

std::string to_string(Base b) {
    switch (b) {
    case Base::K: return "K";
    case Base::K4: return "K4";
    case Base::S4: return "S4";
    case Base::S4_2: return "S4.2";
    case Base::S4_3: return "S4.3";
    case Base::Grz: return "Grz";
    case Base::Grz_3: return "Grz.3";
    case Base::S5: return "S5";
    case Base::GL: return "GL";
    case Base::GL_3: return "GL.3";
    case Base::Inconsistent: return "Inconsistent";
    }
    return "?";
}

const std::vector<Base>& all_bases() {
    static const std::vector<Base> bases = {
        Base::K, Base::K4, Base::S4, Base::S4_2, Base::S4_3, Base::Grz,
        Base::Grz_3, Base::S5, Base::GL, Base::GL_3, Base::Inconsistent};
    return bases;
}

LogicSpec parse_logic(const std::string& text) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t plus = text.find('+', start);
        if (plus == std::string::npos) { parts.push_back(text.substr(start)); break; }
        parts.push_back(text.substr(start, plus - start));
        start = plus + 1;
    }
    if (parts.empty() || parts[0].empty()) throw InvalidInput("empty logic name");
    LogicSpec L;
    bool found = false;
    for (Base b : all_bases()) {
        std::string name = to_string(b);
        std::string lower = name;
        std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
        std::string given = parts[0];
        std::transform(given.begin(), given.end(), given.begin(), ::tolower);
        if (given == lower) { L.base = b; found = true; break; }
    }
    if (!found)
        throw InvalidInput("unknown base logic '" + parts[0] +
                           "'; expected one of K, K4, S4, S4.2, S4.3, Grz, Grz.3, S5, GL, GL.3, Inconsistent");
    for (size_t i = 1; i < parts.size(); ++i) {
        const std::string& p = parts[i];
        if (p.size() < 3) throw InvalidInput("malformed bound '" + p + "'");
        std::string which = p.substr(0, 2);
        std::string num = p.substr(2);
        int value = 0;
        for (char c : num) {
            if (c < '0' || c > '9') throw InvalidInput("malformed bound '" + p + "'");
            value = value * 10 + (c - '0');
            if (value > 1000) throw InvalidInput("bound too large in '" + p + "'");
        }
        if (value < 1) throw InvalidInput("bound must be at least 1 in '" + p + "'");
        std::optional<int>* slot = nullptr;
        if (which == "bd") slot = &L.bd;
        else if (which == "bw") slot = &L.bw;
        else if (which == "bf") slot = &L.bf;
        else if (which == "be") slot = &L.be;
        else if (which == "bi") slot = &L.bi;
        else throw InvalidInput("unknown bound '" + which + "' in '" + p + "'");
        if (slot->has_value()) throw InvalidInput("duplicate bound '" + which + "'");
        *slot = value;
    }
    bool has_bound = L.bd || L.bw || L.bf || L.be || L.bi;
    if (has_bound && (L.base == Base::K || L.base == Base::Inconsistent))
        throw InvalidInput("bounds require a transitive base logic, not " + to_string(L.base));
    return L;
}

std::string to_string(const LogicSpec& L) {
    std::ostringstream out;
    out << to_string(L.base);
    if (L.bd) out << "+bd" << *L.bd;
    if (L.bw) out << "+bw" << *L.bw;
    if (L.bf) out << "+bf" << *L.bf;
    if (L.be) out << "+be" << *L.be;
    if (L.bi) out << "+bi" << *L.bi;
    return out.str();
}

// ---------------------------------------------------------------------------
// Structural membership
// ---------------------------------------------------------------------------

namespace {

bool base_condition(Base b, const Frame& f) {
    switch (b) {
    case Base::K: return true;
    case Base::K4: return is_transitive(f);
    case Base::S4: return is_reflexive(f) && is_transitive(f);
    case Base::S4_2: return is_reflexive(f) && is_transitive(f) && is_confluent(f);
    case Base::S4_3: return is_reflexive(f) && is_transitive(f) && is_locally_linear(f);
    case Base::Grz: return is_partial_order(f);
    case Base::Grz_3: return is_partial_order(f) && is_locally_linear(f);
    case Base::S5: return is_equivalence(f);
    case Base::GL: return is_irreflexive(f) && is_transitive(f);
    case Base::GL_3: return is_irreflexive(f) && is_transitive(f) && is_locally_linear(f);
    case Base::Inconsistent: return f.n == 0;
    }
    return false;
}

// Largest antichain of a poset given as a transitively closed strict
// successor structure, by Dilworth duality with minimum chain covers
// (computed with augmenting paths).
int poset_width(const std::vector<Bits>& succ) {
    size_t k = succ.size();
    std::vector<int> match_right(k, -1); // right vertex -> left vertex
    std::vector<int> match_left(k, -1);
    std::vector<char> visited;
    std::function<bool(size_t)> augment = [&](size_t u) -> bool {
        for (size_t v = succ[u].find_first(); v != Bits::npos; v = succ[u].find_next(v)) {
            if (visited[v]) continue;
            visited[v] = 1;
            if (match_right[v] == -1 || augment(static_cast<size_t>(match_right[v]))) {
                match_right[v] = static_cast<int>(u);
                match_left[u] = static_cast<int>(v);
                return true;
            }
        }
        return false;
    };
    int matching = 0;
    for (size_t u = 0; u < k; ++u) {
        visited.assign(k, 0);
        if (augment(u)) ++matching;
    }
    return static_cast<int>(k) - matching;
}

// Condensation data for a transitive frame: one node per cluster or lone
// irreflexive world, with depth and strict reachability.
struct Condensation {
    std::vector<std::vector<int>> comps;
    std::vector<int> comp_of;
    std::vector<char> comp_is_cluster;
    std::vector<Bits> comp_succ; // strict reachability between components
    std::vector<int> comp_depth;
};

Condensation condense(const Frame& f) {
    Condensation c;
    ClusterPartition cp = clusters(f);
    c.comp_of.assign(static_cast<size_t>(f.n), -1);
    struct Seed { int least; std::vector<int> members; bool cluster; };
    std::vector<Seed> seeds;
    for (const std::vector<int>& cl : cp.clusters) seeds.push_back({cl[0], cl, true});
    for (int w : cp.irreflexive_points) seeds.push_back({w, {w}, false});
    std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.least < b.least; });
    for (const Seed& s : seeds) {
        int ci = static_cast<int>(c.comps.size());
        for (int m : s.members) c.comp_of[static_cast<size_t>(m)] = ci;
        c.comps.push_back(s.members);
        c.comp_is_cluster.push_back(s.cluster ? 1 : 0);
    }
    size_t k = c.comps.size();
    c.comp_succ.assign(k, Bits(k));
    for (int u = 0; u < f.n; ++u) {
        const Bits& row = f.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v)) {
            int cu = c.comp_of[static_cast<size_t>(u)];
            int cv = c.comp_of[v];
            if (cu != cv) c.comp_succ[static_cast<size_t>(cu)].set(static_cast<size_t>(cv));
        }
    }
    // the frame is transitive, so component reachability is already closed
    c.comp_depth.assign(k, 0);
    std::function<int(size_t)> dep = [&](size_t i) -> int {
        if (c.comp_depth[i] != 0) return c.comp_depth[i];
        int best = 0;
        for (size_t t = c.comp_succ[i].find_first(); t != Bits::npos; t = c.comp_succ[i].find_next(t))
            best = std::max(best, dep(t));
        c.comp_depth[i] = best + 1;
        return c.comp_depth[i];
    };
    for (size_t i = 0; i < k; ++i) dep(i);
    return c;
}

struct BoundStats {
    int depth = 0;       // max cone depth
    int width = 0;       // max cone width
    int finals = 0;      // max number of depth-1 clusters in a cone
    int external = 0;    // largest depth-1 cluster
    int internal = 0;    // largest cluster of depth >= 2 within some cone
};

BoundStats bound_stats(const Frame& f) {
    BoundStats s;
    if (f.n == 0) return s;
    Condensation c = condense(f);
    size_t k = c.comps.size();
    s.depth = *std::max_element(c.comp_depth.begin(), c.comp_depth.end());
    // Depth within a cone equals global depth; externality is also
    // cone-relative == depth-1 globally once restricted.  Width, final
    // count, and internal clusters are genuinely per cone.
    for (size_t r = 0; r < k; ++r) {
        Bits cone = c.comp_succ[r];
        cone.set(r);
        // width of the cone's component poset
        std::vector<size_t> idx;
        for (size_t t = cone.find_first(); t != Bits::npos; t = cone.find_next(t)) idx.push_back(t);
        std::vector<Bits> sub(idx.size(), Bits(idx.size()));
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b)
                if (a != b && c.comp_succ[idx[a]].test(idx[b])) sub[a].set(b);
        s.width = std::max(s.width, poset_width(sub));
        int finals = 0;
        for (size_t a = 0; a < idx.size(); ++a) {
            bool maximal = !sub[a].any();
            if (!maximal) continue;
            if (c.comp_is_cluster[idx[a]]) {
                ++finals;
                s.external = std::max(s.external, static_cast<int>(c.comps[idx[a]].size()));
            }
        }
        s.finals = std::max(s.finals, finals);
        for (size_t a = 0; a < idx.size(); ++a) {
            bool maximal = !sub[a].any();
            if (!maximal && c.comp_is_cluster[idx[a]])
                s.internal = std::max(s.internal, static_cast<int>(c.comps[idx[a]].size()));
        }
    }
    return s;
}

} // namespace

int cluster_width(const Frame& f) {
    if (!is_transitive(f)) throw InvalidInput("cluster_width requires a transitive frame");
    if (f.n == 0) return 0;
    Condensation c = condense(f);
    return poset_width(c.comp_succ);
}

bool frame_in_logic(const LogicSpec& L, const Frame& f) {
    if (!base_condition(L.base, f)) return false;
    bool has_bound = L.bd || L.bw || L.bf || L.be || L.bi;
    if (!has_bound) return true;
    // bounds presuppose transitivity, which every permitted base provides
    BoundStats s = bound_stats(f);
    if (L.bd && s.depth > *L.bd) return false;
    if (L.bw && s.width > *L.bw) return false;
    if (L.bf && s.finals > *L.bf) return false;
    if (L.be && s.external > *L.be) return false;
    if (L.bi && s.internal > *L.bi) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

void shrink(std::optional<int>& slot, int v) {
    if (!slot || *slot > v) slot = v;
}

} // namespace

LogicSpec normalize(const LogicSpec& L) {
    LogicSpec n = L;
    switch (L.base) {
    case Base::S4_2: n.base = Base::S4; shrink(n.bf, 1); break;
    case Base::S4_3: n.base = Base::S4; shrink(n.bw, 1); break;
    case Base::Grz: n.base = Base::S4; shrink(n.be, 1); shrink(n.bi, 1); break;
    case Base::Grz_3: n.base = Base::S4; shrink(n.bw, 1); shrink(n.be, 1); shrink(n.bi, 1); break;
    case Base::S5: n.base = Base::S4; shrink(n.bd, 1); break;
    case Base::GL_3: n.base = Base::GL; shrink(n.bw, 1); break;
    case Base::Inconsistent:
        return LogicSpec{Base::Inconsistent, {}, {}, {}, {}, {}};
    default: break;
    }
    if (n.base == Base::GL) {
        // no clusters on irreflexive frames
        n.be.reset();
        n.bi.reset();
        n.bf.reset();
    }
    if (n.bd && *n.bd == 1 && n.base == Base::S4) {
        // depth-1 cones are single clusters
        shrink(n.bw, 1);
        shrink(n.bf, 1);
        n.bi.reset();
    }
    if (n.bw && *n.bw == 1 && n.base == Base::S4) {
        // width-1 cones have a unique final cluster
        shrink(n.bf, 1);
    }
    return n;
}

// ---------------------------------------------------------------------------
// Catalogs
// ---------------------------------------------------------------------------

const std::vector<LogicSpec>& regular_catalog() {
    static const std::vector<LogicSpec> catalog = [] {
        std::vector<LogicSpec> out;
        out.push_back(LogicSpec{Base::Inconsistent, {}, {}, {}, {}, {}});
        // five families, each with final/internal cluster bounds in {1, 2, unbounded}
        std::vector<LogicSpec> family_bases = {
            LogicSpec{Base::S4, {}, {}, {}, {}, {}},
            LogicSpec{Base::S4_2, {}, {}, {}, {}, {}},
            LogicSpec{Base::S4, 2, {}, {}, {}, {}},
            LogicSpec{Base::S4, 2, 2, {}, {}, {}},
            LogicSpec{Base::S4_2, 2, {}, {}, {}, {}},
        };
        std::vector<std::optional<int>> opts = {std::optional<int>{1}, std::optional<int>{2}, std::nullopt};
        for (const LogicSpec& fb : family_bases)
            for (const std::optional<int>& m : opts)
                for (const std::optional<int>& k : opts) {
                    LogicSpec L = fb;
                    L.be = m;
                    L.bi = k;
                    out.push_back(L);
                }
        out.push_back(LogicSpec{Base::Grz_3, {}, {}, {}, {}, {}});
        for (const std::optional<int>& m : opts)
            out.push_back(LogicSpec{Base::S5, {}, {}, {}, m, {}});
        return out;
    }();
    return catalog;
}

const std::vector<LogicSpec>& exact_catalog() {
    static const std::vector<LogicSpec> catalog = {
        LogicSpec{Base::Inconsistent, {}, {}, {}, {}, {}},
        LogicSpec{Base::S4_2, 2, {}, {}, 1, 1},
        LogicSpec{Base::S4_2, 2, {}, {}, 1, 2},
        LogicSpec{Base::S5, {}, {}, {}, 1, {}},
        LogicSpec{Base::S5, {}, {}, {}, 2, {}},
    };
    return catalog;
}

bool is_regular(const LogicSpec& L) {
    LogicSpec n = normalize(L);
    for (const LogicSpec& c : regular_catalog())
        if (normalize(c) == n) return true;
    return false;
}

bool is_barr_exact(const LogicSpec& L) {
    LogicSpec n = normalize(L);
    for (const LogicSpec& c : exact_catalog())
        if (normalize(c) == n) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------

const std::vector<std::string>& base_axiom_texts(Base b) {
    static const std::string ax_T = "box p1 -> p1";
    static const std::string ax_4 = "box p1 -> box box p1";
    static const std::string ax_2 = "dia box p1 -> box dia p1";
    static const std::string ax_3 = "box (box p1 -> p2) | box (box p2 -> p1)";
    static const std::string ax_grz = "box (box (p1 -> box p1) -> p1) -> p1";
    static const std::string ax_B = "p1 -> box dia p1";
    static const std::string ax_loeb = "box (box p1 -> p1) -> box p1";
    static const std::string ax_3s = "boxp (boxp p1 -> p2) | boxp (boxp p2 -> p1)";
    static const std::map<Base, std::vector<std::string>> table = {
        {Base::K, {}},
        {Base::K4, {ax_4}},
        {Base::S4, {ax_4, ax_T}},
        {Base::S4_2, {ax_4, ax_T, ax_2}},
        {Base::S4_3, {ax_4, ax_T, ax_3}},
        {Base::Grz, {ax_4, ax_T, ax_grz}},
        {Base::Grz_3, {ax_4, ax_T, ax_3, ax_grz}},
        {Base::S5, {ax_4, ax_T, ax_B}},
        {Base::GL, {ax_4, ax_loeb}},
        {Base::GL_3, {ax_4, ax_loeb, ax_3s}},
        {Base::Inconsistent, {"false"}},
    };
    return table.at(b);
}

// ---------------------------------------------------------------------------
// Bounds via subreduction
// ---------------------------------------------------------------------------

Frame bound_target(const std::string& which, int n) {
    if (n < 1) throw InvalidInput("bound parameter must be at least 1");
    if (which == "bd") return chain(n + 1);
    if (which == "bw") return fork(n + 1);
    if (which == "bf") return copies(n + 1, chain(1));
    if (which == "be") return cluster(n + 1);
    if (which == "bi") return add_final(cluster(n + 1));
    throw InvalidInput("unknown bound '" + which + "'; expected bd, bw, bf, be, or bi");
}

bool bound_via_subreduction(const Frame& f, const std::string& which, int n,
                            size_t max_steps) {
    if (!is_transitive(f))
        throw InvalidInput("bound_via_subreduction requires a transitive frame");
    Frame target = bound_target(which, n);
    for (int w = 0; w < f.n; ++w) {
        Restriction cone = restriction(f, star(f, w));
        if (subreduces(cone.frame, target, max_steps))
            return false; // some cone reaches the forbidden shape
    }
    return true;
}

} // namespace kripke
