#include "kripke/pmorphism.hpp"
#include "kripke/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace kripke {

bool is_pmorphism(const Frame& dom, const Frame& cod, const std::vector<int>& map,
                  std::string* why) {
    if (map.size() != static_cast<size_t>(dom.n)) {
        if (why) *why = "map has " + std::to_string(map.size()) + " entries for " +
                        std::to_string(dom.n) + " worlds";
        return false;
    }
    for (int u = 0; u < dom.n; ++u) {
        int fu = map[static_cast<size_t>(u)];
        if (fu < 0 || fu >= cod.n) {
            if (why) *why = "world " + std::to_string(u) + " maps to " + std::to_string(fu) +
                            ", outside the codomain";
            return false;
        }
    }
    for (int u = 0; u < dom.n; ++u) {
        const Bits& row = dom.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v)) {
            if (!cod.has(map[static_cast<size_t>(u)], map[v])) {
                if (why) *why = "stability fails on edge (" + std::to_string(u) + "," +
                                std::to_string(v) + ")";
                return false;
            }
        }
    }
    for (int u = 0; u < dom.n; ++u) {
        const Bits& crow = cod.adj[static_cast<size_t>(map[static_cast<size_t>(u)])];
        for (size_t y = crow.find_first(); y != Bits::npos; y = crow.find_next(y)) {
            bool lifted = false;
            const Bits& drow = dom.adj[static_cast<size_t>(u)];
            for (size_t v = drow.find_first(); v != Bits::npos; v = drow.find_next(v)) {
                if (map[v] == static_cast<int>(y)) { lifted = true; break; }
            }
            if (!lifted) {
                if (why) *why = "openness fails at world " + std::to_string(u) +
                                " for codomain successor " + std::to_string(y);
                return false;
            }
        }
    }
    return true;
}

PMorphism make_pmorphism(Frame dom, Frame cod, std::vector<int> map) {
    std::string why;
    if (!is_pmorphism(dom, cod, map, &why))
        throw InvalidInput("not a p-morphism: " + why);
    return PMorphism{std::move(dom), std::move(cod), std::move(map)};
}

PMorphism identity(const Frame& f) {
    std::vector<int> m(static_cast<size_t>(f.n));
    for (int w = 0; w < f.n; ++w) m[static_cast<size_t>(w)] = w;
    return PMorphism{f, f, std::move(m)};
}

PMorphism compose(const PMorphism& g, const PMorphism& f) {
    if (f.cod != g.dom)
        throw InvalidInput("compose: codomain of the first map differs from domain of the second");
    std::vector<int> m(static_cast<size_t>(f.dom.n));
    for (int w = 0; w < f.dom.n; ++w)
        m[static_cast<size_t>(w)] = g.map[static_cast<size_t>(f.map[static_cast<size_t>(w)])];
    return PMorphism{f.dom, g.cod, std::move(m)};
}

bool is_surjective(const PMorphism& f) {
    Bits hit(static_cast<size_t>(f.cod.n));
    for (int w = 0; w < f.dom.n; ++w) hit.set(static_cast<size_t>(f.map[static_cast<size_t>(w)]));
    return hit.count() == static_cast<size_t>(f.cod.n);
}

bool is_injective(const PMorphism& f) {
    Bits hit(static_cast<size_t>(f.cod.n));
    for (int w = 0; w < f.dom.n; ++w) {
        size_t v = static_cast<size_t>(f.map[static_cast<size_t>(w)]);
        if (hit.test(v)) return false;
        hit.set(v);
    }
    return true;
}

ImageFactorization image_factorization(const PMorphism& f) {
    ImageFactorization r;
    r.image = Bits(static_cast<size_t>(f.cod.n));
    for (int w = 0; w < f.dom.n; ++w) r.image.set(static_cast<size_t>(f.map[static_cast<size_t>(w)]));
    Restriction sub = restriction(f.cod, r.image);
    std::vector<int> new_of(static_cast<size_t>(f.cod.n), -1);
    for (size_t i = 0; i < sub.worlds.size(); ++i) new_of[static_cast<size_t>(sub.worlds[i])] = static_cast<int>(i);
    std::vector<int> surj(static_cast<size_t>(f.dom.n));
    for (int w = 0; w < f.dom.n; ++w) surj[static_cast<size_t>(w)] = new_of[static_cast<size_t>(f.map[static_cast<size_t>(w)])];
    std::vector<int> incl(sub.worlds.size());
    for (size_t i = 0; i < sub.worlds.size(); ++i) incl[i] = sub.worlds[i];
    r.surjection = make_pmorphism(f.dom, sub.frame, std::move(surj));
    r.inclusion = make_pmorphism(sub.frame, f.cod, std::move(incl));
    return r;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

struct EnumState {
    const Frame& dom;
    const Frame& cod;
    bool surjective_only;
    size_t max_steps;
    size_t steps = 0;
    std::vector<int> map;
    std::vector<int> hits; // codomain world -> number of preimages so far
    int missing;           // codomain worlds with no preimage yet
    std::vector<PMorphism>* out;

    void step_budget() {
        if (++steps > max_steps)
            throw BudgetExceeded("p-morphism enumeration exceeded " + std::to_string(max_steps) + " steps");
    }

    bool openness_ok() {
        for (int u = 0; u < dom.n; ++u) {
            const Bits& crow = cod.adj[static_cast<size_t>(map[static_cast<size_t>(u)])];
            for (size_t y = crow.find_first(); y != Bits::npos; y = crow.find_next(y)) {
                bool lifted = false;
                const Bits& drow = dom.adj[static_cast<size_t>(u)];
                for (size_t v = drow.find_first(); v != Bits::npos; v = drow.find_next(v))
                    if (map[v] == static_cast<int>(y)) { lifted = true; break; }
                if (!lifted) return false;
            }
        }
        return true;
    }

    void go(int u) {
        step_budget();
        if (u == dom.n) {
            if (surjective_only && missing > 0) return;
            if (openness_ok()) out->push_back(PMorphism{dom, cod, map});
            return;
        }
        if (surjective_only && missing > dom.n - u) return; // not enough worlds left
        for (int y = 0; y < cod.n; ++y) {
            bool ok = true;
            for (int w = 0; w < u && ok; ++w) {
                if (dom.has(u, w) && !cod.has(y, map[static_cast<size_t>(w)])) ok = false;
                if (ok && dom.has(w, u) && !cod.has(map[static_cast<size_t>(w)], y)) ok = false;
            }
            if (ok && dom.has(u, u) && !cod.has(y, y)) ok = false;
            if (!ok) continue;
            map[static_cast<size_t>(u)] = y;
            if (hits[static_cast<size_t>(y)]++ == 0) --missing;
            go(u + 1);
            if (--hits[static_cast<size_t>(y)] == 0) ++missing;
        }
        map[static_cast<size_t>(u)] = -1;
    }
};

} // namespace

std::vector<PMorphism> enumerate_pmorphisms(const Frame& dom, const Frame& cod,
                                            bool surjective_only, size_t max_steps) {
    std::vector<PMorphism> out;
    if (dom.n == 0) {
        if (!surjective_only || cod.n == 0) out.push_back(PMorphism{dom, cod, {}});
        return out;
    }
    if (cod.n == 0) return out;
    EnumState st{dom, cod, surjective_only, max_steps, 0,
                 std::vector<int>(static_cast<size_t>(dom.n), -1),
                 std::vector<int>(static_cast<size_t>(cod.n), 0), cod.n, &out};
    st.go(0);
    return out;
}

// ---------------------------------------------------------------------------
// Subreduction
// ---------------------------------------------------------------------------

std::optional<Subreduction> subreduces(const Frame& source, const Frame& target,
                                       size_t max_steps) {
    std::vector<Bits> subs = generated_subframes(source, max_steps);
    for (const Bits& s : subs) {
        if (s.count() < static_cast<size_t>(target.n)) continue;
        if (target.n == 0 && s.any()) continue;
        Restriction sub = restriction(source, s);
        std::vector<PMorphism> maps = enumerate_pmorphisms(sub.frame, target, true, max_steps);
        if (!maps.empty())
            return Subreduction{s, std::move(sub), std::move(maps.front())};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Monomorphism oracle
// ---------------------------------------------------------------------------

namespace {

// Rooted probe frames of each size up to isomorphism, cached per
// (size, transitive-only) because the oracle is called in tight loops.
const std::vector<Frame>& probe_frames(int size, bool transitive_only) {
    static std::map<std::pair<int, bool>, std::vector<Frame>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(size, transitive_only);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Frame> reps;
    std::map<std::string, bool> seen;
    if (size <= 5) {
        size_t bits = static_cast<size_t>(size) * static_cast<size_t>(size);
        for (size_t code = 0; code < (static_cast<size_t>(1) << bits); ++code) {
            Frame f(size);
            size_t b = 0;
            for (int u = 0; u < size; ++u)
                for (int v = 0; v < size; ++v, ++b)
                    if (code & (static_cast<size_t>(1) << b)) f.add_edge(u, v);
            if (transitive_only && !is_transitive(f)) continue;
            if (!is_rooted(f)) continue;
            std::string k = canonical_key(f);
            if (seen.emplace(k, true).second) reps.push_back(std::move(f));
        }
    }
    auto res = cache.emplace(key, std::move(reps));
    return res.first->second;
}

// All p-morphism map vectors probe -> dom, cached because the oracle is
// called in tight loops over many morphisms out of the same domain.  The
// key serializes the domain's adjacency alongside the probe's identity.
const std::vector<std::vector<int>>& probe_maps(const Frame& probe, int size, bool transitive_only,
                                                size_t probe_index, const Frame& dom,
                                                size_t max_steps) {
    static std::map<std::string, std::vector<std::vector<int>>> cache;
    static std::mutex mu;
    std::string key;
    key.reserve(static_cast<size_t>(dom.n) * static_cast<size_t>(dom.n) + 16);
    key += std::to_string(size);
    key += transitive_only ? 't' : 'a';
    key += std::to_string(probe_index);
    key += ':';
    key += std::to_string(dom.n);
    key += ':';
    for (int u = 0; u < dom.n; ++u)
        for (int v = 0; v < dom.n; ++v) key += dom.has(u, v) ? '1' : '0';
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() > 200000) cache.clear();
    std::vector<std::vector<int>> maps;
    for (PMorphism& h : enumerate_pmorphisms(probe, dom, false, max_steps))
        maps.push_back(std::move(h.map));
    return cache.emplace(std::move(key), std::move(maps)).first->second;
}

} // namespace

bool is_monomorphism_oracle(const PMorphism& f, int probe_size, size_t max_steps) {
    if (probe_size > 5)
        throw InvalidInput("monomorphism oracle supports probe sizes up to 5");
    bool transitive_only = is_transitive(f.dom) && is_transitive(f.cod);

    // Constructive witness first: on the pair digraph {(x, y) : f(x) = f(y)}
    // with coordinatewise edges, both coordinate projections are p-morphisms
    // (lifting a successor of one coordinate uses the openness of f at the
    // other), and they differ at every non-diagonal pair.  The cone of such
    // a pair is a rooted probe, transitive whenever the endpoints are, so
    // when it fits the probe budget the search outcome is already decided.
    {
        const Frame& a = f.dom;
        size_t an = static_cast<size_t>(a.n);
        auto merged = [&](int x, int y) {
            return f.map[static_cast<size_t>(x)] == f.map[static_cast<size_t>(y)];
        };
        for (int x = 0; x < a.n; ++x) {
            for (int y = 0; y < a.n; ++y) {
                if (x == y || !merged(x, y)) continue;
                // Cone of (x, y): breadth-first over coordinatewise edges.
                std::vector<std::pair<int, int>> cone{{x, y}};
                std::vector<char> seen(an * an, 0);
                seen[static_cast<size_t>(x) * an + static_cast<size_t>(y)] = 1;
                bool small = true;
                for (size_t head = 0; head < cone.size() && small; ++head) {
                    auto [u, v] = cone[head];
                    const Bits& urow = a.adj[static_cast<size_t>(u)];
                    const Bits& vrow = a.adj[static_cast<size_t>(v)];
                    for (size_t up = urow.find_first(); up != Bits::npos && small;
                         up = urow.find_next(up)) {
                        for (size_t vp = vrow.find_first(); vp != Bits::npos;
                             vp = vrow.find_next(vp)) {
                            if (!merged(static_cast<int>(up), static_cast<int>(vp))) continue;
                            size_t key = up * an + vp;
                            if (seen[key]) continue;
                            seen[key] = 1;
                            cone.push_back({static_cast<int>(up), static_cast<int>(vp)});
                            if (cone.size() > static_cast<size_t>(probe_size)) {
                                small = false;
                                break;
                            }
                        }
                    }
                }
                if (!small) continue;
                Frame probe(static_cast<int>(cone.size()));
                std::vector<int> h0(cone.size()), h1(cone.size());
                for (size_t i = 0; i < cone.size(); ++i) {
                    h0[i] = cone[i].first;
                    h1[i] = cone[i].second;
                    for (size_t j = 0; j < cone.size(); ++j)
                        if (a.has(cone[i].first, cone[j].first) &&
                            a.has(cone[i].second, cone[j].second))
                            probe.add_edge(static_cast<int>(i), static_cast<int>(j));
                }
                if (is_pmorphism(probe, a, h0) && is_pmorphism(probe, a, h1)) return false;
            }
        }
    }

    // A distinct merged pair on a probe T is exactly two different
    // p-morphisms T -> dom with the same composite under f: enumerate the
    // p-morphisms once per (T, dom) and look for a repeated composite.
    size_t steps = 0;
    std::vector<int> composite;
    for (int size = 1; size <= probe_size; ++size) {
        const std::vector<Frame>& probes = probe_frames(size, transitive_only);
        for (size_t pi = 0; pi < probes.size(); ++pi) {
            const std::vector<std::vector<int>>& maps =
                probe_maps(probes[pi], size, transitive_only, pi, f.dom, max_steps);
            if (maps.size() < 2) continue;
            std::set<std::vector<int>> seen;
            for (const std::vector<int>& h : maps) {
                if (++steps > max_steps)
                    throw BudgetExceeded("monomorphism oracle exceeded " +
                                         std::to_string(max_steps) + " steps");
                composite.resize(h.size());
                for (size_t t = 0; t < h.size(); ++t)
                    composite[t] = f.map[static_cast<size_t>(h[t])];
                if (!seen.insert(composite).second) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Posetal reflection
// ---------------------------------------------------------------------------

std::pair<Frame, PMorphism> posetal_reflection(const Frame& f) {
    if (!is_transitive(f))
        throw InvalidInput("posetal_reflection requires a transitive frame");
    ClusterPartition cp = clusters(f);
    // Components ordered by least member: clusters and lone irreflexive
    // points interleaved.
    struct Comp { int least; int cluster_index; int lone_world; };
    std::vector<Comp> comps;
    for (size_t c = 0; c < cp.clusters.size(); ++c)
        comps.push_back({cp.clusters[c][0], static_cast<int>(c), -1});
    for (int w : cp.irreflexive_points)
        comps.push_back({w, -1, w});
    std::sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) { return a.least < b.least; });

    std::vector<int> comp_of(static_cast<size_t>(f.n), -1);
    for (size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].cluster_index >= 0)
            for (int m : cp.clusters[static_cast<size_t>(comps[i].cluster_index)])
                comp_of[static_cast<size_t>(m)] = static_cast<int>(i);
        else
            comp_of[static_cast<size_t>(comps[i].lone_world)] = static_cast<int>(i);
    }
    Frame poset(static_cast<int>(comps.size()));
    for (int u = 0; u < f.n; ++u) {
        const Bits& row = f.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v)) {
            int cu = comp_of[static_cast<size_t>(u)];
            int cv = comp_of[v];
            if (cu != cv || comps[static_cast<size_t>(cu)].cluster_index >= 0)
                poset.add_edge(cu, cv);
        }
    }
    return {poset, make_pmorphism(f, poset, comp_of)};
}

} // namespace kripke
