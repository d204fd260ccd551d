#include "kripke/algebra.hpp"
#include "kripke/errors.hpp"

namespace kripke {

bool is_modal_algebra(const ModalAlgebraFin& a) {
    if (a.atoms < 0 || a.atoms > 20) return false;
    size_t size = static_cast<size_t>(1) << a.atoms;
    if (a.dia.size() != size) return false;
    if (a.dia[0] != 0) return false;
    uint64_t all = size - 1;
    for (size_t x = 0; x < size; ++x) {
        if (a.dia[x] & ~all) return false;
        // additivity: the diamond of a set is the union over its atoms
        uint64_t expect = 0;
        for (int v = 0; v < a.atoms; ++v)
            if (x & (uint64_t{1} << v)) expect |= a.dia[static_cast<size_t>(1) << v];
        if (a.dia[x] != expect) return false;
    }
    return true;
}

ModalAlgebraFin complex_algebra(const Frame& f) {
    if (f.n > 20) throw InvalidInput("complex_algebra supports at most 20 worlds");
    ModalAlgebraFin a;
    a.atoms = f.n;
    size_t size = static_cast<size_t>(1) << f.n;
    a.dia.assign(size, 0);
    std::vector<uint64_t> rows(static_cast<size_t>(f.n), 0);
    for (int u = 0; u < f.n; ++u) {
        const Bits& row = f.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
            rows[static_cast<size_t>(u)] |= uint64_t{1} << v;
    }
    for (size_t x = 0; x < size; ++x) {
        uint64_t d = 0;
        for (int u = 0; u < f.n; ++u)
            if (rows[static_cast<size_t>(u)] & x) d |= uint64_t{1} << u;
        a.dia[x] = d;
    }
    return a;
}

Frame atom_frame(const ModalAlgebraFin& a) {
    if (!is_modal_algebra(a))
        throw InvalidInput("atom_frame requires an additive modal algebra over a powerset");
    Frame f(a.atoms);
    for (int v = 0; v < a.atoms; ++v) {
        uint64_t d = a.dia[static_cast<size_t>(1) << v];
        for (int u = 0; u < a.atoms; ++u)
            if (d & (uint64_t{1} << u)) f.add_edge(u, v);
    }
    return f;
}

} // namespace kripke
