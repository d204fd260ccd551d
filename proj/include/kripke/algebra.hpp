#pragma once

#include "kripke/frame.hpp"

#include <cstdint>
#include <vector>

namespace kripke {

/// A finite modal algebra whose carrier is the full powerset of
/// {0, ..., atoms-1}; subsets are encoded as bit masks.  Only the diamond
/// table is stored; box is its dual.
struct ModalAlgebraFin {
    int atoms = 0;
    std::vector<uint64_t> dia; // 2^atoms entries, dia[X] = diamond of X
};

/// True when dia(empty) = empty and dia distributes over unions (checked
/// on atoms, which suffices by additivity).
bool is_modal_algebra(const ModalAlgebraFin& a);

/// The algebra of all subsets of the frame with dia(X) = worlds seeing X.
ModalAlgebraFin complex_algebra(const Frame& f);

/// The frame on the atoms with u < v iff u lies in dia({v}).  Requires an
/// additive algebra (InvalidInput otherwise).  Inverse to complex_algebra.
Frame atom_frame(const ModalAlgebraFin& a);

} // namespace kripke
