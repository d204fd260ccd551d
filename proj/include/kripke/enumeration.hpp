#pragma once

#include "kripke/frame.hpp"
#include "kripke/logic.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace kripke {

// Exhaustive iteration over labeled frames on a fixed world count.  The
// callback returns false to stop early; each function returns false exactly
// when a callback stopped it.  Sizes are capped at 5 (2^25 relations).
bool for_each_frame(int size, const std::function<bool(const Frame&)>& fn);
bool for_each_transitive_frame(int size, const std::function<bool(const Frame&)>& fn);
bool for_each_preorder(int size, const std::function<bool(const Frame&)>& fn);

// Low-overhead variant handing each relation as per-world successor bitmasks
// (rows[u] bit v set iff u ≺ v).  Used for whole-space sweeps where building
// a Frame per relation would dominate the runtime.
bool for_each_frame_rows(int size, const std::function<bool(const std::uint32_t*)>& fn);

// Isomorphism-class representatives of all frames with 1..max_size worlds,
// ordered by size then canonical form.  Results are cached internally.
const std::vector<Frame>& frame_representatives(int max_size, bool transitive_only = false,
                                                bool rooted_only = false);

// Representatives of the frames of a logic up to max_size.  Logics whose
// frames have a pinned shape use direct generators (linear posets give
// chains, strict linear orders give strict chains, depth-one logics give
// unions of clusters), which reach sizes labeled enumeration cannot; all
// other logics fall back to labeled enumeration and therefore cap
// max_size at 4.
std::vector<Frame> logic_representatives(const LogicSpec& logic, int max_size,
                                         bool rooted_only = false);

} // namespace kripke
