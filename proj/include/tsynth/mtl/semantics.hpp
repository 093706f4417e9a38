#pragma once

#include "tsynth/mtl/formula.hpp"
#include "tsynth/mtl/word.hpp"

namespace tsynth::mtl {

// Point-based strict-until semantics; memoized over (position, sub-formula).
bool satisfies(const TimedWord &word, std::size_t position, const Formula &f);

} // namespace tsynth::mtl
