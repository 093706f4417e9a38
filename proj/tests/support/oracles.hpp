#pragma once

#include "tsynth/golog/interpreter.hpp"
#include "tsynth/synth/product.hpp"

#include <optional>

namespace tsynth::testing {

// Enumerates every trace of a loop-free program whose delays represent the
// regions of all program clocks and all clocks measuring time since earlier
// events, and checks each trace ending in a final configuration with the MTL
// semantics. Returns the first trace satisfying the specification.
std::optional<golog::Trace> brute_force_counterexample(const synth::Problem &problem);

} // namespace tsynth::testing
