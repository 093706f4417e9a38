#pragma once

#include "tsynth/synth/game.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tsynth::synth {

struct SimulationOptions {
  int trials = 500;
  std::uint64_t seed = 1;
  int max_steps = 40;
  BuildOptions build; // used when re-solving from a successful leaf
};

struct SimulationReport {
  int trials = 0;
  int steps = 0;
  int final_checks = 0; // traces checked against the specification
  int resolves = 0;
  std::vector<std::string> violations;
};

// Runs the controller against random environment choices and random delays
// within each chosen region, preferring region boundaries. At successful
// leaves the game is solved again from the concrete state. Checks enabledness,
// environment permissiveness, non-blocking, the controller automaton's guards
// and, at every final state, that the trace does not satisfy the
// specification.
SimulationReport simulate_controller(const Problem &problem,
                                     const SearchGraph &graph,
                                     const Controller &controller,
                                     SimulationOptions options = {});

} // namespace tsynth::synth
