#pragma once

#include "tsynth/ta/automaton.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tsynth::ta {

struct ReachStats {
  std::size_t symbolic_states = 0;
};

// Zone-graph search for a final location. The returned run uses the
// lexicographically smallest delays on the grid 1/(n+2) along the found
// switch path (n = path length).
std::optional<Run> zone_reach(const TimedAutomaton &a,
                              ReachStats *stats = nullptr);

// Concrete delays for a fixed switch path, or none when the path cannot be
// timed.
std::optional<std::vector<Rational>>
path_delays(const TimedAutomaton &a, const std::vector<int> &switch_path);

// Exhaustive search over region representatives; test oracle.
bool region_reachable(const TimedAutomaton &a);

} // namespace tsynth::ta
