#pragma once

#include "tsynth/core/clock.hpp"
#include "tsynth/core/interval.hpp"
#include "tsynth/mtl/word.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace tsynth::ta {

// Reserved label of silent switches; never emitted in words.
inline const std::string kEpsilon = "eps";

struct Switch {
  int src = 0;
  std::string label;
  ClockConstraint guard;
  std::vector<std::string> resets;
  int dst = 0;
};

struct TimedAutomaton {
  std::vector<std::string> locations;
  int initial = 0;
  std::vector<int> finals;
  std::vector<std::string> clocks;
  std::vector<ClockConstraint> invariants; // one per location
  std::vector<Switch> switches;

  int add_location(std::string name, ClockConstraint invariant = {});
  int location_id(const std::string &name) const; // throws InputError
  bool is_final(int location) const;
  std::set<std::string> alphabet() const;
  std::int64_t max_constant() const;
  // Throws InputError on dangling indices or undeclared clocks.
  void validate() const;
};

// Adds an unguarded ε self-loop to every location lacking one.
TimedAutomaton with_epsilon_loops(TimedAutomaton a);

// Asynchronous product. Location (i, j) gets index i * |L2| + j.
TimedAutomaton parallel_compose(const TimedAutomaton &lhs,
                                const TimedAutomaton &rhs);

struct RunStep {
  int switch_id = 0;
  Rational delay; // waited in the source location before switching
};
using Run = std::vector<RunStep>;

// Concrete replay from the initial location with all clocks at zero;
// true iff every invariant and guard holds and the run ends in a final
// location.
bool replay_run(const TimedAutomaton &a, const Run &run);

mtl::TimedWord run_to_timed_word(const TimedAutomaton &a, const Run &run);

// x in I as a conjunction; [0,inf) gives the empty conjunction.
ClockConstraint in_interval(const std::string &clock, const Interval &interval);

} // namespace tsynth::ta
