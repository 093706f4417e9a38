#pragma once

#include "tsynth/golog/bat.hpp"
#include "tsynth/golog/program.hpp"
#include "tsynth/mtl/word.hpp"

#include <json.hpp>

#include <vector>

namespace tsynth::golog {

struct Step {
  int action = -1;
  Program rest = Program::nil();

  friend bool operator==(const Step &a, const Step &b) {
    return a.action == b.action && a.rest == b.rest;
  }
};

// Syntactically next actions with their remaining programs; tests on the way
// are evaluated in `state`.
std::vector<Step> next_steps(const Program &program, const WorldState &state);
bool is_final(const Program &program, const WorldState &state);

struct Config {
  WorldState state;
  Rational now;
  Program remaining = Program::nil();
};

Config initial_config(const Bat &bat, const Program &program);
// next_steps filtered by the precondition and the clock constraint.
std::vector<Step> enabled_steps(const Config &config, const Bat &bat);
bool is_final(const Config &config);

// Waits `delay`, then performs `action` along every matching program step.
std::vector<Config> successors(const Config &config, const Rational &delay,
                               int action, const Bat &bat);

struct TraceEvent {
  int action = -1;
  Rational time; // absolute

  friend bool operator==(const TraceEvent &, const TraceEvent &) = default;
};
using Trace = std::vector<TraceEvent>;

// Entry 0 is the initial state at time 0, then one entry per action.
mtl::TimedWord word_of(const Bat &bat, const Trace &trace);
// All configurations the program can be in after the trace; empty when the
// trace is not executable.
std::vector<Config> replay(const Bat &bat, const Program &program,
                           const Trace &trace);

nlohmann::json trace_to_json(const Bat &bat, const Trace &trace);
Trace trace_from_json(const Bat &bat, const nlohmann::json &j);

} // namespace tsynth::golog
