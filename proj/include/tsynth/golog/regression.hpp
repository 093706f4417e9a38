#pragma once

#include "tsynth/golog/bat.hpp"

#include <vector>

namespace tsynth::golog {

// A trace for regression alternates explicit time steps (absolute times) and
// actions.
struct TraceElement {
  bool is_time = false;
  Rational time;
  int action = -1;

  static TraceElement wait_until(Rational t) { return {true, std::move(t), -1}; }
  static TraceElement perform(int a) { return {false, Rational(0), a}; }
};

// Rewrites `formula`, evaluated after the trace, into an equivalent formula
// about the initial situation; the result mentions no clock atoms.
Ground regress(const Bat &bat, const std::vector<TraceElement> &trace,
               const Ground &formula);

// Forward counterpart: the state reached by executing the trace (actions are
// applied unconditionally).
WorldState progress_trace(const Bat &bat, const std::vector<TraceElement> &trace);

} // namespace tsynth::golog
