#pragma once

#include "tsynth/core/interval.hpp"
#include "tsynth/core/rational.hpp"
#include "tsynth/mtl/formula.hpp"
#include "tsynth/ta/automaton.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tsynth::plantrans {

struct Plan {
  std::vector<std::string> actions;
};

// Indices are 1-based, as in the constraint language.
struct AbsConstraint {
  int index = 1;
  Interval interval;
};

struct RelConstraint {
  int from = 1;
  int to = 2;
  Interval interval;
};

// Exact action name, or a prefix when the pattern ends in '*'.
class ActionPattern {
public:
  ActionPattern() = default;
  explicit ActionPattern(std::string text);
  bool matches(const std::string &action) const;
  const std::string &str() const { return text_; }

private:
  std::string text_;
};

// Boolean combination of platform location names, e.g. "(or camOff idle)".
class LocationPredicate {
public:
  LocationPredicate() : formula_(mtl::Formula::truth()) {}
  explicit LocationPredicate(const std::string &text);
  bool holds(const std::string &location) const;
  const mtl::Formula &formula() const { return formula_; }
  std::string str() const { return formula_.str(); }

private:
  mtl::Formula formula_;
};

struct Stage {
  LocationPredicate where;
  Interval interval;
};

struct ChainConstraint {
  std::vector<Stage> stages;
  ActionPattern opens;
  ActionPattern closes;
};

struct Constraints {
  std::vector<AbsConstraint> abs;
  std::vector<RelConstraint> rel;
  std::vector<ChainConstraint> chain;
};

struct Activation {
  int start = 1; // plan index matching `opens`
  int end = 2;   // plan index matching `closes`
  friend bool operator==(const Activation &, const Activation &) = default;
};

struct TimedAction {
  std::string label;
  Rational time;
  friend bool operator==(const TimedAction &, const TimedAction &) = default;
};
using Trace = std::vector<TimedAction>;

// An automaton over plan x platform locations. For every location it
// records how many plan actions have happened and the platform location.
struct Encoding {
  ta::TimedAutomaton automaton;
  std::vector<int> plan_step;
  std::vector<int> platform_location;
};

// Throws InputError on out-of-range indices or malformed constraints.
void check_constraints(const Plan &plan, const ta::TimedAutomaton &platform,
                       const Constraints &constraints);

ta::TimedAutomaton encode_plan(const Plan &plan, const Constraints &constraints);

std::vector<Activation> get_activations(const ChainConstraint &chain,
                                        const Plan &plan);

// Plan automaton composed with the platform, which gets ε self-loops.
Encoding compose(const Plan &plan, const ta::TimedAutomaton &platform,
                 const Constraints &constraints);

// Replaces the activation context by one filtered copy per stage; `clock`
// must be fresh. Throws ModelError when a stage keeps no location.
Encoding enforce_chain(const Encoding &encoding, const Activation &activation,
                       const ChainConstraint &chain,
                       const ta::TimedAutomaton &platform,
                       const std::string &clock);

struct TransformResult {
  Encoding encoding;
  // The accepted run including ε steps; none when the plan is not
  // realizable under the constraints.
  std::optional<Trace> run;
  std::string reason;
  std::size_t symbolic_states = 0;
};

TransformResult transform_plan(const Plan &plan, const ta::TimedAutomaton &platform,
                               const Constraints &constraints);

// Drops ε steps.
Trace visible(const Trace &trace);

// Independent check: the trace executes the plan in order, replays on the
// platform (ε steps allowed), and satisfies the constraints as MTL formulas
// over occurrence and location atoms. `why` receives the first failure.
bool validate_transformed(const Trace &trace, const Plan &plan,
                          const ta::TimedAutomaton &platform,
                          const Constraints &constraints,
                          std::string *why = nullptr);

// The MTL reading of each constraint. Atoms: "#i" for the i-th plan
// action occurring, "@loc" for the current platform location.
std::vector<mtl::Formula> constraint_formulas(const Plan &plan,
                                              const Constraints &constraints);

Plan plan_from_json(const nlohmann::json &j);
nlohmann::json plan_to_json(const Plan &plan);
Constraints constraints_from_json(const nlohmann::json &j);
nlohmann::json constraints_to_json(const Constraints &constraints);
Trace trace_from_json(const nlohmann::json &j);
nlohmann::json trace_to_json(const Trace &trace);

} // namespace tsynth::plantrans
