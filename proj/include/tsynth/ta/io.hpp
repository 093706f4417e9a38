#pragma once

#include "tsynth/ta/automaton.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace tsynth::ta {

// "true", "(<= x 6)" or "(and (>= x 4) (<= x 6))"; throws InputError.
ClockConstraint parse_clock_constraint(std::string_view text);

TimedAutomaton ta_from_json(const nlohmann::json &j);
nlohmann::json ta_to_json(const TimedAutomaton &a);

// Guards and invariants as inequalities, resets as "x:=0".
std::string to_dot(const TimedAutomaton &a, std::string_view name = "ta");

nlohmann::json run_to_json(const TimedAutomaton &a, const Run &run);

} // namespace tsynth::ta
