#pragma once

#include "tsynth/golog/interpreter.hpp"
#include "tsynth/golog/program.hpp"
#include "tsynth/ta/automaton.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tsynth::golog {

// A timed automaton simulated by a theory: fluents `loc` and `occ` (label of
// the last switch), one action per switch, and the program
// (switch actions)* ; final(loc)?
struct TaEmbedding {
  Bat bat;
  Program program = Program::nil();
  std::vector<std::string> labels; // per action id
};

// Target invariants are checked with reset clocks at 0. Throws InputError
// when that check fails, since such a switch could never fire.
nlohmann::json bat_json_from_ta(const ta::TimedAutomaton &a);
TaEmbedding bat_from_ta(const ta::TimedAutomaton &a);

// Switch actions become their labels; other actions keep their names.
mtl::TimedWord label_trace(const TaEmbedding &embedding, const Trace &trace);

} // namespace tsynth::golog
