#pragma once

#include "tsynth/core/sexpr.hpp"
#include "tsynth/mtl/formula.hpp"
#include "tsynth/mtl/word.hpp"

#include <json.hpp>
#include <string_view>

namespace tsynth::mtl {

Formula formula_from_json(const nlohmann::json &j);
nlohmann::json formula_to_json(const Formula &f);

// "(until (atom p) (atom q) [0,2])", "(finally (and (not camOn) grasping))"
Formula parse_formula(std::string_view text);
Formula formula_from_sexpr(const Sexpr &e);
// JSON when the text starts with '{', s-expression otherwise.
Formula parse_formula_any(std::string_view text);

Interval interval_from_json(const nlohmann::json &j);
nlohmann::json interval_to_json(const Interval &i);

TimedWord word_from_json(const nlohmann::json &j);
nlohmann::json word_to_json(const TimedWord &w);

} // namespace tsynth::mtl
