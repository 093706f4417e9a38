#pragma once

#include "tsynth/core/rational.hpp"

#include <set>
#include <string>
#include <vector>

namespace tsynth::mtl {

struct WordEntry {
  std::set<std::string> symbols;
  Rational time;

  friend bool operator==(const WordEntry &, const WordEntry &) = default;
};

using TimedWord = std::vector<WordEntry>;

// Throws InputError unless the first time is 0 and times are non-decreasing.
void validate_word(const TimedWord &word);

} // namespace tsynth::mtl
