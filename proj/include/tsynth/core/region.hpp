#pragma once

#include "tsynth/core/clock.hpp"
#include "tsynth/core/rational.hpp"

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace tsynth {

// 2i for value i, 2i+1 for (i, i+1), 2K+1 for every value above K.
struct RegionIndex {
  int value = 0;
  auto operator<=>(const RegionIndex &) const = default;
};

RegionIndex region_of(const Rational &value, int max_constant);
inline bool is_unbounded(RegionIndex r, int max_constant) {
  return r.value == 2 * max_constant + 1;
}
std::string to_string(RegionIndex r, int max_constant);

// Fractional part with values above K counted as zero.
Rational bounded_fract(const Rational &value, int max_constant);

template <class Name> using NamedValues = std::vector<std::pair<Name, Rational>>;
using ClockSet = NamedValues<std::string>;

bool region_equivalent(const ClockSet &lhs, const ClockSet &rhs,
                       int max_constant);

Rational region_increment(const std::vector<Rational> &values,
                          int max_constant);
Rational region_increment(const ClockSet &values, int max_constant);

struct TimeSuccessor {
  Rational delay; // accumulated from the input valuation
  ClockSet values;
};

std::vector<TimeSuccessor> time_successors(const ClockSet &values,
                                           int max_constant);
// Only the accumulated increments rincr^0, rincr^1, ...
std::vector<Rational> increment_sequence(std::vector<Rational> values,
                                         int max_constant);

// Maps every value to a canonical representative of its region class: values
// above K become K+1, integer parts are kept, distinct positive fractional
// parts become 1/(m+1), ..., m/(m+1) in order.
void normalize_values(std::vector<Rational *> &values, int max_constant);

template <class Name> struct BasicEntry {
  Name name;
  RegionIndex region;
  auto operator<=>(const BasicEntry &) const = default;
};
template <class Name> using BasicLetter = std::vector<BasicEntry<Name>>;
template <class Name> using BasicWord = std::vector<BasicLetter<Name>>;

using CanonicalEntry = BasicEntry<std::string>;
using Letter = BasicLetter<std::string>;
using CanonicalWord = BasicWord<std::string>;

template <class Name>
BasicWord<Name> canonical_word(const NamedValues<Name> &values,
                               int max_constant) {
  struct Item {
    Rational frac;
    BasicEntry<Name> entry;
  };
  std::vector<Item> items;
  items.reserve(values.size());
  for (const auto &[name, v] : values)
    items.push_back({bounded_fract(v, max_constant),
                     {name, region_of(v, max_constant)}});
  std::sort(items.begin(), items.end(), [](const Item &a, const Item &b) {
    if (a.frac != b.frac)
      return a.frac < b.frac;
    return a.entry < b.entry;
  });
  BasicWord<Name> word;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i == 0 || items[i].frac != items[i - 1].frac)
      word.emplace_back();
    word.back().push_back(items[i].entry);
  }
  return word;
}

template <class Name>
bool mono_dom_leq(const BasicWord<Name> &lhs, const BasicWord<Name> &rhs) {
  std::size_t j = 0;
  for (const auto &letter : lhs) {
    while (j < rhs.size() && !std::includes(rhs[j].begin(), rhs[j].end(),
                                            letter.begin(), letter.end()))
      ++j;
    if (j == rhs.size())
      return false;
    ++j;
  }
  return true;
}

template <class X, class Y, class Leq>
bool powerset_leq(const X &lower, const Y &upper, Leq leq) {
  for (const auto &y : upper) {
    bool found = false;
    for (const auto &x : lower)
      if (leq(x, y)) {
        found = true;
        break;
      }
    if (!found)
      return false;
  }
  return true;
}

std::string to_string(const CanonicalWord &word, int max_constant);

} // namespace tsynth
