#pragma once

#include "tsynth/core/rational.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace tsynth {

enum class Rel { Lt, Le, Eq, Ge, Gt };

std::string to_string(Rel rel);
Rel parse_rel(std::string_view text);
bool compare(const Rational &lhs, Rel rel, const Rational &rhs);

struct ClockAtom {
  std::string clock;
  Rel rel = Rel::Le;
  std::int64_t constant = 0;

  friend bool operator==(const ClockAtom &, const ClockAtom &) = default;
};

// Conjunction of atoms; empty means true.
struct ClockConstraint {
  std::vector<ClockAtom> atoms;

  std::int64_t max_constant() const;
  friend bool operator==(const ClockConstraint &,
                         const ClockConstraint &) = default;
};

ClockConstraint conjoin(ClockConstraint lhs, const ClockConstraint &rhs);
std::string to_string(const ClockConstraint &constraint);

class ClockValuation {
public:
  ClockValuation() = default;
  explicit ClockValuation(const std::vector<std::string> &clocks);

  const Rational &at(const std::string &clock) const;
  void set(const std::string &clock, Rational value);
  bool contains(const std::string &clock) const;
  const std::map<std::string, Rational> &entries() const { return values_; }

  friend bool operator==(const ClockValuation &,
                         const ClockValuation &) = default;

private:
  std::map<std::string, Rational> values_;
};

bool eval_constraint(const ClockValuation &valuation,
                     const ClockConstraint &constraint);
ClockValuation advance(const ClockValuation &valuation, const Rational &delay);
ClockValuation reset(const ClockValuation &valuation,
                     const std::set<std::string> &clocks);

} // namespace tsynth
