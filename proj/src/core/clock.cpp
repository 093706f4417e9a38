#include "tsynth/core/clock.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>

namespace tsynth {

std::string to_string(Rel rel) {
  switch (rel) {
  case Rel::Lt: return "<";
  case Rel::Le: return "<=";
  case Rel::Eq: return "=";
  case Rel::Ge: return ">=";
  case Rel::Gt: return ">";
  }
  return "?";
}

Rel parse_rel(std::string_view text) {
  if (text == "<") return Rel::Lt;
  if (text == "<=") return Rel::Le;
  if (text == "=" || text == "==") return Rel::Eq;
  if (text == ">=") return Rel::Ge;
  if (text == ">") return Rel::Gt;
  throw InputError("unknown comparison '" + std::string(text) + "'");
}

bool compare(const Rational &lhs, Rel rel, const Rational &rhs) {
  switch (rel) {
  case Rel::Lt: return lhs < rhs;
  case Rel::Le: return lhs <= rhs;
  case Rel::Eq: return lhs == rhs;
  case Rel::Ge: return lhs >= rhs;
  case Rel::Gt: return lhs > rhs;
  }
  return false;
}

std::int64_t ClockConstraint::max_constant() const {
  std::int64_t m = 0;
  for (const auto &a : atoms)
    m = std::max(m, a.constant);
  return m;
}

ClockConstraint conjoin(ClockConstraint lhs, const ClockConstraint &rhs) {
  lhs.atoms.insert(lhs.atoms.end(), rhs.atoms.begin(), rhs.atoms.end());
  return lhs;
}

std::string to_string(const ClockConstraint &constraint) {
  if (constraint.atoms.empty())
    return "true";
  auto atom = [](const ClockAtom &a) {
    return "(" + to_string(a.rel) + " " + a.clock + " " +
           std::to_string(a.constant) + ")";
  };
  if (constraint.atoms.size() == 1)
    return atom(constraint.atoms[0]);
  std::string s = "(and";
  for (const auto &a : constraint.atoms)
    s += " " + atom(a);
  return s + ")";
}

ClockValuation::ClockValuation(const std::vector<std::string> &clocks) {
  for (const auto &c : clocks)
    values_.emplace(c, 0);
}

const Rational &ClockValuation::at(const std::string &clock) const {
  auto it = values_.find(clock);
  if (it == values_.end())
    throw InputError("unknown clock '" + clock + "'");
  return it->second;
}

void ClockValuation::set(const std::string &clock, Rational value) {
  values_[clock] = std::move(value);
}

bool ClockValuation::contains(const std::string &clock) const {
  return values_.count(clock) != 0;
}

bool eval_constraint(const ClockValuation &valuation,
                     const ClockConstraint &constraint) {
  for (const auto &a : constraint.atoms)
    if (!compare(valuation.at(a.clock), a.rel, Rational(a.constant)))
      return false;
  return true;
}

ClockValuation advance(const ClockValuation &valuation,
                       const Rational &delay) {
  if (delay < 0)
    throw ContractError("negative delay " + to_string(delay));
  ClockValuation out = valuation;
  for (const auto &[name, value] : valuation.entries())
    out.set(name, value + delay);
  return out;
}

ClockValuation reset(const ClockValuation &valuation,
                     const std::set<std::string> &clocks) {
  ClockValuation out = valuation;
  for (const auto &c : clocks) {
    if (!valuation.contains(c))
      throw ContractError("reset of unknown clock '" + c + "'");
    out.set(c, 0);
  }
  return out;
}

} // namespace tsynth
