#include "tsynth/mtl/formula.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>
#include <set>

namespace tsynth::mtl {

Formula Formula::make(Kind kind, std::string name,
                      std::vector<Formula> children, Interval interval) {
  std::string text;
  switch (kind) {
  case Kind::True: text = "true"; break;
  case Kind::False: text = "false"; break;
  case Kind::Atom: text = name; break;
  case Kind::Not: text = "(not " + children[0].str() + ")"; break;
  case Kind::And:
  case Kind::Or:
    text = kind == Kind::And ? "(and" : "(or";
    for (const auto &c : children)
      text += " " + c.str();
    text += ")";
    break;
  case Kind::Until:
  case Kind::DualUntil:
    text = std::string(kind == Kind::Until ? "(until " : "(dual-until ") +
           children[0].str() + " " + children[1].str() + " " +
           to_string(interval) + ")";
    break;
  }
  auto node = std::make_shared<Node>(
      Node{kind, std::move(name), std::move(children), interval, std::move(text)});
  return Formula(std::move(node));
}

Formula Formula::truth() { return make(Kind::True, "", {}, {}); }
Formula Formula::falsity() { return make(Kind::False, "", {}, {}); }

Formula Formula::atom(std::string name) {
  if (name.empty())
    throw InputError("empty atom name");
  if (name == "true" || name == "false")
    throw InputError("reserved atom name '" + name + "'");
  return make(Kind::Atom, std::move(name), {}, {});
}

Formula Formula::negate(Formula f) {
  return make(Kind::Not, "", {std::move(f)}, {});
}

Formula Formula::conj(std::vector<Formula> parts) {
  if (parts.empty())
    return truth();
  if (parts.size() == 1)
    return parts[0];
  return make(Kind::And, "", std::move(parts), {});
}

Formula Formula::disj(std::vector<Formula> parts) {
  if (parts.empty())
    return falsity();
  if (parts.size() == 1)
    return parts[0];
  return make(Kind::Or, "", std::move(parts), {});
}

Formula Formula::until(Formula lhs, Formula rhs, Interval interval) {
  return make(Kind::Until, "", {std::move(lhs), std::move(rhs)}, interval);
}

Formula Formula::dual_until(Formula lhs, Formula rhs, Interval interval) {
  return make(Kind::DualUntil, "", {std::move(lhs), std::move(rhs)}, interval);
}

Formula Formula::finally(Formula f, Interval interval) {
  return until(truth(), std::move(f), interval);
}

Formula Formula::globally(Formula f, Interval interval) {
  return negate(finally(negate(std::move(f)), interval));
}

Formula Formula::next(Formula f, Interval interval) {
  return until(falsity(), std::move(f), interval);
}

namespace {

Formula pnf(const Formula &f, bool negated) {
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::True: return negated ? Formula::falsity() : f;
  case K::False: return negated ? Formula::truth() : f;
  case K::Atom: return negated ? Formula::negate(f) : f;
  case K::Not: return pnf(f.children()[0], !negated);
  case K::And:
  case K::Or: {
    std::vector<Formula> parts;
    for (const auto &c : f.children())
      parts.push_back(pnf(c, negated));
    bool conj = (f.kind() == K::And) != negated;
    return conj ? Formula::conj(std::move(parts))
                : Formula::disj(std::move(parts));
  }
  case K::Until:
  case K::DualUntil: {
    auto l = pnf(f.lhs(), negated);
    auto r = pnf(f.rhs(), negated);
    bool until = (f.kind() == K::Until) != negated;
    return until ? Formula::until(l, r, f.interval())
                 : Formula::dual_until(l, r, f.interval());
  }
  }
  throw ContractError("unreachable formula kind");
}

void collect_closure(const Formula &f, std::vector<Formula> &out,
                     std::set<std::string> &seen) {
  if (f.is_temporal() && seen.insert(f.str()).second)
    out.push_back(f);
  for (const auto &c : f.children())
    collect_closure(c, out, seen);
}

void collect_atoms(const Formula &f, std::set<std::string> &out) {
  if (f.kind() == Formula::Kind::Atom)
    out.insert(f.name());
  for (const auto &c : f.children())
    collect_atoms(c, out);
}

} // namespace

Formula to_pnf(const Formula &f) { return pnf(f, false); }

bool is_pnf(const Formula &f) {
  if (f.kind() == Formula::Kind::Not)
    return f.children()[0].kind() == Formula::Kind::Atom;
  return std::all_of(f.children().begin(), f.children().end(), is_pnf);
}

std::vector<Formula> closure(const Formula &f) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  collect_closure(f, out, seen);
  return out;
}

std::int64_t max_constant(const Formula &f) {
  std::int64_t m = f.is_temporal() && f.interval().hi ? *f.interval().hi : 0;
  if (f.is_temporal())
    m = std::max(m, f.interval().lo);
  for (const auto &c : f.children())
    m = std::max(m, max_constant(c));
  return m;
}

std::vector<std::string> atoms_of(const Formula &f) {
  std::set<std::string> s;
  collect_atoms(f, s);
  return {s.begin(), s.end()};
}

} // namespace tsynth::mtl

namespace tsynth::mtl {

Formula scale_intervals(const Formula &f, std::int64_t factor) {
  using K = Formula::Kind;
  std::vector<Formula> parts;
  for (const auto &c : f.children())
    parts.push_back(scale_intervals(c, factor));
  switch (f.kind()) {
  case K::True:
  case K::False:
  case K::Atom: return f;
  case K::Not: return Formula::negate(parts[0]);
  case K::And: return Formula::conj(std::move(parts));
  case K::Or: return Formula::disj(std::move(parts));
  case K::Until:
  case K::DualUntil: {
    Interval i = f.interval();
    i.lo *= factor;
    if (i.hi)
      *i.hi *= factor;
    return f.kind() == K::Until ? Formula::until(parts[0], parts[1], i)
                                : Formula::dual_until(parts[0], parts[1], i);
  }
  }
  throw ContractError("unreachable formula kind");
}

} // namespace tsynth::mtl
