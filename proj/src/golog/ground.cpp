#include "tsynth/golog/ground.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>

namespace tsynth::golog {

Ground Ground::make(Node n) {
  switch (n.kind) {
  case Kind::True: n.key = "T"; break;
  case Kind::False: n.key = "F"; break;
  case Kind::Atom: n.key = "a" + std::to_string(n.id); break;
  case Kind::Clock:
    n.key = "c" + std::to_string(n.id) + to_string(n.rel) + to_string(n.constant);
    break;
  case Kind::Not: n.key = "!" + n.children[0].key(); break;
  case Kind::And:
  case Kind::Or:
    n.key = n.kind == Kind::And ? "&(" : "|(";
    for (const auto &c : n.children)
      n.key += c.key() + ",";
    n.key += ")";
    break;
  }
  return Ground(std::make_shared<const Node>(std::move(n)));
}

Ground Ground::truth() {
  static const Ground t = make(Node{});
  return t;
}

Ground Ground::falsity() {
  static const Ground f = [] {
    Node n;
    n.kind = Kind::False;
    return make(std::move(n));
  }();
  return f;
}

Ground Ground::atom(int id) {
  Node n;
  n.kind = Kind::Atom;
  n.id = id;
  return make(std::move(n));
}

Ground Ground::clock(int clock, Rel rel, Rational constant) {
  Node n;
  n.kind = Kind::Clock;
  n.id = clock;
  n.rel = rel;
  n.constant = std::move(constant);
  return make(std::move(n));
}

Ground Ground::negate(const Ground &g) {
  if (g.is_true())
    return falsity();
  if (g.is_false())
    return truth();
  if (g.kind() == Kind::Not)
    return g.children()[0];
  Node n;
  n.kind = Kind::Not;
  n.children.push_back(g);
  return make(std::move(n));
}

namespace {

std::vector<Ground> flatten(std::vector<Ground> parts, Ground::Kind kind,
                            bool &absorbed) {
  std::vector<Ground> out;
  absorbed = false;
  auto absorbing = kind == Ground::Kind::And ? Ground::Kind::False
                                             : Ground::Kind::True;
  auto neutral = kind == Ground::Kind::And ? Ground::Kind::True
                                           : Ground::Kind::False;
  for (auto &p : parts) {
    if (p.kind() == absorbing) {
      absorbed = true;
      return {};
    }
    if (p.kind() == neutral)
      continue;
    if (p.kind() == kind) {
      for (const auto &c : p.children())
        out.push_back(c);
    } else {
      out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Ground &a, const Ground &b) { return a.key() < b.key(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

Ground Ground::conj(std::vector<Ground> parts) {
  bool absorbed = false;
  auto kept = flatten(std::move(parts), Kind::And, absorbed);
  if (absorbed)
    return falsity();
  if (kept.empty())
    return truth();
  if (kept.size() == 1)
    return kept[0];
  Node n;
  n.kind = Kind::And;
  n.children = std::move(kept);
  return make(std::move(n));
}

Ground Ground::disj(std::vector<Ground> parts) {
  bool absorbed = false;
  auto kept = flatten(std::move(parts), Kind::Or, absorbed);
  if (absorbed)
    return truth();
  if (kept.empty())
    return falsity();
  if (kept.size() == 1)
    return kept[0];
  Node n;
  n.kind = Kind::Or;
  n.children = std::move(kept);
  return make(std::move(n));
}

bool Ground::eval(const std::vector<char> &atoms,
                  const std::vector<Rational> &clocks) const {
  switch (kind()) {
  case Kind::True: return true;
  case Kind::False: return false;
  case Kind::Atom: return atoms.at(static_cast<std::size_t>(id())) != 0;
  case Kind::Clock:
    return compare(clocks.at(static_cast<std::size_t>(id())), rel(), constant());
  case Kind::Not: return !children()[0].eval(atoms, clocks);
  case Kind::And:
    for (const auto &c : children())
      if (!c.eval(atoms, clocks))
        return false;
    return true;
  case Kind::Or:
    for (const auto &c : children())
      if (c.eval(atoms, clocks))
        return true;
    return false;
  }
  throw ContractError("unreachable ground kind");
}

std::string Ground::str(const std::function<std::string(int)> &atom_name,
                        const std::function<std::string(int)> &clock_name) const {
  switch (kind()) {
  case Kind::True: return "true";
  case Kind::False: return "false";
  case Kind::Atom: return atom_name(id());
  case Kind::Clock:
    return "(" + to_string(rel()) + " " + clock_name(id()) + " " +
           to_string(constant()) + ")";
  case Kind::Not: return "(not " + children()[0].str(atom_name, clock_name) + ")";
  case Kind::And:
  case Kind::Or: {
    std::string s = kind() == Kind::And ? "(and" : "(or";
    for (const auto &c : children())
      s += " " + c.str(atom_name, clock_name);
    return s + ")";
  }
  }
  return "?";
}

Ground Ground::map(
    const std::function<Ground(int)> &atom_fn,
    const std::function<Ground(int, Rel, const Rational &)> &clock_fn) const {
  switch (kind()) {
  case Kind::True:
  case Kind::False: return *this;
  case Kind::Atom: return atom_fn(id());
  case Kind::Clock: return clock_fn(id(), rel(), constant());
  case Kind::Not: return negate(children()[0].map(atom_fn, clock_fn));
  case Kind::And:
  case Kind::Or: {
    std::vector<Ground> parts;
    parts.reserve(children().size());
    for (const auto &c : children())
      parts.push_back(c.map(atom_fn, clock_fn));
    return kind() == Kind::And ? conj(std::move(parts)) : disj(std::move(parts));
  }
  }
  throw ContractError("unreachable ground kind");
}

void Ground::collect_clock_constants(std::vector<Rational> &out) const {
  if (kind() == Kind::Clock)
    out.push_back(constant());
  for (const auto &c : children())
    c.collect_clock_constants(out);
}

} // namespace tsynth::golog
