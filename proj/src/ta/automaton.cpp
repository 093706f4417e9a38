#include "tsynth/ta/automaton.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>

namespace tsynth::ta {

int TimedAutomaton::add_location(std::string name, ClockConstraint invariant) {
  locations.push_back(std::move(name));
  invariants.push_back(std::move(invariant));
  return static_cast<int>(locations.size()) - 1;
}

int TimedAutomaton::location_id(const std::string &name) const {
  auto it = std::find(locations.begin(), locations.end(), name);
  if (it == locations.end())
    throw InputError("unknown location '" + name + "'");
  return static_cast<int>(it - locations.begin());
}

bool TimedAutomaton::is_final(int location) const {
  return std::find(finals.begin(), finals.end(), location) != finals.end();
}

std::set<std::string> TimedAutomaton::alphabet() const {
  std::set<std::string> out{kEpsilon};
  for (const auto &s : switches)
    out.insert(s.label);
  return out;
}

std::int64_t TimedAutomaton::max_constant() const {
  std::int64_t k = 0;
  for (const auto &inv : invariants)
    k = std::max(k, inv.max_constant());
  for (const auto &s : switches)
    k = std::max(k, s.guard.max_constant());
  return k;
}

void TimedAutomaton::validate() const {
  const int n = static_cast<int>(locations.size());
  auto in_range = [n](int l) { return l >= 0 && l < n; };
  if (!in_range(initial))
    throw InputError("initial location out of range");
  if (static_cast<int>(invariants.size()) != n)
    throw InputError("one invariant per location expected");
  for (int f : finals)
    if (!in_range(f))
      throw InputError("final location out of range");
  std::set<std::string> declared(clocks.begin(), clocks.end());
  if (declared.size() != clocks.size())
    throw InputError("duplicate clock declaration");
  auto check = [&](const ClockConstraint &c) {
    for (const auto &a : c.atoms) {
      if (!declared.count(a.clock))
        throw InputError("undeclared clock '" + a.clock + "'");
      if (a.constant < 0)
        throw InputError("negative clock constant");
    }
  };
  for (const auto &inv : invariants)
    check(inv);
  for (const auto &s : switches) {
    if (!in_range(s.src) || !in_range(s.dst))
      throw InputError("switch '" + s.label + "' has a dangling location");
    check(s.guard);
    for (const auto &r : s.resets)
      if (!declared.count(r))
        throw InputError("undeclared clock '" + r + "'");
  }
}

TimedAutomaton with_epsilon_loops(TimedAutomaton a) {
  std::vector<bool> has(a.locations.size(), false);
  for (const auto &s : a.switches)
    if (s.label == kEpsilon && s.src == s.dst && s.guard.atoms.empty() &&
        s.resets.empty())
      has[s.src] = true;
  for (std::size_t l = 0; l < has.size(); ++l)
    if (!has[l]) {
      const int li = static_cast<int>(l);
      a.switches.push_back({li, kEpsilon, {}, {}, li});
    }
  return a;
}

TimedAutomaton parallel_compose(const TimedAutomaton &lhs,
                                const TimedAutomaton &rhs) {
  for (const auto &c : lhs.clocks)
    if (std::find(rhs.clocks.begin(), rhs.clocks.end(), c) != rhs.clocks.end())
      throw InputError("clock '" + c + "' declared in both automata");
  auto la = lhs.alphabet(), ra = rhs.alphabet();
  for (const auto &l : la)
    if (l != kEpsilon && ra.count(l))
      throw InputError("label '" + l + "' used by both automata");

  const int n1 = static_cast<int>(lhs.locations.size());
  const int n2 = static_cast<int>(rhs.locations.size());
  auto id = [n2](int i, int j) { return i * n2 + j; };

  TimedAutomaton out;
  out.clocks = lhs.clocks;
  out.clocks.insert(out.clocks.end(), rhs.clocks.begin(), rhs.clocks.end());
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      out.add_location("(" + lhs.locations[i] + "," + rhs.locations[j] + ")",
                       conjoin(lhs.invariants[i], rhs.invariants[j]));
  out.initial = id(lhs.initial, rhs.initial);
  for (int f1 : lhs.finals)
    for (int f2 : rhs.finals)
      out.finals.push_back(id(f1, f2));
  std::sort(out.finals.begin(), out.finals.end());

  // A silent self-loop in either component yields the same product switch;
  // keep one per location.
  std::vector<bool> eps_loop(out.locations.size(), false);
  auto add = [&](Switch s) {
    const bool plain_loop = s.label == kEpsilon && s.src == s.dst &&
                            s.guard.atoms.empty() && s.resets.empty();
    if (plain_loop) {
      if (eps_loop[s.src])
        return;
      eps_loop[s.src] = true;
    }
    out.switches.push_back(std::move(s));
  };
  for (int i = 0; i < n1; ++i)
    for (const auto &s : lhs.switches) {
      if (s.src != i)
        continue;
      for (int j = 0; j < n2; ++j)
        add({id(i, j), s.label, s.guard, s.resets, id(s.dst, j)});
    }
  for (int j = 0; j < n2; ++j)
    for (const auto &s : rhs.switches) {
      if (s.src != j)
        continue;
      for (int i = 0; i < n1; ++i)
        add({id(i, j), s.label, s.guard, s.resets, id(i, s.dst)});
    }
  return out;
}

bool replay_run(const TimedAutomaton &a, const Run &run) {
  ClockValuation v(a.clocks);
  int loc = a.initial;
  if (!eval_constraint(v, a.invariants[loc]))
    return false;
  for (const auto &step : run) {
    if (step.delay < 0 || step.switch_id < 0 ||
        step.switch_id >= static_cast<int>(a.switches.size()))
      return false;
    const auto &s = a.switches[step.switch_id];
    if (s.src != loc)
      return false;
    v = advance(v, step.delay);
    if (!eval_constraint(v, a.invariants[loc]) || !eval_constraint(v, s.guard))
      return false;
    v = reset(v, {s.resets.begin(), s.resets.end()});
    loc = s.dst;
    if (!eval_constraint(v, a.invariants[loc]))
      return false;
  }
  return a.is_final(loc);
}

mtl::TimedWord run_to_timed_word(const TimedAutomaton &a, const Run &run) {
  mtl::TimedWord word;
  Rational now = 0;
  for (const auto &step : run) {
    now += step.delay;
    const auto &label = a.switches.at(step.switch_id).label;
    if (label != kEpsilon)
      word.push_back({{label}, now});
  }
  return word;
}

ClockConstraint in_interval(const std::string &clock, const Interval &interval) {
  ClockConstraint c;
  if (interval.hi && !interval.lo_open && !interval.hi_open &&
      *interval.hi == interval.lo) {
    c.atoms.push_back({clock, Rel::Eq, interval.lo});
    return c;
  }
  if (interval.lo_open)
    c.atoms.push_back({clock, Rel::Gt, interval.lo});
  else if (interval.lo > 0)
    c.atoms.push_back({clock, Rel::Ge, interval.lo});
  if (interval.hi)
    c.atoms.push_back({clock, interval.hi_open ? Rel::Lt : Rel::Le, *interval.hi});
  return c;
}

} // namespace tsynth::ta
