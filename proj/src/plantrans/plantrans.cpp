#include "tsynth/plantrans/plantrans.hpp"

#include "tsynth/core/errors.hpp"
#include "tsynth/mtl/io.hpp"
#include "tsynth/mtl/semantics.hpp"
#include "tsynth/ta/reach.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace tsynth::plantrans {

namespace {

using mtl::Formula;

bool is_propositional(const Formula &f) {
  if (f.is_temporal())
    return false;
  return std::all_of(f.children().begin(), f.children().end(), is_propositional);
}

bool eval_static(const Formula &f, const std::function<bool(const std::string &)> &atom) {
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::True: return true;
  case K::False: return false;
  case K::Atom: return atom(f.name());
  case K::Not: return !eval_static(f.children()[0], atom);
  case K::And:
    return std::all_of(f.children().begin(), f.children().end(),
                       [&](const Formula &c) { return eval_static(c, atom); });
  case K::Or:
    return std::any_of(f.children().begin(), f.children().end(),
                       [&](const Formula &c) { return eval_static(c, atom); });
  default: break;
  }
  throw ContractError("location predicate with a temporal operator");
}

Formula prefix_atoms(const Formula &f, const std::string &prefix) {
  using K = Formula::Kind;
  std::vector<Formula> parts;
  for (const auto &c : f.children())
    parts.push_back(prefix_atoms(c, prefix));
  switch (f.kind()) {
  case K::Atom: return Formula::atom(prefix + f.name());
  case K::Not: return Formula::negate(parts[0]);
  case K::And: return Formula::conj(parts);
  case K::Or: return Formula::disj(parts);
  default: return f;
  }
}

Formula occurs(int index) { return Formula::atom("#" + std::to_string(index)); }

Formula any_of_plan(const Plan &plan, const ActionPattern &pattern) {
  std::vector<Formula> hits;
  for (std::size_t i = 0; i < plan.actions.size(); ++i)
    if (pattern.matches(plan.actions[i]))
      hits.push_back(occurs(static_cast<int>(i + 1)));
  return hits.empty() ? Formula::falsity() : Formula::disj(hits);
}

std::string rel_clock(int from, int to) {
  return "x" + std::to_string(from) + "_" + std::to_string(to);
}

const std::string kAbsClock = "xabs";

} // namespace

ActionPattern::ActionPattern(std::string text) : text_(std::move(text)) {
  if (text_.empty() || text_ == "*")
    throw InputError("action pattern must name an action or a prefix");
}

bool ActionPattern::matches(const std::string &action) const {
  if (text_.back() == '*')
    return action.compare(0, text_.size() - 1, text_, 0, text_.size() - 1) == 0;
  return action == text_;
}

LocationPredicate::LocationPredicate(const std::string &text)
    : formula_(mtl::parse_formula(text)) {
  if (!is_propositional(formula_))
    throw InputError("location predicate must not use temporal operators: " + text);
}

bool LocationPredicate::holds(const std::string &location) const {
  return eval_static(formula_, [&](const std::string &name) { return name == location; });
}

void check_constraints(const Plan &plan, const ta::TimedAutomaton &platform,
                       const Constraints &constraints) {
  const int n = static_cast<int>(plan.actions.size());
  for (const auto &a : plan.actions)
    if (a.empty() || a == ta::kEpsilon)
      throw InputError("plan action names must be non-empty and not '" + ta::kEpsilon + "'");
  auto in_range = [n](int i) { return i >= 1 && i <= n; };
  for (const auto &c : constraints.abs)
    if (!in_range(c.index))
      throw InputError("absolute constraint index " + std::to_string(c.index) +
                       " outside the plan");
  for (const auto &c : constraints.rel)
    if (!in_range(c.from) || !in_range(c.to) || c.from >= c.to)
      throw InputError("relative constraint needs 1 <= i < j <= " + std::to_string(n));
  std::set<std::string> locations(platform.locations.begin(), platform.locations.end());
  for (const auto &chain : constraints.chain) {
    if (chain.stages.empty())
      throw InputError("chain constraint without stages");
    for (const auto &stage : chain.stages)
      for (const auto &atom : mtl::atoms_of(stage.where.formula()))
        if (!locations.count(atom))
          throw InputError("location predicate names unknown location '" + atom + "'");
  }
}

ta::TimedAutomaton encode_plan(const Plan &plan, const Constraints &constraints) {
  ta::TimedAutomaton a;
  const int n = static_cast<int>(plan.actions.size());
  for (int i = 0; i <= n; ++i)
    a.add_location("l" + std::to_string(i));
  a.initial = 0;
  a.finals = {n};
  // Clocks only for constraints that exist; unused ones never change a guard.
  if (!constraints.abs.empty())
    a.clocks.push_back(kAbsClock);
  std::set<std::pair<int, int>> pairs;
  for (const auto &r : constraints.rel)
    pairs.insert({r.from, r.to});
  for (const auto &[from, to] : pairs)
    a.clocks.push_back(rel_clock(from, to));
  for (int i = 1; i <= n; ++i) {
    ta::Switch sw;
    sw.src = i - 1;
    sw.dst = i;
    sw.label = plan.actions[i - 1];
    for (const auto &c : constraints.abs)
      if (c.index == i)
        sw.guard = conjoin(sw.guard, ta::in_interval(kAbsClock, c.interval));
    for (const auto &r : constraints.rel)
      if (r.to == i)
        sw.guard = conjoin(sw.guard, ta::in_interval(rel_clock(r.from, r.to), r.interval));
    for (const auto &[from, to] : pairs)
      if (from == i)
        sw.resets.push_back(rel_clock(from, to));
    a.switches.push_back(std::move(sw));
  }
  return a;
}

std::vector<Activation> get_activations(const ChainConstraint &chain,
                                        const Plan &plan) {
  std::vector<Activation> out;
  const int n = static_cast<int>(plan.actions.size());
  for (int s = 1; s <= n; ++s) {
    if (!chain.opens.matches(plan.actions[s - 1]))
      continue;
    for (int e = s + 1; e <= n; ++e) {
      if (chain.closes.matches(plan.actions[e - 1])) {
        out.push_back({s, e});
        break;
      }
      if (chain.opens.matches(plan.actions[e - 1]))
        break;
    }
  }
  return out;
}

Encoding compose(const Plan &plan, const ta::TimedAutomaton &platform,
                 const Constraints &constraints) {
  auto plan_ta = encode_plan(plan, constraints);
  auto with_eps = ta::with_epsilon_loops(platform);
  Encoding e;
  e.automaton = ta::parallel_compose(plan_ta, with_eps);
  const int width = static_cast<int>(with_eps.locations.size());
  for (std::size_t id = 0; id < e.automaton.locations.size(); ++id) {
    e.plan_step.push_back(static_cast<int>(id) / width);
    e.platform_location.push_back(static_cast<int>(id) % width);
  }
  return e;
}

Encoding enforce_chain(const Encoding &encoding, const Activation &activation,
                       const ChainConstraint &chain,
                       const ta::TimedAutomaton &platform,
                       const std::string &clock) {
  const auto &in = encoding.automaton;
  const std::size_t count = in.locations.size();
  const std::size_t stages = chain.stages.size();
  auto in_context = [&](int l) {
    return encoding.plan_step[l] >= activation.start &&
           encoding.plan_step[l] < activation.end;
  };

  Encoding out;
  auto &a = out.automaton;
  a.clocks = in.clocks;
  a.clocks.push_back(clock);
  auto add = [&](int from, std::string name) {
    out.plan_step.push_back(encoding.plan_step[from]);
    out.platform_location.push_back(encoding.platform_location[from]);
    return a.add_location(std::move(name), in.invariants[from]);
  };

  std::vector<int> kept(count, -1);
  for (std::size_t l = 0; l < count; ++l)
    if (!in_context(static_cast<int>(l)))
      kept[l] = add(static_cast<int>(l), in.locations[l]);
  std::vector<std::vector<int>> copy(stages, std::vector<int>(count, -1));
  for (std::size_t k = 0; k < stages; ++k) {
    bool any = false;
    for (std::size_t l = 0; l < count; ++l) {
      if (!in_context(static_cast<int>(l)))
        continue;
      const auto &where = platform.locations[encoding.platform_location[l]];
      if (!chain.stages[k].where.holds(where))
        continue;
      copy[k][l] = add(static_cast<int>(l), in.locations[l] + "|" + clock + "." +
                                                std::to_string(k + 1));
      any = true;
    }
    if (!any)
      throw ModelError("constraint unsatisfiable within activation (" +
                       std::to_string(activation.start) + "," +
                       std::to_string(activation.end) + "): stage " +
                       std::to_string(k + 1) + " keeps no location");
  }
  a.initial = kept[in.initial];
  for (int f : in.finals)
    if (kept[f] >= 0)
      a.finals.push_back(kept[f]);

  auto emit = [&](const ta::Switch &sw, int src, int dst) {
    ta::Switch copy_sw = sw;
    copy_sw.src = src;
    copy_sw.dst = dst;
    a.switches.push_back(std::move(copy_sw));
    return &a.switches.back();
  };
  const auto &last = chain.stages.back().interval;
  for (const auto &sw : in.switches) {
    const bool from_ctx = in_context(sw.src), to_ctx = in_context(sw.dst);
    if (!from_ctx && !to_ctx) {
      emit(sw, kept[sw.src], kept[sw.dst]);
    } else if (!from_ctx) {
      if (copy[0][sw.dst] >= 0)
        emit(sw, kept[sw.src], copy[0][sw.dst])->resets.push_back(clock);
    } else if (!to_ctx) {
      if (copy[stages - 1][sw.src] >= 0) {
        auto *s = emit(sw, copy[stages - 1][sw.src], kept[sw.dst]);
        s->guard = conjoin(s->guard, ta::in_interval(clock, last));
      }
    } else {
      for (std::size_t k = 0; k < stages; ++k) {
        if (copy[k][sw.src] >= 0 && copy[k][sw.dst] >= 0)
          emit(sw, copy[k][sw.src], copy[k][sw.dst]);
        if (k + 1 < stages && copy[k][sw.src] >= 0 && copy[k + 1][sw.dst] >= 0) {
          auto *s = emit(sw, copy[k][sw.src], copy[k + 1][sw.dst]);
          s->guard = conjoin(s->guard, ta::in_interval(clock, chain.stages[k].interval));
          s->resets.push_back(clock);
        }
      }
    }
  }
  return out;
}

TransformResult transform_plan(const Plan &plan, const ta::TimedAutomaton &platform,
                               const Constraints &constraints) {
  check_constraints(plan, platform, constraints);
  TransformResult result;
  result.encoding = compose(plan, platform, constraints);
  for (std::size_t c = 0; c < constraints.chain.size(); ++c) {
    for (const auto &act : get_activations(constraints.chain[c], plan)) {
      std::string clock = "xc" + std::to_string(c + 1) + "_" + std::to_string(act.start);
      const auto &clocks = result.encoding.automaton.clocks;
      while (std::find(clocks.begin(), clocks.end(), clock) != clocks.end())
        clock += "'";
      try {
        result.encoding = enforce_chain(result.encoding, act, constraints.chain[c],
                                        platform, clock);
      } catch (const ModelError &e) {
        result.reason = e.what();
        return result;
      }
    }
  }
  ta::ReachStats stats;
  auto run = ta::zone_reach(result.encoding.automaton, &stats);
  result.symbolic_states = stats.symbolic_states;
  if (!run) {
    result.reason = "no accepted run: the plan is not realizable under the constraints";
    return result;
  }
  Trace trace;
  Rational now = 0;
  for (const auto &step : *run) {
    now += step.delay;
    trace.push_back({result.encoding.automaton.switches[step.switch_id].label, now});
  }
  result.run = std::move(trace);
  return result;
}

Trace visible(const Trace &trace) {
  Trace out;
  std::copy_if(trace.begin(), trace.end(), std::back_inserter(out),
               [](const TimedAction &a) { return a.label != ta::kEpsilon; });
  return out;
}

std::vector<mtl::Formula> constraint_formulas(const Plan &plan,
                                              const Constraints &constraints) {
  std::vector<Formula> out;
  for (const auto &c : constraints.abs)
    out.push_back(Formula::finally(occurs(c.index), c.interval));
  for (const auto &r : constraints.rel)
    out.push_back(Formula::finally(
        Formula::conj({occurs(r.from), Formula::finally(occurs(r.to), r.interval)})));
  for (const auto &chain : constraints.chain) {
    auto opens = any_of_plan(plan, chain.opens);
    auto closes = any_of_plan(plan, chain.closes);
    auto open_ok = Formula::negate(closes);
    Formula next = closes;
    for (auto k = chain.stages.size(); k-- > 0;) {
      auto here = Formula::conj({prefix_atoms(chain.stages[k].where.formula(), "@"), open_ok});
      next = Formula::conj({here, Formula::until(here, next, chain.stages[k].interval)});
    }
    auto activated = Formula::conj(
        {opens, Formula::until(Formula::negate(opens), closes, Interval::unbounded())});
    out.push_back(Formula::globally(Formula::disj({Formula::negate(activated), next})));
  }
  return out;
}

bool validate_transformed(const Trace &trace, const Plan &plan,
                          const ta::TimedAutomaton &platform,
                          const Constraints &constraints, std::string *why) {
  auto fail = [&](std::string message) {
    if (why)
      *why = std::move(message);
    return false;
  };
  try {
    check_constraints(plan, platform, constraints);
  } catch (const InputError &e) {
    return fail(e.what());
  }
  const auto plat = ta::with_epsilon_loops(platform);
  const auto platform_labels = plat.alphabet();
  std::vector<int> plan_index(trace.size(), 0);
  std::size_t next = 0;
  Rational prev = 0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto &e = trace[k];
    if (e.time < prev)
      return fail("time decreases at step " + std::to_string(k + 1));
    prev = e.time;
    if (platform_labels.count(e.label))
      continue;
    if (next >= plan.actions.size() || plan.actions[next] != e.label)
      return fail("'" + e.label + "' at step " + std::to_string(k + 1) +
                  " is neither the next plan action nor a platform action");
    plan_index[k] = static_cast<int>(++next);
  }
  if (next != plan.actions.size())
    return fail("the trace executes only " + std::to_string(next) + " of " +
                std::to_string(plan.actions.size()) + " plan actions");

  const auto formulas = constraint_formulas(plan, constraints);
  std::vector<int> locations; // platform location after each step
  bool replayed = false;
  std::string violated;
  auto check_word = [&]() {
    mtl::TimedWord word{{{"@" + plat.locations[plat.initial]}, Rational(0)}};
    for (std::size_t k = 0; k < trace.size(); ++k) {
      std::set<std::string> symbols{"@" + plat.locations[locations[k]]};
      if (plan_index[k])
        symbols.insert("#" + std::to_string(plan_index[k]));
      word.push_back({std::move(symbols), trace[k].time});
    }
    for (const auto &f : formulas)
      if (!mtl::satisfies(word, 0, f)) {
        violated = f.str();
        return false;
      }
    return true;
  };
  // Depth-first over the platform's nondeterministic choices.
  std::function<bool(std::size_t, int, const ClockValuation &, const Rational &)> search =
      [&](std::size_t k, int loc, const ClockValuation &v, const Rational &now) {
        if (k == trace.size()) {
          if (!plat.is_final(loc))
            return false;
          replayed = true;
          return check_word();
        }
        auto waited = advance(v, trace[k].time - now);
        if (!eval_constraint(waited, plat.invariants[loc]))
          return false;
        if (plan_index[k]) {
          locations.push_back(loc);
          if (search(k + 1, loc, waited, trace[k].time))
            return true;
          locations.pop_back();
          return false;
        }
        for (const auto &sw : plat.switches) {
          if (sw.src != loc || sw.label != trace[k].label || !eval_constraint(waited, sw.guard))
            continue;
          auto after = reset(waited, std::set<std::string>(sw.resets.begin(), sw.resets.end()));
          if (!eval_constraint(after, plat.invariants[sw.dst]))
            continue;
          locations.push_back(sw.dst);
          if (search(k + 1, sw.dst, after, trace[k].time))
            return true;
          locations.pop_back();
        }
        return false;
      };
  if (search(0, plat.initial, ClockValuation(plat.clocks), Rational(0)))
    return true;
  if (!replayed)
    return fail("the platform cannot replay the trace");
  return fail("constraint violated: " + violated);
}

namespace {

Interval interval_field(const nlohmann::json &j) {
  auto it = j.find("interval");
  return it == j.end() ? Interval::unbounded() : mtl::interval_from_json(*it);
}

Rational time_of(const nlohmann::json &j) {
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  if (j.is_number_integer())
    return Rational(j.get<long>());
  throw InputError("time must be a \"p/q\" string or an integer");
}

} // namespace

Plan plan_from_json(const nlohmann::json &j) {
  const auto &list = j.is_object() ? j.at("actions") : j;
  if (!list.is_array())
    throw InputError("plan must be an array of action names or {\"actions\": [...]}");
  Plan plan;
  for (const auto &a : list)
    plan.actions.push_back(a.get<std::string>());
  return plan;
}

nlohmann::json plan_to_json(const Plan &plan) { return {{"actions", plan.actions}}; }

Constraints constraints_from_json(const nlohmann::json &j) {
  if (!j.is_object())
    throw InputError("constraints must be an object");
  Constraints c;
  try {
    if (auto it = j.find("abs"); it != j.end())
      for (const auto &x : *it)
        c.abs.push_back({x.at("i").get<int>(), interval_field(x)});
    if (auto it = j.find("rel"); it != j.end())
      for (const auto &x : *it)
        c.rel.push_back({x.at("i").get<int>(), x.at("j").get<int>(), interval_field(x)});
    if (auto it = j.find("chain"); it != j.end())
      for (const auto &x : *it) {
        ChainConstraint chain;
        for (const auto &s : x.at("stages"))
          chain.stages.push_back(
              {LocationPredicate(s.value("beta", std::string("true"))), interval_field(s)});
        chain.opens = ActionPattern(x.at("alpha1").get<std::string>());
        chain.closes = ActionPattern(x.at("alpha2").get<std::string>());
        c.chain.push_back(std::move(chain));
      }
  } catch (const nlohmann::json::exception &e) {
    throw InputError(std::string("malformed constraints: ") + e.what());
  }
  return c;
}

nlohmann::json constraints_to_json(const Constraints &constraints) {
  nlohmann::json j = {{"abs", nlohmann::json::array()},
                      {"rel", nlohmann::json::array()},
                      {"chain", nlohmann::json::array()}};
  for (const auto &c : constraints.abs)
    j["abs"].push_back({{"i", c.index}, {"interval", mtl::interval_to_json(c.interval)}});
  for (const auto &r : constraints.rel)
    j["rel"].push_back(
        {{"i", r.from}, {"j", r.to}, {"interval", mtl::interval_to_json(r.interval)}});
  for (const auto &chain : constraints.chain) {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto &s : chain.stages)
      stages.push_back({{"beta", s.where.str()}, {"interval", mtl::interval_to_json(s.interval)}});
    j["chain"].push_back({{"stages", stages},
                          {"alpha1", chain.opens.str()},
                          {"alpha2", chain.closes.str()}});
  }
  return j;
}

Trace trace_from_json(const nlohmann::json &j) {
  if (!j.is_array())
    throw InputError("trace must be an array");
  Trace t;
  for (const auto &e : j) {
    if (!e.is_object() || !e.contains("action") || !e.contains("t"))
      throw InputError("trace entries need \"action\" and \"t\"");
    t.push_back({e["action"].get<std::string>(), time_of(e["t"])});
  }
  return t;
}

nlohmann::json trace_to_json(const Trace &trace) {
  auto j = nlohmann::json::array();
  for (const auto &e : trace)
    j.push_back({{"action", e.label}, {"t", to_string(e.time)}});
  return j;
}

} // namespace tsynth::plantrans
