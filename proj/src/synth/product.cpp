#include "tsynth/synth/product.hpp"

#include "tsynth/core/errors.hpp"
#include "tsynth/golog/interpreter.hpp"

#include <algorithm>
#include <map>

namespace tsynth::synth {

namespace {

ata::Ata build_ata(const mtl::Formula &spec) { return ata::ata_from_mtl(spec); }

void clamp(Rational &v, int max_constant) {
  if (v > max_constant)
    v = max_constant + 1;
}

void tidy(const Problem &p, DetState &s) {
  std::sort(s.programs.begin(), s.programs.end());
  s.programs.erase(std::unique(s.programs.begin(), s.programs.end()),
                   s.programs.end());
  for (auto &c : s.configs)
    ata::canonicalize(c);
  ata::keep_weakest(s.configs, p.ata());
  std::sort(s.configs.begin(), s.configs.end());
}

std::string ata_name(int loc, int rank) {
  return "ata" + std::to_string(loc) + "_" + std::to_string(rank);
}

std::vector<CanonicalWord> config_words(const Problem &p, const DetState &s) {
  std::vector<CanonicalWord> out;
  for (const auto &g : s.configs) {
    ClockSet named;
    for (std::size_t c = 0; c < s.world.clocks.size(); ++c)
      named.emplace_back(p.bat().clocks()[c], s.world.clocks[c]);
    for (const auto &st : g)
      named.emplace_back("@" + std::to_string(st.loc), st.value);
    out.push_back(canonical_word(named, p.max_constant()));
  }
  return out;
}

// Shared tail of det_step and det_successors.
DetState apply(const Problem &p, const DetState &s, const Rational &delay,
               const golog::WorldState &waited, int action,
               std::vector<golog::Program> programs, bool canonical) {
  DetState out;
  out.world = golog::progress(p.bat(), waited, action);
  out.programs = std::move(programs);
  auto symbol = p.ata().symbol_of(p.bat().symbols(out.world));
  for (const auto &g : s.configs) {
    auto moved = ata::time_step(g, delay);
    for (auto &st : moved)
      clamp(st.value, p.max_constant());
    ata::canonicalize(moved);
    for (auto &c : ata::symbol_step(moved, symbol, p.ata()))
      out.configs.push_back(std::move(c));
  }
  normalize(p, out, canonical);
  return out;
}

} // namespace

Problem::Problem(golog::Bat bat, golog::Program program,
                 const mtl::Formula &spec,
                 std::vector<std::string> controllable)
    : bat_(std::move(bat)), program_(program),
      spec_(mtl::scale_intervals(mtl::to_pnf(spec), to_int64(bat_.scale()))),
      ata_(build_ata(spec_)) {
  for (const auto &a : mtl::atoms_of(spec_))
    if (bat_.atom_id(a) < 0)
      throw InputError("specification atom not declared by the theory: " + a);
  max_constant_ = static_cast<int>(
      std::max<std::int64_t>({bat_.max_constant(), mtl::max_constant(spec_), 1}));
  const auto &actions = bat_.actions();
  controllable_.assign(actions.size(), 0);
  for (std::size_t a = 0; a < actions.size(); ++a) {
    for (const auto &pattern : controllable)
      if (golog::glob_match(pattern, actions[a].name))
        controllable_[a] = 1;
    order_.push_back(static_cast<int>(a));
  }
  std::sort(order_.begin(), order_.end(), [&](int x, int y) {
    return actions[x].name < actions[y].name;
  });
}

std::vector<SyncState> DetState::members() const {
  std::vector<SyncState> out;
  for (const auto &p : programs)
    for (const auto &g : configs)
      out.push_back({world, p, g});
  return out;
}

DetState initial_det_state(const Problem &p) {
  DetState s;
  s.world = p.bat().initial();
  s.programs = {p.program()};
  auto symbol = p.ata().symbol_of(p.bat().symbols(s.world));
  s.configs = ata::symbol_step({{p.ata().initial(), Rational(0)}}, symbol, p.ata());
  normalize(p, s);
  return s;
}

void normalize(const Problem &p, DetState &s, bool canonical) {
  const int k = p.max_constant();
  for (auto &c : s.world.clocks)
    clamp(c, k);
  for (auto &g : s.configs)
    for (auto &st : g)
      clamp(st.value, k);
  // Pruning may drop values, so it runs before representatives are chosen.
  // The representative map is monotone and keeps the result tidy.
  tidy(p, s);
  if (!canonical)
    return;
  std::vector<Rational *> values;
  for (auto &c : s.world.clocks)
    values.push_back(&c);
  for (auto &g : s.configs)
    for (auto &st : g)
      values.push_back(&st.value);
  normalize_values(values, k);
}

std::string state_key(const DetState &s) {
  std::string key;
  for (char a : s.world.atoms)
    key += a ? '1' : '0';
  key += '|';
  for (const auto &c : s.world.clocks)
    key += to_string(c) + ',';
  key += '|';
  for (const auto &p : s.programs)
    key += std::to_string(p.id()) + ',';
  for (const auto &g : s.configs) {
    key += '|';
    for (const auto &st : g)
      key += std::to_string(st.loc) + ':' + to_string(st.value) + ',';
  }
  return key;
}

bool is_final(const DetState &s) {
  return std::any_of(s.programs.begin(), s.programs.end(),
                     [&](const golog::Program &p) {
                       return golog::is_final(p, s.world);
                     });
}

bool is_bad(const Problem &p, const DetState &s) {
  return is_final(s) &&
         std::any_of(s.configs.begin(), s.configs.end(),
                     [&](const ata::Configuration &g) {
                       return ata::is_accepting(g, p.ata());
                     });
}

ClockSet pooled_clocks(const Problem &p, const DetState &s) {
  ClockSet out;
  for (std::size_t c = 0; c < s.world.clocks.size(); ++c)
    out.emplace_back(p.bat().clocks()[c], s.world.clocks[c]);
  std::vector<ata::AtaState> distinct;
  for (const auto &g : s.configs)
    distinct.insert(distinct.end(), g.begin(), g.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  int rank = 0;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    rank = i > 0 && distinct[i - 1].loc == distinct[i].loc ? rank + 1 : 0;
    out.emplace_back(ata_name(distinct[i].loc, rank), distinct[i].value);
  }
  return out;
}

std::vector<Rational> increments(const Problem &p, const DetState &s) {
  std::vector<Rational> values;
  for (auto &[name, v] : pooled_clocks(p, s))
    values.push_back(v);
  return increment_sequence(std::move(values), p.max_constant());
}

std::vector<DetSuccessor> det_successors(const Problem &p, const DetState &s,
                                         bool canonical) {
  std::vector<DetSuccessor> out;
  const auto delays = increments(p, s);
  for (std::size_t i = 0; i < delays.size(); ++i) {
    auto waited = golog::elapse(s.world, delays[i]);
    std::map<int, std::vector<golog::Program>> by_action;
    for (const auto &prog : s.programs) {
      golog::Config cfg{waited, Rational(0), prog};
      for (auto &step : golog::enabled_steps(cfg, p.bat()))
        by_action[step.action].push_back(step.rest);
    }
    for (int a : p.action_order()) {
      auto it = by_action.find(a);
      if (it == by_action.end())
        continue;
      out.push_back({a, static_cast<int>(i),
                     apply(p, s, delays[i], waited, a, std::move(it->second),
                           canonical)});
    }
  }
  return out;
}

std::optional<DetState> det_step(const Problem &p, const DetState &s,
                                 const Rational &delay, int action,
                                 bool canonical) {
  auto waited = golog::elapse(s.world, delay);
  std::vector<golog::Program> programs;
  for (const auto &prog : s.programs) {
    golog::Config cfg{waited, Rational(0), prog};
    for (auto &step : golog::enabled_steps(cfg, p.bat()))
      if (step.action == action)
        programs.push_back(step.rest);
  }
  if (programs.empty())
    return std::nullopt;
  return apply(p, s, delay, waited, action, std::move(programs), canonical);
}

bool state_leq(const Problem &p, const SyncState &lhs, const SyncState &rhs) {
  if (lhs.world.atoms != rhs.world.atoms || !(lhs.program == rhs.program))
    return false;
  DetState l{lhs.world, {lhs.program}, {lhs.config}};
  DetState r{rhs.world, {rhs.program}, {rhs.config}};
  return mono_dom_leq(config_words(p, l)[0], config_words(p, r)[0]);
}

bool det_leq(const Problem &p, const DetState &lhs, const DetState &rhs) {
  // Power set order over programs x configs, evaluated factor-wise.
  if (rhs.programs.empty() || rhs.configs.empty())
    return true;
  if (lhs.world.atoms != rhs.world.atoms)
    return false;
  for (const auto &prog : rhs.programs)
    if (!std::binary_search(lhs.programs.begin(), lhs.programs.end(), prog))
      return false;
  return powerset_leq(config_words(p, lhs), config_words(p, rhs),
                      [](const CanonicalWord &a, const CanonicalWord &b) {
                        return mono_dom_leq(a, b);
                      });
}

} // namespace tsynth::synth
