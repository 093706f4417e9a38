#include "tsynth/golog/interpreter.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>

namespace tsynth::golog {

namespace {

void add_unique(std::vector<Step> &out, Step s) {
  if (std::find(out.begin(), out.end(), s) == out.end())
    out.push_back(std::move(s));
}

} // namespace

bool is_final(const Program &p, const WorldState &state) {
  using K = Program::Kind;
  switch (p.kind()) {
  case K::Test: return p.condition().eval(state.atoms, state.clocks);
  case K::Act: return false;
  case K::Star: return true;
  case K::Seq:
  case K::Par:
    return std::all_of(p.children().begin(), p.children().end(),
                       [&](const Program &c) { return is_final(c, state); });
  case K::Branch:
    return std::any_of(p.children().begin(), p.children().end(),
                       [&](const Program &c) { return is_final(c, state); });
  }
  return false;
}

std::vector<Step> next_steps(const Program &p, const WorldState &state) {
  using K = Program::Kind;
  std::vector<Step> out;
  switch (p.kind()) {
  case K::Test: break;
  case K::Act: out.push_back({p.action(), Program::nil()}); break;
  case K::Seq: {
    const auto &parts = p.children();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::vector<Program> tail(parts.begin() + static_cast<long>(i) + 1, parts.end());
      for (auto &s : next_steps(parts[i], state)) {
        std::vector<Program> rest{s.rest};
        rest.insert(rest.end(), tail.begin(), tail.end());
        add_unique(out, {s.action, Program::seq(std::move(rest))});
      }
      if (!is_final(parts[i], state))
        break;
    }
    break;
  }
  case K::Branch:
    for (const auto &c : p.children())
      for (auto &s : next_steps(c, state))
        add_unique(out, std::move(s));
    break;
  case K::Star:
    for (auto &s : next_steps(p.children()[0], state))
      add_unique(out, {s.action, Program::seq({s.rest, p})});
    break;
  case K::Par: {
    const auto &parts = p.children();
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (auto &s : next_steps(parts[i], state)) {
        auto copy = parts;
        copy[i] = s.rest;
        add_unique(out, {s.action, Program::par(std::move(copy))});
      }
    break;
  }
  }
  return out;
}

Config initial_config(const Bat &bat, const Program &program) {
  return {bat.initial(), Rational(0), program};
}

std::vector<Step> enabled_steps(const Config &config, const Bat &bat) {
  std::vector<Step> out;
  for (auto &s : next_steps(config.remaining, config.state)) {
    const auto &info = bat.actions().at(static_cast<std::size_t>(s.action));
    if (info.poss.eval(config.state.atoms, config.state.clocks) &&
        info.guard.eval(config.state.atoms, config.state.clocks))
      out.push_back(std::move(s));
  }
  return out;
}

bool is_final(const Config &config) {
  return is_final(config.remaining, config.state);
}

std::vector<Config> successors(const Config &config, const Rational &delay,
                               int action, const Bat &bat) {
  Config waited{elapse(config.state, delay), config.now + delay, config.remaining};
  std::vector<Config> out;
  for (const auto &s : enabled_steps(waited, bat)) {
    if (s.action != action)
      continue;
    out.push_back({progress(bat, waited.state, action), waited.now, s.rest});
  }
  return out;
}

mtl::TimedWord word_of(const Bat &bat, const Trace &trace) {
  mtl::TimedWord w;
  WorldState state = bat.initial();
  Rational now = 0;
  w.push_back({bat.symbols(state), Rational(0)});
  for (const auto &e : trace) {
    if (e.time < now)
      throw ContractError("trace times must be non-decreasing");
    state = progress(bat, elapse(state, e.time - now), e.action);
    now = e.time;
    w.push_back({bat.symbols(state), now});
  }
  return w;
}

std::vector<Config> replay(const Bat &bat, const Program &program,
                           const Trace &trace) {
  std::vector<Config> current{initial_config(bat, program)};
  for (const auto &e : trace) {
    std::vector<Config> next;
    for (const auto &c : current) {
      if (e.time < c.now)
        return {};
      for (auto &s : successors(c, e.time - c.now, e.action, bat)) {
        bool dup = std::any_of(next.begin(), next.end(), [&](const Config &o) {
          return o.remaining == s.remaining;
        });
        if (!dup)
          next.push_back(std::move(s));
      }
    }
    current = std::move(next);
    if (current.empty())
      break;
  }
  return current;
}

nlohmann::json trace_to_json(const Bat &bat, const Trace &trace) {
  auto arr = nlohmann::json::array();
  for (const auto &e : trace)
    arr.push_back({{"action", bat.actions().at(e.action).name},
                   {"t", to_string(e.time / bat.scale())}});
  return arr;
}

Trace trace_from_json(const Bat &bat, const nlohmann::json &j) {
  Trace t;
  for (const auto &e : j) {
    const auto &time = e.at("t");
    Rational r = time.is_string() ? parse_rational(time.get<std::string>())
                                  : Rational(time.get<std::int64_t>());
    t.push_back({bat.action_id(e.at("action").get<std::string>()), r * bat.scale()});
  }
  return t;
}

} // namespace tsynth::golog
