#include "tsynth/ta/io.hpp"

#include "tsynth/core/errors.hpp"
#include "tsynth/core/sexpr.hpp"

#include <charconv>

namespace tsynth::ta {
namespace {

void collect(const Sexpr &e, ClockConstraint &out) {
  if (e.is_atom()) {
    if (e.atom == "true")
      return;
    throw InputError("clock constraint expected, got '" + e.atom + "'");
  }
  if (e.head_is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i)
      collect(e.items[i], out);
    return;
  }
  if (e.items.size() != 3 || !e.items[0].is_atom() || !e.items[1].is_atom() ||
      !e.items[2].is_atom())
    throw InputError("malformed clock atom '" + e.str() + "'");
  const auto rel = parse_rel(e.items[0].atom);
  const auto &num = e.items[2].atom;
  std::int64_t c = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), c);
  if (ec != std::errc() || ptr != num.data() + num.size() || c < 0)
    throw InputError("clock constants must be naturals: '" + num + "'");
  out.atoms.push_back({e.items[1].atom, rel, c});
}

std::string inequalities(const ClockConstraint &c) {
  std::string s;
  for (const auto &a : c.atoms) {
    if (!s.empty())
      s += " && ";
    s += a.clock + " " + (a.rel == Rel::Eq ? "==" : to_string(a.rel)) + " " +
         std::to_string(a.constant);
  }
  return s;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "\"";
}

} // namespace

ClockConstraint parse_clock_constraint(std::string_view text) {
  ClockConstraint out;
  collect(parse_sexpr(text), out);
  return out;
}

TimedAutomaton ta_from_json(const nlohmann::json &j) {
  TimedAutomaton a;
  try {
    for (const auto &l : j.at("locations"))
      a.add_location(l.get<std::string>());
    a.initial = a.location_id(j.at("initial").get<std::string>());
    for (const auto &f : j.value("finals", nlohmann::json::array()))
      a.finals.push_back(a.location_id(f.get<std::string>()));
    a.clocks = j.value("clocks", std::vector<std::string>{});
    if (j.contains("invariants"))
      for (auto it = j["invariants"].begin(); it != j["invariants"].end(); ++it)
        a.invariants[a.location_id(it.key())] =
            parse_clock_constraint(it.value().get<std::string>());
    for (const auto &s : j.value("switches", nlohmann::json::array())) {
      Switch sw;
      sw.src = a.location_id(s.at("src").get<std::string>());
      sw.dst = a.location_id(s.at("dst").get<std::string>());
      sw.label = s.at("label").get<std::string>();
      if (s.contains("guard"))
        sw.guard = parse_clock_constraint(s["guard"].get<std::string>());
      sw.resets = s.value("resets", std::vector<std::string>{});
      a.switches.push_back(std::move(sw));
    }
  } catch (const nlohmann::json::exception &e) {
    throw InputError(std::string("timed automaton JSON: ") + e.what());
  }
  a.validate();
  return a;
}

nlohmann::json ta_to_json(const TimedAutomaton &a) {
  nlohmann::json j;
  j["locations"] = a.locations;
  j["initial"] = a.locations[a.initial];
  j["finals"] = nlohmann::json::array();
  for (int f : a.finals)
    j["finals"].push_back(a.locations[f]);
  j["clocks"] = a.clocks;
  j["invariants"] = nlohmann::json::object();
  for (std::size_t l = 0; l < a.locations.size(); ++l)
    if (!a.invariants[l].atoms.empty())
      j["invariants"][a.locations[l]] = to_string(a.invariants[l]);
  j["switches"] = nlohmann::json::array();
  for (const auto &s : a.switches)
    j["switches"].push_back({{"src", a.locations[s.src]},
                             {"label", s.label},
                             {"guard", to_string(s.guard)},
                             {"resets", s.resets},
                             {"dst", a.locations[s.dst]}});
  return j;
}

std::string to_dot(const TimedAutomaton &a, std::string_view name) {
  std::string s = "digraph " + quote(name) + " {\n  rankdir=LR;\n";
  s += "  __init [shape=point];\n";
  for (std::size_t l = 0; l < a.locations.size(); ++l) {
    std::string label = a.locations[l];
    if (!a.invariants[l].atoms.empty())
      label += "\\n" + inequalities(a.invariants[l]);
    s += "  n" + std::to_string(l) + " [label=" + quote(label) +
         (a.is_final(static_cast<int>(l)) ? ", shape=doublecircle" : "") +
         "];\n";
  }
  s += "  __init -> n" + std::to_string(a.initial) + ";\n";
  for (const auto &sw : a.switches) {
    std::string label = sw.label;
    if (!sw.guard.atoms.empty())
      label += "\\n" + inequalities(sw.guard);
    for (const auto &r : sw.resets)
      label += "\\n" + r + ":=0";
    s += "  n" + std::to_string(sw.src) + " -> n" + std::to_string(sw.dst) +
         " [label=" + quote(label) + "];\n";
  }
  return s + "}\n";
}

nlohmann::json run_to_json(const TimedAutomaton &a, const Run &run) {
  auto j = nlohmann::json::array();
  for (const auto &step : run) {
    const auto &s = a.switches.at(step.switch_id);
    j.push_back({{"src", a.locations[s.src]},
                 {"label", s.label},
                 {"delay", to_string(step.delay)},
                 {"dst", a.locations[s.dst]}});
  }
  return j;
}

} // namespace tsynth::ta
