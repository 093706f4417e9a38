#include "tsynth/golog/ta_embed.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>

namespace tsynth::golog {

namespace {

std::string loc_name(int l) { return "l" + std::to_string(l); }
std::string switch_name(std::size_t s) { return "sw" + std::to_string(s); }

std::string label_name(std::size_t k) { return "o" + std::to_string(k); }

// Atoms on clocks in `zeroed` are decided at value 0; returns false when
// one of them fails.
bool constraint_text(const ClockConstraint &c, const std::vector<std::string> &zeroed,
                     std::string &out) {
  out = "(and";
  for (const auto &a : c.atoms) {
    if (std::find(zeroed.begin(), zeroed.end(), a.clock) != zeroed.end()) {
      if (!compare(Rational(0), a.rel, Rational(a.constant)))
        return false;
      continue;
    }
    out += " (" + to_string(a.rel) + " " + a.clock + " " +
           std::to_string(a.constant) + ")";
  }
  out += ")";
  return true;
}

std::string any_of(const std::vector<std::string> &parts) {
  std::string s = "(or";
  for (const auto &p : parts)
    s += " " + p;
  return s + ")";
}

} // namespace

nlohmann::json bat_json_from_ta(const ta::TimedAutomaton &a) {
  a.validate();
  std::vector<std::string> locs, acts, labels;
  for (std::size_t l = 0; l < a.locations.size(); ++l)
    locs.push_back(loc_name(static_cast<int>(l)));
  for (const auto &l : a.alphabet())
    labels.push_back(l);
  std::vector<std::string> poss, guard, reset, ssa, occ;
  for (std::size_t k = 0; k < a.switches.size(); ++k) {
    const auto &s = a.switches[k];
    std::string g, src_inv, dst_inv;
    constraint_text(s.guard, {}, g);
    constraint_text(a.invariants[s.src], {}, src_inv);
    // A reset clock is 0 in the target, so its invariant atoms are decided
    // statically; the source check on outgoing switches covers the rest.
    if (!constraint_text(a.invariants[s.dst], s.resets, dst_inv))
      throw InputError("switch '" + s.label +
                       "' resets a clock to a value its target invariant forbids");
    const auto act = switch_name(k);
    acts.push_back(act);
    const auto is_act = "(= a " + act + ")";
    poss.push_back("(and " + is_act + " (= loc " + loc_name(s.src) + "))");
    guard.push_back("(and " + is_act + " " + g + " " + src_inv + " " + dst_inv + ")");
    for (const auto &r : s.resets)
      reset.push_back("(and " + is_act + " (= c " + r + "))");
    ssa.push_back("(and " + is_act + " (= y " + loc_name(s.dst) + "))");
    const auto label = std::find(labels.begin(), labels.end(), s.label) - labels.begin();
    occ.push_back("(and " + is_act + " (= s " + label_name(label) + "))");
  }
  std::vector<std::string> label_consts;
  for (std::size_t k = 0; k < labels.size(); ++k)
    label_consts.push_back(label_name(k));
  nlohmann::json j;
  j["sorts"] = {{"location", locs}, {"label", label_consts}};
  j["clocks"] = a.clocks;
  // Nullary constructors populate the built-in action sort.
  j["functions"] = nlohmann::json::array();
  for (const auto &act : acts)
    j["functions"].push_back({{"name", act}, {"sort", "action"}});
  j["fluents"] = {{{"name", "loc"}, {"range", "location"}},
                  {{"name", "occ"}, {"args", {"label"}}}};
  j["poss"] = any_of(poss);
  j["guard"] = any_of(guard);
  j["reset"] = any_of(reset);
  j["ssa"] = {{"loc", {{"formula", any_of(ssa)}}},
              {"occ", {{"params", {"s"}}, {"formula", any_of(occ)}}}};
  j["initial"] = {{"values", {{"loc", loc_name(a.initial)}}}};
  return j;
}

TaEmbedding bat_from_ta(const ta::TimedAutomaton &a) {
  TaEmbedding e{Bat::from_json(bat_json_from_ta(a)), Program::nil(), {}};
  std::vector<Program> options;
  e.labels.resize(a.switches.size());
  for (std::size_t k = 0; k < a.switches.size(); ++k) {
    const int id = e.bat.action_id(switch_name(k));
    if (static_cast<std::size_t>(id) >= e.labels.size())
      e.labels.resize(id + 1);
    e.labels[id] = a.switches[k].label;
    options.push_back(Program::act(id));
  }
  std::vector<std::string> finals;
  for (int f : a.finals)
    finals.push_back("(= loc " + loc_name(f) + ")");
  auto final_test = Program::test(e.bat.ground_text(any_of(finals)));
  e.program = options.empty()
                  ? final_test
                  : Program::seq({Program::star(Program::branch(options)), final_test});
  return e;
}

mtl::TimedWord label_trace(const TaEmbedding &embedding, const Trace &trace) {
  mtl::TimedWord w;
  for (const auto &ev : trace) {
    const auto &name = embedding.bat.actions().at(ev.action).name;
    const bool is_switch =
        static_cast<std::size_t>(ev.action) < embedding.labels.size() &&
        !embedding.labels[ev.action].empty();
    w.push_back({{is_switch ? embedding.labels[ev.action] : name}, ev.time});
  }
  return w;
}

} // namespace tsynth::golog
