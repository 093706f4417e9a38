#include "tsynth/synth/simulate.hpp"

#include "tsynth/golog/interpreter.hpp"
#include "tsynth/mtl/semantics.hpp"

#include <algorithm>
#include <memory>
#include <random>

namespace tsynth::synth {

namespace {

using Rng = std::mt19937_64;

struct Solved {
  SearchGraph graph;
  Controller controller;
};

std::string canonical_key(const Problem &p, DetState s) {
  normalize(p, s);
  return state_key(s);
}

// A delay in the same region as the increment `i`, preferring boundaries.
Rational sample_delay(const Problem &p, const DetState &s,
                      const std::vector<Rational> &delays, std::size_t i,
                      Rng &rng) {
  const auto &d = delays[i];
  bool point = false;
  for (const auto &[name, v] : pooled_clocks(p, s))
    if (v + d <= p.max_constant() && is_integer(v + d))
      point = true;
  if (point)
    return d;
  Rational lo = i == 0 ? Rational(0) : delays[i - 1];
  if (i + 1 == delays.size()) {
    static const Rational far[] = {ratio(1, 1000), Rational(1), ratio(7, 2)};
    return lo + far[std::uniform_int_distribution<int>(0, 2)(rng)];
  }
  const Rational &hi = delays[i + 1];
  Rational eps = (hi - lo) / 1000;
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
  case 0: return i == 0 ? Rational(0) : Rational(lo + eps);
  case 1: return hi - eps;
  case 2: return d;
  default: {
    auto k = std::uniform_int_distribution<int>(1, 999)(rng);
    return lo + eps * k;
  }
  }
}

ClockValuation valuation_of(const ClockSet &values) {
  ClockValuation v;
  for (const auto &[name, value] : values)
    v.set(name, value);
  return v;
}

class Trial {
public:
  Trial(const Problem &p, const Solved &initial, const SimulationOptions &o,
        Rng &rng, SimulationReport &report)
      : p_(p), o_(o), rng_(rng), report_(report), solved_(&initial) {}

  void run() {
    DetState cur = initial_det_state(p_);
    int node = solved_->graph.root;
    for (int step = 0; step <= o_.max_steps; ++step) {
      const auto *g = &solved_->graph;
      const auto &n = g->nodes[node];
      if (auto key = canonical_key(p_, cur); key != n.key)
        return fail("concrete state left the region of node " +
                    std::to_string(node) + " (" + key + " vs " + n.key + ")");
      if (n.final)
        check_trace();
      if (n.kind == NodeKind::Successful) {
        auto fresh = std::make_unique<Solved>();
        DetState root = cur;
        normalize(p_, root);
        fresh->graph = solve_from(p_, root, o_.build);
        ++report_.resolves;
        if (fresh->graph.nodes[fresh->graph.root].label != Label::Top)
          return fail("no controller from a successful leaf");
        fresh->controller = extract_controller(p_, fresh->graph);
        owned_ = std::move(fresh);
        solved_ = owned_.get();
        node = solved_->graph.root;
        continue;
      }
      if (n.kind == NodeKind::Bad)
        return fail("controller reached a bad node");
      if (n.kind == NodeKind::Dead)
        return;
      if (!advance(cur, node))
        return;
    }
  }

private:
  const Problem &p_;
  const SimulationOptions &o_;
  Rng &rng_;
  SimulationReport &report_;
  const Solved *solved_;
  std::unique_ptr<Solved> owned_;
  golog::Trace trace_;
  Rational now_ = 0;

  void fail(const std::string &what) {
    std::string t;
    for (const auto &e : trace_)
      t += " " + p_.bat().actions()[e.action].name + "@" + tsynth::to_string(e.time);
    report_.violations.push_back(what + ";" + (t.empty() ? " empty trace" : t));
  }

  void check_trace() {
    ++report_.final_checks;
    auto word = golog::word_of(p_.bat(), trace_);
    if (mtl::satisfies(word, 0, p_.spec()))
      fail("final trace satisfies the specification");
  }

  // One step; false ends the trial.
  bool advance(DetState &cur, int &node) {
    const auto &g = solved_->graph;
    const auto &n = g.nodes[node];
    const auto &choice = solved_->controller.choice[node];
    auto concrete = det_successors(p_, cur, false);
    auto delays = increments(p_, cur);

    auto has_edge = [&](int action, int inc) {
      return std::any_of(concrete.begin(), concrete.end(), [&](const DetSuccessor &s) {
        return s.action == action && s.increment == inc;
      });
    };
    auto chosen = [&](int action, int inc) {
      return std::any_of(choice.begin(), choice.end(), [&](int e) {
        return n.edges[e].action == action && n.edges[e].increment == inc;
      });
    };
    if (concrete.size() != n.edges.size())
      fail("concrete and symbolic successors differ");
    for (int e : choice)
      if (!has_edge(n.edges[e].action, n.edges[e].increment))
        fail("selected action not enabled");
    for (const auto &s : concrete) {
      if (p_.controllable(s.action) || chosen(s.action, s.increment))
        continue;
      bool preempted = std::any_of(choice.begin(), choice.end(), [&](int e) {
        return p_.controllable(n.edges[e].action) &&
               n.edges[e].increment < s.increment;
      });
      if (!preempted)
        fail("environment action neither allowed nor preempted");
    }
    if (choice.empty()) {
      bool env = std::any_of(concrete.begin(), concrete.end(),
                             [&](const DetSuccessor &s) { return !p_.controllable(s.action); });
      if (!n.final || env)
        fail("controller blocks at a non-final state");
      return false;
    }
    if (n.final && std::uniform_int_distribution<int>(0, 4)(rng_) == 0)
      return false;

    int e = choice[std::uniform_int_distribution<std::size_t>(0, choice.size() - 1)(rng_)];
    const auto &edge = n.edges[e];
    auto delay = sample_delay(p_, cur, delays, edge.increment, rng_);

    // The controller automaton must admit the move.
    const auto &ctrl = solved_->controller;
    const auto &sw_loc = ctrl.location_of_node[node];
    auto waited_clocks = pooled_clocks(p_, cur);
    for (auto &[name, v] : waited_clocks)
      v += delay;
    auto val = valuation_of(waited_clocks);
    const auto &label = p_.bat().actions()[edge.action].name;
    bool admitted = false;
    for (const auto &sw : ctrl.automaton.switches)
      if (sw.src == sw_loc && sw.label == label &&
          sw.dst == ctrl.location_of_node[edge.target] &&
          eval_constraint(val, sw.guard))
        admitted = true;
    if (!admitted)
      fail("controller automaton rejects " + label + " after " + tsynth::to_string(delay));

    auto next = det_step(p_, cur, delay, edge.action, false);
    if (!next) {
      fail("chosen action not executable at the sampled delay");
      return false;
    }
    now_ += delay;
    trace_.push_back({edge.action, now_});
    ++report_.steps;
    cur = std::move(*next);
    node = edge.target;
    return true;
  }
};

} // namespace

SimulationReport simulate_controller(const Problem &p, const SearchGraph &graph,
                                     const Controller &controller,
                                     SimulationOptions options) {
  SimulationReport report;
  Rng rng(options.seed);
  Solved initial{graph, controller};
  for (int t = 0; t < options.trials; ++t) {
    Trial(p, initial, options, rng, report).run();
    ++report.trials;
  }
  return report;
}

} // namespace tsynth::synth
