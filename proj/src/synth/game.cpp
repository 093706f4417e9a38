#include "tsynth/synth/game.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace tsynth::synth {

std::string to_string(NodeKind kind) {
  switch (kind) {
  case NodeKind::Bad: return "bad";
  case NodeKind::Successful: return "successful";
  case NodeKind::Dead: return "dead";
  case NodeKind::Inner: return "inner";
  }
  return "?";
}

std::string to_string(Label label) {
  switch (label) {
  case Label::Top: return "top";
  case Label::Bottom: return "bottom";
  case Label::Unlabeled: return "unlabeled";
  }
  return "?";
}

std::vector<std::vector<int>> valid_choices(const Problem &p,
                                            const SearchNode &node) {
  std::vector<std::vector<int>> out;
  std::vector<int> env;
  for (std::size_t e = 0; e < node.edges.size(); ++e)
    if (!p.controllable(node.edges[e].action))
      env.push_back(static_cast<int>(e));
  if (!env.empty() || node.final)
    out.push_back(env);
  for (std::size_t e = 0; e < node.edges.size(); ++e) {
    const auto &c = node.edges[e];
    if (!p.controllable(c.action))
      continue;
    // Environment actions in the same region are not preempted.
    std::vector<int> u{static_cast<int>(e)};
    for (int x : env)
      if (node.edges[x].increment <= c.increment)
        u.push_back(x);
    std::sort(u.begin(), u.end());
    out.push_back(std::move(u));
  }
  return out;
}

namespace {

Label label_of(const SearchGraph &g, int target) {
  return target < 0 ? Label::Unlabeled : g.nodes[target].label;
}

// Top/bottom when decided from the labels known so far.
Label decide(const Problem &p, const SearchGraph &g, const SearchNode &node) {
  switch (node.kind) {
  case NodeKind::Bad: return Label::Bottom;
  case NodeKind::Successful:
  case NodeKind::Dead: return Label::Top;
  case NodeKind::Inner: break;
  }
  bool open = false;
  for (const auto &u : valid_choices(p, node)) {
    bool all_top = true, any_bottom = false;
    for (int e : u) {
      auto l = label_of(g, node.edges[e].target);
      all_top = all_top && l == Label::Top;
      any_bottom = any_bottom || l == Label::Bottom;
    }
    if (all_top)
      return Label::Top;
    if (!any_bottom)
      open = true;
  }
  return open ? Label::Unlabeled : Label::Bottom;
}

class Builder {
public:
  Builder(const Problem &p, BuildOptions o) : p_(p), o_(o) {}

  SearchGraph run(DetState root) {
    g_.root = visit(std::move(root));
    return std::move(g_);
  }

private:
  const Problem &p_;
  BuildOptions o_;
  SearchGraph g_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> path_;
  std::vector<char> on_path_;
  std::size_t pending_ = 0; // successors not yet visited on the current path
  bool stopped_ = false;

  int add(SearchNode n) {
    if (o_.budget && g_.nodes.size() >= o_.budget)
      throw ResourceError("search budget of " + std::to_string(o_.budget) +
                              " nodes exhausted",
                          pending_);
    g_.nodes.push_back(std::move(n));
    on_path_.push_back(0);
    return static_cast<int>(g_.nodes.size()) - 1;
  }

  void finish(int id) {
    g_.finish_order.push_back(id);
    if (o_.prune && g_.nodes[id].label == Label::Unlabeled)
      g_.nodes[id].label = decide(p_, g_, g_.nodes[id]);
  }

  int visit(DetState s) {
    auto key = state_key(s);
    if (auto it = index_.find(key); it != index_.end() && !on_path_[it->second])
      return it->second;
    SearchNode node;
    node.final = is_final(s);
    if (is_bad(p_, s)) {
      node.kind = NodeKind::Bad;
      if (o_.stop_at_bad)
        stopped_ = true;
    } else {
      for (int anc : path_)
        if (det_leq(p_, g_.nodes[anc].state, s)) {
          node.kind = NodeKind::Successful;
          node.dominator = anc;
          break;
        }
    }
    node.key = key;
    node.state = std::move(s);
    if (node.kind != NodeKind::Inner) {
      int id = add(std::move(node));
      if (g_.nodes[id].kind == NodeKind::Bad)
        index_.emplace(key, id);
      finish(id);
      return id;
    }
    auto succs = det_successors(p_, node.state);
    if (succs.empty())
      node.kind = NodeKind::Dead;
    for (const auto &sc : succs)
      node.edges.push_back({sc.action, sc.increment, -1});
    int id = add(std::move(node));
    index_.emplace(key, id);
    ++g_.expanded;
    path_.push_back(id);
    on_path_[id] = 1;
    pending_ += succs.size();
    for (std::size_t e = 0; e < succs.size(); ++e) {
      --pending_;
      if (stopped_)
        continue;
      if (o_.prune && decide(p_, g_, g_.nodes[id]) != Label::Unlabeled)
        continue;
      int child = visit(std::move(succs[e].state));
      g_.nodes[id].edges[e].target = child;
    }
    on_path_[id] = 0;
    path_.pop_back();
    finish(id);
    return id;
  }
};

} // namespace

SearchGraph build_graph(const Problem &p, DetState root, BuildOptions options) {
  return Builder(p, options).run(std::move(root));
}

void label_graph(const Problem &p, SearchGraph &g) {
  for (int id : g.finish_order)
    if (g.nodes[id].label == Label::Unlabeled)
      g.nodes[id].label = decide(p, g, g.nodes[id]);
}

SearchGraph solve_from(const Problem &p, DetState root, BuildOptions options) {
  auto g = build_graph(p, std::move(root), options);
  label_graph(p, g);
  return g;
}

SearchGraph solve(const Problem &p, BuildOptions options) {
  return solve_from(p, initial_det_state(p), options);
}

std::vector<int> good_choice(const Problem &p, const SearchGraph &g, int id) {
  const auto &node = g.nodes[id];
  std::set<int> u;
  if (node.kind != NodeKind::Inner)
    return {};
  for (const auto &c : valid_choices(p, node))
    if (std::all_of(c.begin(), c.end(), [&](int e) {
          return label_of(g, node.edges[e].target) == Label::Top;
        }))
      u.insert(c.begin(), c.end());
  return {u.begin(), u.end()};
}

bool check_for_controller(const Problem &p, BuildOptions options) {
  auto g = solve(p, options);
  return g.nodes[g.root].label == Label::Top;
}

golog::Trace concrete_trace(const Problem &p, const std::vector<Edge> &path) {
  golog::Trace trace;
  DetState cur = initial_det_state(p);
  // The canonical initial state equals the concrete one: all clocks are 0.
  Rational now = 0;
  for (const auto &e : path) {
    auto delays = increments(p, cur);
    const auto &d = delays.at(static_cast<std::size_t>(e.increment));
    auto next = det_step(p, cur, d, e.action, false);
    if (!next)
      throw ContractError("counterexample replay left the program");
    now += d;
    trace.push_back({e.action, now});
    cur = std::move(*next);
  }
  return trace;
}

Verdict verify(const Problem &p, BuildOptions options) {
  options.stop_at_bad = true;
  options.prune = false;
  auto g = build_graph(p, initial_det_state(p), options);
  int bad = -1;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (g.nodes[i].kind == NodeKind::Bad) {
      bad = static_cast<int>(i);
      break;
    }
  if (bad < 0)
    return {};
  // Breadth-first search for a shortest edge path to the bad node.
  std::vector<std::pair<int, int>> parent(g.nodes.size(), {-1, -1});
  std::vector<char> seen(g.nodes.size(), 0);
  std::deque<int> queue{g.root};
  seen[g.root] = 1;
  while (!queue.empty() && !seen[bad]) {
    int n = queue.front();
    queue.pop_front();
    const auto &edges = g.nodes[n].edges;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      int t = edges[e].target;
      if (t < 0 || seen[t])
        continue;
      seen[t] = 1;
      parent[t] = {n, static_cast<int>(e)};
      queue.push_back(t);
    }
  }
  std::vector<Edge> path;
  for (int n = bad; n != g.root; n = parent[n].first)
    path.push_back(g.nodes[parent[n].first].edges[parent[n].second]);
  std::reverse(path.begin(), path.end());
  return {false, concrete_trace(p, path)};
}

ClockConstraint region_constraint(const ClockSet &values, const Rational &delay,
                                  int max_constant) {
  ClockConstraint g;
  for (const auto &[name, v] : values) {
    auto r = region_of(v + delay, max_constant).value;
    std::int64_t k = r / 2;
    if (r == 2 * max_constant + 1) {
      g.atoms.push_back({name, Rel::Gt, max_constant});
    } else if (r % 2 == 0) {
      g.atoms.push_back({name, Rel::Eq, k});
    } else {
      g.atoms.push_back({name, Rel::Gt, k});
      g.atoms.push_back({name, Rel::Lt, k + 1});
    }
  }
  return g;
}

Controller extract_controller(const Problem &p, const SearchGraph &g) {
  if (g.nodes[g.root].label != Label::Top)
    throw ModelError("no controller exists: the root is labeled bottom");
  Controller c;
  auto &a = c.automaton;
  c.location_of_node.assign(g.nodes.size(), -1);
  c.choice.assign(g.nodes.size(), {});
  std::set<std::string> clocks(p.bat().clocks().begin(), p.bat().clocks().end());
  std::deque<int> queue;
  auto locate = [&](int node) {
    if (c.location_of_node[node] < 0) {
      c.location_of_node[node] = a.add_location("n" + std::to_string(node));
      c.node_of_location.push_back(node);
      if (g.nodes[node].final)
        a.finals.push_back(c.location_of_node[node]);
      queue.push_back(node);
    }
    return c.location_of_node[node];
  };
  a.initial = locate(g.root);
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop_front();
    const auto &node = g.nodes[n];
    c.choice[n] = good_choice(p, g, n);
    if (c.choice[n].empty())
      continue;
    auto pooled = pooled_clocks(p, node.state);
    for (const auto &[name, v] : pooled)
      clocks.insert(name);
    auto delays = increments(p, node.state);
    for (int e : c.choice[n]) {
      const auto &edge = node.edges[e];
      const auto &d = delays[edge.increment];
      ta::Switch sw;
      sw.src = c.location_of_node[n];
      sw.label = p.bat().actions()[edge.action].name;
      sw.guard = region_constraint(pooled, d, p.max_constant());
      auto waited = golog::elapse(node.state.world, d);
      for (const auto &[clock, cond] : p.bat().actions()[edge.action].resets)
        if (cond.eval(waited.atoms, waited.clocks))
          sw.resets.push_back(p.bat().clocks()[clock]);
      sw.dst = locate(edge.target);
      a.switches.push_back(std::move(sw));
    }
  }
  a.clocks.assign(clocks.begin(), clocks.end());
  return c;
}

} // namespace tsynth::synth
