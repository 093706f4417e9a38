#include "tsynth/ta/reach.hpp"

#include "tsynth/core/errors.hpp"
#include "tsynth/core/region.hpp"
#include "tsynth/ta/dbm.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace tsynth::ta {
namespace {

struct ClockIndex {
  std::unordered_map<std::string, int> index;
  explicit ClockIndex(const std::vector<std::string> &clocks) {
    for (std::size_t i = 0; i < clocks.size(); ++i)
      index.emplace(clocks[i], static_cast<int>(i) + 1);
  }
  int operator()(const std::string &c) const { return index.at(c); }
};

void apply(Dbm &z, const ClockConstraint &c, const ClockIndex &idx) {
  for (const auto &a : c.atoms)
    z.constrain(idx(a.clock), a.rel, a.constant);
}

std::vector<std::int64_t> clock_maxima(const TimedAutomaton &a,
                                       const ClockIndex &idx) {
  std::vector<std::int64_t> max(a.clocks.size() + 1, 0);
  auto see = [&](const ClockConstraint &c) {
    for (const auto &at : c.atoms) {
      auto &m = max[idx(at.clock)];
      m = std::max(m, at.constant);
    }
  };
  for (const auto &inv : a.invariants)
    see(inv);
  for (const auto &s : a.switches)
    see(s.guard);
  return max;
}

struct Node {
  int loc;
  Dbm zone;
  int parent;
  int via; // switch id
};

// Difference constraints over event times t_0 = 0, t_1..t_n in units of
// 1/scale; strict bounds become weak integer bounds one unit tighter.
class EventSystem {
public:
  EventSystem(int events, std::int64_t scale)
      : n_(events + 1), scale_(scale),
        m_(static_cast<std::size_t>(n_ * n_), kInf) {
    for (int i = 0; i < n_; ++i)
      m_[i * n_ + i] = 0;
  }

  // t_u - t_v (rel) c
  void add(int u, int v, Rel rel, std::int64_t c) {
    const std::int64_t weak = c * scale_, strict = c * scale_ - 1;
    switch (rel) {
    case Rel::Lt:
      upper(u, v, strict);
      break;
    case Rel::Le:
      upper(u, v, weak);
      break;
    case Rel::Eq:
      upper(u, v, weak);
      upper(v, u, -weak);
      break;
    case Rel::Ge:
      upper(v, u, -weak);
      break;
    case Rel::Gt:
      upper(v, u, -c * scale_ - 1);
      break;
    }
  }
  void upper(int u, int v, std::int64_t b) {
    auto &cur = m_[u * n_ + v];
    cur = std::min(cur, b);
  }

  bool close() {
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i) {
        auto ik = m_[i * n_ + k];
        if (ik == kInf)
          continue;
        for (int j = 0; j < n_; ++j) {
          auto kj = m_[k * n_ + j];
          if (kj != kInf && ik + kj < m_[i * n_ + j])
            m_[i * n_ + j] = ik + kj;
        }
      }
    for (int i = 0; i < n_; ++i)
      if (m_[i * n_ + i] < 0)
        return false;
    return true;
  }

  // Pins t_k to its least value and re-closes in O(n^2).
  std::int64_t pin_minimum(int k) {
    const std::int64_t v = -m_[0 * n_ + k];
    tighten(k, 0, v);
    return v;
  }

private:
  void tighten(int i, int j, std::int64_t b) {
    if (b >= m_[i * n_ + j])
      return;
    m_[i * n_ + j] = b;
    for (int p = 0; p < n_; ++p) {
      auto pi = m_[p * n_ + i];
      if (pi == kInf)
        continue;
      for (int q = 0; q < n_; ++q) {
        auto jq = m_[j * n_ + q];
        if (jq != kInf && pi + b + jq < m_[p * n_ + q])
          m_[p * n_ + q] = pi + b + jq;
      }
    }
  }

  static constexpr std::int64_t kInf = INT64_MAX / 4;
  int n_;
  std::int64_t scale_;
  std::vector<std::int64_t> m_;
};

} // namespace

std::optional<std::vector<Rational>>
path_delays(const TimedAutomaton &a, const std::vector<int> &switch_path) {
  const int n = static_cast<int>(switch_path.size());
  const std::int64_t scale = n + 2;
  EventSystem sys(n, scale);
  std::map<std::string, int> last_reset;
  for (const auto &c : a.clocks)
    last_reset[c] = 0;
  bool consistent = true;

  // Constrains every clock value at event `at` (clock value t_at - t_r).
  auto constrain = [&](const ClockConstraint &cc, int at) {
    for (const auto &atom : cc.atoms) {
      int r = last_reset.at(atom.clock);
      if (r == at)
        consistent = consistent && compare(Rational(0), atom.rel,
                                           Rational(atom.constant));
      else
        sys.add(at, r, atom.rel, atom.constant);
    }
  };

  int loc = a.initial;
  constrain(a.invariants[loc], 0);
  for (int k = 1; k <= n; ++k) {
    const auto &s = a.switches.at(switch_path[k - 1]);
    if (s.src != loc)
      throw ContractError("switch path is not connected");
    sys.add(k, k - 1, Rel::Ge, 0);
    constrain(a.invariants[loc], k);
    constrain(s.guard, k);
    for (const auto &r : s.resets)
      last_reset.at(r) = k;
    loc = s.dst;
    constrain(a.invariants[loc], k);
  }
  if (!consistent || !sys.close())
    return std::nullopt;

  std::vector<Rational> delays;
  std::int64_t prev = 0;
  for (int k = 1; k <= n; ++k) {
    auto t = sys.pin_minimum(k);
    delays.push_back(ratio(t - prev, scale));
    prev = t;
  }
  return delays;
}

std::optional<Run> zone_reach(const TimedAutomaton &a, ReachStats *stats) {
  a.validate();
  const ClockIndex idx(a.clocks);
  const auto max = clock_maxima(a, idx);
  const int nclocks = static_cast<int>(a.clocks.size());

  std::vector<std::vector<int>> outgoing(a.locations.size());
  for (std::size_t s = 0; s < a.switches.size(); ++s)
    outgoing[a.switches[s].src].push_back(static_cast<int>(s));

  std::vector<Node> nodes;
  std::vector<std::vector<int>> passed(a.locations.size());
  std::deque<int> queue;

  auto admit = [&](int loc, Dbm zone, int parent, int via) -> int {
    zone.up();
    apply(zone, a.invariants[loc], idx);
    zone.extrapolate(max);
    if (zone.is_empty())
      return -1;
    for (int other : passed[loc])
      if (nodes[other].zone.includes(zone))
        return -1;
    nodes.push_back({loc, std::move(zone), parent, via});
    const int id = static_cast<int>(nodes.size()) - 1;
    passed[loc].push_back(id);
    queue.push_back(id);
    return id;
  };

  Dbm init = Dbm::zero(nclocks);
  apply(init, a.invariants[a.initial], idx);
  int found = -1;
  if (!init.is_empty()) {
    int id = admit(a.initial, std::move(init), -1, -1);
    if (id >= 0 && a.is_final(a.initial))
      found = id;
  }
  while (found < 0 && !queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int s : outgoing[nodes[cur].loc]) {
      const auto &sw = a.switches[s];
      Dbm z = nodes[cur].zone;
      apply(z, sw.guard, idx);
      for (const auto &r : sw.resets)
        z.reset(idx(r));
      apply(z, a.invariants[sw.dst], idx);
      if (z.is_empty())
        continue;
      int id = admit(sw.dst, std::move(z), cur, s);
      if (id >= 0 && a.is_final(sw.dst)) {
        found = id;
        break;
      }
    }
  }
  if (stats)
    stats->symbolic_states = nodes.size();
  if (found < 0)
    return std::nullopt;

  std::vector<int> path;
  for (int n = found; nodes[n].parent >= 0; n = nodes[n].parent)
    path.push_back(nodes[n].via);
  std::reverse(path.begin(), path.end());
  auto delays = path_delays(a, path);
  if (!delays)
    throw ContractError("zone path admits no concrete timing");
  Run run;
  for (std::size_t i = 0; i < path.size(); ++i)
    run.push_back({path[i], (*delays)[i]});
  return run;
}

bool region_reachable(const TimedAutomaton &a) {
  a.validate();
  const int k = static_cast<int>(std::max<std::int64_t>(a.max_constant(), 1));
  auto holds = [&](const ClockSet &v, const ClockConstraint &c) {
    for (const auto &atom : c.atoms) {
      auto it = std::find_if(v.begin(), v.end(), [&](const auto &e) {
        return e.first == atom.clock;
      });
      if (!compare(it->second, atom.rel, Rational(atom.constant)))
        return false;
    }
    return true;
  };
  auto normalize = [&](ClockSet &v) {
    std::vector<Rational *> ptrs;
    for (auto &e : v)
      ptrs.push_back(&e.second);
    normalize_values(ptrs, k);
  };
  auto key = [](int loc, const ClockSet &v) {
    std::string s = std::to_string(loc);
    for (const auto &e : v)
      s += " " + to_string(e.second);
    return s;
  };

  ClockSet start;
  for (const auto &c : a.clocks)
    start.emplace_back(c, 0);
  if (!holds(start, a.invariants[a.initial]))
    return false;
  std::set<std::string> seen{key(a.initial, start)};
  std::vector<std::pair<int, ClockSet>> stack{{a.initial, start}};
  while (!stack.empty()) {
    auto [loc, v] = std::move(stack.back());
    stack.pop_back();
    if (a.is_final(loc))
      return true;
    for (const auto &succ : time_successors(v, k)) {
      if (!holds(succ.values, a.invariants[loc]))
        break;
      for (const auto &s : a.switches) {
        if (s.src != loc || !holds(succ.values, s.guard))
          continue;
        ClockSet next = succ.values;
        for (auto &e : next)
          if (std::find(s.resets.begin(), s.resets.end(), e.first) !=
              s.resets.end())
            e.second = 0;
        if (!holds(next, a.invariants[s.dst]))
          continue;
        normalize(next);
        if (seen.insert(key(s.dst, next)).second)
          stack.emplace_back(s.dst, std::move(next));
      }
    }
  }
  return false;
}

} // namespace tsynth::ta
