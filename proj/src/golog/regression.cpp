#include "tsynth/golog/regression.hpp"

#include "tsynth/core/errors.hpp"

namespace tsynth::golog {

namespace {

class Regressor {
public:
  Regressor(const Bat &bat, const std::vector<TraceElement> &trace)
      : bat_(bat), trace_(trace) {
    Rational now = 0;
    for (const auto &e : trace_) {
      start_time_.push_back(now);
      if (e.is_time) {
        if (e.time < now)
          throw ContractError("regression trace times must be non-decreasing");
        now = e.time;
      }
    }
  }

  // Regresses through the first `k` trace elements.
  Ground at(std::size_t k, const Ground &g) const {
    if (k == 0)
      return g.map([](int id) { return Ground::atom(id); },
                   [](int, Rel rel, const Rational &r) {
                     return Ground::constant(compare(0, rel, r));
                   });
    const auto &e = trace_[k - 1];
    if (e.is_time) {
      Rational elapsed = e.time - start_time_[k - 1];
      return at(k - 1, g.map([](int id) { return Ground::atom(id); },
                             [&](int c, Rel rel, const Rational &r) {
                               return Ground::clock(c, rel, r - elapsed);
                             }));
    }
    const auto &info = bat_.actions().at(static_cast<std::size_t>(e.action));
    // Fluent atoms: substitute the successor-state right-hand side.
    // Clock atoms: (reset and 0 rel r) or (not reset and c rel r).
    auto replaced = g.map(
        [&](int id) {
          auto it = info.effects.find(id);
          return it == info.effects.end() ? Ground::atom(id) : it->second;
        },
        [&](int c, Rel rel, const Rational &r) {
          auto it = info.resets.find(c);
          if (it == info.resets.end())
            return Ground::clock(c, rel, r);
          const auto &reset = it->second;
          return Ground::disj(
              {Ground::conj({reset, Ground::constant(compare(0, rel, r))}),
               Ground::conj({Ground::negate(reset), Ground::clock(c, rel, r)})});
        });
    return at(k - 1, replaced);
  }

private:
  const Bat &bat_;
  const std::vector<TraceElement> &trace_;
  std::vector<Rational> start_time_;
};

} // namespace

Ground regress(const Bat &bat, const std::vector<TraceElement> &trace,
               const Ground &formula) {
  return Regressor(bat, trace).at(trace.size(), formula);
}

WorldState progress_trace(const Bat &bat, const std::vector<TraceElement> &trace) {
  WorldState state = bat.initial();
  Rational now = 0;
  for (const auto &e : trace) {
    if (e.is_time) {
      state = elapse(state, e.time - now);
      now = e.time;
    } else {
      state = progress(bat, state, e.action);
    }
  }
  return state;
}

} // namespace tsynth::golog
