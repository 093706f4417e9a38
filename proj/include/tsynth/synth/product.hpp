#pragma once

#include "tsynth/ata/ata.hpp"
#include "tsynth/core/region.hpp"
#include "tsynth/golog/bat.hpp"
#include "tsynth/golog/program.hpp"
#include "tsynth/mtl/formula.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsynth::synth {

// A program, the specification of bad behaviour and the controllable actions.
// Times are in the theory's scaled units; the specification's intervals are
// scaled to match.
class Problem {
public:
  // `controllable` holds glob patterns over action names. Throws InputError
  // when the specification mentions an atom the theory does not declare.
  Problem(golog::Bat bat, golog::Program program, const mtl::Formula &spec,
          std::vector<std::string> controllable = {});

  const golog::Bat &bat() const { return bat_; }
  const golog::Program &program() const { return program_; }
  // Positive normal form, scaled.
  const mtl::Formula &spec() const { return spec_; }
  const ata::Ata &ata() const { return ata_; }
  int max_constant() const { return max_constant_; }
  bool controllable(int action) const { return controllable_.at(action) != 0; }
  // Action ids ordered by name.
  const std::vector<int> &action_order() const { return order_; }

private:
  golog::Bat bat_;
  golog::Program program_;
  mtl::Formula spec_;
  ata::Ata ata_;
  int max_constant_ = 1;
  std::vector<char> controllable_;
  std::vector<int> order_;
};

// One state of the synchronous product.
struct SyncState {
  golog::WorldState world;
  golog::Program program = golog::Program::nil();
  ata::Configuration config;
};

// All product states reachable by one trace. Fluents and program clocks are
// determined by the trace, and the program and automaton components evolve
// independently, so the member set is programs x configs.
struct DetState {
  golog::WorldState world;
  std::vector<golog::Program> programs; // sorted, unique
  std::vector<ata::Configuration> configs; // inclusion-minimal, sorted

  std::vector<SyncState> members() const;
};

DetState initial_det_state(const Problem &problem);

// Clamps values above K. With `canonical`, also moves every value to the
// representative of its region class.
void normalize(const Problem &problem, DetState &state, bool canonical = true);
std::string state_key(const DetState &state);

bool is_final(const DetState &state);
bool is_bad(const Problem &problem, const DetState &state);

// Program clocks by name followed by automaton states named "ata<loc>_<k>",
// k ranking the distinct values of that location.
ClockSet pooled_clocks(const Problem &problem, const DetState &state);
// Accumulated region increments of the pooled clocks.
std::vector<Rational> increments(const Problem &problem, const DetState &state);

struct DetSuccessor {
  int action = -1;
  int increment = 0;
  DetState state;
};

// Increments ascending, then actions by name; targets without any program
// step are omitted.
std::vector<DetSuccessor> det_successors(const Problem &problem,
                                         const DetState &state,
                                         bool canonical = true);
// Waits `delay` and performs `action`; none when no program can do it.
std::optional<DetState> det_step(const Problem &problem, const DetState &state,
                                 const Rational &delay, int action,
                                 bool canonical = true);

bool state_leq(const Problem &problem, const SyncState &lhs,
               const SyncState &rhs);
bool det_leq(const Problem &problem, const DetState &lhs, const DetState &rhs);

} // namespace tsynth::synth
