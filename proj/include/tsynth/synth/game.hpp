#pragma once

#include "tsynth/golog/interpreter.hpp"
#include "tsynth/synth/product.hpp"
#include "tsynth/ta/automaton.hpp"

#include <cstddef>
#include <vector>

namespace tsynth::synth {

enum class NodeKind { Bad, Successful, Dead, Inner };
enum class Label { Unlabeled, Top, Bottom };

std::string to_string(NodeKind kind);
std::string to_string(Label label);

struct Edge {
  int action = -1;
  int increment = 0;
  int target = -1; // -1 when pruning skipped the successor
};

struct SearchNode {
  DetState state;
  std::string key;
  NodeKind kind = NodeKind::Inner;
  int dominator = -1; // successful nodes: the dominated-by ancestor
  bool final = false;
  std::vector<Edge> edges;
  Label label = Label::Unlabeled;
};

struct SearchGraph {
  std::vector<SearchNode> nodes;
  int root = 0;
  std::vector<int> finish_order; // children before parents
  std::size_t expanded = 0;
};

struct BuildOptions {
  std::size_t budget = 0; // node limit, 0 for none
  // Label during construction and skip successors once a node's label is
  // decided.
  bool prune = false;
  bool stop_at_bad = false;
};

// Throws ResourceError when the budget is exhausted.
SearchGraph build_graph(const Problem &problem, DetState root,
                        BuildOptions options = {});
// Labels every node not labeled during construction.
void label_graph(const Problem &problem, SearchGraph &graph);
SearchGraph solve(const Problem &problem, BuildOptions options = {});
SearchGraph solve_from(const Problem &problem, DetState root,
                       BuildOptions options = {});

// Minimal valid controller choices of an inner node as edge indices: all
// environment edges, and each controller edge together with the environment
// edges not strictly after it. The empty choice only at final nodes without
// environment edges.
std::vector<std::vector<int>> valid_choices(const Problem &problem,
                                            const SearchNode &node);
// Union of all choices whose targets are labeled top.
std::vector<int> good_choice(const Problem &problem, const SearchGraph &graph,
                             int node);

bool check_for_controller(const Problem &problem, BuildOptions options = {});

struct Verdict {
  bool safe = true;
  golog::Trace counterexample; // scaled times
};

Verdict verify(const Problem &problem, BuildOptions options = {});

// Replays (action, increment) pairs from the initial state with the
// representative delays; returns absolute scaled times.
golog::Trace concrete_trace(const Problem &problem,
                            const std::vector<Edge> &path);

struct Controller {
  ta::TimedAutomaton automaton;
  std::vector<int> node_of_location;
  std::vector<int> location_of_node; // -1 when not part of the controller
  std::vector<std::vector<int>> choice; // chosen edge indices per node
};

// Throws ModelError when the root is not labeled top.
Controller extract_controller(const Problem &problem, const SearchGraph &graph);
// Region of `values` advanced by `delay`, as a conjunction of clock atoms.
ClockConstraint region_constraint(const ClockSet &values, const Rational &delay,
                                  int max_constant);

} // namespace tsynth::synth
