#pragma once

#include "tsynth/core/rational.hpp"
#include "tsynth/golog/ground.hpp"
#include "tsynth/golog/syntax.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tsynth::golog {

// Reserved value of every functional fluent range ("no value").
inline const std::string kNone = "none";

struct FunctionDecl {
  std::string name;
  std::vector<std::string> args;
  std::string sort;
  // Interpreted (table) functions map the ground argument text, matched
  // against glob patterns in order, to a constant.
  std::vector<std::pair<std::string, std::string>> cases;
  bool interpreted = false;
};

struct FluentDecl {
  std::string name;
  std::vector<std::string> args;
  std::optional<std::string> range; // set for functional fluents
};

struct AtomInfo {
  std::string name; // "holding(o1)", "camOn", "robotAt=m1"
  int fluent = -1;
  int term = -1;     // functional ground term, -1 for relational atoms
  std::string value; // functional value
  std::vector<std::string> args;
};

struct FunctionalTerm {
  std::string name; // "robotAt"
  int fluent = -1;
  std::vector<std::string> values;
  std::vector<int> value_atoms;
};

struct ActionInfo {
  std::string name;
  Ground poss = Ground::truth();
  Ground guard = Ground::truth();
  // Non-frame successor-state right-hand sides per atom id.
  std::map<int, Ground> effects;
  // Reset condition per clock id (absent means never reset).
  std::map<int, Ground> resets;
};

struct WorldState {
  std::vector<char> atoms;
  std::vector<Rational> clocks;

  friend bool operator==(const WorldState &, const WorldState &) = default;
};

struct Binding {
  std::string var;
  std::string value;
  std::string sort;
};
using Env = std::vector<Binding>;

// Finite-domain basic action theory with complete initial information.
class Bat {
public:
  static Bat from_json(const nlohmann::json &j);

  const std::vector<std::string> &domain(const std::string &sort) const;
  const std::vector<ActionInfo> &actions() const { return actions_; }
  const std::vector<AtomInfo> &atoms() const { return atoms_; }
  const std::vector<FunctionalTerm> &functional_terms() const { return terms_; }
  const std::vector<std::string> &clocks() const { return clocks_; }
  const std::vector<FluentDecl> &fluents() const { return fluents_; }
  const WorldState &initial() const { return initial_; }

  int action_id(const std::string &name) const;
  int atom_id(const std::string &name) const; // -1 when unknown
  int clock_id(const std::string &name) const;
  std::optional<int> find_action(const std::string &name) const;

  // Grounds a formula; free variables must be bound in env.
  Ground ground(const Syntax &formula, const Env &env = {}) const;
  Ground ground_text(std::string_view text, const Env &env = {}) const;

  // Multiplier applied to every clock constant so they become naturals.
  const Rational &scale() const { return scale_; }
  std::int64_t max_constant() const { return max_constant_; }

  std::string atom_name(int id) const { return atoms_.at(id).name; }
  std::string str(const Ground &g) const;
  std::set<std::string> symbols(const WorldState &state) const;
  nlohmann::json state_to_json(const WorldState &state) const;

private:
  std::map<std::string, std::vector<std::string>> sorts_;
  std::map<std::string, std::string> constant_sort_;
  std::vector<FunctionDecl> functions_;
  std::map<std::string, int> function_index_;
  std::vector<FluentDecl> fluents_;
  std::map<std::string, int> fluent_index_;
  std::vector<std::string> clocks_;
  std::vector<AtomInfo> atoms_;
  std::map<std::string, int> atom_index_;
  std::vector<FunctionalTerm> terms_;
  std::map<std::string, int> term_index_;
  std::vector<ActionInfo> actions_;
  std::map<std::string, int> action_index_;
  WorldState initial_;
  Rational scale_ = 1;
  std::int64_t max_constant_ = 0;

  struct Alternative {
    Ground condition;
    std::string value;
  };
  using Scope = Env;

  void declare_sort(const std::string &name, std::vector<std::string> domain);
  void enumerate_constructed_sorts();
  void build_atoms();
  std::vector<Alternative> ground_term(const Term &t, const Scope &scope) const;
  Ground ground_in(const Syntax &f, Scope &scope) const;
  std::optional<std::string> sort_of(const Term &t) const;
  std::string infer_sort(const std::string &var, const Syntax &body) const;
  std::optional<std::string> infer_in(const std::string &var, const Syntax &f) const;
  std::optional<std::string> infer_in_term(const std::string &var, const Term &t) const;
  std::string apply_table(const FunctionDecl &fn, const std::string &arg_text) const;
  void compile_actions(const nlohmann::json &j);
  void load_initial(const nlohmann::json &j);
  void compute_scale(const std::vector<const Syntax *> &formulas);
};

bool holds(const Bat &bat, const WorldState &state, const Ground &formula);
bool holds(const Bat &bat, const WorldState &state, std::string_view formula);

// Applies successor-state axioms and the reset axiom for one ground action.
// Throws ModelError when a functional fluent gets zero or several values.
WorldState progress(const Bat &bat, const WorldState &state, int action);
WorldState elapse(const WorldState &state, const Rational &delay);

bool glob_match(std::string_view pattern, std::string_view text);

} // namespace tsynth::golog
