#pragma once

#include "tsynth/core/clock.hpp"
#include "tsynth/core/rational.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace tsynth::golog {

// Variable-free formula over ground fluent atoms (by id) and clock atoms
// (by clock id). Constructors fold constants.
class Ground {
public:
  enum class Kind { True, False, Atom, Clock, Not, And, Or };

  static Ground truth();
  static Ground falsity();
  static Ground constant(bool value) { return value ? truth() : falsity(); }
  static Ground atom(int id);
  static Ground clock(int clock, Rel rel, Rational constant);
  static Ground negate(const Ground &g);
  static Ground conj(std::vector<Ground> parts);
  static Ground disj(std::vector<Ground> parts);

  Kind kind() const { return node_->kind; }
  int id() const { return node_->id; }
  Rel rel() const { return node_->rel; }
  const Rational &constant() const { return node_->constant; }
  const std::vector<Ground> &children() const { return node_->children; }
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }

  bool eval(const std::vector<char> &atoms,
            const std::vector<Rational> &clocks) const;
  // Compact text over ids; equal keys mean structurally equal formulas.
  const std::string &key() const { return node_->key; }
  std::string str(const std::function<std::string(int)> &atom_name,
                  const std::function<std::string(int)> &clock_name) const;

  // Rebuilds the formula with atoms and clock atoms replaced.
  Ground map(const std::function<Ground(int)> &atom_fn,
             const std::function<Ground(int, Rel, const Rational &)> &clock_fn) const;

  void collect_clock_constants(std::vector<Rational> &out) const;

  friend bool operator==(const Ground &a, const Ground &b) {
    return a.node_ == b.node_ || a.node_->key == b.node_->key;
  }

private:
  struct Node {
    Kind kind = Kind::True;
    int id = -1;
    Rel rel = Rel::Eq;
    Rational constant;
    std::vector<Ground> children;
    std::string key;
  };
  explicit Ground(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Ground make(Node n);
  std::shared_ptr<const Node> node_;
};

} // namespace tsynth::golog
