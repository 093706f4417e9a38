#pragma once

#include "tsynth/core/interval.hpp"

#include <memory>
#include <string>
#include <vector>

namespace tsynth::mtl {

// Immutable MTL formula with value semantics; structural equality via the
// canonical text form.
class Formula {
public:
  enum class Kind { True, False, Atom, Not, And, Or, Until, DualUntil };

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string name);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula until(Formula lhs, Formula rhs, Interval interval);
  static Formula dual_until(Formula lhs, Formula rhs, Interval interval);
  // Abbreviations: F_I f = true U_I f, G_I f = not F_I not f, X_I f = false U_I f.
  static Formula finally(Formula f, Interval interval = Interval::unbounded());
  static Formula globally(Formula f, Interval interval = Interval::unbounded());
  static Formula next(Formula f, Interval interval = Interval::unbounded());

  Kind kind() const { return node_->kind; }
  const std::string &name() const { return node_->name; }
  const std::vector<Formula> &children() const { return node_->children; }
  const Formula &lhs() const { return node_->children.at(0); }
  const Formula &rhs() const { return node_->children.at(1); }
  const Interval &interval() const { return node_->interval; }
  const std::string &str() const { return node_->text; }
  const void *identity() const { return node_.get(); }

  bool is_temporal() const {
    return kind() == Kind::Until || kind() == Kind::DualUntil;
  }

  friend bool operator==(const Formula &a, const Formula &b) {
    return a.node_ == b.node_ || a.node_->text == b.node_->text;
  }
  friend bool operator<(const Formula &a, const Formula &b) {
    return a.node_->text < b.node_->text;
  }

private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Formula> children;
    Interval interval;
    std::string text;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, std::string name, std::vector<Formula> children,
                      Interval interval);

  std::shared_ptr<const Node> node_;
};

Formula to_pnf(const Formula &f);
bool is_pnf(const Formula &f);
// Sub-formulas whose outermost connective is Until or DualUntil, in order of
// first appearance (pre-order).
std::vector<Formula> closure(const Formula &f);
std::int64_t max_constant(const Formula &f);
std::vector<std::string> atoms_of(const Formula &f);
// Multiplies every interval endpoint, matching a theory's time scale.
Formula scale_intervals(const Formula &f, std::int64_t factor);

} // namespace tsynth::mtl
