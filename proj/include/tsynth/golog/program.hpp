#pragma once

#include "tsynth/golog/bat.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tsynth::golog {

// Interned program in normal form: structurally equal programs share one
// node, so equality and ordering are by id.
class Program {
public:
  enum class Kind { Test, Act, Seq, Branch, Star, Par };

  static Program nil();
  static Program act(int action);
  static Program test(const Ground &condition);
  static Program seq(std::vector<Program> parts);
  static Program branch(std::vector<Program> options);
  static Program star(const Program &body);
  static Program par(std::vector<Program> parts);

  Kind kind() const { return node_->kind; }
  int action() const { return node_->action; }
  const Ground &condition() const { return node_->condition; }
  const std::vector<Program> &children() const { return node_->children; }
  std::uint32_t id() const { return node_->id; }
  bool is_nil() const { return kind() == Kind::Test && condition().is_true(); }

  std::string str(const Bat &bat) const;

  friend bool operator==(Program a, Program b) { return a.node_ == b.node_; }
  friend bool operator<(Program a, Program b) { return a.id() < b.id(); }

private:
  struct Node {
    Kind kind = Kind::Test;
    int action = -1;
    Ground condition = Ground::truth();
    std::vector<Program> children;
    std::uint32_t id = 0;
  };
  explicit Program(const Node *n) : node_(n) {}
  static Program intern(Node n);
  const Node *node_;
};

// {"act": name} | {"test": formula} | {"seq": [...]} | {"branch": [...]}
// | {"par": [...]} | {"star": p} | {"nil": true}
// | {"if": {"cond", "then", "else"}} | {"while": {"cond", "do"}}
Program program_from_json(const nlohmann::json &j, const Bat &bat);
nlohmann::json program_to_json(const Program &p, const Bat &bat);

} // namespace tsynth::golog
