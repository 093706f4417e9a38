#include "tsynth/golog/program.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace tsynth::golog {

Program Program::intern(Node n) {
  std::string key = std::to_string(static_cast<int>(n.kind)) + ":" +
                    std::to_string(n.action) + ":" + n.condition.key() + ":";
  for (const auto &c : n.children)
    key += std::to_string(c.id()) + ",";
  static std::mutex mutex;
  static std::unordered_map<std::string, std::unique_ptr<const Node>> nodes;
  std::lock_guard lock(mutex);
  if (auto it = nodes.find(key); it != nodes.end())
    return Program(it->second.get());
  n.id = static_cast<std::uint32_t>(nodes.size());
  auto node = std::make_unique<const Node>(std::move(n));
  const Node *raw = node.get();
  nodes.emplace(std::move(key), std::move(node));
  return Program(raw);
}

Program Program::nil() { return test(Ground::truth()); }

Program Program::act(int action) {
  Node n;
  n.kind = Kind::Act;
  n.action = action;
  return intern(std::move(n));
}

Program Program::test(const Ground &condition) {
  Node n;
  n.kind = Kind::Test;
  n.condition = condition;
  return intern(std::move(n));
}

Program Program::seq(std::vector<Program> parts) {
  std::vector<Program> flat;
  for (const auto &p : parts) {
    if (p.is_nil())
      continue;
    if (p.kind() == Kind::Seq)
      flat.insert(flat.end(), p.children().begin(), p.children().end());
    else
      flat.push_back(p);
  }
  if (flat.empty())
    return nil();
  if (flat.size() == 1)
    return flat[0];
  Node n;
  n.kind = Kind::Seq;
  n.children = std::move(flat);
  return intern(std::move(n));
}

Program Program::branch(std::vector<Program> options) {
  std::vector<Program> flat;
  for (const auto &p : options) {
    if (p.kind() == Kind::Branch)
      flat.insert(flat.end(), p.children().begin(), p.children().end());
    else
      flat.push_back(p);
  }
  if (flat.empty())
    throw InputError("branch needs at least one option");
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.size() == 1)
    return flat[0];
  Node n;
  n.kind = Kind::Branch;
  n.children = std::move(flat);
  return intern(std::move(n));
}

Program Program::star(const Program &body) {
  if (body.is_nil())
    return nil();
  if (body.kind() == Kind::Star)
    return body;
  Node n;
  n.kind = Kind::Star;
  n.children = {body};
  return intern(std::move(n));
}

Program Program::par(std::vector<Program> parts) {
  std::vector<Program> flat;
  for (const auto &p : parts) {
    if (p.is_nil())
      continue;
    if (p.kind() == Kind::Par)
      flat.insert(flat.end(), p.children().begin(), p.children().end());
    else
      flat.push_back(p);
  }
  if (flat.empty())
    return nil();
  if (flat.size() == 1)
    return flat[0];
  // Interleaving is commutative; a sorted multiset gives one key per program.
  std::sort(flat.begin(), flat.end());
  Node n;
  n.kind = Kind::Par;
  n.children = std::move(flat);
  return intern(std::move(n));
}

std::string Program::str(const Bat &bat) const {
  switch (kind()) {
  case Kind::Test:
    return is_nil() ? "nil" : bat.str(condition()) + "?";
  case Kind::Act: return bat.actions().at(action()).name;
  case Kind::Star: return "(" + children()[0].str(bat) + ")*";
  case Kind::Seq:
  case Kind::Branch:
  case Kind::Par: {
    const char *sep = kind() == Kind::Seq ? "; " : kind() == Kind::Branch ? " | " : " || ";
    std::string s = "(";
    for (std::size_t i = 0; i < children().size(); ++i) {
      if (i)
        s += sep;
      s += children()[i].str(bat);
    }
    return s + ")";
  }
  }
  return "?";
}

namespace {

using nlohmann::json;

std::vector<Program> list(const json &j, const Bat &bat) {
  if (!j.is_array())
    throw InputError("program list expected: " + j.dump());
  std::vector<Program> out;
  for (const auto &e : j)
    out.push_back(program_from_json(e, bat));
  return out;
}

Ground condition(const json &j, const Bat &bat) {
  if (!j.is_string())
    throw InputError("condition must be a formula string: " + j.dump());
  auto g = bat.ground_text(j.get<std::string>());
  std::vector<Rational> cs;
  g.collect_clock_constants(cs);
  for (const auto &c : cs)
    if (!is_integer(c))
      throw InputError("test constant does not scale to a natural: " + j.dump());
  return g;
}

} // namespace

Program program_from_json(const json &j, const Bat &bat) {
  if (!j.is_object() || j.size() != 1)
    throw InputError("malformed program " + j.dump());
  const std::string key = j.begin().key();
  const json &body = j.begin().value();
  if (key == "act")
    return Program::act(bat.action_id(body.get<std::string>()));
  if (key == "test")
    return Program::test(condition(body, bat));
  if (key == "nil")
    return Program::nil();
  if (key == "seq")
    return Program::seq(list(body, bat));
  if (key == "branch")
    return Program::branch(list(body, bat));
  if (key == "par")
    return Program::par(list(body, bat));
  if (key == "star")
    return Program::star(program_from_json(body, bat));
  if (key == "if") {
    auto c = condition(body.at("cond"), bat);
    auto then = program_from_json(body.at("then"), bat);
    auto other = body.contains("else") ? program_from_json(body.at("else"), bat)
                                       : Program::nil();
    return Program::branch({Program::seq({Program::test(c), then}),
                            Program::seq({Program::test(Ground::negate(c)), other})});
  }
  if (key == "while") {
    auto c = condition(body.at("cond"), bat);
    auto loop = program_from_json(body.at("do"), bat);
    return Program::seq({Program::star(Program::seq({Program::test(c), loop})),
                         Program::test(Ground::negate(c))});
  }
  throw InputError("unknown program construct '" + key + "'");
}

json program_to_json(const Program &p, const Bat &bat) {
  using K = Program::Kind;
  auto children = [&] {
    json arr = json::array();
    for (const auto &c : p.children())
      arr.push_back(program_to_json(c, bat));
    return arr;
  };
  switch (p.kind()) {
  case K::Test:
    return p.is_nil() ? json{{"nil", true}} : json{{"test", bat.str(p.condition())}};
  case K::Act: return {{"act", bat.actions().at(p.action()).name}};
  case K::Seq: return {{"seq", children()}};
  case K::Branch: return {{"branch", children()}};
  case K::Par: return {{"par", children()}};
  case K::Star: return {{"star", program_to_json(p.children()[0], bat)}};
  }
  return {};
}

} // namespace tsynth::golog
