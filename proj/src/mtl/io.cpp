#include "tsynth/mtl/io.hpp"

#include "tsynth/core/errors.hpp"

namespace tsynth::mtl {

using nlohmann::json;

Interval interval_from_json(const json &j) {
  if (j.is_string())
    return parse_interval(j.get<std::string>());
  if (!j.is_object())
    throw InputError("interval must be an object or string");
  Interval i;
  i.lo = j.value("lo", 0);
  i.lo_open = j.value("loOpen", false);
  auto hi = j.find("hi");
  if (hi == j.end() || hi->is_null() ||
      (hi->is_string() && (*hi == "inf" || *hi == "oo"))) {
    i.hi.reset();
    i.hi_open = true;
  } else {
    i.hi = hi->get<std::int64_t>();
    i.hi_open = j.value("hiOpen", false);
  }
  if (i.lo < 0 || (i.hi && *i.hi < i.lo))
    throw InputError("invalid interval " + j.dump());
  return i;
}

json interval_to_json(const Interval &i) {
  json j{{"lo", i.lo}, {"loOpen", i.lo_open}, {"hiOpen", i.hi_open}};
  j["hi"] = i.hi ? json(*i.hi) : json("inf");
  return j;
}

namespace {

std::vector<Formula> list_from_json(const json &j) {
  if (!j.is_array())
    throw InputError("expected array of formulas, got " + j.dump());
  std::vector<Formula> out;
  for (const auto &e : j)
    out.push_back(formula_from_json(e));
  return out;
}

Interval optional_interval(const json &obj) {
  if (obj.is_object() && obj.contains("interval"))
    return interval_from_json(obj["interval"]);
  return Interval::unbounded();
}

// "finally"/"globally"/"next" accept either the body directly or
// {"body": ..., "interval": ...}.
std::pair<Formula, Interval> unary_temporal(const json &j) {
  if (j.is_object() && j.contains("body"))
    return {formula_from_json(j["body"]), optional_interval(j)};
  return {formula_from_json(j), Interval::unbounded()};
}

} // namespace

Formula formula_from_json(const json &j) {
  if (j.is_boolean())
    return j.get<bool>() ? Formula::truth() : Formula::falsity();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "true")
      return Formula::truth();
    if (s == "false")
      return Formula::falsity();
    return Formula::atom(s);
  }
  if (!j.is_object() || j.size() != 1)
    throw InputError("malformed MTL formula " + j.dump());
  const std::string key = j.begin().key();
  const json &body = j.begin().value();
  if (key == "atom")
    return Formula::atom(body.get<std::string>());
  if (key == "true")
    return Formula::truth();
  if (key == "false")
    return Formula::falsity();
  if (key == "not")
    return Formula::negate(formula_from_json(body));
  if (key == "and")
    return Formula::conj(list_from_json(body));
  if (key == "or")
    return Formula::disj(list_from_json(body));
  if (key == "until" || key == "dualUntil" || key == "dual-until") {
    if (!body.contains("lhs") || !body.contains("rhs"))
      throw InputError("until needs lhs and rhs: " + body.dump());
    auto l = formula_from_json(body["lhs"]);
    auto r = formula_from_json(body["rhs"]);
    auto i = optional_interval(body);
    return key == "until" ? Formula::until(l, r, i)
                          : Formula::dual_until(l, r, i);
  }
  if (key == "finally" || key == "globally" || key == "next") {
    auto [f, i] = unary_temporal(body);
    if (key == "finally")
      return Formula::finally(f, i);
    if (key == "globally")
      return Formula::globally(f, i);
    return Formula::next(f, i);
  }
  throw InputError("unknown MTL connective '" + key + "'");
}

json formula_to_json(const Formula &f) {
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::True: return json{{"true", json::object()}};
  case K::False: return json{{"false", json::object()}};
  case K::Atom: return json{{"atom", f.name()}};
  case K::Not: return json{{"not", formula_to_json(f.children()[0])}};
  case K::And:
  case K::Or: {
    json arr = json::array();
    for (const auto &c : f.children())
      arr.push_back(formula_to_json(c));
    return json{{f.kind() == K::And ? "and" : "or", arr}};
  }
  case K::Until:
  case K::DualUntil:
    return json{{f.kind() == K::Until ? "until" : "dualUntil",
                 {{"lhs", formula_to_json(f.lhs())},
                  {"rhs", formula_to_json(f.rhs())},
                  {"interval", interval_to_json(f.interval())}}}};
  }
  throw ContractError("unreachable formula kind");
}

namespace {

std::string ground_term(const Sexpr &e) {
  if (e.is_atom())
    return e.atom;
  if (e.items.empty() || !e.items[0].is_atom())
    throw InputError("malformed ground term " + e.str());
  std::string s = e.items[0].atom + "(";
  for (std::size_t k = 1; k < e.items.size(); ++k)
    s += (k > 1 ? "," : "") + ground_term(e.items[k]);
  return s + ")";
}

} // namespace

Formula formula_from_sexpr(const Sexpr &e) {
  if (e.is_atom()) {
    if (e.atom == "true")
      return Formula::truth();
    if (e.atom == "false")
      return Formula::falsity();
    return Formula::atom(e.atom);
  }
  if (e.items.empty() || !e.items[0].is_atom())
    throw InputError("malformed MTL expression " + e.str());
  const auto &head = e.items[0].atom;
  auto args = [&](std::size_t lo, std::size_t hi) {
    if (e.items.size() - 1 < lo || e.items.size() - 1 > hi)
      throw InputError("wrong arity in " + e.str());
  };
  auto sub = [&](std::size_t k) { return formula_from_sexpr(e.items[k]); };
  auto interval_at = [&](std::size_t k) {
    if (k >= e.items.size())
      return Interval::unbounded();
    if (!e.items[k].is_atom())
      throw InputError("expected interval in " + e.str());
    return parse_interval(e.items[k].atom);
  };
  if (head == "atom") {
    args(1, 1);
    if (!e.items[1].is_atom())
      throw InputError("atom name expected in " + e.str());
    return Formula::atom(e.items[1].atom);
  }
  if (head == "not") {
    args(1, 1);
    return Formula::negate(sub(1));
  }
  if (head == "and" || head == "or") {
    std::vector<Formula> parts;
    for (std::size_t k = 1; k < e.items.size(); ++k)
      parts.push_back(sub(k));
    return head == "and" ? Formula::conj(std::move(parts))
                         : Formula::disj(std::move(parts));
  }
  if (head == "implies") {
    args(2, 2);
    return Formula::disj({Formula::negate(sub(1)), sub(2)});
  }
  if (head == "until" || head == "dual-until") {
    args(2, 3);
    auto i = interval_at(3);
    return head == "until" ? Formula::until(sub(1), sub(2), i)
                           : Formula::dual_until(sub(1), sub(2), i);
  }
  if (head == "finally" || head == "globally" || head == "next") {
    args(1, 2);
    auto i = interval_at(2);
    if (head == "finally")
      return Formula::finally(sub(1), i);
    if (head == "globally")
      return Formula::globally(sub(1), i);
    return Formula::next(sub(1), i);
  }
  // Ground fluent atoms: (holding o1) is "holding(o1)", (= robotAt m1) is
  // "robotAt=m1".
  if (head == "=") {
    args(2, 2);
    return Formula::atom(ground_term(e.items[1]) + "=" + ground_term(e.items[2]));
  }
  return Formula::atom(ground_term(e));
}

Formula parse_formula(std::string_view text) {
  return formula_from_sexpr(parse_sexpr(text));
}

Formula parse_formula_any(std::string_view text) {
  auto p = text.find_first_not_of(" \t\r\n");
  if (p != std::string_view::npos && text[p] == '{') {
    try {
      return formula_from_json(json::parse(text));
    } catch (const json::exception &e) {
      throw InputError(std::string("MTL JSON: ") + e.what());
    }
  }
  return parse_formula(text);
}

TimedWord word_from_json(const json &j) {
  if (!j.is_array())
    throw InputError("timed word must be a JSON array");
  TimedWord w;
  for (const auto &e : j) {
    WordEntry entry;
    const auto &t = e.at("t");
    entry.time = t.is_string() ? parse_rational(t.get<std::string>())
                               : Rational(t.get<std::int64_t>());
    for (const auto &s : e.value("symbols", json::array()))
      entry.symbols.insert(s.get<std::string>());
    w.push_back(std::move(entry));
  }
  validate_word(w);
  return w;
}

json word_to_json(const TimedWord &w) {
  json arr = json::array();
  for (const auto &e : w)
    arr.push_back({{"t", to_string(e.time)},
                   {"symbols", std::vector<std::string>(e.symbols.begin(),
                                                        e.symbols.end())}});
  return arr;
}

} // namespace tsynth::mtl
