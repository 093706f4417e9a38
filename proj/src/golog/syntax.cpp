#include "tsynth/golog/syntax.hpp"

#include "tsynth/core/errors.hpp"

#include <cctype>

namespace tsynth::golog {

std::string Term::str() const {
  if (args.empty())
    return name;
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i)
      s += ",";
    s += args[i].str();
  }
  return s + ")";
}

std::string Syntax::str() const {
  auto join_terms = [&] {
    std::string s;
    for (const auto &t : terms)
      s += " " + t.str();
    return s;
  };
  switch (kind) {
  case Kind::True: return "true";
  case Kind::False: return "false";
  case Kind::Pred: return terms.empty() ? name : "(" + name + join_terms() + ")";
  case Kind::Eq: return "(=" + join_terms() + ")";
  case Kind::Cmp:
    return "(" + to_string(rel) + join_terms() + " " + to_string(constant) + ")";
  case Kind::ConstCmp:
    return "(" + to_string(rel) + " " + to_string(lhs_constant) + " " +
           to_string(constant) + ")";
  case Kind::Not: return "(not " + children[0].str() + ")";
  case Kind::And:
  case Kind::Or: {
    std::string s = kind == Kind::And ? "(and" : "(or";
    for (const auto &c : children)
      s += " " + c.str();
    return s + ")";
  }
  case Kind::Forall:
  case Kind::Exists:
    return std::string(kind == Kind::Forall ? "(forall " : "(exists ") +
           name + (sort.empty() ? "" : ":" + sort) + " " + children[0].str() +
           ")";
  }
  return "?";
}

namespace {

bool looks_numeric(const std::string &s) {
  if (s.empty())
    return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) ||
                          s[i] == '.');
}

bool is_rel(const std::string &s) {
  return s == "<" || s == "<=" || s == ">" || s == ">=" || s == "==";
}

Term parse_term(const Sexpr &e) {
  if (e.is_atom()) {
    if (looks_numeric(e.atom))
      throw InputError("number '" + e.atom + "' used as a term");
    return Term{e.atom, {}};
  }
  if (e.items.empty() || !e.items[0].is_atom())
    throw InputError("malformed term " + e.str());
  Term t{e.items[0].atom, {}};
  for (std::size_t i = 1; i < e.items.size(); ++i)
    t.args.push_back(parse_term(e.items[i]));
  return t;
}

Syntax make(Syntax::Kind k) {
  Syntax s;
  s.kind = k;
  return s;
}

Syntax comparison(Rel rel, const Sexpr &lhs, const Sexpr &rhs,
                  const Sexpr &whole) {
  bool ln = lhs.is_atom() && looks_numeric(lhs.atom);
  bool rn = rhs.is_atom() && looks_numeric(rhs.atom);
  if (ln && rn) {
    auto s = make(Syntax::Kind::ConstCmp);
    s.rel = rel;
    s.lhs_constant = parse_rational(lhs.atom);
    s.constant = parse_rational(rhs.atom);
    return s;
  }
  if (rn) {
    auto s = make(Syntax::Kind::Cmp);
    s.rel = rel;
    s.terms.push_back(parse_term(lhs));
    s.constant = parse_rational(rhs.atom);
    return s;
  }
  if (ln) {
    // 4 <= x  is  x >= 4
    static const Rel flipped[] = {Rel::Gt, Rel::Ge, Rel::Eq, Rel::Le, Rel::Lt};
    auto s = make(Syntax::Kind::Cmp);
    s.rel = flipped[static_cast<int>(rel)];
    s.terms.push_back(parse_term(rhs));
    s.constant = parse_rational(lhs.atom);
    return s;
  }
  if (rel != Rel::Eq)
    throw InputError("clock comparison needs a numeric side: " + whole.str());
  auto s = make(Syntax::Kind::Eq);
  s.terms = {parse_term(lhs), parse_term(rhs)};
  return s;
}

Syntax quantifier(Syntax::Kind kind, const Sexpr &e) {
  if (e.items.size() != 3)
    throw InputError("quantifier needs a variable and a body: " + e.str());
  const auto &binder = e.items[1];
  std::vector<std::pair<std::string, std::string>> vars;
  // binder: v | v:sort | (v1 v2:sort ...)
  auto add = [&](const std::string &item) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      vars.push_back({item, ""});
    else
      vars.push_back({item.substr(0, colon), item.substr(colon + 1)});
  };
  if (binder.is_atom()) {
    add(binder.atom);
  } else {
    for (const auto &item : binder.items) {
      if (!item.is_atom())
        throw InputError("malformed quantifier binder " + binder.str());
      add(item.atom);
    }
  }
  if (vars.empty())
    throw InputError("quantifier binds no variable: " + e.str());
  Syntax body = parse_syntax(e.items[2]);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    auto q = make(kind);
    q.name = it->first;
    q.sort = it->second;
    q.children.push_back(std::move(body));
    body = std::move(q);
  }
  return body;
}

} // namespace

Syntax parse_syntax(const Sexpr &e) {
  if (e.is_atom()) {
    if (e.atom == "true")
      return make(Syntax::Kind::True);
    if (e.atom == "false")
      return make(Syntax::Kind::False);
    if (looks_numeric(e.atom))
      throw InputError("number '" + e.atom + "' used as a formula");
    auto s = make(Syntax::Kind::Pred);
    s.name = e.atom;
    return s;
  }
  if (e.items.empty() || !e.items[0].is_atom())
    throw InputError("malformed formula " + e.str());
  const auto &head = e.items[0].atom;
  auto arity = [&](std::size_t n) {
    if (e.items.size() != n + 1)
      throw InputError("'" + head + "' expects " + std::to_string(n) +
                       " arguments: " + e.str());
  };
  if (head == "not") {
    arity(1);
    auto s = make(Syntax::Kind::Not);
    s.children.push_back(parse_syntax(e.items[1]));
    return s;
  }
  if (head == "and" || head == "or") {
    auto s = make(head == "and" ? Syntax::Kind::And : Syntax::Kind::Or);
    for (std::size_t i = 1; i < e.items.size(); ++i)
      s.children.push_back(parse_syntax(e.items[i]));
    return s;
  }
  if (head == "implies" || head == "iff") {
    arity(2);
    auto a = parse_syntax(e.items[1]);
    auto b = parse_syntax(e.items[2]);
    auto neg = [](Syntax x) {
      auto n = make(Syntax::Kind::Not);
      n.children.push_back(std::move(x));
      return n;
    };
    auto imp = [&](Syntax x, Syntax y) {
      auto o = make(Syntax::Kind::Or);
      o.children = {neg(std::move(x)), std::move(y)};
      return o;
    };
    if (head == "implies")
      return imp(a, b);
    auto s = make(Syntax::Kind::And);
    s.children = {imp(a, b), imp(b, a)};
    return s;
  }
  if (head == "exists")
    return quantifier(Syntax::Kind::Exists, e);
  if (head == "forall")
    return quantifier(Syntax::Kind::Forall, e);
  if (head == "=" || head == "!=") {
    arity(2);
    auto s = comparison(Rel::Eq, e.items[1], e.items[2], e);
    if (head == "=")
      return s;
    auto n = make(Syntax::Kind::Not);
    n.children.push_back(std::move(s));
    return n;
  }
  if (is_rel(head)) {
    arity(2);
    return comparison(parse_rel(head), e.items[1], e.items[2], e);
  }
  auto s = make(Syntax::Kind::Pred);
  s.name = head;
  for (std::size_t i = 1; i < e.items.size(); ++i)
    s.terms.push_back(parse_term(e.items[i]));
  return s;
}

Syntax parse_syntax(std::string_view text) {
  return parse_syntax(parse_sexpr(text));
}

} // namespace tsynth::golog
