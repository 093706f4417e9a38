#include "tsynth/golog/bat.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>
#include <numeric>

namespace tsynth::golog {

using nlohmann::json;

bool glob_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*')
    ++p;
  return p == pattern.size();
}

namespace {

std::string apply_text(const std::string &name,
                       const std::vector<std::string> &args) {
  if (args.empty())
    return name;
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i)
      s += ",";
    s += args[i];
  }
  return s + ")";
}

// Calls fn for every tuple of the cartesian product.
void for_each_tuple(const std::vector<const std::vector<std::string> *> &domains,
                    const std::function<void(const std::vector<std::string> &)> &fn) {
  std::vector<std::string> tuple(domains.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == domains.size()) {
      fn(tuple);
      return;
    }
    for (const auto &v : *domains[i]) {
      tuple[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

const json &require(const json &j, const char *key, const char *what) {
  if (!j.contains(key))
    throw InputError(std::string(what) + " is missing '" + key + "'");
  return j.at(key);
}

Syntax formula_field(const json &j, const char *key, const char *fallback) {
  if (!j.contains(key))
    return parse_syntax(fallback);
  if (!j.at(key).is_string())
    throw InputError(std::string("'") + key + "' must be an s-expression string");
  return parse_syntax(j.at(key).get<std::string>());
}

void collect_constants(const Syntax &s, std::vector<Rational> &out) {
  if (s.kind == Syntax::Kind::Cmp || s.kind == Syntax::Kind::ConstCmp) {
    out.push_back(s.constant);
    if (s.kind == Syntax::Kind::ConstCmp)
      out.push_back(s.lhs_constant);
  }
  for (const auto &c : s.children)
    collect_constants(c, out);
}

} // namespace

void Bat::declare_sort(const std::string &name,
                       std::vector<std::string> domain) {
  for (const auto &v : domain) {
    if (v == kNone)
      throw InputError("'" + kNone + "' is reserved and cannot be declared");
    auto [it, fresh] = constant_sort_.emplace(v, name);
    if (!fresh && it->second != name)
      throw InputError("constant '" + v + "' declared in sorts '" + it->second +
                       "' and '" + name + "'");
  }
  auto &d = sorts_[name];
  d.insert(d.end(), domain.begin(), domain.end());
}

const std::vector<std::string> &Bat::domain(const std::string &sort) const {
  auto it = sorts_.find(sort);
  if (it == sorts_.end())
    throw InputError("undeclared sort '" + sort + "'");
  return it->second;
}

void Bat::enumerate_constructed_sorts() {
  // A sort is complete once every constructor producing it has been applied.
  std::map<std::string, int> pending;
  for (const auto &f : functions_)
    if (!f.interpreted)
      ++pending[f.sort];
  std::vector<bool> done(functions_.size(), false);
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (functions_[i].interpreted)
      done[i] = true;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < functions_.size(); ++i) {
      if (done[i])
        continue;
      const auto &f = functions_[i];
      bool ready = std::all_of(f.args.begin(), f.args.end(), [&](const auto &s) {
        return pending[s] == 0;
      });
      if (!ready)
        continue;
      std::vector<const std::vector<std::string> *> doms;
      for (const auto &s : f.args)
        doms.push_back(&domain(s));
      std::vector<std::string> values;
      for_each_tuple(doms, [&](const auto &t) { values.push_back(apply_text(f.name, t)); });
      declare_sort(f.sort, std::move(values));
      done[i] = true;
      --pending[f.sort];
      progress = true;
    }
  }
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (!done[i])
      throw InputError("constructor '" + functions_[i].name +
                       "' is part of a recursive sort definition");
}

void Bat::build_atoms() {
  for (std::size_t fi = 0; fi < fluents_.size(); ++fi) {
    const auto &f = fluents_[fi];
    std::vector<const std::vector<std::string> *> doms;
    for (const auto &s : f.args)
      doms.push_back(&domain(s));
    for_each_tuple(doms, [&](const std::vector<std::string> &args) {
      auto text = apply_text(f.name, args);
      if (!f.range) {
        atom_index_[text] = static_cast<int>(atoms_.size());
        atoms_.push_back({text, static_cast<int>(fi), -1, "", args});
        return;
      }
      FunctionalTerm term{text, static_cast<int>(fi), domain(*f.range), {}};
      term.values.push_back(kNone);
      auto tid = static_cast<int>(terms_.size());
      for (const auto &v : term.values) {
        auto name = text + "=" + v;
        term.value_atoms.push_back(static_cast<int>(atoms_.size()));
        atom_index_[name] = static_cast<int>(atoms_.size());
        atoms_.push_back({name, static_cast<int>(fi), tid, v, args});
      }
      term_index_[text] = tid;
      terms_.push_back(std::move(term));
    });
  }
}

std::string Bat::apply_table(const FunctionDecl &fn,
                             const std::string &arg_text) const {
  for (const auto &[pattern, value] : fn.cases)
    if (glob_match(pattern, arg_text))
      return value;
  return {};
}

std::vector<Bat::Alternative> Bat::ground_term(const Term &t,
                                               const Scope &scope) const {
  if (t.args.empty()) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->var == t.name)
        return {{Ground::truth(), it->value}};
  }
  if (auto fl = fluent_index_.find(t.name); fl != fluent_index_.end()) {
    const auto &decl = fluents_[fl->second];
    if (!decl.range)
      throw InputError("relational fluent '" + t.name + "' used as a term");
    if (decl.args.size() != t.args.size())
      throw InputError("wrong arity for '" + t.name + "' in " + t.str());
    std::vector<std::vector<Alternative>> arg_alts;
    for (const auto &a : t.args)
      arg_alts.push_back(ground_term(a, scope));
    std::vector<Alternative> out;
    std::vector<std::string> vals(t.args.size());
    std::function<void(std::size_t, std::vector<Ground>)> rec =
        [&](std::size_t i, std::vector<Ground> conds) {
          if (i == t.args.size()) {
            auto it = term_index_.find(apply_text(t.name, vals));
            if (it == term_index_.end())
              return;
            const auto &term = terms_[it->second];
            for (std::size_t k = 0; k < term.values.size(); ++k) {
              auto c = conds;
              c.push_back(Ground::atom(term.value_atoms[k]));
              out.push_back({Ground::conj(std::move(c)), term.values[k]});
            }
            return;
          }
          for (const auto &alt : arg_alts[i]) {
            vals[i] = alt.value;
            auto c = conds;
            c.push_back(alt.condition);
            rec(i + 1, std::move(c));
          }
        };
    rec(0, {});
    return out;
  }
  if (auto fn = function_index_.find(t.name); fn != function_index_.end()) {
    const auto &decl = functions_[fn->second];
    if (decl.args.size() != t.args.size())
      throw InputError("wrong arity for '" + t.name + "' in " + t.str());
    std::vector<std::vector<Alternative>> arg_alts;
    for (const auto &a : t.args)
      arg_alts.push_back(ground_term(a, scope));
    std::vector<Alternative> out;
    std::vector<std::string> vals(t.args.size());
    std::function<void(std::size_t, std::vector<Ground>)> rec =
        [&](std::size_t i, std::vector<Ground> conds) {
          if (i == t.args.size()) {
            std::string value;
            if (decl.interpreted) {
              std::string arg_text;
              for (std::size_t k = 0; k < vals.size(); ++k)
                arg_text += (k ? "," : "") + vals[k];
              value = apply_table(decl, arg_text);
            } else {
              value = apply_text(t.name, vals);
            }
            out.push_back({Ground::conj(std::move(conds)), value});
            return;
          }
          for (const auto &alt : arg_alts[i]) {
            vals[i] = alt.value;
            auto c = conds;
            c.push_back(alt.condition);
            rec(i + 1, std::move(c));
          }
        };
    rec(0, {});
    return out;
  }
  if (!t.args.empty())
    throw InputError("undeclared function '" + t.name + "' in " + t.str());
  if (t.name == kNone || constant_sort_.count(t.name) ||
      std::find(clocks_.begin(), clocks_.end(), t.name) != clocks_.end())
    return {{Ground::truth(), t.name}};
  throw InputError("undeclared symbol '" + t.name + "'");
}

std::optional<std::string> Bat::sort_of(const Term &t) const {
  if (auto fl = fluent_index_.find(t.name); fl != fluent_index_.end())
    return fluents_[fl->second].range;
  if (auto fn = function_index_.find(t.name); fn != function_index_.end())
    return functions_[fn->second].sort;
  if (t.args.empty()) {
    if (auto c = constant_sort_.find(t.name); c != constant_sort_.end())
      return c->second;
    if (std::find(clocks_.begin(), clocks_.end(), t.name) != clocks_.end())
      return std::string("clock");
  }
  return std::nullopt;
}

std::optional<std::string> Bat::infer_in_term(const std::string &var,
                                              const Term &t) const {
  const std::vector<std::string> *arg_sorts = nullptr;
  if (auto fl = fluent_index_.find(t.name); fl != fluent_index_.end())
    arg_sorts = &fluents_[fl->second].args;
  else if (auto fn = function_index_.find(t.name); fn != function_index_.end())
    arg_sorts = &functions_[fn->second].args;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    const auto &a = t.args[i];
    if (a.args.empty() && a.name == var && arg_sorts && i < arg_sorts->size())
      return (*arg_sorts)[i];
    if (auto s = infer_in_term(var, a))
      return s;
  }
  return std::nullopt;
}

std::optional<std::string> Bat::infer_in(const std::string &var,
                                         const Syntax &f) const {
  using K = Syntax::Kind;
  switch (f.kind) {
  case K::Pred: {
    Term as_term{f.name, f.terms};
    return infer_in_term(var, as_term);
  }
  case K::Eq: {
    const auto &l = f.terms[0];
    const auto &r = f.terms[1];
    if (l.args.empty() && l.name == var)
      if (auto s = sort_of(r))
        return s;
    if (r.args.empty() && r.name == var)
      if (auto s = sort_of(l))
        return s;
    if (auto s = infer_in_term(var, l))
      return s;
    return infer_in_term(var, r);
  }
  case K::Cmp:
    if (f.terms[0].args.empty() && f.terms[0].name == var)
      return std::string("clock");
    return infer_in_term(var, f.terms[0]);
  case K::Forall:
  case K::Exists:
    if (f.name == var)
      return std::nullopt;
    [[fallthrough]];
  default:
    for (const auto &c : f.children)
      if (auto s = infer_in(var, c))
        return s;
    return std::nullopt;
  }
}

std::string Bat::infer_sort(const std::string &var, const Syntax &body) const {
  if (auto s = infer_in(var, body))
    return *s;
  throw InputError("cannot infer the sort of variable '" + var +
                   "'; write it as " + var + ":sort");
}

Ground Bat::ground_in(const Syntax &f, Scope &scope) const {
  using K = Syntax::Kind;
  switch (f.kind) {
  case K::True: return Ground::truth();
  case K::False: return Ground::falsity();
  case K::Pred: {
    auto fl = fluent_index_.find(f.name);
    if (fl == fluent_index_.end())
      throw InputError("undeclared predicate '" + f.name + "'");
    const auto &decl = fluents_[fl->second];
    if (decl.range)
      throw InputError("functional fluent '" + f.name + "' used as a formula");
    if (decl.args.size() != f.terms.size())
      throw InputError("wrong arity for '" + f.name + "' in " + f.str());
    std::vector<std::vector<Alternative>> arg_alts;
    for (const auto &a : f.terms)
      arg_alts.push_back(ground_term(a, scope));
    std::vector<Ground> disjuncts;
    std::vector<std::string> vals(f.terms.size());
    std::function<void(std::size_t, std::vector<Ground>)> rec =
        [&](std::size_t i, std::vector<Ground> conds) {
          if (i == f.terms.size()) {
            auto it = atom_index_.find(apply_text(f.name, vals));
            if (it == atom_index_.end())
              return;
            conds.push_back(Ground::atom(it->second));
            disjuncts.push_back(Ground::conj(std::move(conds)));
            return;
          }
          for (const auto &alt : arg_alts[i]) {
            vals[i] = alt.value;
            auto c = conds;
            c.push_back(alt.condition);
            rec(i + 1, std::move(c));
          }
        };
    rec(0, {});
    return Ground::disj(std::move(disjuncts));
  }
  case K::Eq: {
    auto l = ground_term(f.terms[0], scope);
    auto r = ground_term(f.terms[1], scope);
    std::vector<Ground> disjuncts;
    for (const auto &a : l)
      for (const auto &b : r)
        if (a.value == b.value && !a.value.empty())
          disjuncts.push_back(Ground::conj({a.condition, b.condition}));
    return Ground::disj(std::move(disjuncts));
  }
  case K::Cmp: {
    auto alts = ground_term(f.terms[0], scope);
    std::vector<Ground> disjuncts;
    for (const auto &a : alts) {
      if (a.value.empty())
        continue;
      auto it = std::find(clocks_.begin(), clocks_.end(), a.value);
      if (it == clocks_.end())
        throw InputError("'" + a.value + "' is not a clock in " + f.str());
      disjuncts.push_back(Ground::conj(
          {a.condition, Ground::clock(static_cast<int>(it - clocks_.begin()),
                                      f.rel, f.constant * scale_)}));
    }
    return Ground::disj(std::move(disjuncts));
  }
  case K::ConstCmp:
    return Ground::constant(compare(f.lhs_constant * scale_, f.rel, f.constant * scale_));
  case K::Not: return Ground::negate(ground_in(f.children[0], scope));
  case K::And:
  case K::Or: {
    std::vector<Ground> parts;
    for (const auto &c : f.children)
      parts.push_back(ground_in(c, scope));
    return f.kind == K::And ? Ground::conj(std::move(parts))
                            : Ground::disj(std::move(parts));
  }
  case K::Forall:
  case K::Exists: {
    auto sort = f.sort.empty() ? infer_sort(f.name, f.children[0]) : f.sort;
    std::vector<Ground> parts;
    for (const auto &v : domain(sort)) {
      scope.push_back({f.name, v, sort});
      parts.push_back(ground_in(f.children[0], scope));
      scope.pop_back();
    }
    return f.kind == K::Forall ? Ground::conj(std::move(parts))
                               : Ground::disj(std::move(parts));
  }
  }
  throw ContractError("unreachable syntax kind");
}

Ground Bat::ground(const Syntax &formula, const Env &env) const {
  Scope scope = env;
  return ground_in(formula, scope);
}

Ground Bat::ground_text(std::string_view text, const Env &env) const {
  return ground(parse_syntax(text), env);
}

int Bat::action_id(const std::string &name) const {
  auto it = action_index_.find(name);
  if (it == action_index_.end())
    throw InputError("unknown action '" + name + "'");
  return it->second;
}

std::optional<int> Bat::find_action(const std::string &name) const {
  auto it = action_index_.find(name);
  if (it == action_index_.end())
    return std::nullopt;
  return it->second;
}

int Bat::atom_id(const std::string &name) const {
  auto it = atom_index_.find(name);
  return it == atom_index_.end() ? -1 : it->second;
}

int Bat::clock_id(const std::string &name) const {
  auto it = std::find(clocks_.begin(), clocks_.end(), name);
  if (it == clocks_.end())
    throw InputError("unknown clock '" + name + "'");
  return static_cast<int>(it - clocks_.begin());
}

std::string Bat::str(const Ground &g) const {
  return g.str([this](int id) { return atoms_.at(id).name; },
               [this](int id) { return clocks_.at(id); });
}

std::set<std::string> Bat::symbols(const WorldState &state) const {
  std::set<std::string> out;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (state.atoms[i])
      out.insert(atoms_[i].name);
  return out;
}

json Bat::state_to_json(const WorldState &state) const {
  json t = json::array();
  json values = json::object();
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!state.atoms[i])
      continue;
    if (atoms_[i].term < 0)
      t.push_back(atoms_[i].name);
    else
      values[terms_[atoms_[i].term].name] = atoms_[i].value;
  }
  json clocks = json::object();
  for (std::size_t c = 0; c < clocks_.size(); ++c)
    clocks[clocks_[c]] = to_string(state.clocks[c] / scale_);
  return {{"true", t}, {"values", values}, {"clocks", clocks}};
}

void Bat::compute_scale(const std::vector<const Syntax *> &formulas) {
  std::vector<Rational> constants;
  for (const auto *f : formulas)
    collect_constants(*f, constants);
  mpz_class l = 1;
  for (const auto &c : constants)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  scale_ = Rational(l);
}

void Bat::compile_actions(const json &j) {
  auto poss = formula_field(j, "poss", "true");
  auto guard = formula_field(j, "guard", "true");
  auto reset = formula_field(j, "reset", "false");
  struct Ssa {
    int fluent;
    std::vector<std::string> params;
    std::string value_var;
    Syntax formula;
  };
  std::vector<Ssa> ssas;
  if (j.contains("ssa")) {
    for (const auto &[name, body] : j.at("ssa").items()) {
      auto fl = fluent_index_.find(name);
      if (fl == fluent_index_.end())
        throw InputError("successor-state axiom for undeclared fluent '" + name + "'");
      Ssa s{fl->second, body.value("params", std::vector<std::string>{}),
            body.value("value", std::string("y")),
            parse_syntax(require(body, "formula", "ssa").get<std::string>())};
      if (s.params.size() != fluents_[s.fluent].args.size())
        throw InputError("ssa for '" + name + "' needs " +
                         std::to_string(fluents_[s.fluent].args.size()) + " params");
      ssas.push_back(std::move(s));
    }
  }
  std::vector<const Syntax *> all{&poss, &guard, &reset};
  for (const auto &s : ssas)
    all.push_back(&s.formula);
  compute_scale(all);

  const auto &acts = domain("action");
  for (const auto &a : acts) {
    ActionInfo info;
    info.name = a;
    Env env{{"a", a, "action"}};
    info.poss = ground(poss, env);
    info.guard = ground(guard, env);
    for (std::size_t c = 0; c < clocks_.size(); ++c) {
      Env renv{{"a", a, "action"}, {"c", clocks_[c], "clock"}};
      auto r = ground(reset, renv);
      if (!r.is_false())
        info.resets.emplace(static_cast<int>(c), r);
    }
    for (const auto &s : ssas) {
      const auto &decl = fluents_[s.fluent];
      for (std::size_t id = 0; id < atoms_.size(); ++id) {
        const auto &atom = atoms_[id];
        if (atom.fluent != s.fluent)
          continue;
        const auto &args = atom.args;
        Env fenv{{"a", a, "action"}};
        for (std::size_t k = 0; k < args.size(); ++k)
          fenv.push_back({s.params[k], args[k], decl.args[k]});
        if (decl.range)
          fenv.push_back({s.value_var, atom.value, *decl.range});
        auto rhs = ground(s.formula, fenv);
        if (!(rhs == Ground::atom(static_cast<int>(id))))
          info.effects.emplace(static_cast<int>(id), rhs);
      }
    }
    action_index_[a] = static_cast<int>(actions_.size());
    actions_.push_back(std::move(info));
  }
  std::vector<Rational> constants;
  for (const auto &act : actions_) {
    act.poss.collect_clock_constants(constants);
    act.guard.collect_clock_constants(constants);
  }
  for (const auto &c : constants) {
    if (!is_integer(c) || c < 0)
      throw ContractError("clock constant did not scale to a natural");
    max_constant_ = std::max(max_constant_, to_int64(c));
  }
}

void Bat::load_initial(const json &j) {
  const auto &init = require(j, "initial", "theory");
  initial_.atoms.assign(atoms_.size(), 0);
  initial_.clocks.assign(clocks_.size(), Rational(0));
  for (const auto &name : init.value("true", std::vector<std::string>{})) {
    int id = atom_id(name);
    if (id < 0 || atoms_[id].term >= 0)
      throw InputError("initial: unknown relational atom '" + name + "'");
    initial_.atoms[id] = 1;
  }
  auto values = init.value("values", json::object());
  for (const auto &term : terms_) {
    if (!values.contains(term.name))
      throw InputError("incomplete initial theory: no value for '" + term.name +
                       "'; the toolkit needs a single explicit initial state, "
                       "enumerate the models externally and run once per model");
    auto v = values.at(term.name).get<std::string>();
    auto it = std::find(term.values.begin(), term.values.end(), v);
    if (it == term.values.end())
      throw InputError("initial: '" + v + "' is not a value of '" + term.name + "'");
    initial_.atoms[term.value_atoms[it - term.values.begin()]] = 1;
  }
  for (const auto &[name, _] : values.items())
    if (!term_index_.count(name))
      throw InputError("initial: unknown functional term '" + name + "'");
  for (const auto &text : init.value("axioms", std::vector<std::string>{}))
    if (!holds(*this, initial_, text))
      throw InputError("initial state violates axiom " + text);
}

Bat Bat::from_json(const json &j) {
  try {
    Bat bat;
    bat.clocks_ = j.value("clocks", std::vector<std::string>{});
    const auto sorts = j.value("sorts", json::object());
    for (const auto &[name, dom] : sorts.items()) {
      if (name == "action" || name == "clock")
        throw InputError("sort '" + name + "' is built in");
      bat.declare_sort(name, dom.get<std::vector<std::string>>());
    }
    bat.sorts_.emplace("action", std::vector<std::string>{});
    for (const auto &c : bat.clocks_)
      bat.constant_sort_.emplace(c, "clock");
    bat.sorts_["clock"] = bat.clocks_;
    for (const auto &f : j.value("functions", json::array())) {
      FunctionDecl d;
      d.name = require(f, "name", "function").get<std::string>();
      d.args = f.value("args", std::vector<std::string>{});
      d.sort = require(f, "sort", "function").get<std::string>();
      if (f.contains("cases")) {
        d.interpreted = true;
        for (const auto &c : f.at("cases"))
          d.cases.emplace_back(c.at(0).get<std::string>(), c.at(1).get<std::string>());
      }
      if (bat.function_index_.count(d.name))
        throw InputError("function '" + d.name + "' declared twice");
      bat.function_index_[d.name] = static_cast<int>(bat.functions_.size());
      bat.functions_.push_back(std::move(d));
    }
    bat.enumerate_constructed_sorts();
    for (const auto &f : j.value("fluents", json::array())) {
      FluentDecl d;
      d.name = require(f, "name", "fluent").get<std::string>();
      d.args = f.value("args", std::vector<std::string>{});
      if (f.contains("range"))
        d.range = f.at("range").get<std::string>();
      for (const auto &s : d.args)
        bat.domain(s);
      if (d.range)
        bat.domain(*d.range);
      if (bat.fluent_index_.count(d.name) || bat.function_index_.count(d.name))
        throw InputError("symbol '" + d.name + "' declared twice");
      bat.fluent_index_[d.name] = static_cast<int>(bat.fluents_.size());
      bat.fluents_.push_back(std::move(d));
    }
    bat.build_atoms();
    bat.compile_actions(j);
    bat.load_initial(j);
    // Exhaustive uniqueness check of functional SSAs from the initial state.
    for (std::size_t a = 0; a < bat.actions_.size(); ++a)
      progress(bat, bat.initial_, static_cast<int>(a));
    return bat;
  } catch (const json::exception &e) {
    throw InputError(std::string("theory JSON: ") + e.what());
  }
}

bool holds(const Bat &, const WorldState &state, const Ground &formula) {
  return formula.eval(state.atoms, state.clocks);
}

bool holds(const Bat &bat, const WorldState &state, std::string_view formula) {
  return holds(bat, state, bat.ground_text(formula));
}

WorldState progress(const Bat &bat, const WorldState &state, int action) {
  const auto &info = bat.actions().at(static_cast<std::size_t>(action));
  WorldState next = state;
  for (const auto &[id, rhs] : info.effects)
    next.atoms[id] = rhs.eval(state.atoms, state.clocks) ? 1 : 0;
  for (const auto &term : bat.functional_terms()) {
    int count = 0;
    for (int id : term.value_atoms)
      count += next.atoms[id];
    if (count != 1)
      throw ModelError("successor-state axiom gives " + std::to_string(count) +
                       " values to '" + term.name + "' after " + info.name);
  }
  for (const auto &[clock, cond] : info.resets)
    if (cond.eval(state.atoms, state.clocks))
      next.clocks[clock] = 0;
  return next;
}

WorldState elapse(const WorldState &state, const Rational &delay) {
  if (delay < 0)
    throw ContractError("negative delay");
  WorldState next = state;
  for (auto &c : next.clocks)
    c += delay;
  return next;
}

} // namespace tsynth::golog
