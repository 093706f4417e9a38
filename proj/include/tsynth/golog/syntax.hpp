#pragma once

#include "tsynth/core/clock.hpp"
#include "tsynth/core/rational.hpp"
#include "tsynth/core/sexpr.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tsynth::golog {

// Symbol application; a bare name is an application without arguments and is
// resolved to a variable, constant, fluent or function during grounding.
struct Term {
  std::string name;
  std::vector<Term> args;

  std::string str() const;
};

// Static formula as written by the user.
struct Syntax {
  enum class Kind {
    True, False, Pred, Eq, Cmp, ConstCmp, Not, And, Or, Forall, Exists
  };
  Kind kind = Kind::True;
  std::string name;          // predicate name or quantified variable
  std::string sort;          // quantifier sort, empty when inferred
  std::vector<Term> terms;   // Pred arguments, Eq operands, Cmp operand
  Rel rel = Rel::Eq;         // Cmp / ConstCmp
  Rational lhs_constant;     // ConstCmp
  Rational constant;         // Cmp / ConstCmp right-hand side
  std::vector<Syntax> children;

  std::string str() const;
};

// Grammar: true | false | (not f) | (and f*) | (or f*) | (implies f g)
// | (iff f g) | (exists v f) | (exists v:sort f) | (exists (v1 v2:sort) f)
// | (forall ...) | (= t t) | (rel t number) | (rel number number) | (P t*) | P
Syntax parse_syntax(const Sexpr &e);
Syntax parse_syntax(std::string_view text);

} // namespace tsynth::golog
