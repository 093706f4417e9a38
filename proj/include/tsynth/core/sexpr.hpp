#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tsynth {

// Minimal s-expression tree. Interval literals such as "[0,2]" or "(1,inf)"
// are read as single atoms.
struct Sexpr {
  std::string atom;
  std::vector<Sexpr> items;
  bool is_list = false;

  bool is_atom() const { return !is_list; }
  bool head_is(std::string_view name) const {
    return is_list && !items.empty() && items[0].is_atom() &&
           items[0].atom == name;
  }
  std::string str() const;
};

// Throws InputError with the offending position.
Sexpr parse_sexpr(std::string_view text);

} // namespace tsynth
