#include "tsynth/mtl/semantics.hpp"

#include "tsynth/core/errors.hpp"

#include <map>

namespace tsynth::mtl {

void validate_word(const TimedWord &word) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i == 0 && word[0].time != 0)
      throw InputError("timed word must start at time 0");
    if (i > 0 && word[i].time < word[i - 1].time)
      throw InputError("timed word times must be non-decreasing");
  }
}

namespace {

class Evaluator {
public:
  explicit Evaluator(const TimedWord &word) : word_(word) {}

  bool eval(std::size_t i, const Formula &f) {
    auto key = std::make_pair(f.identity(), i);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    bool v = compute(i, f);
    memo_.emplace(key, v);
    return v;
  }

private:
  const TimedWord &word_;
  std::map<std::pair<const void *, std::size_t>, bool> memo_;

  bool compute(std::size_t i, const Formula &f) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return word_[i].symbols.count(f.name()) != 0;
    case K::Not: return !eval(i, f.children()[0]);
    case K::And:
      for (const auto &c : f.children())
        if (!eval(i, c))
          return false;
      return true;
    case K::Or:
      for (const auto &c : f.children())
        if (eval(i, c))
          return true;
      return false;
    case K::Until:
      // exists j > i with rhs at j, time in interval, lhs strictly between
      for (std::size_t j = i + 1; j < word_.size(); ++j) {
        if (f.interval().contains(word_[j].time - word_[i].time) &&
            eval(j, f.rhs()))
          return true;
        if (!eval(j, f.lhs()))
          return false;
      }
      return false;
    case K::DualUntil:
      // not ((not lhs) U_I (not rhs))
      for (std::size_t j = i + 1; j < word_.size(); ++j) {
        if (f.interval().contains(word_[j].time - word_[i].time) &&
            !eval(j, f.rhs()))
          return false;
        if (eval(j, f.lhs()))
          return true;
      }
      return true;
    }
    throw ContractError("unreachable formula kind");
  }
};

} // namespace

bool satisfies(const TimedWord &word, std::size_t position, const Formula &f) {
  if (position >= word.size())
    throw ContractError("satisfies: position out of range");
  return Evaluator(word).eval(position, f);
}

} // namespace tsynth::mtl
