#include "tsynth/core/sexpr.hpp"

#include "tsynth/core/errors.hpp"

#include <cctype>

namespace tsynth {

namespace {

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  Sexpr read_all() {
    auto e = read();
    skip_space();
    if (pos_ != text_.size())
      fail("trailing input");
    return e;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string &what) const {
    throw InputError("s-expression: " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          ++pos_;
      } else {
        break;
      }
    }
  }

  // "[a,b]" or "(a,b)" style interval literal starting at pos_.
  bool interval_ahead() const {
    char c = text_[pos_];
    if (c == '[')
      return true;
    if (c != '(')
      return false;
    std::size_t p = pos_ + 1;
    while (p < text_.size() && text_[p] == ' ')
      ++p;
    if (p >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[p])))
      return false;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p])))
      ++p;
    while (p < text_.size() && text_[p] == ' ')
      ++p;
    return p < text_.size() && text_[p] == ',';
  }

  Sexpr read() {
    skip_space();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    if (interval_ahead()) {
      auto start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ']' && text_[pos_] != ')')
        ++pos_;
      if (pos_ >= text_.size())
        fail("unterminated interval");
      ++pos_;
      Sexpr e;
      e.atom = std::string(text_.substr(start, pos_ - start));
      return e;
    }
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Sexpr e;
      e.is_list = true;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size())
          fail("missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == ')')
      fail("unexpected ')'");
    auto start = pos_;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    Sexpr e;
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }
};

} // namespace

Sexpr parse_sexpr(std::string_view text) { return Reader(text).read_all(); }

std::string Sexpr::str() const {
  if (!is_list)
    return atom;
  std::string s = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i)
      s += " ";
    s += items[i].str();
  }
  return s + ")";
}

} // namespace tsynth
