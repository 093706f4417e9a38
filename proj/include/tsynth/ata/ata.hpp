#pragma once

#include "tsynth/core/clock.hpp"
#include "tsynth/core/rational.hpp"
#include "tsynth/mtl/formula.hpp"
#include "tsynth/mtl/word.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tsynth::ata {

// Location formula over a single implicit clock x.
class LocFormula {
public:
  enum class Kind { True, False, And, Or, Loc, Clock, Reset };

  static LocFormula truth();
  static LocFormula falsity();
  static LocFormula loc(int location);
  static LocFormula clock(Rel rel, std::int64_t constant);
  static LocFormula reset(LocFormula body);
  // Both fold constants.
  static LocFormula conj(std::vector<LocFormula> parts);
  static LocFormula disj(std::vector<LocFormula> parts);
  static LocFormula in_interval(const Interval &interval);
  static LocFormula not_in_interval(const Interval &interval);

  Kind kind() const { return node_->kind; }
  int location() const { return node_->location; }
  Rel rel() const { return node_->rel; }
  std::int64_t constant() const { return node_->constant; }
  const std::vector<LocFormula> &children() const { return node_->children; }

  std::string str(const std::vector<std::string> &names) const;

private:
  struct Node {
    Kind kind = Kind::True;
    int location = -1;
    Rel rel = Rel::Le;
    std::int64_t constant = 0;
    std::vector<LocFormula> children;
  };
  static Node node_of(Kind kind);
  explicit LocFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// One DNF clause: locations kept at the current value, locations entered
// with a reset clock, and clock atoms tested against the current value.
struct Clause {
  std::vector<int> locs;
  std::vector<int> reset_locs;
  std::vector<std::pair<Rel, std::int64_t>> atoms;
  auto operator<=>(const Clause &) const = default;
};
using Dnf = std::vector<Clause>;

Dnf to_dnf(const LocFormula &f);

struct AtaState {
  int loc = 0;
  Rational value;
  auto operator<=>(const AtaState &o) const {
    if (auto c = loc <=> o.loc; c != 0)
      return c;
    return cmp(value, o.value) <=> 0;
  }
  bool operator==(const AtaState &o) const {
    return loc == o.loc && value == o.value;
  }
};

// Sorted and duplicate-free.
using Configuration = std::vector<AtaState>;

void canonicalize(Configuration &c);
bool is_subset(const Configuration &small, const Configuration &big);
// Removes duplicates and every configuration that strictly contains another.
void keep_minimal(std::vector<Configuration> &configs);

class Ata;
// True when every word accepted from `strong` is accepted from `weak`,
// judged state by state through the drift of each location.
bool covers(const Configuration &weak, const Configuration &strong,
            const Ata &ata);
// Like keep_minimal, but drops every configuration covered by another.
void keep_weakest(std::vector<Configuration> &configs, const Ata &ata);

class Ata {
public:
  using Symbol = std::uint64_t; // bitmask over atoms()
  using EtaFn = std::function<LocFormula(int, Symbol)>;

  Ata(std::vector<std::string> locations, int initial,
      std::vector<bool> accepting, std::vector<std::string> atoms, EtaFn eta,
      std::int64_t max_constant);

  const std::vector<std::string> &locations() const { return locations_; }
  int initial() const { return initial_; }
  bool is_accepting(int loc) const { return accepting_.at(loc); }
  const std::vector<std::string> &atoms() const { return atoms_; }
  std::int64_t max_constant() const { return max_constant_; }
  int location_id(const std::string &name) const;

  LocFormula eta(int loc, Symbol symbol) const { return eta_(loc, symbol); }
  // Memoized DNF of eta; thread-safe.
  std::shared_ptr<const Dnf> eta_dnf(int loc, Symbol symbol) const;

  // A copy of `loc` whose value exceeds `after` is equivalent to the
  // constant `verdict`: an until past its interval can never be
  // discharged, a dual until past its interval holds forever.
  void set_expiry(int loc, std::int64_t after, bool verdict);
  // nullopt while the copy is still live.
  std::optional<bool> expired(const AtaState &state) const;

  // How the language of a copy changes as its clock value grows.
  enum class Drift { Fixed, Shrinks, Grows };
  void set_drift(int loc, Drift drift) { drift_.at(loc) = drift; }
  Drift drift(int loc) const { return drift_.at(loc); }

  // Atoms outside the universe are ignored.
  Symbol symbol_of(const std::set<std::string> &symbols) const;
  int atom_index(const std::string &atom) const;

private:
  std::vector<std::string> locations_;
  int initial_;
  std::vector<bool> accepting_;
  std::vector<std::string> atoms_;
  EtaFn eta_;
  std::int64_t max_constant_;
  struct Expiry {
    std::int64_t after;
    bool verdict;
  };
  std::vector<std::optional<Expiry>> expiry_;
  std::vector<Drift> drift_;
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<int, Symbol>, std::shared_ptr<const Dnf>> entries;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Locations: the initial copy of the formula followed by its closure.
Ata ata_from_mtl(const mtl::Formula &phi);

std::vector<Configuration> minimal_models(const Dnf &dnf, const Rational &value);
std::vector<Configuration> minimal_models(const LocFormula &f,
                                          const Rational &value);
std::vector<Configuration> symbol_step(const Configuration &config,
                                       Ata::Symbol symbol, const Ata &ata);
Configuration time_step(const Configuration &config, const Rational &delay);
bool is_accepting(const Configuration &config, const Ata &ata);
bool accepts(const Ata &ata, const mtl::TimedWord &word);
// Reads `word` from a set of configurations reached at time `start`.
bool accepts_from(const Ata &ata, std::vector<Configuration> current,
                  const mtl::TimedWord &word, const Rational &start);

std::string to_string(const Configuration &config, const Ata &ata);

} // namespace tsynth::ata
