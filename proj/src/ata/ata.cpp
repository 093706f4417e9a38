#include "tsynth/ata/ata.hpp"

#include "tsynth/core/errors.hpp"

#include <algorithm>

namespace tsynth::ata {

LocFormula::Node LocFormula::node_of(Kind kind) {
  Node n;
  n.kind = kind;
  return n;
}

LocFormula LocFormula::truth() {
  return LocFormula(std::make_shared<Node>(node_of(Kind::True)));
}
LocFormula LocFormula::falsity() {
  return LocFormula(std::make_shared<Node>(node_of(Kind::False)));
}
LocFormula LocFormula::loc(int location) {
  Node n = node_of(Kind::Loc);
  n.location = location;
  return LocFormula(std::make_shared<Node>(std::move(n)));
}
LocFormula LocFormula::clock(Rel rel, std::int64_t constant) {
  Node n = node_of(Kind::Clock);
  n.rel = rel;
  n.constant = constant;
  return LocFormula(std::make_shared<Node>(std::move(n)));
}
LocFormula LocFormula::reset(LocFormula body) {
  if (body.kind() == Kind::True || body.kind() == Kind::False)
    return body;
  Node n = node_of(Kind::Reset);
  n.children.push_back(std::move(body));
  return LocFormula(std::make_shared<Node>(std::move(n)));
}

LocFormula LocFormula::conj(std::vector<LocFormula> parts) {
  std::vector<LocFormula> kept;
  for (auto &p : parts) {
    if (p.kind() == Kind::False)
      return falsity();
    if (p.kind() != Kind::True)
      kept.push_back(std::move(p));
  }
  if (kept.empty())
    return truth();
  if (kept.size() == 1)
    return kept[0];
  Node n = node_of(Kind::And);
  n.children = std::move(kept);
  return LocFormula(std::make_shared<Node>(std::move(n)));
}

LocFormula LocFormula::disj(std::vector<LocFormula> parts) {
  std::vector<LocFormula> kept;
  for (auto &p : parts) {
    if (p.kind() == Kind::True)
      return truth();
    if (p.kind() != Kind::False)
      kept.push_back(std::move(p));
  }
  if (kept.empty())
    return falsity();
  if (kept.size() == 1)
    return kept[0];
  Node n = node_of(Kind::Or);
  n.children = std::move(kept);
  return LocFormula(std::make_shared<Node>(std::move(n)));
}

LocFormula LocFormula::in_interval(const Interval &i) {
  if (i.is_empty())
    return falsity();
  std::vector<LocFormula> parts;
  if (i.lo_open)
    parts.push_back(clock(Rel::Gt, i.lo));
  else if (i.lo > 0)
    parts.push_back(clock(Rel::Ge, i.lo));
  if (i.hi)
    parts.push_back(clock(i.hi_open ? Rel::Lt : Rel::Le, *i.hi));
  return conj(std::move(parts));
}

LocFormula LocFormula::not_in_interval(const Interval &i) {
  if (i.is_empty())
    return truth();
  std::vector<LocFormula> parts;
  if (i.lo_open)
    parts.push_back(clock(Rel::Le, i.lo));
  else if (i.lo > 0)
    parts.push_back(clock(Rel::Lt, i.lo));
  if (i.hi)
    parts.push_back(clock(i.hi_open ? Rel::Ge : Rel::Gt, *i.hi));
  return disj(std::move(parts));
}

std::string LocFormula::str(const std::vector<std::string> &names) const {
  switch (kind()) {
  case Kind::True: return "true";
  case Kind::False: return "false";
  case Kind::Loc: return names.at(location());
  case Kind::Clock:
    return "(" + to_string(rel()) + " x " + std::to_string(constant()) + ")";
  case Kind::Reset: return "(x. " + children()[0].str(names) + ")";
  case Kind::And:
  case Kind::Or: {
    std::string s = kind() == Kind::And ? "(and" : "(or";
    for (const auto &c : children())
      s += " " + c.str(names);
    return s + ")";
  }
  }
  return "?";
}

namespace {

void sort_unique(std::vector<int> &v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Clause merge(const Clause &a, const Clause &b) {
  Clause c = a;
  c.locs.insert(c.locs.end(), b.locs.begin(), b.locs.end());
  c.reset_locs.insert(c.reset_locs.end(), b.reset_locs.begin(),
                      b.reset_locs.end());
  c.atoms.insert(c.atoms.end(), b.atoms.begin(), b.atoms.end());
  sort_unique(c.locs);
  sort_unique(c.reset_locs);
  std::sort(c.atoms.begin(), c.atoms.end());
  c.atoms.erase(std::unique(c.atoms.begin(), c.atoms.end()), c.atoms.end());
  return c;
}

void dedupe(Dnf &d) {
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
}

// `under_reset`: inside x.(...), where the clock reads 0.
Dnf dnf(const LocFormula &f, bool under_reset) {
  using K = LocFormula::Kind;
  switch (f.kind()) {
  case K::True: return {Clause{}};
  case K::False: return {};
  case K::Loc: {
    Clause c;
    (under_reset ? c.reset_locs : c.locs).push_back(f.location());
    return {c};
  }
  case K::Clock:
    if (under_reset)
      return compare(0, f.rel(), Rational(f.constant())) ? Dnf{Clause{}}
                                                         : Dnf{};
    return {Clause{{}, {}, {{f.rel(), f.constant()}}}};
  case K::Reset: return dnf(f.children()[0], true);
  case K::Or: {
    Dnf out;
    for (const auto &c : f.children()) {
      auto d = dnf(c, under_reset);
      out.insert(out.end(), d.begin(), d.end());
    }
    dedupe(out);
    return out;
  }
  case K::And: {
    Dnf out{Clause{}};
    for (const auto &c : f.children()) {
      auto d = dnf(c, under_reset);
      Dnf next;
      for (const auto &x : out)
        for (const auto &y : d)
          next.push_back(merge(x, y));
      dedupe(next);
      out = std::move(next);
      if (out.empty())
        break;
    }
    return out;
  }
  }
  throw ContractError("unreachable location formula kind");
}

} // namespace

Dnf to_dnf(const LocFormula &f) { return dnf(f, false); }

void canonicalize(Configuration &c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
}

bool is_subset(const Configuration &small, const Configuration &big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void keep_minimal(std::vector<Configuration> &configs) {
  std::sort(configs.begin(), configs.end(),
            [](const Configuration &a, const Configuration &b) {
              if (a.size() != b.size())
                return a.size() < b.size();
              return a < b;
            });
  configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
  std::vector<Configuration> kept;
  for (auto &c : configs) {
    bool dominated = false;
    for (const auto &k : kept)
      if (k.size() < c.size() && is_subset(k, c)) {
        dominated = true;
        break;
      }
    if (!dominated)
      kept.push_back(std::move(c));
  }
  configs = std::move(kept);
}

bool covers(const Configuration &weak, const Configuration &strong,
            const Ata &ata) {
  return std::all_of(weak.begin(), weak.end(), [&](const AtaState &w) {
    auto first = std::lower_bound(strong.begin(), strong.end(),
                                  AtaState{w.loc, Rational(0)});
    for (auto it = first; it != strong.end() && it->loc == w.loc; ++it) {
      switch (ata.drift(w.loc)) {
      case Ata::Drift::Fixed:
        if (it->value == w.value)
          return true;
        break;
      case Ata::Drift::Shrinks:
        if (it->value >= w.value)
          return true;
        break;
      case Ata::Drift::Grows:
        if (it->value <= w.value)
          return true;
        break;
      }
    }
    return false;
  });
}

void keep_weakest(std::vector<Configuration> &configs, const Ata &ata) {
  keep_minimal(configs);
  std::vector<Configuration> kept;
  for (auto &c : configs) {
    if (std::any_of(kept.begin(), kept.end(),
                    [&](const Configuration &k) { return covers(k, c, ata); }))
      continue;
    std::erase_if(kept, [&](const Configuration &k) { return covers(c, k, ata); });
    kept.push_back(std::move(c));
  }
  configs = std::move(kept);
}

Ata::Ata(std::vector<std::string> locations, int initial,
         std::vector<bool> accepting, std::vector<std::string> atoms, EtaFn eta,
         std::int64_t max_constant)
    : locations_(std::move(locations)), initial_(initial),
      accepting_(std::move(accepting)), atoms_(std::move(atoms)),
      eta_(std::move(eta)), max_constant_(max_constant) {
  if (atoms_.size() > 64)
    throw InputError("at most 64 atoms are supported per automaton");
  if (accepting_.size() != locations_.size())
    throw ContractError("accepting flags must cover every location");
  if (initial_ < 0 || initial_ >= static_cast<int>(locations_.size()))
    throw ContractError("initial location out of range");
  expiry_.resize(locations_.size());
  drift_.assign(locations_.size(), Drift::Fixed);
}

void Ata::set_expiry(int loc, std::int64_t after, bool verdict) {
  expiry_.at(loc) = Expiry{after, verdict};
}

std::optional<bool> Ata::expired(const AtaState &state) const {
  const auto &e = expiry_.at(state.loc);
  if (!e || state.value <= e->after)
    return std::nullopt;
  return e->verdict;
}

int Ata::location_id(const std::string &name) const {
  auto it = std::find(locations_.begin(), locations_.end(), name);
  if (it == locations_.end())
    throw InputError("unknown ATA location '" + name + "'");
  return static_cast<int>(it - locations_.begin());
}

std::shared_ptr<const Dnf> Ata::eta_dnf(int loc, Symbol symbol) const {
  auto key = std::make_pair(loc, symbol);
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->entries.find(key); it != cache_->entries.end())
      return it->second;
  }
  auto d = std::make_shared<const Dnf>(to_dnf(eta(loc, symbol)));
  std::lock_guard lock(cache_->mutex);
  return cache_->entries.emplace(key, std::move(d)).first->second;
}

int Ata::atom_index(const std::string &atom) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  return it == atoms_.end() ? -1 : static_cast<int>(it - atoms_.begin());
}

Ata::Symbol Ata::symbol_of(const std::set<std::string> &symbols) const {
  Symbol s = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (symbols.count(atoms_[i]))
      s |= Symbol{1} << i;
  return s;
}

namespace {

LocFormula init(const mtl::Formula &f, Ata::Symbol symbol,
                const std::map<std::string, int> &loc_ids,
                const std::vector<std::string> &atoms) {
  using K = mtl::Formula::Kind;
  auto holds = [&](const std::string &name) {
    auto it = std::find(atoms.begin(), atoms.end(), name);
    auto idx = it - atoms.begin();
    return (symbol >> idx) & 1;
  };
  switch (f.kind()) {
  case K::True: return LocFormula::truth();
  case K::False: return LocFormula::falsity();
  case K::Atom: return holds(f.name()) ? LocFormula::truth() : LocFormula::falsity();
  case K::Not:
    if (f.children()[0].kind() != K::Atom)
      throw ContractError("ata_from_mtl: formula not in positive normal form");
    return holds(f.children()[0].name()) ? LocFormula::falsity()
                                         : LocFormula::truth();
  case K::And:
  case K::Or: {
    std::vector<LocFormula> parts;
    for (const auto &c : f.children())
      parts.push_back(init(c, symbol, loc_ids, atoms));
    return f.kind() == K::And ? LocFormula::conj(std::move(parts))
                              : LocFormula::disj(std::move(parts));
  }
  case K::Until:
  case K::DualUntil:
    return LocFormula::reset(LocFormula::loc(loc_ids.at(f.str())));
  }
  throw ContractError("unreachable formula kind");
}

} // namespace

Ata ata_from_mtl(const mtl::Formula &phi) {
  if (!mtl::is_pnf(phi))
    throw ContractError("ata_from_mtl: formula not in positive normal form");
  auto cl = mtl::closure(phi);
  std::vector<std::string> names{phi.str() + "^i"};
  std::vector<bool> accepting{false};
  std::map<std::string, int> ids;
  for (const auto &c : cl) {
    ids.emplace(c.str(), static_cast<int>(names.size()));
    names.push_back(c.str());
    accepting.push_back(c.kind() == mtl::Formula::Kind::DualUntil);
  }
  auto atoms = mtl::atoms_of(phi);
  auto eta = [phi, cl, ids, atoms](int loc, Ata::Symbol a) -> LocFormula {
    if (loc == 0)
      return init(phi, a, ids, atoms);
    const auto &psi = cl.at(static_cast<std::size_t>(loc - 1));
    auto self = LocFormula::loc(loc);
    auto l = init(psi.lhs(), a, ids, atoms);
    auto r = init(psi.rhs(), a, ids, atoms);
    if (psi.kind() == mtl::Formula::Kind::Until)
      return LocFormula::disj(
          {LocFormula::conj({r, LocFormula::in_interval(psi.interval())}),
           LocFormula::conj({l, self})});
    return LocFormula::conj(
        {LocFormula::disj({r, LocFormula::not_in_interval(psi.interval())}),
         LocFormula::disj({l, self})});
  };
  Ata ata(std::move(names), 0, std::move(accepting), std::move(atoms),
          std::move(eta), mtl::max_constant(phi));
  for (std::size_t i = 0; i < cl.size(); ++i) {
    const auto &interval = cl[i].interval();
    bool dual = cl[i].kind() == mtl::Formula::Kind::DualUntil;
    int loc = static_cast<int>(i + 1);
    if (interval.hi)
      ata.set_expiry(loc, *interval.hi, dual);
    // With a closed lower bound of 0 an older copy only has less time left.
    if (interval.lo == 0 && !interval.lo_open)
      ata.set_drift(loc, dual ? Ata::Drift::Grows : Ata::Drift::Shrinks);
  }
  return ata;
}

std::vector<Configuration> minimal_models(const Dnf &dnf,
                                          const Rational &value) {
  std::vector<Configuration> out;
  for (const auto &clause : dnf) {
    bool ok = true;
    for (const auto &[rel, c] : clause.atoms)
      if (!compare(value, rel, Rational(c))) {
        ok = false;
        break;
      }
    if (!ok)
      continue;
    Configuration m;
    for (int l : clause.locs)
      m.push_back({l, value});
    for (int l : clause.reset_locs)
      m.push_back({l, Rational(0)});
    canonicalize(m);
    out.push_back(std::move(m));
  }
  keep_minimal(out);
  return out;
}

std::vector<Configuration> minimal_models(const LocFormula &f,
                                          const Rational &value) {
  return minimal_models(to_dnf(f), value);
}

std::vector<Configuration> symbol_step(const Configuration &config,
                                       Ata::Symbol symbol, const Ata &ata) {
  std::vector<Configuration> acc{Configuration{}};
  for (const auto &state : config) {
    if (auto v = ata.expired(state)) {
      if (*v)
        continue;
      return {};
    }
    auto models = minimal_models(*ata.eta_dnf(state.loc, symbol), state.value);
    if (models.empty())
      return {};
    std::vector<Configuration> next;
    next.reserve(acc.size() * models.size());
    for (const auto &a : acc)
      for (const auto &m : models) {
        Configuration u;
        u.reserve(a.size() + m.size());
        std::set_union(a.begin(), a.end(), m.begin(), m.end(),
                       std::back_inserter(u));
        next.push_back(std::move(u));
      }
    keep_minimal(next);
    acc = std::move(next);
  }
  // Copies kept at their current value may have expired already.
  std::vector<Configuration> out;
  for (auto &c : acc) {
    bool dead = false;
    std::erase_if(c, [&](const AtaState &s) {
      auto v = ata.expired(s);
      dead = dead || (v && !*v);
      return v.has_value();
    });
    if (!dead)
      out.push_back(std::move(c));
  }
  keep_weakest(out, ata);
  return out;
}

Configuration time_step(const Configuration &config, const Rational &delay) {
  if (delay < 0)
    throw ContractError("negative delay");
  Configuration out = config;
  for (auto &s : out)
    s.value += delay;
  return out;
}

bool is_accepting(const Configuration &config, const Ata &ata) {
  return std::all_of(config.begin(), config.end(), [&](const AtaState &s) {
    return ata.is_accepting(s.loc);
  });
}

bool accepts_from(const Ata &ata, std::vector<Configuration> current,
                  const mtl::TimedWord &word, const Rational &start) {
  const Rational top = ata.max_constant() + 1;
  Rational last = start;
  for (const auto &event : word) {
    Rational delay = event.time - last;
    last = event.time;
    auto symbol = ata.symbol_of(event.symbols);
    std::vector<Configuration> next;
    for (const auto &g : current) {
      auto moved = time_step(g, delay);
      for (auto &s : moved)
        if (s.value > ata.max_constant())
          s.value = top;
      canonicalize(moved);
      for (auto &c : symbol_step(moved, symbol, ata))
        next.push_back(std::move(c));
    }
    keep_weakest(next, ata);
    if (next.empty())
      return false;
    current = std::move(next);
  }
  return std::any_of(current.begin(), current.end(),
                     [&](const Configuration &c) { return is_accepting(c, ata); });
}

bool accepts(const Ata &ata, const mtl::TimedWord &word) {
  mtl::validate_word(word);
  Rational start = word.empty() ? Rational(0) : word.front().time;
  return accepts_from(ata, {Configuration{{ata.initial(), 0}}}, word, start);
}

std::string to_string(const Configuration &config, const Ata &ata) {
  std::string s = "{";
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (i)
      s += ", ";
    s += "(" + ata.locations().at(config[i].loc) + ", " +
         tsynth::to_string(config[i].value) + ")";
  }
  return s + "}";
}

} // namespace tsynth::ata
