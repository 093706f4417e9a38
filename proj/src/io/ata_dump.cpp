#include "tsynth/core/errors.hpp"
#include "tsynth/io/cli.hpp"

#include <map>
#include <set>
#include <sstream>

namespace tsynth::io {

namespace {

constexpr std::size_t kMaxAtoms = 12;

void targets(const ata::LocFormula &f, std::set<int> &out) {
  if (f.kind() == ata::LocFormula::Kind::Loc)
    out.insert(f.location());
  for (const auto &c : f.children())
    targets(c, out);
}

std::vector<std::string> symbol_atoms(const ata::Ata &a, ata::Ata::Symbol symbol) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.atoms().size(); ++i)
    if (symbol & (ata::Ata::Symbol{1} << i))
      names.push_back(a.atoms()[i]);
  return names;
}

std::string symbol_text(const std::vector<std::string> &names) {
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i)
    s += (i ? "," : "") + names[i];
  return s + "}";
}

ata::Ata::Symbol symbol_count(const ata::Ata &a) {
  if (a.atoms().size() > kMaxAtoms)
    throw InputError("too many atoms to tabulate (" + std::to_string(a.atoms().size()) +
                     " > " + std::to_string(kMaxAtoms) + ")");
  return ata::Ata::Symbol{1} << a.atoms().size();
}

std::string quoted(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "\"";
}

} // namespace

nlohmann::json eta_table(const ata::Ata &a) {
  const auto symbols = symbol_count(a);
  nlohmann::json locations = nlohmann::json::array();
  for (std::size_t l = 0; l < a.locations().size(); ++l)
    locations.push_back({{"name", a.locations()[l]},
                         {"accepting", a.is_accepting(static_cast<int>(l))}});
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t l = 0; l < a.locations().size(); ++l)
    for (ata::Ata::Symbol s = 0; s < symbols; ++s)
      rows.push_back({{"location", a.locations()[l]},
                      {"symbol", symbol_atoms(a, s)},
                      {"eta", a.eta(static_cast<int>(l), s).str(a.locations())}});
  return {{"locations", locations},
          {"initial", a.locations()[a.initial()]},
          {"atoms", a.atoms()},
          {"max_constant", a.max_constant()},
          {"eta", rows}};
}

std::string eta_dot(const ata::Ata &a) {
  const auto symbols = symbol_count(a);
  std::ostringstream os;
  os << "digraph ata {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t l = 0; l < a.locations().size(); ++l)
    os << "  q" << l << " [label=" << quoted(a.locations()[l]) << ", shape="
       << (a.is_accepting(static_cast<int>(l)) ? "doublecircle" : "circle") << "];\n";
  os << "  init -> q" << a.initial() << ";\n";
  // One edge per target, labelled with the symbols that can reach it.
  for (std::size_t l = 0; l < a.locations().size(); ++l) {
    std::map<int, std::vector<std::string>> reach;
    for (ata::Ata::Symbol s = 0; s < symbols; ++s) {
      std::set<int> to;
      targets(a.eta(static_cast<int>(l), s), to);
      for (int t : to)
        reach[t].push_back(symbol_text(symbol_atoms(a, s)));
    }
    for (const auto &[t, labels] : reach) {
      std::string label;
      for (std::size_t i = 0; i < labels.size(); ++i)
        label += (i ? " " : "") + labels[i];
      os << "  q" << l << " -> q" << t << " [label=" << quoted(label) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

} // namespace tsynth::io
