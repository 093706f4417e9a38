#pragma once

#include "tsynth/ata/ata.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tsynth::io {

inline constexpr std::string_view kVersion = "0.3.0";

// Exit codes shared by every subcommand.
enum ExitCode : int { kPositive = 0, kNegative = 1, kError = 2 };

// Parses arguments (argv[0] is skipped) and runs one subcommand. Verdicts
// and artifacts go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Transition table of an automaton, one row per location and symbol.
// Throws InputError when the atom set is too large to enumerate.
nlohmann::json eta_table(const ata::Ata &ata);
std::string eta_dot(const ata::Ata &ata);

std::string read_text(const std::string &path);
nlohmann::json read_json(const std::string &path);
void write_text(const std::string &path, const std::string &text);

} // namespace tsynth::io
