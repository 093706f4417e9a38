#include "tsynth/io/cli.hpp"

#include "tsynth/core/errors.hpp"
#include "tsynth/golog/bat.hpp"
#include "tsynth/golog/interpreter.hpp"
#include "tsynth/golog/program.hpp"
#include "tsynth/mtl/io.hpp"
#include "tsynth/mtl/semantics.hpp"
#include "tsynth/plantrans/plantrans.hpp"
#include "tsynth/synth/game.hpp"
#include "tsynth/synth/simulate.hpp"
#include "tsynth/ta/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tsynth::io {

std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string &path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error &e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw InputError("cannot write " + path);
}

namespace {

struct Options {
  bool json = false;
  // verify / synth
  std::string bat, program, spec, controllable;
  std::size_t budget = 0;
  bool prune = false;
  int simulate = 0;
  std::uint64_t seed = 1;
  // transform
  std::string plan, platform, constraints;
  // mtl-check / ata-dump
  std::string formula, formula_file, word;
  // artifacts
  std::string out, dot;
};

// Prints either the JSON envelope or the human-readable text.
class Reporter {
public:
  Reporter(const Options &opts, std::ostream &out, std::ostream &err)
      : opts_(opts), out_(out), err_(err) {}

  void command(std::string name) { command_ = std::move(name); }

  int finish(int code, const std::string &verdict, nlohmann::json details,
             const std::string &text, const std::string &note = "") {
    if (opts_.json) {
      nlohmann::json envelope = {
          {"command", command_}, {"verdict", verdict}, {"exit_code", code}};
      for (auto &[k, v] : details.items())
        envelope[k] = v;
      out_ << envelope.dump(2) << "\n";
    } else {
      out_ << text;
      if (!note.empty())
        err_ << note << "\n";
    }
    return code;
  }

  int error(const std::string &message) {
    err_ << "error: " << message << "\n";
    if (opts_.json)
      out_ << nlohmann::json{{"command", command_},
                             {"verdict", "error"},
                             {"exit_code", int(kError)},
                             {"message", message}}
                  .dump(2)
           << "\n";
    return kError;
  }

private:
  const Options &opts_;
  std::ostream &out_;
  std::ostream &err_;
  std::string command_;
};

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      items.push_back(item);
  return items;
}

mtl::Formula load_formula(const Options &o) {
  if (o.formula.empty() == o.formula_file.empty())
    throw InputError("give exactly one of --formula and --formula-file");
  return mtl::parse_formula_any(o.formula.empty() ? read_text(o.formula_file) : o.formula);
}

synth::Problem load_problem(const Options &o, std::vector<std::string> controllable) {
  auto bat = golog::Bat::from_json(read_json(o.bat));
  auto program = golog::program_from_json(read_json(o.program), bat);
  auto spec = mtl::parse_formula_any(read_text(o.spec));
  return synth::Problem(std::move(bat), std::move(program), spec, std::move(controllable));
}

// Writes `artifact` to `path`, or returns it for stdout when no path is given.
std::string emit(const std::string &path, const std::string &artifact) {
  if (path.empty())
    return artifact;
  write_text(path, artifact);
  return "";
}

int run_verify(const Options &o, Reporter &r) {
  auto problem = load_problem(o, {});
  auto verdict = synth::verify(problem, {o.budget});
  if (verdict.safe)
    return r.finish(kPositive, "safe", {}, "safe\n");
  auto cex = golog::trace_to_json(problem.bat(), verdict.counterexample);
  return r.finish(kNegative, "unsafe", {{"counterexample", cex}}, cex.dump(2) + "\n",
                  "unsafe: counterexample on stdout");
}

int run_synth(const Options &o, Reporter &r) {
  auto problem = load_problem(o, split_list(o.controllable));
  synth::BuildOptions build{o.budget, o.prune};
  auto graph = synth::solve(problem, build);
  nlohmann::json details = {{"nodes", graph.nodes.size()}};
  if (graph.nodes[graph.root].label != synth::Label::Top)
    return r.finish(kNegative, "no-controller", details, "no controller\n");
  // Pruned graphs skip successors, so extraction needs the full graph.
  if (o.prune)
    graph = synth::solve(problem, {o.budget});
  auto controller = synth::extract_controller(problem, graph);
  const auto &a = controller.automaton;
  details["locations"] = a.locations.size();
  details["switches"] = a.switches.size();
  if (!o.dot.empty())
    write_text(o.dot, ta::to_dot(a, "controller"));
  auto ctrl_json = ta::ta_to_json(a);
  std::string text = emit(o.out, ctrl_json.dump(2) + "\n");
  if (o.out.empty())
    details["controller"] = ctrl_json;
  std::string note = "controller: " + std::to_string(a.locations.size()) + " locations, " +
                     std::to_string(a.switches.size()) + " switches";
  if (o.simulate > 0) {
    synth::SimulationOptions sim;
    sim.trials = o.simulate;
    sim.seed = o.seed;
    auto report = synth::simulate_controller(problem, graph, controller, sim);
    details["simulation"] = {{"trials", report.trials},
                             {"steps", report.steps},
                             {"final_checks", report.final_checks},
                             {"violations", report.violations}};
    note += "; simulation: " + std::to_string(report.trials) + " trials, " +
            std::to_string(report.violations.size()) + " violations";
    if (!report.violations.empty())
      return r.error("controller failed simulation: " + report.violations.front());
  }
  return r.finish(kPositive, "controller", details, text, note);
}

int run_transform(const Options &o, Reporter &r) {
  auto plan = plantrans::plan_from_json(read_json(o.plan));
  auto platform = ta::ta_from_json(read_json(o.platform));
  plantrans::Constraints constraints;
  if (!o.constraints.empty())
    constraints = plantrans::constraints_from_json(read_json(o.constraints));
  auto result = plantrans::transform_plan(plan, platform, constraints);
  if (!o.dot.empty())
    write_text(o.dot, ta::to_dot(result.encoding.automaton, "product"));
  nlohmann::json details = {{"product_locations", result.encoding.automaton.locations.size()},
                            {"symbolic_states", result.symbolic_states}};
  if (!result.run) {
    details["reason"] = result.reason;
    return r.finish(kNegative, "no-trace", details, "", "no trace: " + result.reason);
  }
  std::string why;
  if (!plantrans::validate_transformed(*result.run, plan, platform, constraints, &why))
    return r.error("internal: transformed trace fails validation: " + why);
  auto trace = plantrans::trace_to_json(plantrans::visible(*result.run));
  if (o.out.empty())
    details["trace"] = trace;
  std::string text = emit(o.out, trace.dump(2) + "\n");
  return r.finish(kPositive, "trace", details, text,
                  "trace with " + std::to_string(trace.size()) + " actions");
}

int run_mtl_check(const Options &o, Reporter &r) {
  auto formula = load_formula(o);
  if (!o.bat.empty()) {
    auto bat = golog::Bat::from_json(read_json(o.bat));
    for (const auto &a : mtl::atoms_of(formula))
      if (bat.atom_id(a) < 0)
        throw InputError("atom '" + a + "' is not declared by the theory");
  }
  auto word = mtl::word_from_json(read_json(o.word));
  const bool sat = mtl::satisfies(word, 0, formula);
  const bool ata_sat = ata::accepts(ata::ata_from_mtl(mtl::to_pnf(formula)), word);
  if (sat != ata_sat)
    return r.error("internal: automaton and semantics disagree");
  nlohmann::json details = {{"formula", formula.str()}, {"satisfied", sat}};
  return sat ? r.finish(kPositive, "satisfied", details, "satisfied\n")
             : r.finish(kNegative, "violated", details, "violated\n");
}

int run_ata_dump(const Options &o, Reporter &r) {
  auto formula = load_formula(o);
  auto a = ata::ata_from_mtl(mtl::to_pnf(formula));
  auto table = eta_table(a);
  if (!o.dot.empty())
    write_text(o.dot, eta_dot(a));
  nlohmann::json details = {{"locations", a.locations().size()}};
  if (o.out.empty())
    details["table"] = table;
  return r.finish(kPositive, "dumped", details, emit(o.out, table.dump(2) + "\n"));
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  Reporter reporter(o, out, err);
  CLI::App app{"Timed program verification, controller synthesis and plan transformation",
               "tsynth"};
  app.set_version_flag("--version", std::string(kVersion));
  app.add_flag("--json", o.json, "Print a machine-readable verdict envelope");
  app.require_subcommand(1);
  app.fallthrough();

  auto add_problem = [&](CLI::App *cmd) {
    cmd->add_option("--bat", o.bat, "Action theory (JSON)")->required();
    cmd->add_option("--program", o.program, "Program (JSON)")->required();
    cmd->add_option("--spec", o.spec, "Bad-behaviour specification file")->required();
    cmd->add_option("--budget", o.budget, "Search node limit (0: none)");
  };
  auto *verify = app.add_subcommand("verify", "Check that no program trace satisfies the spec");
  add_problem(verify);

  auto *synth = app.add_subcommand("synth", "Synthesize a controller avoiding the spec");
  add_problem(synth);
  synth->add_option("--controllable", o.controllable, "Comma-separated action patterns");
  synth->add_flag("--prune", o.prune, "Skip successors once a node is decided");
  synth->add_option("--out", o.out, "Controller automaton (JSON)");
  synth->add_option("--dot", o.dot, "Controller automaton (DOT)");
  synth->add_option("--simulate", o.simulate, "Random simulation trials");
  synth->add_option("--seed", o.seed, "Simulation seed");

  auto *transform = app.add_subcommand("transform", "Turn a plan into a platform trace");
  transform->add_option("--plan", o.plan, "Plan (JSON)")->required();
  transform->add_option("--platform", o.platform, "Platform automaton (JSON)")->required();
  transform->add_option("--constraints", o.constraints, "Constraints (JSON)");
  transform->add_option("--out", o.out, "Trace (JSON)");
  transform->add_option("--dot", o.dot, "Product automaton (DOT)");

  auto add_formula = [&](CLI::App *cmd) {
    cmd->add_option("--formula", o.formula, "Formula as an s-expression or JSON");
    cmd->add_option("--formula-file", o.formula_file, "File holding the formula");
  };
  auto *check = app.add_subcommand("mtl-check", "Evaluate a formula on a timed word");
  add_formula(check);
  check->add_option("--word", o.word, "Timed word (JSON)")->required();
  check->add_option("--bat", o.bat, "Check atoms against this theory");

  auto *dump = app.add_subcommand("ata-dump", "Print the automaton of a formula");
  add_formula(dump);
  dump->add_option("--out", o.out, "Transition table (JSON)");
  dump->add_option("--dot", o.dot, "Automaton (DOT)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kPositive;
  } catch (const CLI::CallForVersion &) {
    out << kVersion << "\n";
    return kPositive;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kError;
  }

  const std::pair<CLI::App *, int (*)(const Options &, Reporter &)> commands[] = {
      {verify, run_verify}, {synth, run_synth}, {transform, run_transform},
      {check, run_mtl_check}, {dump, run_ata_dump}};
  for (const auto &[cmd, handler] : commands) {
    if (!cmd->parsed())
      continue;
    reporter.command(cmd->get_name());
    try {
      return handler(o, reporter);
    } catch (const nlohmann::json::exception &e) {
      return reporter.error(std::string("malformed input: ") + e.what());
    } catch (const std::exception &e) {
      return reporter.error(e.what());
    }
  }
  return reporter.error("no subcommand");
}

} // namespace tsynth::io
