#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "tsynth/core/errors.hpp"
#include "tsynth/golog/interpreter.hpp"
#include "tsynth/golog/ta_embed.hpp"
#include "tsynth/mtl/io.hpp"
#include "tsynth/mtl/semantics.hpp"
#include "tsynth/synth/game.hpp"
#include "tsynth/synth/simulate.hpp"
#include "tsynth/ta/io.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>

using namespace tsynth;
using namespace tsynth::synth;
using golog::Program;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const golog::Bat &camera_bat() {
  static const auto bat = golog::Bat::from_json(testing::load_json("camera_bat.json"));
  return bat;
}

Problem camera_problem() {
  auto prog = golog::program_from_json(testing::load_json("camera_program.json"),
                                       camera_bat());
  auto spec = mtl::parse_formula(read_file(testing::data_path("camera_spec.txt")));
  return Problem(camera_bat(), prog, spec, {"start(*"});
}

// Fluents p and q, false initially; `go` makes p true, `hold` is only
// possible while x <= 1.
golog::Bat switch_bat(bool with_clock = true) {
  auto j = nlohmann::json::parse(R"j({
    "clocks": ["x"],
    "functions": [{"name": "go", "sort": "action"}, {"name": "hold", "sort": "action"}],
    "fluents": [{"name": "p"}, {"name": "q"}],
    "guard": "(or (= a go) (and (= a hold) (<= x 1)))",
    "ssa": {"p": {"formula": "(or (= a go) p)"}},
    "initial": {}})j");
  if (!with_clock) {
    j.erase("clocks");
    j.erase("guard");
  }
  return golog::Bat::from_json(j);
}

Problem switch_problem(Program prog, const char *spec,
                       std::vector<std::string> ctrl = {"*"}) {
  return Problem(switch_bat(), prog, mtl::parse_formula(spec), std::move(ctrl));
}

std::set<std::string> action_names(const Problem &p,
                                   const std::vector<DetSuccessor> &succs) {
  std::set<std::string> out;
  for (const auto &s : succs)
    out.insert(p.bat().actions()[s.action].name);
  return out;
}

bool trace_satisfies(const Problem &p, const golog::Trace &z) {
  return mtl::satisfies(golog::word_of(p.bat(), z), 0, p.spec());
}

} // namespace

TEST_CASE("initial product state") {
  auto bat = switch_bat();
  SECTION("until formula with the atom false starts in its own location") {
    auto p = switch_problem(Program::nil(), "(until true p)");
    auto s = initial_det_state(p);
    REQUIRE(s.configs.size() == 1);
    CHECK(s.configs[0] == ata::Configuration{{1, Rational(0)}});
    CHECK(s.programs == std::vector<Program>{Program::nil()});
  }
  SECTION("without atoms the step reads the empty symbol") {
    auto p = switch_problem(Program::nil(), "true");
    auto s = initial_det_state(p);
    CHECK(s.configs == std::vector<ata::Configuration>{ata::Configuration{}});
  }
  SECTION("camera example has two alternatives for the disjunction") {
    auto p = camera_problem();
    CHECK(p.ata().locations().size() == 4);
    auto s = initial_det_state(p);
    CHECK(s.configs.size() == 2);
    for (const auto &g : s.configs) {
      REQUIRE(g.size() == 1);
      CHECK(g[0].value == 0);
    }
  }
  SECTION("undeclared specification atoms are rejected") {
    CHECK_THROWS_AS(switch_problem(Program::nil(), "(finally undeclared)"), InputError);
  }
}

TEST_CASE("successors of product states") {
  SECTION("nil program has none") {
    auto p = switch_problem(Program::nil(), "(finally p)");
    CHECK(det_successors(p, initial_det_state(p)).empty());
  }
  SECTION("single program, one successor per action and increment") {
    auto bat = switch_bat();
    auto p = switch_problem(Program::branch({Program::act(bat.action_id("go")),
                                             Program::act(bat.action_id("hold"))}),
                            "(finally p [0,1])");
    auto succs = det_successors(p, initial_det_state(p));
    std::set<std::pair<int, int>> keys;
    for (const auto &s : succs)
      keys.insert({s.action, s.increment});
    CHECK(keys.size() == succs.size());
    // Increments ascend, actions by name within an increment.
    for (std::size_t i = 1; i < succs.size(); ++i) {
      auto prev = std::make_pair(succs[i - 1].increment,
                                 bat.actions()[succs[i - 1].action].name);
      auto cur = std::make_pair(succs[i].increment, bat.actions()[succs[i].action].name);
      CHECK(prev < cur);
    }
    // hold needs x <= 1, so it disappears after the regions up to 1.
    auto incs = increments(p, initial_det_state(p));
    for (const auto &s : succs)
      if (s.action == bat.action_id("hold"))
        CHECK(incs[s.increment] <= 1);
  }
  SECTION("camera first layer: drive or boot") {
    auto p = camera_problem();
    auto succs = det_successors(p, initial_det_state(p));
    CHECK(action_names(p, succs) ==
          std::set<std::string>{"start(bootCamera)", "start(drive(m1,m2))"});
  }
}

TEST_CASE("orders on product states") {
  auto p = camera_problem();
  auto root = initial_det_state(p);
  auto member = root.members().front();
  CHECK(state_leq(p, member, member));
  CHECK(det_leq(p, root, root));

  SECTION("empty configuration is below a pending obligation") {
    // After driving, the state without obligations is below the one that
    // still tracks the inner finally at 9/5.
    auto drive = golog::progress(camera_bat(), camera_bat().initial(),
                                 camera_bat().action_id("start(drive(m1,m2))"));
    auto phi3 = p.ata().location_id(
        mtl::to_pnf(mtl::parse_formula("(finally grasping [0,2])")).str());
    SyncState s2{drive, p.program(), {}};
    SyncState s1{drive, p.program(), {{phi3, ratio(9, 5)}}};
    CHECK(state_leq(p, s2, s1));
    CHECK_FALSE(state_leq(p, s1, s2));
  }
  SECTION("different programs are incomparable") {
    SyncState other = member;
    other.program = Program::nil();
    CHECK_FALSE(state_leq(p, member, other));
  }
  SECTION("factor-wise order equals the power set order over members") {
    auto g = solve(p);
    int compared = 0, related = 0;
    for (std::size_t i = 0; i < g.nodes.size(); i += 3)
      for (std::size_t j = 0; j < g.nodes.size(); j += 7) {
        const auto &a = g.nodes[i].state;
        const auto &b = g.nodes[j].state;
        bool explicit_order = powerset_leq(
            a.members(), b.members(),
            [&](const SyncState &x, const SyncState &y) { return state_leq(p, x, y); });
        CHECK(det_leq(p, a, b) == explicit_order);
        ++compared;
        related += explicit_order;
      }
    CHECK(compared > 1000);
    CHECK(related > 0);
  }
}

TEST_CASE("search graph corner cases") {
  SECTION("bad root is a single unsuccessful node") {
    auto p = switch_problem(Program::nil(), "true");
    auto g = solve(p);
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.nodes[0].kind == NodeKind::Bad);
    CHECK(g.nodes[0].label == Label::Bottom);
  }
  SECTION("nil program with a pending obligation is dead") {
    auto p = switch_problem(Program::nil(), "(finally p)");
    auto g = solve(p);
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.nodes[0].kind == NodeKind::Dead);
    CHECK(g.nodes[0].label == Label::Top);
  }
  SECTION("budget exhaustion reports the frontier") {
    auto p = camera_problem();
    try {
      build_graph(p, initial_det_state(p), {10});
      FAIL("expected the budget to run out");
    } catch (const ResourceError &e) {
      CHECK(e.frontier_size > 0);
    }
  }
  SECTION("camera graph stays small") {
    auto p = camera_problem();
    auto g = solve(p);
    CHECK(g.nodes.size() < 100000);
    for (const auto &n : g.nodes) {
      if (n.kind == NodeKind::Dead)
        CHECK(n.edges.empty());
      if (n.kind == NodeKind::Successful)
        CHECK(det_leq(p, g.nodes[n.dominator].state, n.state));
    }
  }
}

TEST_CASE("controller existence") {
  auto bat = switch_bat();
  const int a = bat.action_id("go");
  SECTION("camera example") {
    auto p = camera_problem();
    CHECK(check_for_controller(p));
    CHECK(check_for_controller(p, {0, true}));
  }
  SECTION("an action that forces the atom") {
    auto p = switch_problem(Program::act(a), "(finally p)");
    CHECK_FALSE(check_for_controller(p));
    auto v = verify(p);
    REQUIRE_FALSE(v.safe);
    REQUIRE(v.counterexample.size() == 1);
    CHECK(v.counterexample[0].action == a);
    CHECK(trace_satisfies(p, v.counterexample));
  }
  SECTION("empty program against strict until") {
    auto p = switch_problem(Program::nil(), "(until q p [0,3])");
    CHECK(check_for_controller(p));
    CHECK(verify(p).safe);
  }
  SECTION("environment forcing the atom is lost, controller forcing it can wait") {
    // Uncontrolled a leads to p; as a controller move it is merely optional,
    // but the program must perform it to finish.
    auto env = switch_problem(Program::branch({Program::act(a), Program::nil()}),
                              "(finally p)", {});
    CHECK_FALSE(check_for_controller(env));
    auto ctrl = switch_problem(Program::branch({Program::act(a), Program::nil()}),
                               "(finally p)");
    CHECK(check_for_controller(ctrl));
  }
}

TEST_CASE("uncontrolled camera program is unsafe") {
  auto p = camera_problem();
  auto v = verify(p);
  REQUIRE_FALSE(v.safe);
  CHECK(trace_satisfies(p, v.counterexample));
  CHECK_FALSE(golog::replay(p.bat(), p.program(), v.counterexample).empty());
}

TEST_CASE("controller extraction") {
  auto bat = switch_bat();
  SECTION("one-action program gives two locations") {
    auto clockless = switch_bat(false);
    Problem p(clockless, Program::act(clockless.action_id("go")),
              mtl::parse_formula("q"), {"*"});
    auto g = solve(p);
    auto c = extract_controller(p, g);
    CHECK(c.automaton.locations.size() == 2);
    CHECK(c.automaton.switches.size() == 1);
    CHECK_NOTHROW(c.automaton.validate());
  }
  SECTION("bottom root has no controller") {
    auto p = switch_problem(Program::act(bat.action_id("go")), "(finally p)");
    CHECK_THROWS_AS(extract_controller(p, solve(p)), ModelError);
  }
  SECTION("camera controller") {
    auto p = camera_problem();
    auto g = solve(p);
    auto c = extract_controller(p, g);
    CHECK_NOTHROW(c.automaton.validate());
    CHECK(c.automaton.locations[c.automaton.initial] == "n" + std::to_string(g.root));
    // Booting may start before or after the drive ends.
    std::set<std::string> seen_before_drive_end;
    const auto &au = c.automaton;
    std::set<int> boot_then_drive_end, drive_end_then_boot;
    for (const auto &sw : au.switches) {
      if (sw.label != "start(bootCamera)")
        continue;
      bool drive_pending = false;
      for (const auto &nx : au.switches)
        if (nx.src == sw.dst && nx.label == "end(drive(m1,m2))")
          drive_pending = true;
      (drive_pending ? boot_then_drive_end : drive_end_then_boot).insert(sw.src);
    }
    CHECK_FALSE(boot_then_drive_end.empty());
    CHECK_FALSE(drive_end_then_boot.empty());
    // Every location is reachable by construction.
    std::vector<char> reach(au.locations.size(), 0);
    reach[au.initial] = 1;
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto &sw : au.switches)
        if (reach[sw.src] && !reach[sw.dst])
          reach[sw.dst] = changed = true;
    }
    CHECK(std::all_of(reach.begin(), reach.end(), [](char r) { return r != 0; }));
    auto j = ta::ta_to_json(au);
    CHECK(ta::ta_to_json(ta::ta_from_json(j)) == j);
  }
}

TEST_CASE("region constraints describe the increment") {
  ClockSet values{{"x", Rational(0)}, {"y", ratio(1, 2)}};
  auto g = region_constraint(values, ratio(1, 4), 2);
  CHECK(to_string(g) == "(and (> x 0) (< x 1) (> y 0) (< y 1))");
  CHECK(to_string(region_constraint(values, ratio(1, 2), 2)) ==
        "(and (> x 0) (< x 1) (= y 1))");
  CHECK(to_string(region_constraint(values, Rational(5), 2)) == "(and (> x 2) (> y 2))");
}

TEST_CASE("camera controller simulation") {
  auto p = camera_problem();
  auto g = solve(p);
  auto c = extract_controller(p, g);
  SimulationOptions o;
  o.trials = 500;
  o.seed = 7;
  auto r = simulate_controller(p, g, c, o);
  for (const auto &v : r.violations)
    UNSCOPED_INFO(v);
  CHECK(r.violations.empty());
  CHECK(r.trials == 500);
  CHECK(r.final_checks > 0);
  auto again = simulate_controller(p, g, c, o);
  CHECK(again.steps == r.steps);
}

TEST_CASE("controller for the empty program") {
  auto p = switch_problem(Program::nil(), "(finally p)");
  auto g = solve(p);
  auto c = extract_controller(p, g);
  auto r = simulate_controller(p, g, c, {20, 1, 40, {}});
  CHECK(r.violations.empty());
  CHECK(r.steps == 0);
}

TEST_CASE("verification agrees with brute-force enumeration") {
  testing::Rng rng(2024);
  int unsafe = 0, total = 0;
  for (int k = 0; k < 150; ++k) {
    auto bat = golog::Bat::from_json(testing::random_small_bat(rng, 2, 2));
    auto prog = testing::random_program(rng, bat, 3, false);
    auto spec = testing::random_formula(rng, {"p", "q"}, 2, 2);
    Problem p(bat, prog, spec);
    auto v = verify(p);
    auto brute = testing::brute_force_counterexample(p);
    INFO("program " << prog.str(bat) << " spec " << p.spec().str());
    CHECK(v.safe == !brute.has_value());
    if (!v.safe) {
      CHECK(trace_satisfies(p, v.counterexample));
      auto ends = golog::replay(p.bat(), p.program(), v.counterexample);
      CHECK(std::any_of(ends.begin(), ends.end(),
                        [](const golog::Config &c) { return golog::is_final(c); }));
      ++unsafe;
    }
    ++total;
  }
  CHECK(unsafe > 10);
  CHECK(total - unsafe > 10);
}

TEST_CASE("pruned construction gives the same root labels") {
  testing::Rng rng(99);
  for (int k = 0; k < 100; ++k) {
    auto bat = golog::Bat::from_json(testing::random_small_bat(rng, 2, 2));
    auto prog = testing::random_program(rng, bat, 3, k % 2 == 0);
    auto spec = testing::random_formula(rng, {"p", "q"}, 2, 2);
    Problem p(bat, prog, spec, {k % 3 == 0 ? "u" : "*"});
    auto full = solve(p);
    auto pruned = solve(p, {0, true});
    CHECK(full.nodes[full.root].label == pruned.nodes[pruned.root].label);
    CHECK(pruned.nodes.size() <= full.nodes.size());
  }
}

TEST_CASE("order properties on generated instances") {
  testing::Rng rng(5);
  int pairs = 0;
  for (int k = 0; k < 30; ++k) {
    auto bat = golog::Bat::from_json(testing::random_small_bat(rng, 2, 2));
    auto prog = testing::random_program(rng, bat, 3, true);
    auto spec = testing::random_formula(rng, {"p", "q"}, 2, 2);
    Problem p(bat, prog, spec);
    auto g = build_graph(p, initial_det_state(p));
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      for (std::size_t j = 0; j < g.nodes.size(); ++j) {
        const auto &lo = g.nodes[i].state;
        const auto &hi = g.nodes[j].state;
        if (i == j || hi.configs.empty() || !det_leq(p, lo, hi))
          continue;
        ++pairs;
        // Badness is downward closed.
        if (is_bad(p, hi))
          CHECK(is_bad(p, lo));
        // Downward compatibility.
        auto lo_succ = det_successors(p, lo);
        for (const auto &s : det_successors(p, hi)) {
          bool matched = std::any_of(lo_succ.begin(), lo_succ.end(),
                                     [&](const DetSuccessor &t) {
                                       return t.action == s.action &&
                                              det_leq(p, t.state, s.state);
                                     });
          CHECK(matched);
        }
      }
  }
  CHECK(pairs > 0);
}

TEST_CASE("construction terminates without a budget on looping programs") {
  testing::Rng rng(11);
  std::size_t largest = 0;
  for (int k = 0; k < 60; ++k) {
    auto bat = golog::Bat::from_json(testing::random_small_bat(rng, 2, 2));
    auto prog = testing::random_program(rng, bat, 3, true);
    auto spec = testing::random_formula(rng, {"p", "q"}, 2, 2);
    Problem p(bat, prog, spec);
    auto g = solve(p);
    largest = std::max(largest, g.nodes.size());
  }
  // A camera loop: boot and stop the camera forever while driving back and
  // forth.
  auto bat = camera_bat();
  auto loop = golog::program_from_json(nlohmann::json::parse(R"j({"par": [
    {"star": {"seq": [{"act": "start(bootCamera)"}, {"act": "end(bootCamera)"},
                      {"act": "start(stopCamera)"}, {"act": "end(stopCamera)"}]}},
    {"star": {"seq": [{"act": "start(drive(m1,m2))"}, {"act": "end(drive(m1,m2))"},
                      {"act": "start(drive(m2,m1))"}, {"act": "end(drive(m2,m1))"}]}}]})j"),
                                       bat);
  Problem cam(bat, loop, mtl::parse_formula(read_file(testing::data_path("camera_spec.txt"))),
              {"start(*"});
  auto g = solve(cam);
  CHECK(g.nodes[g.root].label == Label::Top);
  // The embedded camera automaton.
  auto emb = golog::bat_from_ta(ta::ta_from_json(testing::load_json("camera_ta.json")));
  Problem ta_problem(emb.bat, emb.program, mtl::parse_formula("(finally (occ o0) [0,3])"));
  auto tg = solve(ta_problem);
  CHECK(tg.nodes.size() > 1);
  CHECK(largest > 1);
}
