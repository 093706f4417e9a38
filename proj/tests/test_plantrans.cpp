#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "generators.hpp"

#include "tsynth/core/errors.hpp"
#include "tsynth/mtl/semantics.hpp"
#include "tsynth/plantrans/plantrans.hpp"
#include "tsynth/ta/io.hpp"
#include "tsynth/ta/reach.hpp"

#include <chrono>

using namespace tsynth;
using namespace tsynth::plantrans;

namespace {

Interval closed(long lo, long hi) { return Interval::closed(lo, hi); }
Interval from(long lo) { return Interval{lo, std::nullopt, false, true}; }

ta::TimedAutomaton camera() { return ta::ta_from_json(testing::load_json("camera_ta.json")); }

Plan fetch_plan() { return {{"s-goto", "e-goto", "s-pick", "e-pick"}}; }

ChainConstraint chain(std::vector<Stage> stages, std::string opens, std::string closes) {
  return {std::move(stages), ActionPattern(std::move(opens)), ActionPattern(std::move(closes))};
}

ChainConstraint camera_off_then_boot() {
  return chain({{LocationPredicate("camOff"), from(0)}, {LocationPredicate("true"), closed(0, 4)}},
               "s-goto", "e-goto");
}

ChainConstraint camera_on_while_picking() {
  return chain({{LocationPredicate("camOn"), from(0)}}, "s-pick", "e-pick");
}

Constraints fetch_constraints() {
  Constraints c;
  c.rel = {{1, 2, closed(30, 45)}, {3, 4, closed(15, 20)}, {2, 3, closed(0, 0)}};
  c.chain = {camera_off_then_boot(), camera_on_while_picking()};
  return c;
}

Trace witness() {
  return {{"s-goto", Rational(0)},  {"s-bootCamera", Rational(26)},
          {"e-goto", Rational(30)}, {"e-bootCamera", Rational(30)},
          {"s-pick", Rational(30)}, {"e-pick", Rational(45)}};
}

// Replays a word on the deterministic plan automaton.
bool plan_accepts(const ta::TimedAutomaton &a, const std::vector<std::string> &labels,
                  const std::vector<Rational> &times) {
  ta::Run run;
  int loc = a.initial;
  Rational now = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    auto it = std::find_if(a.switches.begin(), a.switches.end(), [&](const ta::Switch &s) {
      return s.src == loc && s.label == labels[k];
    });
    if (it == a.switches.end())
      return false;
    Rational delay = times[k] - now;
    run.push_back({static_cast<int>(it - a.switches.begin()), delay});
    now = times[k];
    loc = it->dst;
  }
  return ta::replay_run(a, run);
}

mtl::TimedWord occurrence_word(const std::vector<Rational> &times) {
  mtl::TimedWord w{{{}, Rational(0)}};
  for (std::size_t k = 0; k < times.size(); ++k)
    w.push_back({{"#" + std::to_string(k + 1)}, times[k]});
  return w;
}

Interval random_plan_interval(testing::Rng &rng, int k) {
  std::uniform_int_distribution<int> pick(0, k);
  int lo = pick(rng), hi = pick(rng);
  if (lo > hi)
    std::swap(lo, hi);
  if (pick(rng) == 0)
    return from(lo);
  return closed(lo, hi);
}

Constraints random_timing(testing::Rng &rng, int n, int k) {
  Constraints c;
  std::uniform_int_distribution<int> idx(1, n), count(0, 2);
  for (int m = count(rng); m > 0; --m)
    c.abs.push_back({idx(rng), random_plan_interval(rng, k)});
  if (n >= 2)
    for (int m = count(rng); m > 0; --m) {
      int i = idx(rng), j = idx(rng);
      if (i == j)
        continue;
      if (i > j)
        std::swap(i, j);
      c.rel.push_back({i, j, random_plan_interval(rng, k)});
    }
  return c;
}

// Two-location chains over the platform's location names.
ChainConstraint random_chain(testing::Rng &rng, const Plan &plan,
                             const ta::TimedAutomaton &platform, int k) {
  std::uniform_int_distribution<int> loc(0, static_cast<int>(platform.locations.size()) - 1);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(plan.actions.size()) - 1);
  std::uniform_int_distribution<int> stages(1, 2), coin(0, 2);
  ChainConstraint ch;
  for (int s = stages(rng); s > 0; --s) {
    std::string beta = coin(rng) == 0 ? "true"
                                      : "(or " + platform.locations[loc(rng)] + " " +
                                            platform.locations[loc(rng)] + ")";
    ch.stages.push_back({LocationPredicate(beta), random_plan_interval(rng, k)});
  }
  ch.opens = ActionPattern(plan.actions[idx(rng)]);
  ch.closes = ActionPattern(plan.actions[idx(rng)]);
  return ch;
}

} // namespace

TEST_CASE("plan encoding of the fetch example", "[plantrans]") {
  Constraints c;
  c.rel = {{1, 2, closed(30, 45)}, {3, 4, closed(15, 20)}, {2, 3, closed(0, 0)}};
  auto a = encode_plan(fetch_plan(), c);
  REQUIRE(a.locations.size() == 5);
  REQUIRE(a.switches.size() == 4);
  CHECK(a.finals == std::vector<int>{4});
  CHECK(a.switches[1].label == "e-goto");
  CHECK(a.switches[1].guard == ta::in_interval("x1_2", closed(30, 45)));
  CHECK(a.switches[0].resets == std::vector<std::string>{"x1_2"});
  CHECK(a.switches[0].guard.atoms.empty());
}

TEST_CASE("single action plan without constraints", "[plantrans]") {
  auto a = encode_plan({{"a1"}}, {});
  CHECK(a.locations.size() == 2);
  REQUIRE(a.switches.size() == 1);
  CHECK(a.switches[0].guard.atoms.empty());
  CHECK(a.clocks.empty());
}

TEST_CASE("relative constraint decides acceptance", "[plantrans]") {
  Constraints c;
  c.rel = {{1, 2, closed(30, 45)}};
  auto a = encode_plan({{"a1", "a2"}}, c);
  CHECK(plan_accepts(a, {"a1", "a2"}, {Rational(10), Rational(50)}));
  CHECK_FALSE(plan_accepts(a, {"a1", "a2"}, {Rational(10), Rational(60)}));
  CHECK_FALSE(plan_accepts(a, {"a2", "a1"}, {Rational(10), Rational(50)}));
}

TEST_CASE("plan automaton matches the constraint formulas", "[plantrans][property]") {
  testing::Rng rng(4242);
  const int k = 3;
  int checked = 0, accepted = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    Plan plan;
    for (int i = 1; i <= n; ++i)
      plan.actions.push_back("a" + std::to_string(i));
    auto c = random_timing(rng, n, k);
    auto a = encode_plan(plan, c);
    auto formulas = constraint_formulas(plan, c);
    // Half-unit steps reach every region of every pairwise difference.
    const int steps = 2 * (k + 1) + 1;
    std::vector<int> digits(n, 0);
    while (true) {
      std::vector<Rational> times;
      Rational now = 0;
      for (int d : digits) {
        now += ratio(d, 2);
        times.push_back(now);
      }
      auto word = occurrence_word(times);
      bool expected = std::all_of(formulas.begin(), formulas.end(), [&](const mtl::Formula &f) {
        return mtl::satisfies(word, 0, f);
      });
      bool got = plan_accepts(a, plan.actions, times);
      INFO("trial " << trial);
      REQUIRE(got == expected);
      accepted += got;
      ++checked;
      int pos = 0;
      while (pos < n && ++digits[pos] == steps)
        digits[pos++] = 0;
      if (pos == n)
        break;
    }
  }
  CHECK(checked > 10000);
  CHECK(accepted > 0);
}

TEST_CASE("activations", "[plantrans]") {
  CHECK(get_activations(camera_off_then_boot(), fetch_plan()) ==
        std::vector<Activation>{{1, 2}});
  CHECK(get_activations(chain({{}}, "s-look", "e-look"), fetch_plan()).empty());
  Plan eight{{"s-goto1", "e-goto1", "s-pick", "e-pick", "s-goto2", "x", "e-goto2", "s-drop"}};
  CHECK(get_activations(chain({{}}, "s-goto*", "e-goto*"), eight) ==
        std::vector<Activation>{{1, 2}, {5, 7}});
  // A second opener before the closer restarts the activation.
  Plan again{{"s-goto", "s-goto", "e-goto"}};
  CHECK(get_activations(chain({{}}, "s-goto", "e-goto"), again) ==
        std::vector<Activation>{{2, 3}});
}

TEST_CASE("action patterns and location predicates", "[plantrans]") {
  CHECK(ActionPattern("start:goto*").matches("start:goto(kitchen)"));
  CHECK_FALSE(ActionPattern("start:goto*").matches("end:goto(kitchen)"));
  CHECK_FALSE(ActionPattern("s-goto").matches("s-goto2"));
  LocationPredicate p("(or camOff camBooting)");
  CHECK(p.holds("camOff"));
  CHECK_FALSE(p.holds("camOn"));
  CHECK(LocationPredicate("(not camOn)").holds("camOff"));
  CHECK_THROWS_AS(LocationPredicate("(finally camOn)"), InputError);
}

TEST_CASE("enforcing the camera chains", "[plantrans]") {
  auto platform = camera();
  auto plan = fetch_plan();
  auto c = fetch_constraints();
  auto base = compose(plan, platform, c);
  REQUIRE(base.automaton.locations.size() == 5 * 3);

  auto after4 = enforce_chain(base, {1, 2}, c.chain[0], platform, "xg4");
  // Context is plan step 1: one camOff copy plus three unrestricted copies.
  std::map<int, std::vector<std::string>> stage_members;
  for (std::size_t l = 0; l < after4.automaton.locations.size(); ++l) {
    const auto &name = after4.automaton.locations[l];
    auto bar = name.find("|xg4.");
    if (bar == std::string::npos) {
      CHECK(after4.plan_step[l] != 1);
      continue;
    }
    stage_members[std::stoi(name.substr(bar + 5))].push_back(
        platform.locations[after4.platform_location[l]]);
  }
  CHECK(stage_members[1] == std::vector<std::string>{"camOff"});
  CHECK(stage_members[2] == std::vector<std::string>{"camOff", "camBooting", "camOn"});
  CHECK(after4.automaton.locations.size() == 15 - 3 + 4);
  // Every exit carries the last stage bound; every entry resets the clock.
  int exits = 0, entries = 0, switches_between = 0;
  for (const auto &sw : after4.automaton.switches) {
    bool src_in = after4.plan_step[sw.src] == 1, dst_in = after4.plan_step[sw.dst] == 1;
    auto uses = [&](const ta::Switch &s) {
      return std::any_of(s.guard.atoms.begin(), s.guard.atoms.end(),
                         [](const ClockAtom &a) { return a.clock == "xg4"; });
    };
    auto resets = std::find(sw.resets.begin(), sw.resets.end(), "xg4") != sw.resets.end();
    if (src_in && !dst_in) {
      ++exits;
      CHECK(uses(sw));
      CHECK(sw.guard == conjoin(ta::in_interval("x1_2", closed(30, 45)),
                                ta::in_interval("xg4", closed(0, 4))));
    } else if (!src_in && dst_in) {
      ++entries;
      CHECK(resets);
    } else if (src_in && dst_in && resets) {
      ++switches_between;
    }
  }
  CHECK(entries == 1);   // s-goto from camOff
  CHECK(exits == 3);     // e-goto from each stage-2 copy
  CHECK(switches_between == 2); // ε and s-bootCamera out of camOff
  after4.automaton.validate();

  auto after5 = enforce_chain(after4, {3, 4}, c.chain[1], platform, "xg5");
  int pick_copies = 0;
  for (std::size_t l = 0; l < after5.automaton.locations.size(); ++l)
    if (after5.plan_step[l] == 3) {
      ++pick_copies;
      CHECK(platform.locations[after5.platform_location[l]] == "camOn");
    }
  CHECK(pick_copies == 1);
  for (const auto &sw : after5.automaton.switches)
    if (after5.plan_step[sw.src] == 3 && after5.plan_step[sw.dst] == 3)
      CHECK(std::find(sw.resets.begin(), sw.resets.end(), "xg5") == sw.resets.end());
}

TEST_CASE("trivial chain keeps the context", "[plantrans]") {
  auto platform = camera();
  auto plan = fetch_plan();
  auto base = compose(plan, platform, {});
  auto trivial = chain({{LocationPredicate("true"), from(0)}}, "s-goto", "e-goto");
  auto out = enforce_chain(base, {1, 2}, trivial, platform, "xt");
  REQUIRE(out.automaton.locations.size() == base.automaton.locations.size());
  REQUIRE(out.automaton.switches.size() == base.automaton.switches.size());
  auto key = [](const Encoding &e, int l) { return std::pair{e.plan_step[l], e.platform_location[l]}; };
  std::multiset<std::tuple<std::pair<int, int>, std::string, std::pair<int, int>>> lhs, rhs;
  for (const auto &sw : base.automaton.switches)
    lhs.insert({key(base, sw.src), sw.label, key(base, sw.dst)});
  for (const auto &sw : out.automaton.switches)
    rhs.insert({key(out, sw.src), sw.label, key(out, sw.dst)});
  CHECK(lhs == rhs);
}

TEST_CASE("empty stage makes the activation unsatisfiable", "[plantrans]") {
  auto platform = camera();
  Plan plan{{"s-goto", "e-goto"}};
  auto base = compose(plan, platform, {});
  auto impossible = chain({{LocationPredicate("false"), from(0)}}, "s-goto", "e-goto");
  CHECK_THROWS_AS(enforce_chain(base, {1, 2}, impossible, platform, "xz"), ModelError);
  Constraints c;
  c.chain = {impossible};
  auto result = transform_plan(plan, platform, c);
  CHECK_FALSE(result.run);
  CHECK(result.reason.find("unsatisfiable within activation") != std::string::npos);
}

TEST_CASE("fetch example transforms into a valid trace", "[plantrans]") {
  auto platform = camera();
  auto result = transform_plan(fetch_plan(), platform, fetch_constraints());
  REQUIRE(result.run);
  std::string why;
  CHECK(validate_transformed(*result.run, fetch_plan(), platform, fetch_constraints(), &why));
  INFO(why);
  auto shown = visible(*result.run);
  std::vector<std::string> plan_part;
  for (const auto &e : shown)
    if (e.label.rfind("s-boot", 0) != 0 && e.label.rfind("e-boot", 0) != 0 &&
        e.label != "shutdownCamera")
      plan_part.push_back(e.label);
  CHECK(plan_part == fetch_plan().actions);
  // Boot must finish exactly when the robot arrives.
  auto at = [&](const std::string &label) {
    return std::find_if(shown.begin(), shown.end(),
                        [&](const TimedAction &e) { return e.label == label; })->time;
  };
  CHECK(at("e-goto") - at("s-bootCamera") == Rational(4));
  CHECK(at("s-pick") == at("e-goto"));
}

TEST_CASE("reference witness validates", "[plantrans]") {
  auto platform = camera();
  std::string why;
  CHECK(validate_transformed(witness(), fetch_plan(), platform, fetch_constraints(), &why));
  auto late = witness();
  late.back().time = Rational(60);
  CHECK_FALSE(validate_transformed(late, fetch_plan(), platform, fetch_constraints(), &why));
  CHECK(why.find("constraint violated") != std::string::npos);
  auto early_boot = witness();
  early_boot[1].time = Rational(25); // booted 5 s before arrival
  CHECK_FALSE(validate_transformed(early_boot, fetch_plan(), platform, fetch_constraints()));
  auto swapped = witness();
  std::swap(swapped[4], swapped[5]);
  CHECK_FALSE(validate_transformed(swapped, fetch_plan(), platform, fetch_constraints()));
  auto impossible_boot = witness();
  impossible_boot[3].time = Rational(29); // boot takes at least 4 s
  impossible_boot[2].time = Rational(29);
  CHECK_FALSE(validate_transformed(impossible_boot, fetch_plan(), platform, {}, &why));
  CHECK(why.find("replay") != std::string::npos);
}

TEST_CASE("empty inputs", "[plantrans]") {
  auto platform = camera();
  CHECK(validate_transformed({}, {}, platform, {}));
  auto result = transform_plan(fetch_plan(), platform, {});
  REQUIRE(result.run);
  auto shown = visible(*result.run);
  REQUIRE(shown.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(shown[i].label == fetch_plan().actions[i]);
    CHECK(shown[i].time == 0);
  }
  auto nothing = transform_plan({}, platform, {});
  REQUIRE(nothing.run);
  CHECK(visible(*nothing.run).empty());
}

TEST_CASE("conflicting boot window is not realizable", "[plantrans]") {
  auto platform = camera();
  Plan plan{{"s-goto", "e-goto"}};
  Constraints c;
  c.abs = {{1, closed(0, 2)}};
  c.chain = {chain({{LocationPredicate("camOn"), from(0)}}, "s-goto", "e-goto")};
  auto result = transform_plan(plan, platform, c);
  CHECK_FALSE(result.run);
  CHECK_FALSE(ta::region_reachable(result.encoding.automaton));
  c.abs = {{1, closed(0, 6)}};
  auto relaxed = transform_plan(plan, platform, c);
  REQUIRE(relaxed.run);
  CHECK(validate_transformed(*relaxed.run, plan, platform, c));
}

TEST_CASE("invalid constraints are input errors", "[plantrans]") {
  auto platform = camera();
  Constraints c;
  c.rel = {{2, 1, closed(0, 1)}};
  CHECK_THROWS_AS(transform_plan(fetch_plan(), platform, c), InputError);
  c.rel.clear();
  c.abs = {{5, closed(0, 1)}};
  CHECK_THROWS_AS(transform_plan(fetch_plan(), platform, c), InputError);
  c.abs.clear();
  c.chain = {chain({{LocationPredicate("kitchen"), from(0)}}, "s-goto", "e-goto")};
  CHECK_THROWS_AS(transform_plan(fetch_plan(), platform, c), InputError);
  CHECK_THROWS_AS(transform_plan({{"s-bootCamera"}}, platform, {}), InputError);
}

TEST_CASE("json round trips", "[plantrans]") {
  auto c = fetch_constraints();
  c.abs = {{2, Interval{1, 3, true, false}}};
  auto j = constraints_to_json(c);
  CHECK(constraints_to_json(constraints_from_json(j)) == j);
  auto plan = plan_from_json(plan_to_json(fetch_plan()));
  CHECK(plan.actions == fetch_plan().actions);
  CHECK(plan_from_json(nlohmann::json::array({"a", "b"})).actions.size() == 2);
  CHECK(trace_from_json(trace_to_json(witness())) == witness());
  auto parsed = constraints_from_json(nlohmann::json::parse(R"J({
    "rel": [{"i": 1, "j": 2, "interval": "[30,45]"}],
    "chain": [{"stages": [{"beta": "(or camOff camBooting)", "interval": "[0,4]"}],
               "alpha1": "start:goto*", "alpha2": "end:goto*"}]})J"));
  REQUIRE(parsed.chain.size() == 1);
  CHECK(parsed.chain[0].opens.matches("start:goto(a)"));
  CHECK(parsed.rel[0].interval == closed(30, 45));
  CHECK_THROWS_AS(constraints_from_json(nlohmann::json::parse(R"({"rel":[{"i":1}]})")),
                  InputError);
}

TEST_CASE("transformed traces validate on random instances", "[plantrans][property]") {
  testing::Rng rng(777);
  int found = 0, none = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto platform = testing::random_ta(rng, 3, 2, 2);
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    Plan plan;
    for (int i = 1; i <= n; ++i)
      plan.actions.push_back("p" + std::to_string(i));
    auto c = random_timing(rng, n, 3);
    if (std::uniform_int_distribution<int>(0, 1)(rng))
      c.chain.push_back(random_chain(rng, plan, platform, 3));
    auto result = transform_plan(plan, platform, c);
    INFO("trial " << trial);
    if (result.run) {
      ++found;
      std::string why;
      CHECK(validate_transformed(*result.run, plan, platform, c, &why));
      INFO(why);
    } else {
      ++none;
      if (result.reason.find("activation") == std::string::npos)
        CHECK_FALSE(ta::region_reachable(result.encoding.automaton));
    }
    // Zone and region engines agree on the encoding.
    if (result.reason.find("activation") == std::string::npos)
      CHECK(ta::region_reachable(result.encoding.automaton) == result.run.has_value());
  }
  CHECK(found > 20);
  CHECK(none > 5);
}

TEST_CASE("adding a constraint never enlarges the language", "[plantrans][property]") {
  testing::Rng rng(99);
  int narrowed = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto platform = testing::random_ta(rng, 3, 2, 2);
    const int n = std::uniform_int_distribution<int>(2, 4)(rng);
    Plan plan;
    for (int i = 1; i <= n; ++i)
      plan.actions.push_back("p" + std::to_string(i));
    auto base = random_timing(rng, n, 3);
    auto more = base;
    auto extra = random_timing(rng, n, 3);
    more.abs.insert(more.abs.end(), extra.abs.begin(), extra.abs.end());
    more.rel.insert(more.rel.end(), extra.rel.begin(), extra.rel.end());
    if (std::uniform_int_distribution<int>(0, 1)(rng))
      more.chain.push_back(random_chain(rng, plan, platform, 3));
    auto loose = transform_plan(plan, platform, base);
    auto tight = transform_plan(plan, platform, more);
    INFO("trial " << trial);
    if (!loose.run)
      CHECK_FALSE(tight.run);
    if (tight.run) {
      CHECK(validate_transformed(*tight.run, plan, platform, base));
      CHECK(validate_transformed(*tight.run, plan, platform, more));
    }
    narrowed += loose.run.has_value() && !tight.run.has_value();
  }
  CHECK(narrowed > 0);
}

TEST_CASE("fifty action plan", "[plantrans][perf]") {
  // Robot that must keep a sensor warm while moving between fifty waypoints.
  auto platform = ta::ta_from_json(nlohmann::json::parse(R"J({
    "locations": ["off", "warming", "ready", "busy", "cooling"],
    "initial": "off", "finals": ["off", "ready", "cooling"], "clocks": ["s"],
    "invariants": {"warming": "(<= s 3)", "busy": "(<= s 5)", "cooling": "(<= s 2)"},
    "switches": [
      {"src": "off", "label": "warm", "resets": ["s"], "dst": "warming"},
      {"src": "warming", "label": "warmed", "guard": "(>= s 2)", "dst": "ready"},
      {"src": "ready", "label": "scan", "resets": ["s"], "dst": "busy"},
      {"src": "busy", "label": "scanned", "guard": "(>= s 1)", "dst": "ready"},
      {"src": "ready", "label": "cool", "resets": ["s"], "dst": "cooling"},
      {"src": "cooling", "label": "cooled", "guard": "(>= s 1)", "dst": "off"}
    ]})J"));
  Plan plan;
  for (int i = 0; i < 25; ++i) {
    plan.actions.push_back("s-move" + std::to_string(i));
    plan.actions.push_back("e-move" + std::to_string(i));
  }
  Constraints c;
  for (int i = 0; i < 25; ++i)
    c.rel.push_back({2 * i + 1, 2 * i + 2, closed(2, 4)});
  c.chain = {chain({{LocationPredicate("(or ready busy)"), from(0)}}, "s-move1*", "e-move1*"),
             chain({{LocationPredicate("off"), from(0)}}, "s-move2*", "e-move2*")};
  auto t0 = std::chrono::steady_clock::now();
  auto first = transform_plan(plan, platform, c);
  auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(first.run);
  CHECK(validate_transformed(*first.run, plan, platform, c));
  auto second = transform_plan(plan, platform, c);
  CHECK(second.encoding.automaton.locations.size() == first.encoding.automaton.locations.size());
  CHECK(second.run == first.run);
  CHECK(seconds < 60);
  WARN("product locations: " << first.encoding.automaton.locations.size() << ", " << seconds
                             << " s");
}
