#include "fixtures.hpp"
#include "generators.hpp"
#include "tsynth/core/errors.hpp"
#include "tsynth/ta/dbm.hpp"
#include "tsynth/ta/io.hpp"
#include "tsynth/ta/reach.hpp"

#include <catch_amalgamated.hpp>

using namespace tsynth;
using namespace tsynth::ta;

namespace {

Rational q(const char *s) { return parse_rational(s); }

TimedAutomaton camera() { return ta_from_json(testing::load_json("camera_ta.json")); }

TimedAutomaton chain(std::vector<std::string> labels, std::string clock) {
  TimedAutomaton a;
  a.clocks = {std::move(clock)};
  a.add_location("p0");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    a.add_location("p" + std::to_string(i + 1));
    a.switches.push_back({int(i), labels[i], {}, {}, int(i + 1)});
  }
  a.finals = {int(labels.size())};
  return a;
}

std::vector<std::vector<Rational>> grid(int clocks, int steps) {
  std::vector<std::vector<Rational>> out{{}};
  for (int c = 0; c < clocks; ++c) {
    std::vector<std::vector<Rational>> next;
    for (const auto &p : out)
      for (int k = 0; k <= steps; ++k) {
        auto e = p;
        e.push_back(ratio(k, 2));
        next.push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

} // namespace

TEST_CASE("bounds order strict below weak") {
  CHECK(Bound::strict(3) < Bound::weak(3));
  CHECK(Bound::weak(2) < Bound::strict(3));
  CHECK(Bound::weak(-3) < Bound::strict(-2));
  CHECK(Bound::weak(1) + Bound::strict(2) == Bound::strict(3));
  CHECK(Bound::weak(1) + Bound::weak(-2) == Bound::weak(-1));
  CHECK((Bound::weak(1) + Bound::infinity()).is_infinite());
}

TEST_CASE("zone membership matches point sampling") {
  testing::Rng rng(11);
  static const Rel rels[] = {Rel::Lt, Rel::Le, Rel::Eq, Rel::Ge, Rel::Gt};
  std::uniform_int_distribution<int> rel_d(0, 4), c_d(0, 3), clk_d(1, 2),
      n_d(1, 4);
  const auto points = grid(2, 8);
  for (int trial = 0; trial < 300; ++trial) {
    auto z = Dbm::universe(2);
    std::vector<std::tuple<int, Rel, int>> atoms;
    for (int k = n_d(rng); k > 0; --k) {
      atoms.emplace_back(clk_d(rng), rels[rel_d(rng)], c_d(rng));
      z.constrain(std::get<0>(atoms.back()), std::get<1>(atoms.back()),
                  std::get<2>(atoms.back()));
    }
    bool any = false;
    for (const auto &p : points) {
      bool expect = true;
      for (auto [c, r, k] : atoms)
        expect = expect && compare(p[c - 1], r, Rational(k));
      any = any || expect;
      std::string desc = z.str() + " p=" + to_string(p[0]) + "," + to_string(p[1]);
      for (auto [c, r, k] : atoms)
        desc += " x" + std::to_string(c) + to_string(r) + std::to_string(k);
      INFO(desc);
      REQUIRE(z.contains(p) == expect);
    }
    // Constants are integers, so a non-empty zone has a half-grid point.
    CHECK(z.is_empty() == !any);

    auto again = z;
    again.constrain(0, 0, Bound::weak(0));
    CHECK(again == z);

    if (z.is_empty())
      continue;
    auto up = z;
    up.up();
    auto reset = z;
    reset.reset(1);
    for (const auto &p : points) {
      if (!z.contains(p))
        continue;
      CHECK(up.contains({p[0] + 1, p[1] + 1}));
      CHECK(reset.contains({Rational(0), p[1]}));
    }
  }
}

TEST_CASE("extrapolation only enlarges") {
  auto z = Dbm::zero(2);
  z.up();
  z.constrain(1, Rel::Ge, 7);
  auto e = z;
  e.extrapolate({0, 3, 3});
  CHECK(e.includes(z));
  CHECK(e.contains({Rational(4), Rational(4)}));
  CHECK_FALSE(e.contains({Rational(2), Rational(2)}));
}

TEST_CASE("camera automaton reaches on after at least four seconds") {
  auto a = camera();
  a.finals = {a.location_id("camOn")};
  auto run = zone_reach(a);
  REQUIRE(run);
  REQUIRE(run->size() == 2);
  CHECK(a.switches[(*run)[0].switch_id].label == "s-bootCamera");
  CHECK(a.switches[(*run)[1].switch_id].label == "e-bootCamera");
  CHECK((*run)[0].delay == 0);
  CHECK((*run)[1].delay == 4);
  CHECK(replay_run(a, *run));
}

TEST_CASE("contradictory guard is unreachable") {
  auto a = chain({"a"}, "x");
  a.switches[0].guard = parse_clock_constraint("(and (< x 1) (> x 2))");
  CHECK_FALSE(zone_reach(a));
  CHECK_FALSE(region_reachable(a));
}

TEST_CASE("strict bounds get grid witnesses") {
  auto a = chain({"a", "b"}, "x");
  a.switches[0].guard = parse_clock_constraint("(> x 1)");
  a.switches[1].guard = parse_clock_constraint("(< x 2)");
  auto run = zone_reach(a);
  REQUIRE(run);
  CHECK((*run)[0].delay == q("5/4"));
  CHECK((*run)[1].delay == 0);
  CHECK(replay_run(a, *run));
}

TEST_CASE("invariants hold before and after every delay") {
  auto a = chain({"a", "b"}, "x");
  a.invariants[1] = parse_clock_constraint("(<= x 2)");
  a.switches[1].guard = parse_clock_constraint("(>= x 3)");
  CHECK_FALSE(zone_reach(a));
  a.switches[0].resets = {"x"};
  a.switches[0].guard = parse_clock_constraint("(>= x 5)");
  a.switches[1].guard = parse_clock_constraint("(>= x 1)");
  auto run = zone_reach(a);
  REQUIRE(run);
  CHECK((*run)[0].delay == 5);
  CHECK((*run)[1].delay == 1);
  Run bad = *run;
  bad[1].delay = 3;
  CHECK_FALSE(replay_run(a, bad));
}

TEST_CASE("zone reachability agrees with the region oracle") {
  testing::Rng rng(2024);
  int reachable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto a = testing::random_ta(rng, 5, 3, 3);
    const bool oracle = region_reachable(a);
    auto run = zone_reach(a);
    INFO("trial " << trial << "\n" << ta_to_json(a).dump(1));
    REQUIRE(run.has_value() == oracle);
    if (run) {
      ++reachable;
      REQUIRE(replay_run(a, *run));
    }
  }
  CHECK(reachable > 20);
  CHECK(reachable < 200);
}

TEST_CASE("parallel composition") {
  auto cam = with_epsilon_loops(camera());
  TimedAutomaton single;
  single.add_location("s");
  single.finals = {0};
  auto same = parallel_compose(cam, single);
  CHECK(same.locations.size() == cam.locations.size());
  CHECK(same.switches.size() == cam.switches.size());
  CHECK(same.finals.size() == cam.finals.size());

  auto plan = chain({"s-goto", "e-goto"}, "xabs");
  auto product = parallel_compose(plan, cam);
  CHECK(product.locations.size() == 9);
  CHECK(product.locations[1] == "(p0,camBooting)");
  CHECK(product.finals == std::vector<int>{6, 7, 8});
  std::size_t eps = 0;
  for (const auto &s : product.switches)
    eps += s.label == kEpsilon;
  CHECK(eps == 9);
  CHECK(product.switches.size() == 9 + 2 * 3 + 3 * 3);

  CHECK_THROWS_AS(parallel_compose(cam, cam), InputError);
}

TEST_CASE("runs become timed words without silent steps") {
  auto a = chain({"a", kEpsilon, "b"}, "x");
  CHECK(run_to_timed_word(a, {}).empty());
  auto w = run_to_timed_word(a, {{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}});
  REQUIRE(w.size() == 2);
  CHECK(w[0] == mtl::WordEntry{{"a"}, Rational(1)});
  CHECK(w[1] == mtl::WordEntry{{"b"}, Rational(3)});
}

TEST_CASE("automaton JSON and DOT") {
  auto a = camera();
  CHECK(ta_to_json(ta_from_json(ta_to_json(a))) == ta_to_json(a));
  auto dot = to_dot(a);
  CHECK(dot.find("xcam:=0") != std::string::npos);
  CHECK(dot.find("xcam <= 6") != std::string::npos);
  CHECK(dot.find("xcam >= 4") != std::string::npos);
  CHECK_THROWS_AS(parse_clock_constraint("(<= x 1/2)"), InputError);
  const auto undeclared = nlohmann::json::parse(
      R"j({"locations":["a"],"initial":"a","invariants":{"a":"(<= y 1)"}})j");
  CHECK_THROWS_AS(ta_from_json(undeclared), InputError);
  CHECK(to_string(in_interval("x", parse_interval("[15,20]"))) ==
        "(and (>= x 15) (<= x 20))");
  CHECK(to_string(in_interval("x", parse_interval("[0,0]"))) == "(= x 0)");
  CHECK(in_interval("x", Interval::unbounded()).atoms.empty());
}
