#include "generators.hpp"
#include "tsynth/core/errors.hpp"
#include "tsynth/mtl/io.hpp"
#include "tsynth/mtl/semantics.hpp"

#include <catch_amalgamated.hpp>

using namespace tsynth;
using mtl::Formula;

namespace {

Formula parse(const char *s) { return mtl::parse_formula(s); }

mtl::TimedWord word(std::vector<std::pair<const char *, std::set<std::string>>> es) {
  mtl::TimedWord w;
  for (auto &[t, s] : es)
    w.push_back({s, parse_rational(t)});
  return w;
}

// The camera example specification.
Formula camera_spec() {
  return parse("(or (finally (and (not camOn) grasping))"
               " (finally (and (not camOn) (finally grasping [0,2]))))");
}

} // namespace

TEST_CASE("positive normal form") {
  CHECK(mtl::to_pnf(parse("(not (not p))")).str() == "p");
  CHECK(mtl::to_pnf(parse("(not (until p q [0,2]))")).str() ==
        "(dual-until (not p) (not q) [0,2])");
  CHECK(mtl::to_pnf(parse("(not (and p (not q)))")).str() == "(or (not p) q)");
  CHECK(mtl::is_pnf(mtl::to_pnf(parse("(globally (implies p (finally q [0,1])))"))));
}

TEST_CASE("closure") {
  auto bad = mtl::to_pnf(parse("(finally (and (not camOn) grasping) [0,1])"));
  auto cl = mtl::closure(bad);
  REQUIRE(cl.size() == 1);
  CHECK(cl[0] == bad);
  auto spec = mtl::closure(mtl::to_pnf(camera_spec()));
  REQUIRE(spec.size() == 3);
  CHECK(spec[2].str() == "(until true grasping [0,2])");
  CHECK(mtl::closure(parse("p")).empty());
}

TEST_CASE("max constant") {
  CHECK(mtl::max_constant(parse("(finally (and (not camOn) grasping) [0,1])")) == 1);
  CHECK(mtl::max_constant(parse("p")) == 0);
  CHECK(mtl::max_constant(parse("(or (finally p [0,2]) (finally q [3,inf)))")) == 3);
}

TEST_CASE("satisfies examples") {
  auto bad = parse("(finally (and (not camOn) grasping) [0,1])");
  auto w = word({{"0", {}}, {"1/2", {"grasping"}}});
  CHECK(mtl::satisfies(w, 0, bad));
  CHECK(mtl::satisfies(w, 1, Formula::truth()));
  CHECK_FALSE(mtl::satisfies(word({{"0", {"p"}}}), 0, parse("(finally p)")));
  // strictness: the witness must lie after position 0
  CHECK_FALSE(mtl::satisfies(word({{"0", {"p"}}, {"1", {}}}), 0, parse("(finally p)")));
  CHECK_FALSE(mtl::satisfies(word({{"0", {}}, {"3/2", {"grasping"}}}), 0, bad));
}

TEST_CASE("pnf and duality preserve truth on random words") {
  testing::Rng rng(42);
  std::vector<std::string> atoms{"p", "q", "r"};
  for (int trial = 0; trial < 400; ++trial) {
    auto f = testing::random_formula(rng, atoms, 3, 3);
    auto g = testing::random_formula(rng, atoms, 2, 3);
    auto w = testing::random_word(rng, atoms, 1, 6, 4, 6);
    auto i = testing::random_interval(rng, 3);
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      CHECK(mtl::satisfies(w, pos, f) == mtl::satisfies(w, pos, mtl::to_pnf(f)));
      CHECK(mtl::satisfies(w, pos, Formula::negate(Formula::until(f, g, i))) ==
            mtl::satisfies(w, pos, Formula::dual_until(Formula::negate(f),
                                                       Formula::negate(g), i)));
    }
    // Earlier symbols do not matter for the last position's verdict.
    auto mutated = w;
    for (std::size_t k = 0; k + 1 < mutated.size(); ++k)
      mutated[k].symbols = {"q"};
    CHECK(mtl::satisfies(w, w.size() - 1, f) ==
          mtl::satisfies(mutated, mutated.size() - 1, f));
  }
}

TEST_CASE("json round trip") {
  auto f = camera_spec();
  auto j = mtl::formula_to_json(f);
  CHECK(mtl::formula_from_json(j) == f);
  auto parsed = mtl::parse_formula_any(
      R"({"until":{"lhs":{"atom":"p"},"rhs":{"atom":"q"},"interval":{"lo":0,"hi":2,"loOpen":false,"hiOpen":false}}})");
  CHECK(parsed == parse("(until p q [0,2])"));
  auto w = mtl::word_from_json(nlohmann::json::parse(
      R"([{"t":"0","symbols":[]},{"t":"1/2","symbols":["grasping"]}])"));
  CHECK(w[1].time == Rational(1, 2));
  CHECK(mtl::word_from_json(mtl::word_to_json(w)) == w);
  CHECK_THROWS_AS(mtl::word_from_json(nlohmann::json::parse(R"([{"t":"1"}])")),
                  InputError);
  CHECK_THROWS_AS(parse("(until p)"), InputError);
  // Unknown heads are ground atoms, as in "(occ o0)".
  CHECK(parse("(frobnicate p)") == mtl::Formula::atom("frobnicate(p)"));
  CHECK_THROWS_AS(parse("(until p q [0,2]"), InputError);
}
