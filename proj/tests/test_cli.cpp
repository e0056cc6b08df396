#include "commands.hpp"

#include <doctest.h>

using namespace equitrans;
using namespace equitrans::cli;

namespace {

Json s3_permutation() {
  return Json::parse(R"({"group": "S_3",
    "representation": {"permutation": [[0,1,2],[0,2,1],[1,0,2],[1,2,0],[2,0,1],[2,1,0]]}})");
}

std::string message_of(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("scenario text parsing") {
  CHECK(parse_scenario_text("").empty());
  CHECK(parse_scenario_text("  \n\t").is_object());
  CHECK(message_of("{\n  \"a\": [1,,2]\n}").find("line 2, column 11") != std::string::npos);
  CHECK(message_of("{\"a\": 1").find("line 1") != std::string::npos);
  CHECK_THROWS_AS(parse_scenario_text("[1, 2]"), InvalidInput);
}

TEST_CASE("rationals from JSON") {
  CHECK(to_rational(Json(3)) == Rational(3));
  CHECK(to_rational(Json("-5/4")) == Rational(-5, 4));
  CHECK(to_rational(Json(0.25)) == Rational(1, 4));
  CHECK(to_rational(Json(0.1)) == Rational(1, 10));
  CHECK_THROWS_AS(to_rational(Json(true)), InvalidInput);
  CHECK_THROWS_AS(to_rational(Json("1/0")), InvalidInput);
}

TEST_CASE("flags override scenario settings") {
  const Json scenario = Json::parse(R"({"settings": {"seed": 5, "cutoff": "7/2", "mode": "float"}})");
  Settings s = resolve_settings(scenario, {});
  CHECK(s.seed == 5);
  CHECK(s.cutoff == Rational(7, 2));
  CHECK(s.mode == Arithmetic::floating);
  FlagOverrides flags;
  flags.seed = 9;
  flags.mode = "exact";
  s = resolve_settings(scenario, flags);
  CHECK(s.seed == 9);
  CHECK(s.mode == Arithmetic::exact);
  flags.tolerance = -1.0;
  CHECK_THROWS_AS(resolve_settings(scenario, flags), InvalidInput);
}

TEST_CASE("reps decompose on the S_3 permutation representation") {
  const Report exact = run_command("reps", "decompose", s3_permutation(), resolve_settings(s3_permutation(), {}));
  REQUIRE(exact.records.size() == 3);
  CHECK(exact.pass());
  CHECK(exact.records[0].certificate["projector"][0][0] == "1/3");
  CHECK(exact.records[1].certificate["rank"] == 2);

  FlagOverrides f;
  f.mode = "float";
  const Report flt = run_command("reps", "decompose", s3_permutation(), resolve_settings(s3_permutation(), f));
  CHECK(flt.records.size() == 3);
  CHECK(flt.pass());
}

TEST_CASE("reports are reproducible") {
  const Json scenario = s3_permutation();
  const Settings s = resolve_settings(scenario, {});
  CHECK(to_json(run_command("reps", "decompose", scenario, s)).dump() ==
        to_json(run_command("reps", "decompose", scenario, s)).dump());
}

TEST_CASE("floer d2 outcomes") {
  const Report empty = run_command("floer", "d2", Json::object(), Settings{});
  CHECK(empty.pass());
  CHECK(empty.records.front().certificate["vacuous"] == true);

  Json defect = Json::parse(R"({"generators": {"half_dim": 1, "critical_points": [
      {"name": "a", "index": 0, "value": 0}, {"name": "b", "index": 1, "value": 1},
      {"name": "c", "index": 2, "value": 2}]},
    "counts": [{"x": "a", "y": "b", "count": 2}, {"x": "b", "y": "c", "count": 3}]})");
  const Report bad = run_command("floer", "d2", defect, Settings{});
  CHECK_FALSE(bad.pass());
  CHECK(bad.records.front().certificate["x"] == "a");
  CHECK(bad.records.front().certificate["z"] == "c");
  CHECK(bad.records.front().certificate["coefficient"] == "6");
}

TEST_CASE("toy model ranks go through the autonomous reduction") {
  const Report r = run_command("floer", "ranks", Json::parse(R"({"toy_model": "T2"})"), Settings{});
  REQUIRE(r.records.size() == 3);
  CHECK(r.pass());
  CHECK(r.records[1].certificate["ranks"]["1"] == 2);
  CHECK(r.records[1].certificate["total"] == 4);
}

TEST_CASE("invalid input is separated from mathematical failure") {
  CHECK_THROWS_AS(run_command("reps", "transmogrify", Json::object(), Settings{}), InvalidInput);
  CHECK_THROWS_AS(run_command("reps", "decompose", Json::object(), Settings{}), InvalidInput);
  CHECK_THROWS_AS(run_command("reps", "decompose", Json::parse(R"({"group": "S_3", "representation": {"matrices": 4}})"),
                              Settings{}),
                  InvalidInput);
  const Json circle = Json::parse(R"({"group": {"circle": {"quadrature_order": 32}}, "representation": {"weights": [1]}})");
  FlagOverrides exact;
  exact.mode = "exact";
  CHECK_THROWS_AS(run_command("reps", "decompose", circle, resolve_settings(circle, exact)), InvalidInput);
  CHECK(run_command("reps", "decompose", circle, Settings{}).pass());
}

TEST_CASE("metric quotient reproduces the Z_2 negation formula") {
  const Json scenario = Json::parse(R"({"point_action": {"finite": [[[1]], [[-1]]]},
    "metric_points": [[-1.5], [0.25], [2]]})");
  const Report r = run_command("metric", "quotient", scenario, Settings{});
  CHECK(r.pass());
  const auto& d = r.records[1].certificate["distances"];
  CHECK(d[0][1].get<double>() == doctest::Approx(1.25));
  CHECK(d[0][2].get<double>() == doctest::Approx(0.5));
}
