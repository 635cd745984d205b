#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "spark/errors.hpp"
#include "spark/pipeline.hpp"
#include "toy_spaces.hpp"

using namespace spark;
using namespace spark::testing;

namespace {

std::string matrix_file() {
  const auto path = std::filesystem::temp_directory_path() / "spark_unit_twisted_cubic.mat";
  std::ofstream(path) << "2 4\n3 2 1 0\n0 1 2 3\n";
  return path.string();
}

PipelineConfig toric_config(std::size_t k) {
  PipelineConfig c;
  c.predictor.kind = PredictorChoice::Kind::kConstant;
  c.predictor.k = k;
  c.universe.kind = UniverseChoice::Kind::kToric;
  c.universe.path = matrix_file();
  return c;
}

}  // namespace

TEST_CASE("config strings parse") {
  const PredictorChoice c = PredictorChoice::parse("constant:3,4");
  CHECK(c.kind == PredictorChoice::Kind::kConstant);
  CHECK(c.k == 3);
  CHECK(c.m == std::size_t{4});
  CHECK(c.describe() == "constant:3,4");
  CHECK(PredictorChoice::parse("oracle").kind == PredictorChoice::Kind::kOracle);
  CHECK(PredictorChoice::parse("regression:m.json").model_path == "m.json");
  CHECK_THROWS_AS(PredictorChoice::parse("constant:0"), ParseError);
  CHECK_THROWS_AS(PredictorChoice::parse("constant:x"), ParseError);
  CHECK_THROWS_AS(PredictorChoice::parse("neural"), ParseError);
  CHECK(UniverseChoice::parse("oracle:50").padding == 50);
  CHECK(UniverseChoice::parse("toric:A.mat").path == "A.mat");
  CHECK(UniverseChoice::parse("file:h.txt").kind == UniverseChoice::Kind::kFile);
  CHECK_THROWS_AS(UniverseChoice::parse("oracle"), ParseError);
  CHECK_THROWS_AS(UniverseChoice::parse("graver:3"), ParseError);
}

TEST_CASE("oracle predictor with an oracle universe on the worked example") {
  PipelineConfig c;
  c.universe.padding = 50;
  c.seed = 7;
  const RunReport report = run_spark(worked_example_ideal(), c);
  CHECK(report.verified);
  REQUIRE(report.basis.size() == 3);
  CHECK(monomial_strings(report.initial_monomials()) == std::vector<std::string>{"x1*x2", "x1^2", "x2^2"});
  CHECK(report.delta_actual == std::size_t{3});
  CHECK(report.k_used == 5);
  CHECK(report.escalations == 0);
  const std::string json = report.to_json();
  for (const char* key : {"basis", "initial_monomials", "k_used", "m_used", "universe_size", "primitive_queries",
                          "rounds", "escalations", "verified", "seed", "wall_ms"}) {
    CHECK(json.find("\"" + std::string(key) + "\"") != std::string::npos);
  }
}

TEST_CASE("twisted cubic through the toric universe") {
  const RunReport report = run_spark(twisted_cubic(), toric_config(3));
  CHECK(report.verified);
  CHECK(report.basis.size() == 3);
  CHECK(report.universe_size == 3);
}

TEST_CASE("k = 1 on the twisted cubic escalates once") {
  const RunReport report = run_spark(twisted_cubic(), toric_config(1));
  CHECK(report.verified);
  CHECK(report.escalations == 1);
  CHECK(report.k_used == 4);
  PipelineConfig none = toric_config(1);
  none.max_escalations = 0;
  CHECK_THROWS_AS(run_spark(twisted_cubic(), none), EscalationExhausted);
}

TEST_CASE("a universe without a basis raises m until it has one") {
  // Degree 1 holds no binomial of the twisted cubic at all.
  PipelineConfig c = toric_config(3);
  c.predictor.m = 1;
  const RunReport report = run_spark(twisted_cubic(), c);
  CHECK(report.verified);
  CHECK(report.m_used == 2);
  CHECK(report.escalations == 1);
}

TEST_CASE("a pruned universe that cannot be rebuilt fails loudly") {
  const GeneratorSet f = worked_example_ideal();
  auto full = oracle_universe(f, 30, 2);
  std::vector<Polynomial> kept;
  for (const auto& p : full.elements()) {
    if (p.leading_monomial() != Monomial{0, 2, 0}) kept.push_back(p);
  }
  PipelineConfig c;
  c.universe.kind = UniverseChoice::Kind::kProvided;
  c.universe.provided = std::make_shared<GroebnerViolatorSpace>(f.ring, kept);
  CHECK_THROWS_AS(run_spark(f, c), EscalationExhausted);
}

TEST_CASE("universe elements outside the ideal are rejected") {
  const RingPtr r = make_ring(3);
  const GeneratorSet f = worked_example_ideal();
  // {x1, x2, x3} passes the S-pair and generator tests but spans a larger ideal.
  const std::vector<Polynomial> wrong = {parse_polynomial("x1", r), parse_polynomial("x2", r),
                                         parse_polynomial("x3", r), parse_polynomial("x1^2 - x2", r),
                                         parse_polynomial("x1^3 - x3", r)};
  const std::vector<Polynomial> variables(wrong.begin(), wrong.begin() + 3);
  CHECK(verify(variables, f).passed());
  PipelineConfig c;
  c.universe.kind = UniverseChoice::Kind::kProvided;
  c.universe.provided = std::make_shared<GroebnerViolatorSpace>(r, wrong);
  CHECK_THROWS_AS(run_spark(f, c), EscalationExhausted);
}

TEST_CASE("verify reports each check separately") {
  const GeneratorSet f = worked_example_ideal();
  const auto reduced = reduced_groebner_basis(f).polynomials();
  const Verdict ok = verify(reduced, f);
  CHECK(ok.passed());
  CHECK_FALSE(ok.violators_empty);

  const std::vector<Polynomial> missing(reduced.begin(), reduced.end() - 1);
  const Verdict m = verify(missing, f);
  CHECK_FALSE(m.groebner.is_basis);
  CHECK(m.groebner.witness);
  CHECK(m.minimal);

  std::vector<Polynomial> redundant = reduced;
  redundant.push_back(f.generators[1]);
  const Verdict extra = verify(redundant, f);
  CHECK(extra.groebner.is_basis);
  CHECK_FALSE(extra.minimal);
  REQUIRE(extra.divisible_pair);
  CHECK(extra.divisible_pair->second == 3);
  CHECK(extra.describe().find("divides") != std::string::npos);

  const GroebnerViolatorSpace space(f.ring, reduced);
  const Verdict over = verify(space, Subset{0, 1}, f);
  CHECK(over.violators_empty == false);
  CHECK(over.violator == std::size_t{2});
}

TEST_CASE("identical config and seed give identical reports") {
  PipelineConfig c;
  c.universe.padding = 300;
  c.seed = 11;
  const RunReport a = run_spark(worked_example_ideal(), c);
  const RunReport b = run_spark(worked_example_ideal(), c);
  CHECK(a.basis == b.basis);
  CHECK(a.primitive_queries == b.primitive_queries);
  CHECK(a.rounds == b.rounds);
  CHECK(a.universe_size == b.universe_size);
}

TEST_CASE("reported queries equal the solver counters") {
  const GeneratorSet f = worked_example_ideal();
  const auto space = oracle_universe(f, 300, 4);
  ClarksonSolver solver = make_gb_solver(space, 5, 9);
  const SparkBasisResult result = spark_basis(space, solver);
  CHECK(result.stats.primitive_queries == solver.oracle().queries());
}

TEST_CASE("inconsistent configurations are rejected") {
  PipelineConfig c = toric_config(3);
  CHECK_THROWS_AS(run_spark(worked_example_ideal(), c), std::invalid_argument);
  PipelineConfig bad_safety;
  bad_safety.safety = 0;
  CHECK_THROWS_AS(run_spark(worked_example_ideal(), bad_safety), std::invalid_argument);
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1, 10, 100}, {3, 30, 300}) == doctest::Approx(1.0));
  CHECK(loglog_slope({1, 2, 4}, {1, 4, 16}) == doctest::Approx(2.0));
  CHECK_THROWS(loglog_slope({1}, {1}));
}

TEST_CASE("a round cap on the last attempt is reported as such") {
  PipelineConfig c;
  c.universe.padding = 2000;
  c.predictor = PredictorChoice::parse("constant:1");
  c.safety = 1;
  c.round_cap = 1;
  c.max_escalations = 0;
  CHECK_THROWS_AS(run_spark(worked_example_ideal(), c), RoundCapExceeded);
  c.max_escalations = 8;
  c.round_cap = 10'000;
  CHECK(run_spark(worked_example_ideal(), c).verified);
}
