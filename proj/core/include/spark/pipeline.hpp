#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spark/buchberger.hpp"
#include "spark/gb_violator.hpp"
#include "spark/predictor.hpp"
#include "spark/universe.hpp"

namespace spark {

/// "oracle", "regression:<model.json>" or "constant:<k>[,<m>]".
struct PredictorChoice {
  enum class Kind { kOracle, kRegression, kConstant };
  Kind kind = Kind::kOracle;
  std::string model_path;
  std::size_t k = 1;
  std::optional<std::size_t> m;

  static PredictorChoice parse(std::string_view text);
  std::string describe() const;
};

/// "toric:<A file>", "oracle:<padding>" or "file:<universe file>". A
/// prebuilt space can be supplied directly; it is never rebuilt.
struct UniverseChoice {
  enum class Kind { kToric, kOracle, kFile, kProvided };
  Kind kind = Kind::kOracle;
  std::string path;
  std::size_t padding = 50;
  std::shared_ptr<const GroebnerViolatorSpace> provided;

  static UniverseChoice parse(std::string_view text);
  std::string describe() const;
};

struct PipelineConfig {
  PredictorChoice predictor;
  UniverseChoice universe;
  std::uint64_t seed = 0;
  double safety = 1.5;
  std::size_t max_escalations = 8;
  /// Added to the largest generator degree when the predictor gives no m.
  std::size_t degree_slack = 0;
  std::uint64_t round_cap = 10'000;
};

/// Outcome of the three basis checks. `violators_empty` is absent when no
/// universe was given.
struct Verdict {
  std::optional<bool> violators_empty;
  std::optional<std::size_t> violator;  // universe id of the first violator
  GroebnerCertificate groebner;
  bool minimal = true;
  std::optional<std::pair<std::size_t, std::size_t>> divisible_pair;  // (i, j): init(C_i) | init(C_j)

  bool passed() const { return violators_empty.value_or(true) && groebner.is_basis && minimal; }
  std::string describe() const;
};

/// (b) and (c) only.
Verdict verify(std::span<const Polynomial> candidate, const GeneratorSet& generators);
/// (a) over `space` for the ids in `basis`, then (b) and (c). The violator
/// check uses the raw predicate, so the query counter is untouched.
Verdict verify(const GroebnerViolatorSpace& space, std::span<const ElementId> basis, const GeneratorSet& generators);

struct RunReport {
  std::vector<Polynomial> basis;
  std::size_t k_predicted = 0;
  std::size_t m_predicted = 0;
  PredictionSource source = PredictionSource::kConstant;
  std::size_t k_used = 0;
  std::size_t m_used = 0;
  std::optional<std::size_t> delta_actual;
  std::size_t universe_size = 0;
  std::uint64_t primitive_queries = 0;
  std::uint64_t rounds = 0;
  std::size_t escalations = 0;
  bool verified = false;
  std::uint64_t seed = 0;
  double safety = 1.5;
  double wall_ms = 0;
  std::string universe;
  std::string predictor;

  std::vector<Monomial> initial_monomials() const;
  std::string to_json() const;
};

/// Multiplicities are kept when k doubles and reset when the universe is
/// rebuilt for a larger m.
inline constexpr std::string_view kMultiplicityPolicy = "keep-on-k-reset-on-m";

/// predict (k, m); k_used = ceil(k * safety); build H; sample a basis; check.
/// A failed check escalates: k doubles when the basis outgrew k_used or the
/// round cap was hit, otherwise m grows by one and H is rebuilt. Throws
/// EscalationExhausted when the budget runs out or H cannot be rebuilt, or
/// RoundCapExceeded when the last attempt before the budget ran out hit the
/// round cap; a returned report is always verified.
RunReport run_spark(const GeneratorSet& generators, const PipelineConfig& config);

struct ScalingPoint {
  std::size_t target_size = 0;
  double mean_size = 0;
  double mean_queries = 0;
  std::vector<std::uint64_t> queries;
};

struct ScalingSweep {
  std::size_t delta = 0;
  std::vector<ScalingPoint> points;
  /// Least-squares slope of log(mean queries) against log(mean size).
  double slope = 0;
};

/// For each target size, `seeds` oracle universes of F padded to that size
/// and one spark_basis run each with k = delta. Runs fan out over `threads`
/// workers (0 = hardware concurrency); every run has its own derived seed.
ScalingSweep query_scaling(const GeneratorSet& generators, const std::vector<std::size_t>& sizes,
                           std::size_t seeds, std::uint64_t seed, unsigned threads = 0);

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace spark
