#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spark/ideal.hpp"

namespace spark {

inline constexpr int kFeatureVersion = 1;

/// Generator statistics, in the fixed order given by feature_names().
struct FeatureVector {
  std::vector<double> values;
};

const std::vector<std::string>& feature_names();

FeatureVector extract_features(const GeneratorSet& generators);

enum class PredictionSource { kOracle, kRegression, kConstant };

std::string_view to_string(PredictionSource source);

struct Prediction {
  std::size_t k = 1;
  std::size_t m = 1;
  PredictionSource source = PredictionSource::kConstant;
};

struct LabeledIdeal {
  GeneratorSet ideal;
  std::size_t k = 0;
  std::size_t m = 0;
};

struct RandomIdealParams {
  std::size_t nvars = 3;
  std::size_t generators = 5;
  std::size_t degree = 7;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  MonomialOrder order = MonomialOrder();
  Field field = Field::rationals();
};

/// Unlabeled random binomial ideals. Ideal i depends only on (seed, i).
std::vector<GeneratorSet> random_binomial_ideals(const RandomIdealParams& params);

/// Random ideals labeled by oracle_predict. Labeling runs on `threads`
/// workers (0 = hardware concurrency); the result does not depend on it.
std::vector<LabeledIdeal> generate_random_binomial_ideals(const RandomIdealParams& params,
                                                          unsigned threads = 0);

/// Minimal Groebner basis size and its maximal total degree.
Prediction oracle_predict(const GeneratorSet& generators);

/// Largest generator degree plus `slack`, at least 1.
std::size_t default_degree_bound(const GeneratorSet& generators, std::size_t slack);

struct RegressionModel {
  std::vector<double> weights;    // k; intercept first
  std::vector<double> m_weights;  // m; intercept first
  int feature_version = kFeatureVersion;
  std::uint64_t seed = 0;
  std::size_t dataset_size = 0;
  bool ridge = false;
};

/// Least squares via the normal equations; a small ridge term is added when
/// the design is rank deficient. Throws invalid_argument when the dataset
/// has no more rows than features.
RegressionModel fit(const std::vector<LabeledIdeal>& dataset, std::uint64_t seed = 0);

enum class Target { kK, kM };

double predict_raw(const RegressionModel& model, const FeatureVector& features, Target target = Target::kK);
Prediction predict(const RegressionModel& model, const GeneratorSet& generators);

/// Coefficient of determination on raw predictions; nullopt when every
/// label is equal.
std::optional<double> r_squared(const std::vector<double>& labels, const std::vector<double>& predictions);
std::optional<double> evaluate(const RegressionModel& model, const std::vector<LabeledIdeal>& heldout,
                               Target target = Target::kK);

class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual Prediction predict(const GeneratorSet& generators) const = 0;
};

class OraclePredictor final : public Predictor {
 public:
  Prediction predict(const GeneratorSet& generators) const override { return oracle_predict(generators); }
};

class RegressionPredictor final : public Predictor {
 public:
  explicit RegressionPredictor(RegressionModel model) : model_(std::move(model)) {}
  Prediction predict(const GeneratorSet& generators) const override { return spark::predict(model_, generators); }
  const RegressionModel& model() const { return model_; }

 private:
  RegressionModel model_;
};

class ConstantPredictor final : public Predictor {
 public:
  ConstantPredictor(std::size_t k, std::optional<std::size_t> m, std::size_t degree_slack = 0);
  Prediction predict(const GeneratorSet& generators) const override;

 private:
  std::size_t k_;
  std::optional<std::size_t> m_;
  std::size_t slack_;
};

/// One JSON object per line: {generators, n, order, field, k, m}.
void write_dataset(std::ostream& out, const std::vector<LabeledIdeal>& dataset);
std::vector<LabeledIdeal> read_dataset(std::istream& in);

/// {weights, m_weights, feature_version, seed, dataset_size, ridge}.
std::string model_to_json(const RegressionModel& model);
RegressionModel model_from_json(std::string_view text);
void save_model(const std::string& path, const RegressionModel& model);
RegressionModel load_model(const std::string& path);

}  // namespace spark
