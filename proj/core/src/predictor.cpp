#include "spark/predictor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "spark/buchberger.hpp"
#include "spark/errors.hpp"
#include "spark/random.hpp"

namespace spark {
namespace {

using nlohmann::json;

double coefficient_height(const Coefficient& c) {
  const std::size_t num = mpz_sizeinbase(c.get_num_mpz_t(), 2);
  const std::size_t den = mpz_sizeinbase(c.get_den_mpz_t(), 2);
  return static_cast<double>(std::max(num, den));
}

std::size_t support_size(const Polynomial& f, std::size_t nvars) {
  std::size_t count = 0;
  for (std::size_t v = 0; v < nvars; ++v) {
    for (const auto& t : f.terms()) {
      if (t.monomial[v] > 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

std::size_t ceil_positive(double x) {
  if (!std::isfinite(x) || x < 1.0) return 1;
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, bool& ridge) {
  const Eigen::MatrixXd gram = x.transpose() * x;
  const Eigen::VectorXd rhs = x.transpose() * y;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram);
  if (qr.rank() == gram.cols()) {
    ridge = false;
    return qr.solve(rhs);
  }
  ridge = true;
  const double scale = std::max(1.0, gram.trace() / static_cast<double>(gram.cols()));
  Eigen::MatrixXd regularized = gram;
  regularized.diagonal().array() += 1e-8 * scale;
  return regularized.ldlt().solve(rhs);
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = {
      "nvars",         "generators",   "degree_min",   "degree_max",   "degree_mean",
      "low_degree_mean", "support_min", "support_max", "support_mean", "terms_mean",
      "exponent_max",  "coeff_height_max", "coeff_height_mean", "homogeneous"};
  return names;
}

FeatureVector extract_features(const GeneratorSet& generators) {
  if (generators.generators.empty()) throw std::invalid_argument("extract_features: empty generator set");
  const std::size_t n = generators.ring->nvars;
  const double s = static_cast<double>(generators.size());
  double deg_min = std::numeric_limits<double>::infinity();
  double deg_max = 0;
  double deg_sum = 0;
  double low_sum = 0;
  double sup_min = std::numeric_limits<double>::infinity();
  double sup_max = 0;
  double sup_sum = 0;
  double terms_sum = 0;
  double exp_max = 0;
  double height_max = 0;
  double height_sum = 0;
  double coeff_count = 0;
  bool homogeneous = true;
  for (const auto& f : generators.generators) {
    const double deg = static_cast<double>(f.total_degree());
    deg_min = std::min(deg_min, deg);
    deg_max = std::max(deg_max, deg);
    deg_sum += deg;
    double low = deg;
    for (const auto& t : f.terms()) {
      low = std::min(low, static_cast<double>(t.monomial.degree()));
      for (auto e : t.monomial.exponents()) exp_max = std::max(exp_max, static_cast<double>(e));
      const double h = coefficient_height(t.coeff);
      height_max = std::max(height_max, h);
      height_sum += h;
      coeff_count += 1;
    }
    low_sum += low;
    const double sup = static_cast<double>(support_size(f, n));
    sup_min = std::min(sup_min, sup);
    sup_max = std::max(sup_max, sup);
    sup_sum += sup;
    terms_sum += static_cast<double>(f.size());
    homogeneous = homogeneous && f.is_homogeneous();
  }
  return FeatureVector{{static_cast<double>(n), s, deg_min, deg_max, deg_sum / s, low_sum / s, sup_min, sup_max,
                        sup_sum / s, terms_sum / s, exp_max, height_max,
                        coeff_count > 0 ? height_sum / coeff_count : 0.0, homogeneous ? 1.0 : 0.0}};
}

std::string_view to_string(PredictionSource source) {
  switch (source) {
    case PredictionSource::kOracle:
      return "oracle";
    case PredictionSource::kRegression:
      return "regression";
    case PredictionSource::kConstant:
      return "constant";
  }
  return "unknown";
}

std::vector<GeneratorSet> random_binomial_ideals(const RandomIdealParams& params) {
  if (params.nvars < 1 || params.generators < 1 || params.degree < 1) {
    throw std::invalid_argument("random ideals need n, s, d >= 1");
  }
  const RingPtr ring = make_ring(params.nvars, params.field, params.order);
  const Coefficient minus_one = params.field.neg(1);
  std::vector<GeneratorSet> out;
  out.reserve(params.count);
  for (std::size_t i = 0; i < params.count; ++i) {
    std::mt19937_64 rng(derive_seed(params.seed, i));
    GeneratorSet ideal{ring, {}};
    while (ideal.generators.size() < params.generators) {
      Monomial top = random_monomial(params.nvars, params.degree, rng);
      Monomial other = random_monomial(params.nvars, uniform_below(params.degree + 1, rng), rng);
      if (top == other) continue;
      if (uniform_below(2, rng) == 1) std::swap(top, other);
      ideal.generators.emplace_back(ring, std::vector<Term>{Term{1, top}, Term{minus_one, other}});
    }
    out.push_back(std::move(ideal));
  }
  return out;
}

std::vector<LabeledIdeal> generate_random_binomial_ideals(const RandomIdealParams& params, unsigned threads) {
  std::vector<GeneratorSet> ideals = random_binomial_ideals(params);
  std::vector<LabeledIdeal> out(ideals.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, ideals.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < ideals.size(); i = next++) {
      try {
        const Prediction label = oracle_predict(ideals[i]);
        out[i] = LabeledIdeal{std::move(ideals[i]), label.k, label.m};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Prediction oracle_predict(const GeneratorSet& generators) {
  BuchbergerOptions options;
  options.strategy = PairStrategy::kDegree;
  options.use_criteria = true;
  const auto basis = reduced_groebner_basis(generators, options);
  std::size_t m = 0;
  for (const auto& e : basis.elements) m = std::max<std::size_t>(m, e.poly.total_degree());
  return Prediction{std::max<std::size_t>(1, basis.size()), std::max<std::size_t>(1, m), PredictionSource::kOracle};
}

std::size_t default_degree_bound(const GeneratorSet& generators, std::size_t slack) {
  std::size_t d = 0;
  for (const auto& f : generators.generators) d = std::max<std::size_t>(d, f.total_degree());
  return std::max<std::size_t>(1, d + slack);
}

RegressionModel fit(const std::vector<LabeledIdeal>& dataset, std::uint64_t seed) {
  const std::size_t features = feature_names().size();
  if (dataset.size() <= features) {
    throw std::invalid_argument("fit: need more than " + std::to_string(features) + " labeled ideals");
  }
  const auto rows = static_cast<Eigen::Index>(dataset.size());
  const auto cols = static_cast<Eigen::Index>(features + 1);
  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd yk(rows);
  Eigen::VectorXd ym(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& item = dataset[static_cast<std::size_t>(r)];
    const FeatureVector f = extract_features(item.ideal);
    x(r, 0) = 1.0;
    for (std::size_t c = 0; c < features; ++c) x(r, static_cast<Eigen::Index>(c + 1)) = f.values[c];
    yk(r) = static_cast<double>(item.k);
    ym(r) = static_cast<double>(item.m);
  }
  RegressionModel model;
  bool ridge_k = false;
  bool ridge_m = false;
  model.weights = to_std(solve_least_squares(x, yk, ridge_k));
  model.m_weights = to_std(solve_least_squares(x, ym, ridge_m));
  model.ridge = ridge_k || ridge_m;
  model.seed = seed;
  model.dataset_size = dataset.size();
  return model;
}

double predict_raw(const RegressionModel& model, const FeatureVector& features, Target target) {
  const auto& w = target == Target::kK ? model.weights : model.m_weights;
  if (model.feature_version != kFeatureVersion || w.size() != features.values.size() + 1) {
    throw std::invalid_argument("model does not match the feature layout");
  }
  double y = w[0];
  for (std::size_t i = 0; i < features.values.size(); ++i) y += w[i + 1] * features.values[i];
  return y;
}

Prediction predict(const RegressionModel& model, const GeneratorSet& generators) {
  const FeatureVector f = extract_features(generators);
  return Prediction{ceil_positive(predict_raw(model, f, Target::kK)), ceil_positive(predict_raw(model, f, Target::kM)),
                    PredictionSource::kRegression};
}

std::optional<double> r_squared(const std::vector<double>& labels, const std::vector<double>& predictions) {
  if (labels.size() != predictions.size()) throw std::invalid_argument("r_squared: length mismatch");
  if (labels.empty()) return std::nullopt;
  const double mean = std::accumulate(labels.begin(), labels.end(), 0.0) / static_cast<double>(labels.size());
  double ss_tot = 0;
  double ss_res = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ss_tot += (labels[i] - mean) * (labels[i] - mean);
    ss_res += (labels[i] - predictions[i]) * (labels[i] - predictions[i]);
  }
  if (ss_tot == 0) return std::nullopt;
  return 1.0 - ss_res / ss_tot;
}

std::optional<double> evaluate(const RegressionModel& model, const std::vector<LabeledIdeal>& heldout,
                               Target target) {
  std::vector<double> labels;
  std::vector<double> predictions;
  for (const auto& item : heldout) {
    labels.push_back(static_cast<double>(target == Target::kK ? item.k : item.m));
    predictions.push_back(predict_raw(model, extract_features(item.ideal), target));
  }
  return r_squared(labels, predictions);
}

ConstantPredictor::ConstantPredictor(std::size_t k, std::optional<std::size_t> m, std::size_t degree_slack)
    : k_(k), m_(m), slack_(degree_slack) {
  if (k_ < 1) throw std::invalid_argument("constant predictor: k must be >= 1");
  if (m_ && *m_ < 1) throw std::invalid_argument("constant predictor: m must be >= 1");
}

Prediction ConstantPredictor::predict(const GeneratorSet& generators) const {
  return Prediction{k_, m_ ? *m_ : default_degree_bound(generators, slack_), PredictionSource::kConstant};
}

void write_dataset(std::ostream& out, const std::vector<LabeledIdeal>& dataset) {
  for (const auto& item : dataset) {
    json record;
    record["generators"] = json::array();
    for (const auto& g : item.ideal.generators) record["generators"].push_back(to_string(g));
    record["n"] = item.ideal.ring->nvars;
    record["order"] = std::string(item.ideal.ring->order.name());
    record["field"] = item.ideal.ring->field.name();
    record["k"] = item.k;
    record["m"] = item.m;
    out << record.dump() << '\n';
  }
}

std::vector<LabeledIdeal> read_dataset(std::istream& in) {
  std::vector<LabeledIdeal> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json record = json::parse(line);
      const Field field = Field::parse(record.value("field", std::string("QQ")));
      const RingPtr ring = make_ring(record.at("n").get<std::size_t>(), field,
                                     MonomialOrder::parse(record.at("order").get<std::string>()));
      LabeledIdeal item;
      item.ideal = make_generator_set(ring, record.at("generators").get<std::vector<std::string>>());
      item.k = record.at("k").get<std::size_t>();
      item.m = record.at("m").get<std::size_t>();
      out.push_back(std::move(item));
    } catch (const json::exception& e) {
      throw ParseError("dataset line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string model_to_json(const RegressionModel& model) {
  json j;
  j["weights"] = model.weights;
  j["m_weights"] = model.m_weights;
  j["feature_version"] = model.feature_version;
  j["seed"] = model.seed;
  j["dataset_size"] = model.dataset_size;
  j["ridge"] = model.ridge;
  return j.dump(2);
}

RegressionModel model_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RegressionModel model;
    model.weights = j.at("weights").get<std::vector<double>>();
    model.m_weights = j.value("m_weights", std::vector<double>{});
    model.feature_version = j.at("feature_version").get<int>();
    model.seed = j.value("seed", std::uint64_t{0});
    model.dataset_size = j.value("dataset_size", std::size_t{0});
    model.ridge = j.value("ridge", false);
    if (model.feature_version != kFeatureVersion) {
      throw ParseError("model feature_version " + std::to_string(model.feature_version) + " is not supported");
    }
    const std::size_t expected = feature_names().size() + 1;
    if (model.weights.size() != expected || model.m_weights.size() != expected) {
      throw ParseError("model weight length does not match the feature layout");
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
}

void save_model(const std::string& path, const RegressionModel& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << model_to_json(model) << '\n';
}

RegressionModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace spark
