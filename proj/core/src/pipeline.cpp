#include "spark/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "spark/errors.hpp"
#include "spark/random.hpp"

namespace spark {
namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  std::size_t pos = 0;
  try {
    value = std::stoul(std::string(text), &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) {
    throw ParseError("expected a nonnegative integer for " + std::string(what) + ", got '" + std::string(text) + "'");
  }
  return value;
}

std::pair<std::string_view, std::string_view> split_kind(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

std::string ring_mismatch(const Ring& a, const Ring& b) {
  return "universe ring '" + a.header() + "' does not match the input ring '" + b.header() + "'";
}

class UniverseBuilder {
 public:
  UniverseBuilder(const GeneratorSet& generators, const PipelineConfig& config)
      : generators_(generators), config_(config) {
    const auto& choice = config.universe;
    if (choice.kind == UniverseChoice::Kind::kToric) {
      matrix_.emplace(ToricMatrix::read(choice.path));
      if (matrix_->cols() != generators.ring->nvars) {
        throw std::invalid_argument("toric matrix has " + std::to_string(matrix_->cols()) + " columns but the ring has " +
                                    std::to_string(generators.ring->nvars) + " variables");
      }
    }
    if (choice.kind == UniverseChoice::Kind::kProvided && !choice.provided) {
      throw std::invalid_argument("provided universe is empty");
    }
  }

  bool rebuildable() const {
    return config_.universe.kind == UniverseChoice::Kind::kToric ||
           config_.universe.kind == UniverseChoice::Kind::kOracle;
  }

  /// Elements of an oracle universe lie in <F> by construction.
  bool contained_by_construction() const { return config_.universe.kind == UniverseChoice::Kind::kOracle; }

  std::shared_ptr<const GroebnerViolatorSpace> build(std::size_t m, std::size_t generation) const {
    const auto& choice = config_.universe;
    std::shared_ptr<const GroebnerViolatorSpace> space;
    switch (choice.kind) {
      case UniverseChoice::Kind::kToric:
        space = std::make_shared<GroebnerViolatorSpace>(toric_universe(*matrix_, m, generators_.ring));
        break;
      case UniverseChoice::Kind::kOracle:
        space = std::make_shared<GroebnerViolatorSpace>(
            oracle_universe(generators_, choice.padding, derive_seed(config_.seed, 0x10000 + generation)));
        break;
      case UniverseChoice::Kind::kFile:
        space = std::make_shared<GroebnerViolatorSpace>(
            read_universe(choice.path, RingOverrides{generators_.ring->order, generators_.ring->field}));
        break;
      case UniverseChoice::Kind::kProvided:
        space = choice.provided;
        break;
    }
    if (!(*space->ring() == *generators_.ring)) {
      throw std::invalid_argument(ring_mismatch(*space->ring(), *generators_.ring));
    }
    return space;
  }

 private:
  const GeneratorSet& generators_;
  const PipelineConfig& config_;
  std::optional<ToricMatrix> matrix_;
};

std::unique_ptr<Predictor> make_predictor(const PipelineConfig& config) {
  const auto& choice = config.predictor;
  switch (choice.kind) {
    case PredictorChoice::Kind::kOracle:
      return std::make_unique<OraclePredictor>();
    case PredictorChoice::Kind::kRegression:
      return std::make_unique<RegressionPredictor>(load_model(choice.model_path));
    case PredictorChoice::Kind::kConstant:
      return std::make_unique<ConstantPredictor>(choice.k, choice.m, config.degree_slack);
  }
  throw std::logic_error("unknown predictor");
}

}  // namespace

PredictorChoice PredictorChoice::parse(std::string_view text) {
  const auto [kind, arg] = split_kind(text);
  PredictorChoice out;
  if (kind == "oracle" && arg.empty()) {
    out.kind = Kind::kOracle;
  } else if (kind == "regression" && !arg.empty()) {
    out.kind = Kind::kRegression;
    out.model_path = std::string(arg);
  } else if (kind == "constant" && !arg.empty()) {
    out.kind = Kind::kConstant;
    const auto comma = arg.find(',');
    out.k = parse_count(arg.substr(0, comma), "k");
    if (comma != std::string_view::npos) out.m = parse_count(arg.substr(comma + 1), "m");
    if (out.k < 1 || (out.m && *out.m < 1)) throw ParseError("constant predictor needs k, m >= 1");
  } else {
    throw ParseError("predictor must be oracle, regression:<model> or constant:<k>[,<m>], got '" +
                     std::string(text) + "'");
  }
  return out;
}

std::string PredictorChoice::describe() const {
  switch (kind) {
    case Kind::kOracle:
      return "oracle";
    case Kind::kRegression:
      return "regression:" + model_path;
    case Kind::kConstant:
      return "constant:" + std::to_string(k) + (m ? "," + std::to_string(*m) : "");
  }
  return "unknown";
}

UniverseChoice UniverseChoice::parse(std::string_view text) {
  const auto [kind, arg] = split_kind(text);
  UniverseChoice out;
  if (arg.empty()) {
    throw ParseError("universe must be toric:<A file>, oracle:<padding> or file:<path>, got '" + std::string(text) +
                     "'");
  }
  if (kind == "toric") {
    out.kind = Kind::kToric;
    out.path = std::string(arg);
  } else if (kind == "oracle") {
    out.kind = Kind::kOracle;
    out.padding = parse_count(arg, "padding");
  } else if (kind == "file") {
    out.kind = Kind::kFile;
    out.path = std::string(arg);
  } else {
    throw ParseError("unknown universe kind '" + std::string(kind) + "'");
  }
  return out;
}

std::string UniverseChoice::describe() const {
  switch (kind) {
    case Kind::kToric:
      return "toric:" + path;
    case Kind::kOracle:
      return "oracle:" + std::to_string(padding);
    case Kind::kFile:
      return "file:" + path;
    case Kind::kProvided:
      return "provided";
  }
  return "unknown";
}

std::string Verdict::describe() const {
  std::ostringstream out;
  out << "violators: ";
  if (!violators_empty) {
    out << "n/a";
  } else if (*violators_empty) {
    out << "none";
  } else {
    out << "element " << *violator;
  }
  out << "; groebner: " << (groebner.is_basis ? "ok" : groebner.witness ? groebner.witness->describe() : "failed");
  out << "; minimal: ";
  if (minimal) {
    out << "ok";
  } else {
    out << "init(C" << divisible_pair->first << ") divides init(C" << divisible_pair->second << ")";
  }
  return out.str();
}

Verdict verify(std::span<const Polynomial> candidate, const GeneratorSet& generators) {
  Verdict v;
  v.groebner = is_groebner_basis(candidate, generators);
  for (std::size_t i = 0; i < candidate.size() && v.minimal; ++i) {
    for (std::size_t j = 0; j < candidate.size(); ++j) {
      if (i != j && candidate[i].leading_monomial().divides(candidate[j].leading_monomial())) {
        v.minimal = false;
        v.divisible_pair = {i, j};
        break;
      }
    }
  }
  return v;
}

Verdict verify(const GroebnerViolatorSpace& space, std::span<const ElementId> basis, const GeneratorSet& generators) {
  std::vector<Polynomial> candidate;
  candidate.reserve(basis.size());
  for (ElementId id : basis) candidate.push_back(space.element(id));
  Verdict v = verify(candidate, generators);
  v.violators_empty = true;
  const Subset sorted = make_subset(std::vector<ElementId>(basis.begin(), basis.end()));
  for (ElementId h = 0; h < space.size(); ++h) {
    if (std::binary_search(sorted.begin(), sorted.end(), h)) continue;
    if (space.in_violator_set(h, sorted)) {
      v.violators_empty = false;
      v.violator = h;
      break;
    }
  }
  return v;
}

std::vector<Monomial> RunReport::initial_monomials() const {
  std::vector<Monomial> out;
  for (const auto& f : basis) out.push_back(f.leading_monomial());
  return out;
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["basis"] = nlohmann::json::array();
  for (const auto& f : basis) j["basis"].push_back(to_string(f));
  j["initial_monomials"] = nlohmann::json::array();
  for (const auto& m : initial_monomials()) j["initial_monomials"].push_back(to_string(m));
  j["k_predicted"] = k_predicted;
  j["m_predicted"] = m_predicted;
  j["prediction_source"] = std::string(to_string(source));
  j["k_used"] = k_used;
  j["m_used"] = m_used;
  j["delta_actual"] = delta_actual ? nlohmann::json(*delta_actual) : nlohmann::json(nullptr);
  j["universe_size"] = universe_size;
  j["primitive_queries"] = primitive_queries;
  j["rounds"] = rounds;
  j["escalations"] = escalations;
  j["verified"] = verified;
  j["seed"] = seed;
  j["safety"] = safety;
  j["multiplicity_policy"] = std::string(kMultiplicityPolicy);
  j["universe"] = universe;
  j["predictor"] = predictor;
  j["wall_ms"] = wall_ms;
  return j.dump(2);
}

RunReport run_spark(const GeneratorSet& generators, const PipelineConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (generators.generators.empty()) throw std::invalid_argument("run_spark: empty generator set");
  if (!(config.safety > 0) || !std::isfinite(config.safety)) throw std::invalid_argument("safety factor must be > 0");

  RunReport report;
  report.seed = config.seed;
  report.safety = config.safety;
  report.universe = config.universe.describe();
  report.predictor = config.predictor.describe();

  const Prediction prediction = make_predictor(config)->predict(generators);
  report.k_predicted = prediction.k;
  report.m_predicted = prediction.m;
  report.source = prediction.source;
  if (prediction.source == PredictionSource::kOracle) report.delta_actual = prediction.k;

  std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(static_cast<double>(prediction.k) * config.safety - 1e-9)));
  std::size_t m = prediction.m;

  const UniverseBuilder builder(generators, config);
  std::size_t generation = 0;
  auto space = builder.build(m, generation);

  // Membership in <F> for universes that do not guarantee it.
  std::optional<std::vector<Polynomial>> ideal_basis;
  auto in_ideal = [&](const Polynomial& c) {
    if (!ideal_basis) {
      BuchbergerOptions fast;
      fast.strategy = PairStrategy::kDegree;
      fast.use_criteria = true;
      ideal_basis = buchberger(generators, fast).polynomials();
    }
    return remainder(c, *ideal_basis).is_zero();
  };

  std::optional<ClarksonSolver> solver;
  std::uint64_t retired_queries = 0;
  std::string last_failure;
  std::vector<Polynomial> last_basis;
  const SparkBasisOptions basis_options{config.round_cap};

  for (std::size_t attempt = 0;; ++attempt) {
    if (!solver) {
      solver.emplace(*space, gb_clarkson_options(*space, k, basis_options), derive_seed(config.seed, attempt));
    } else {
      solver->set_delta(k);
    }

    bool grow_k = false;
    bool capped = false;
    try {
      SparkBasisResult result = spark_basis(*space, *solver);
      report.rounds += result.stats.rounds;
      const Verdict verdict = verify(*space, result.stats.basis, generators);
      std::optional<std::size_t> outside;
      if (verdict.passed() && !builder.contained_by_construction()) {
        for (std::size_t i = 0; i < result.basis.size() && !outside; ++i) {
          if (!in_ideal(result.basis[i])) outside = i;
        }
      }
      const bool within = result.basis.size() <= k;
      if (verdict.passed() && !outside && within) {
        report.basis = std::move(result.basis);
        report.k_used = k;
        report.m_used = m;
        report.universe_size = space->size();
        report.primitive_queries = retired_queries + solver->oracle().queries();
        report.verified = true;
        report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return report;
      }
      last_basis = std::move(result.basis);
      if (!verdict.passed()) {
        last_failure = verdict.describe();
      } else if (outside) {
        last_failure = "basis element " + std::to_string(*outside) + " is not in the input ideal";
      } else {
        last_failure = "basis size " + std::to_string(last_basis.size()) + " exceeds k = " + std::to_string(k);
      }
      grow_k = verdict.passed() && !outside && !within;
    } catch (const RoundCapExceeded& e) {
      report.rounds += config.round_cap;
      last_failure = e.what();
      grow_k = true;
      capped = true;
    }

    auto describe = [&](const std::string& why) {
      std::ostringstream msg;
      msg << why << " after " << report.escalations << " escalation(s) (k=" << k << ", m=" << m
          << ", |H|=" << space->size() << "); last failure: " << last_failure;
      if (!last_basis.empty()) {
        msg << "; last basis:";
        for (const auto& f : last_basis) msg << " [" << to_string(f) << "]";
      }
      return msg.str();
    };
    if (report.escalations >= config.max_escalations) {
      if (capped) throw RoundCapExceeded(describe("round cap hit with the escalation budget spent"));
      throw EscalationExhausted(describe("escalation budget exhausted"));
    }
    ++report.escalations;
    if (grow_k) {
      k *= 2;
      continue;
    }
    if (!builder.rebuildable()) throw EscalationExhausted(describe("universe cannot be rebuilt"));
    ++m;
    retired_queries += solver->oracle().queries();
    solver.reset();
    space = builder.build(m, ++generation);
  }
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 paired points");
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw std::invalid_argument("loglog_slope: all sizes equal");
  return sxy / sxx;
}

ScalingSweep query_scaling(const GeneratorSet& generators, const std::vector<std::size_t>& sizes,
                           std::size_t seeds, std::uint64_t seed, unsigned threads) {
  if (sizes.empty() || seeds == 0) throw std::invalid_argument("query_scaling: need sizes and seeds");
  ScalingSweep sweep;
  sweep.delta = oracle_predict(generators).k;
  const std::size_t base = oracle_universe(generators, 0, seed).size();

  struct Job {
    std::size_t point;
    std::size_t run;
  };
  std::vector<Job> jobs;
  sweep.points.resize(sizes.size());
  std::vector<std::vector<std::size_t>> actual(sizes.size(), std::vector<std::size_t>(seeds));
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    sweep.points[p].target_size = sizes[p];
    sweep.points[p].queries.assign(seeds, 0);
    for (std::size_t r = 0; r < seeds; ++r) jobs.push_back({p, r});
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto [p, r] = jobs[i];
      try {
        const std::uint64_t run_seed = derive_seed(seed, sizes[p] * 1'000'003ULL + r);
        const std::size_t padding = sizes[p] > base ? sizes[p] - base : 0;
        const GroebnerViolatorSpace space = oracle_universe(generators, padding, run_seed);
        const SparkBasisResult result = spark_basis(space, sweep.delta, derive_seed(run_seed, 1));
        actual[p][r] = space.size();
        sweep.points[p].queries[r] = result.stats.primitive_queries;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    auto& point = sweep.points[p];
    double size_sum = 0;
    double query_sum = 0;
    for (std::size_t r = 0; r < seeds; ++r) {
      size_sum += static_cast<double>(actual[p][r]);
      query_sum += static_cast<double>(point.queries[r]);
    }
    point.mean_size = size_sum / static_cast<double>(seeds);
    point.mean_queries = query_sum / static_cast<double>(seeds);
    xs.push_back(point.mean_size);
    ys.push_back(std::max(1.0, point.mean_queries));
  }
  sweep.slope = loglog_slope(xs, ys);
  return sweep;
}

}  // namespace spark
