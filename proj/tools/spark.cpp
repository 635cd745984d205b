#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spark/buchberger.hpp"
#include "spark/errors.hpp"
#include "spark/gb_violator.hpp"
#include "spark/ideal.hpp"
#include "spark/pipeline.hpp"
#include "spark/predictor.hpp"
#include "spark/universe.hpp"

namespace {

using namespace spark;

constexpr int kExitBadInput = 1;
constexpr int kExitEscalation = 2;
constexpr int kExitInternalCap = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::string order;
  std::string field;
  std::string stats;
  bool quiet = false;

  RingOverrides overrides() const {
    RingOverrides o;
    if (!order.empty()) o.order = MonomialOrder::parse(order);
    if (!field.empty()) o.field = Field::parse(field);
    return o;
  }
};

void write_stats(const Globals& g, const std::string& json) {
  if (g.stats.empty()) return;
  std::ofstream out(g.stats);
  if (!out) throw std::runtime_error("cannot write stats to '" + g.stats + "'");
  out << json << '\n';
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw ParseError("bad size '" + item + "'");
    }
  }
  if (out.empty()) throw ParseError("empty size list");
  return out;
}

std::string basis_lines(const std::vector<Polynomial>& basis) {
  std::string out;
  for (const auto& f : basis) out += to_string(f) + '\n';
  return out;
}

struct UniverseSource {
  std::string toric;
  std::size_t degree = 2;
  std::string input;
  std::optional<std::size_t> padding;
  std::string file;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--toric", toric, "toric matrix file (rows cols, then entries)");
    cmd->add_option("--degree", degree, "degree bound for --toric")->capture_default_str();
    cmd->add_option("--input", input, "ideal file for --oracle");
    cmd->add_option("--oracle", padding, "oracle universe padding");
    cmd->add_option("--file", file, "universe file");
  }

  GroebnerViolatorSpace build(const Globals& g) const {
    const int sources = (!toric.empty()) + padding.has_value() + (!file.empty());
    if (sources != 1) throw ParseError("give exactly one of --toric, --oracle, --file");
    if (!file.empty()) return read_universe(file, g.overrides());
    if (padding) {
      if (input.empty()) throw ParseError("--oracle needs --input");
      return oracle_universe(read_ideal(input, g.overrides()), *padding, g.seed);
    }
    const ToricMatrix a = ToricMatrix::read(toric);
    const RingOverrides o = g.overrides();
    return toric_universe(a, degree,
                          make_ring(a.cols(), o.field.value_or(Field::rationals()), o.order.value_or(MonomialOrder())));
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Groebner bases by Clarkson sampling over a violator space"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--order", g.order, "monomial order override: lex, grlex, grevlex");
  app.add_option("--field", g.field, "field override: QQ or Fp:<p>");
  app.add_option("--stats", g.stats, "write JSON statistics to this path");
  app.add_flag("--quiet", g.quiet, "suppress human-readable output");

  // compute
  auto* compute = app.add_subcommand("compute", "run the sampling pipeline on an ideal");
  std::string c_input;
  std::string c_universe = "oracle:50";
  std::string c_predictor = "oracle";
  PipelineConfig c_config;
  compute->add_option("--input", c_input, "ideal file")->required();
  compute->add_option("--universe", c_universe, "toric:<A>, oracle:<padding> or file:<path>")->capture_default_str();
  compute->add_option("--predictor", c_predictor, "oracle, regression:<model> or constant:<k>[,<m>]")
      ->capture_default_str();
  compute->add_option("--safety", c_config.safety, "multiplier applied to the predicted k")->capture_default_str();
  compute->add_option("--max-escalations", c_config.max_escalations, "escalation budget")->capture_default_str();
  compute->add_option("--degree-slack", c_config.degree_slack, "added to the generator degree when m is not predicted")
      ->capture_default_str();
  compute->add_option("--round-cap", c_config.round_cap, "sampling rounds allowed per call")->capture_default_str();

  // buchberger
  auto* bb = app.add_subcommand("buchberger", "reference Buchberger run with lineages");
  std::string b_input;
  std::string b_strategy = "first-come";
  bool b_lineages = false;
  bool b_criteria = false;
  bb->add_option("--input", b_input, "ideal file")->required();
  bb->add_option("--strategy", b_strategy, "first-come or degree")->capture_default_str();
  bb->add_flag("--lineages", b_lineages, "print the lineage of every tracked element");
  bb->add_flag("--criteria", b_criteria, "skip pairs by the product and chain criteria");

  // universe
  auto* uni = app.add_subcommand("universe", "build, prune and inspect universes");
  UniverseSource u_source;
  u_source.add_options(uni);
  bool u_count_only = false;
  std::optional<std::size_t> u_prune_terms;
  std::optional<std::uint64_t> u_prune_degree;
  std::string u_output;
  uni->add_flag("--count-only", u_count_only, "print sizes only");
  uni->add_option("--prune-terms", u_prune_terms, "drop elements with more terms");
  uni->add_option("--prune-degree", u_prune_degree, "drop elements of higher total degree");
  uni->add_option("--output", u_output, "write the universe to this file");

  // dataset
  auto* ds = app.add_subcommand("dataset", "generate labeled random binomial ideals");
  RandomIdealParams d_params;
  std::string d_output;
  unsigned d_threads = 0;
  ds->add_option("--vars", d_params.nvars, "variables")->capture_default_str();
  ds->add_option("--gens", d_params.generators, "binomials per ideal")->capture_default_str();
  ds->add_option("--degree", d_params.degree, "total degree of each binomial")->capture_default_str();
  ds->add_option("--count", d_params.count, "number of ideals")->capture_default_str();
  ds->add_option("--threads", d_threads, "labeling workers (0 = all cores)");
  ds->add_option("--output", d_output, "JSONL output path")->required();

  // train
  auto* tr = app.add_subcommand("train", "fit the regression predictor");
  std::string t_dataset;
  std::string t_model;
  double t_holdout = 0.2;
  tr->add_option("--dataset", t_dataset, "JSONL dataset")->required();
  tr->add_option("--model", t_model, "model output path")->required();
  tr->add_option("--holdout", t_holdout, "fraction held out for r^2")->capture_default_str()->check(CLI::Range(0.0, 0.9));

  // predict
  auto* pr = app.add_subcommand("predict", "predict k and m for an ideal");
  std::string p_model;
  std::string p_input;
  pr->add_option("--model", p_model, "model file")->required();
  pr->add_option("--input", p_input, "ideal file")->required();

  // axioms
  auto* ax = app.add_subcommand("axioms", "randomized violator axiom check on a universe");
  UniverseSource a_source;
  a_source.add_options(ax);
  std::size_t a_trials = 1000;
  ax->add_option("--trials", a_trials, "number of trials")->capture_default_str();

  // bench
  auto* bn = app.add_subcommand("bench", "primitive-query count against universe size");
  std::string n_input;
  std::string n_sizes = "100,200,400,800,1600,3200";
  std::size_t n_seeds = 20;
  unsigned n_threads = 0;
  bn->add_option("--input", n_input, "ideal file")->required();
  bn->add_option("--sizes", n_sizes, "comma-separated universe sizes")->capture_default_str();
  bn->add_option("--seeds", n_seeds, "runs per size")->capture_default_str();
  bn->add_option("--threads", n_threads, "workers (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitBadInput;
  }

  std::ostream& out = std::cout;
  if (*compute) {
    const GeneratorSet f = read_ideal(c_input, g.overrides());
    c_config.predictor = PredictorChoice::parse(c_predictor);
    c_config.universe = UniverseChoice::parse(c_universe);
    c_config.seed = g.seed;
    const RunReport report = run_spark(f, c_config);
    write_stats(g, report.to_json());
    if (!g.quiet) {
      out << basis_lines(report.basis);
      out << "# size " << report.basis.size() << ", k " << report.k_used << ", m " << report.m_used << ", |H| "
          << report.universe_size << ", queries " << report.primitive_queries << ", escalations "
          << report.escalations << ", verified " << (report.verified ? "yes" : "no") << '\n';
    }
  } else if (*bb) {
    const GeneratorSet f = read_ideal(b_input, g.overrides());
    BuchbergerOptions options;
    if (b_strategy == "degree") {
      options.strategy = PairStrategy::kDegree;
    } else if (b_strategy != "first-come") {
      throw ParseError("strategy must be first-come or degree");
    }
    options.use_criteria = b_criteria;
    const GroebnerBasisResult basis = buchberger(f, options);
    const GroebnerBasisResult minimal = minimalize(basis);
    nlohmann::json stats;
    stats["tracked"] = basis.size();
    stats["minimal_size"] = minimal.size();
    stats["longest_lineage_depth"] = longest_lineage(basis, LineageMeasure::kDepth);
    stats["longest_lineage_leaves"] = longest_lineage(basis, LineageMeasure::kLeafCount);
    stats["pairs_processed"] = basis.stats.pairs_processed;
    stats["zero_reductions"] = basis.stats.zero_reductions;
    write_stats(g, stats.dump(2));
    if (!g.quiet) {
      for (const auto& e : basis.elements) {
        if (b_lineages) out << e.lineage.to_string() << '\t';
        out << to_string(e.poly) << '\n';
      }
      out << "# tracked " << basis.size() << ", minimal " << minimal.size() << ", longest lineage depth "
          << stats["longest_lineage_depth"] << '\n';
    }
  } else if (*uni) {
    GroebnerViolatorSpace space = u_source.build(g);
    std::size_t removed = 0;
    if (u_prune_terms || u_prune_degree) {
      PruneResult pruned = prune_universe(space, u_prune_terms, u_prune_degree);
      removed = pruned.removed;
      space = std::move(pruned.space);
    }
    bool homogeneous = true;
    std::uint64_t degree = 0;
    for (const auto& p : space.elements()) {
      homogeneous = homogeneous && p.is_homogeneous();
      degree = std::max(degree, p.total_degree());
    }
    if (!u_source.toric.empty()) degree = u_source.degree;
    const Ring& ring = *space.ring();
    std::optional<std::uint64_t> field_size;
    if (ring.field.is_prime_field()) field_size = ring.field.characteristic();
    const UniverseSizeBound bound = universe_size_bound(static_cast<long>(ring.nvars), static_cast<long>(degree),
                                                        field_size, homogeneous);
    nlohmann::json stats;
    stats["universe_size"] = space.size();
    stats["removed"] = removed;
    stats["degree"] = degree;
    stats["monomials"] = bound.monomials.get_str();
    stats["pair_bound"] = bound.pairs.get_str();
    stats["homogeneous"] = homogeneous;
    if (bound.gamma) stats["gamma"] = bound.gamma->get_str();
    write_stats(g, stats.dump(2));
    if (!u_output.empty()) {
      std::ofstream file(u_output);
      if (!file) throw std::runtime_error("cannot write '" + u_output + "'");
      write_universe(file, space);
    }
    if (!g.quiet) {
      if (!u_count_only && u_output.empty()) write_universe(out, space);
      out << "|H| = " << space.size() << '\n';
      out << "monomials of degree <= " << degree << ": " << bound.monomials.get_str() << '\n';
      out << "pair bound" << (homogeneous ? " (homogeneous)" : "") << ": " << bound.pairs.get_str() << '\n';
      if (bound.gamma) out << "subset bound: 2^" << bound.gamma->get_str() << '\n';
      if (removed > 0) out << "pruned " << removed << " element(s); the result may no longer contain a Groebner basis\n";
    }
  } else if (*ds) {
    const RingOverrides o = g.overrides();
    if (o.order) d_params.order = *o.order;
    if (o.field) d_params.field = *o.field;
    d_params.seed = g.seed;
    const auto dataset = generate_random_binomial_ideals(d_params, d_threads);
    std::ofstream file(d_output);
    if (!file) throw std::runtime_error("cannot write '" + d_output + "'");
    write_dataset(file, dataset);
    if (!g.quiet) out << "wrote " << dataset.size() << " labeled ideals to " << d_output << '\n';
  } else if (*tr) {
    std::ifstream file(t_dataset);
    if (!file) throw ParseError("cannot open '" + t_dataset + "'");
    const auto dataset = read_dataset(file);
    const auto cut = static_cast<std::size_t>(static_cast<double>(dataset.size()) * (1.0 - t_holdout));
    const std::vector<LabeledIdeal> train(dataset.begin(), dataset.begin() + static_cast<std::ptrdiff_t>(cut));
    const std::vector<LabeledIdeal> heldout(dataset.begin() + static_cast<std::ptrdiff_t>(cut), dataset.end());
    const RegressionModel model = fit(train, g.seed);
    save_model(t_model, model);
    const auto r2 = heldout.empty() ? std::nullopt : evaluate(model, heldout);
    nlohmann::json stats;
    stats["train_size"] = train.size();
    stats["heldout_size"] = heldout.size();
    stats["r2_k"] = r2 ? nlohmann::json(*r2) : nlohmann::json(nullptr);
    stats["ridge"] = model.ridge;
    write_stats(g, stats.dump(2));
    if (!g.quiet) {
      out << "trained on " << train.size() << ", held out " << heldout.size() << '\n';
      out << "held-out r^2 (k): " << (r2 ? std::to_string(*r2) : std::string("undefined")) << '\n';
    }
  } else if (*pr) {
    const RegressionModel model = load_model(p_model);
    const Prediction p = predict(model, read_ideal(p_input, g.overrides()));
    if (!g.quiet) out << "k " << p.k << "\nm " << p.m << '\n';
  } else if (*ax) {
    const GroebnerViolatorSpace space = a_source.build(g);
    std::mt19937_64 rng(g.seed);
    const AxiomReport report = check_axioms(space, a_trials, rng);
    nlohmann::json stats;
    stats["trials"] = report.trials;
    stats["locality_premises"] = report.locality_premises;
    stats["passed"] = report.passed();
    if (report.failure) stats["failure"] = report.failure->describe();
    write_stats(g, stats.dump(2));
    if (!g.quiet) {
      out << "|H| = " << space.size() << ", trials " << report.trials << ", locality premises "
          << report.locality_premises << '\n';
      out << (report.passed() ? "all axioms hold" : "FAILED: " + report.failure->describe()) << '\n';
    }
    return report.passed() ? 0 : kExitBadInput;
  } else if (*bn) {
    const GeneratorSet f = read_ideal(n_input, g.overrides());
    const ScalingSweep sweep = query_scaling(f, parse_sizes(n_sizes), n_seeds, g.seed, n_threads);
    nlohmann::json stats;
    stats["delta"] = sweep.delta;
    stats["slope"] = sweep.slope;
    stats["points"] = nlohmann::json::array();
    for (const auto& p : sweep.points) {
      stats["points"].push_back(
          {{"target_size", p.target_size}, {"mean_size", p.mean_size}, {"mean_queries", p.mean_queries}});
    }
    write_stats(g, stats.dump(2));
    if (!g.quiet) {
      out << "delta " << sweep.delta << '\n';
      out << std::setw(8) << "|H|" << std::setw(14) << "mean |H|" << std::setw(16) << "mean queries" << '\n';
      for (const auto& p : sweep.points) {
        out << std::setw(8) << p.target_size << std::setw(14) << std::fixed << std::setprecision(1) << p.mean_size
            << std::setw(16) << p.mean_queries << '\n';
      }
      out << "log-log slope " << std::setprecision(3) << sweep.slope << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const spark::EscalationExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEscalation;
  } catch (const spark::RoundCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternalCap;
  } catch (const spark::ResourceCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternalCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
}
