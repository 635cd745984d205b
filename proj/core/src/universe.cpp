#include "spark/universe.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "spark/buchberger.hpp"
#include "spark/errors.hpp"
#include "spark/random.hpp"

namespace spark {

ToricMatrix::ToricMatrix(std::size_t rows, std::size_t cols, std::vector<long> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ < 2) throw std::invalid_argument("toric matrix needs >= 1 row and >= 2 columns");
  if (entries_.size() != rows_ * cols_) throw std::invalid_argument("toric matrix entry count mismatch");
}

ToricMatrix ToricMatrix::parse(std::istream& in) {
  long rows = 0;
  long cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0) {
    throw ParseError("toric matrix: expected 'rows cols' header");
  }
  std::vector<long> entries(static_cast<std::size_t>(rows * cols));
  for (auto& e : entries) {
    if (!(in >> e)) throw ParseError("toric matrix: expected " + std::to_string(rows * cols) + " integers");
  }
  std::string extra;
  if (in >> extra) throw ParseError("toric matrix: trailing token '" + extra + "'");
  try {
    return ToricMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

ToricMatrix ToricMatrix::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse(in);
}

bool ToricMatrix::has_zero_column() const {
  for (std::size_t c = 0; c < cols_; ++c) {
    bool zero = true;
    for (std::size_t r = 0; r < rows_; ++r) zero = zero && at(r, c) == 0;
    if (zero) return true;
  }
  return false;
}

std::vector<long> ToricMatrix::image(const Monomial& u) const {
  if (u.arity() != cols_) throw std::invalid_argument("toric image: arity mismatch");
  std::vector<long> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += at(r, c) * static_cast<long>(u[c]);
  }
  return out;
}

bool in_toric_ideal(const ToricMatrix& a, const Polynomial& f) {
  std::map<std::vector<long>, Coefficient> sums;
  const Field& field = f.ring().field;
  for (const auto& t : f.terms()) {
    auto [it, inserted] = sums.emplace(a.image(t.monomial), t.coeff);
    if (!inserted) it->second = field.add(it->second, t.coeff);
  }
  return std::all_of(sums.begin(), sums.end(), [](const auto& kv) { return sgn(kv.second) == 0; });
}

GroebnerViolatorSpace toric_universe(const ToricMatrix& a, std::size_t d, const RingPtr& ring) {
  if (ring->nvars != a.cols()) throw std::invalid_argument("toric universe: ring has wrong variable count");
  if (d < 1) throw std::invalid_argument("toric universe: degree bound must be >= 1");
  std::map<std::vector<long>, std::vector<Monomial>> fibers;
  for (auto& m : monomials_up_to_degree(a.cols(), d)) fibers[a.image(m)].push_back(std::move(m));

  std::vector<Polynomial> binomials;
  const Coefficient minus_one = ring->field.neg(1);
  for (const auto& [image, fiber] : fibers) {
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      for (std::size_t j = i + 1; j < fiber.size(); ++j) {
        // The Polynomial constructor sorts, so the larger monomial leads; monic
        // fixes the sign.
        binomials.push_back(Polynomial(ring, {Term{1, fiber[i]}, Term{minus_one, fiber[j]}}).monic());
      }
    }
  }
  std::sort(binomials.begin(), binomials.end(), CanonicalLess{});
  return GroebnerViolatorSpace(ring, std::move(binomials));
}

GroebnerViolatorSpace oracle_universe(const GeneratorSet& generators, std::size_t padding,
                                      std::uint64_t seed, const OracleUniverseOptions& options) {
  const RingPtr& ring = generators.ring;
  BuchbergerOptions fast;
  fast.strategy = PairStrategy::kDegree;
  fast.use_criteria = true;
  const auto gb = reduced_groebner_basis(generators, fast).polynomials();

  std::vector<Polynomial> elements = gb;
  for (const auto& g : generators.generators) elements.push_back(g.monic());
  std::set<Polynomial, CanonicalLess> seen;
  for (const auto& e : elements) seen.insert(e);

  std::mt19937_64 rng(seed);
  std::size_t degree = options.multiplier_degree;
  std::size_t added = 0;
  std::size_t duplicates_in_a_row = 0;
  const std::size_t budget = options.max_attempts_factor * (padding + 1);
  for (std::size_t attempt = 0; added < padding && attempt < budget; ++attempt) {
    const Polynomial& g1 = gb[uniform_below(gb.size(), rng)];
    const Polynomial& g2 = gb[uniform_below(gb.size(), rng)];
    const Monomial m1 = random_monomial(ring->nvars, uniform_below(degree + 1, rng), rng);
    const Monomial m2 = random_monomial(ring->nvars, uniform_below(degree + 1, rng), rng);
    Polynomial h = g1.mul_term(1, m1) + g2.mul_term(1, m2);
    if (h.is_zero()) continue;
    if (seen.insert(h.monic()).second) {
      elements.push_back(h.monic());
      ++added;
      duplicates_in_a_row = 0;
    } else if (++duplicates_in_a_row > 20) {
      ++degree;
      duplicates_in_a_row = 0;
    }
  }
  return GroebnerViolatorSpace(ring, std::move(elements));
}

UniverseSizeBound universe_size_bound(long n, long d, std::optional<std::uint64_t> field_size,
                                      bool homogeneous) {
  if (n < 1 || d < 0) throw std::invalid_argument("universe_size_bound: need n >= 1 and d >= 0");
  UniverseSizeBound out;
  out.monomials = count_monomials(n, d, CountMode::kUpToDegree);
  auto choose2 = [](const mpz_class& c) -> mpz_class { return c * (c - 1) / 2; };
  if (homogeneous) {
    out.pairs = 0;
    for (long e = 0; e <= d; ++e) out.pairs += choose2(count_monomials(n, e, CountMode::kExactDegree));
  } else {
    out.pairs = choose2(out.monomials);
  }
  if (field_size) {
    mpz_class l;
    const std::uint64_t v = *field_size;
    mpz_import(l.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    out.gamma = l * out.monomials;
  }
  return out;
}

PruneResult prune_universe(const GroebnerViolatorSpace& space, std::optional<std::size_t> max_terms,
                           std::optional<std::uint64_t> degree_cap) {
  std::vector<Polynomial> kept;
  std::size_t removed = 0;
  for (const auto& p : space.elements()) {
    const bool too_long = max_terms && p.size() > *max_terms;
    const bool too_high = degree_cap && p.total_degree() > *degree_cap;
    if (too_long || too_high) {
      ++removed;
    } else {
      kept.push_back(p);
    }
  }
  return PruneResult{GroebnerViolatorSpace(space.ring(), std::move(kept)), removed, removed > 0};
}

GroebnerViolatorSpace read_universe(const std::string& path, const RingOverrides& overrides) {
  PolynomialFile file = read_polynomial_file(path, overrides);
  return GroebnerViolatorSpace(file.ring, std::move(file.polynomials));
}

void write_universe(std::ostream& out, const GroebnerViolatorSpace& space) {
  write_polynomial_file(out, *space.ring(), space.elements());
}

}  // namespace spark
