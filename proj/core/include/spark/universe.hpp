#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "spark/gb_violator.hpp"
#include "spark/ideal.hpp"

namespace spark {

/// Integer matrix A (rows x cols); column i is the exponent vector of the
/// parameterization of variable x_{i+1}. Defines the toric ideal I_A.
class ToricMatrix {
 public:
  ToricMatrix(std::size_t rows, std::size_t cols, std::vector<long> entries);

  /// "rows cols" followed by row-major integers. Throws ParseError.
  static ToricMatrix parse(std::istream& in);
  static ToricMatrix read(const std::string& path);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  long at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  bool has_zero_column() const;

  /// A * u for an exponent vector u of length cols().
  std::vector<long> image(const Monomial& u) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<long> entries_;
};

/// Exact I_A membership: f lies in I_A iff, for every A-degree b, the
/// coefficients of the monomials x^u with A u = b sum to zero.
bool in_toric_ideal(const ToricMatrix& a, const Polynomial& f);

/// All binomials x^u - x^v with u != v, deg u, deg v <= d and A u = A v,
/// stored monic with the larger monomial leading, deduplicated, sorted by
/// canonical_compare.
GroebnerViolatorSpace toric_universe(const ToricMatrix& a, std::size_t d, const RingPtr& ring);

struct OracleUniverseOptions {
  /// Starting degree bound for the random multipliers m, m'. It grows by one
  /// whenever many draws in a row produce duplicates.
  std::size_t multiplier_degree = 2;
  std::size_t max_attempts_factor = 200;
};

/// Reduced Groebner basis of F, the monic generators, and `padding` extra
/// ideal elements m*g + m'*g' (g, g' from the reduced basis, m, m' random
/// monomials), deduplicated. May fall short of `padding` when the attempt
/// budget runs out.
GroebnerViolatorSpace oracle_universe(const GeneratorSet& generators, std::size_t padding,
                                      std::uint64_t seed, const OracleUniverseOptions& options = {});

struct UniverseSizeBound {
  mpz_class monomials;  // C(d+n, n): monomials of degree <= d
  mpz_class pairs;      // binomial universe size bound
  /// l * C(d+n, n) when the field is finite with l elements; the subset
  /// bound 2^gamma is reported by its exponent only and never materialized.
  std::optional<mpz_class> gamma;
};

UniverseSizeBound universe_size_bound(long n, long d, std::optional<std::uint64_t> field_size,
                                      bool homogeneous);

struct PruneResult {
  GroebnerViolatorSpace space;
  std::size_t removed = 0;
  /// Set when anything was removed: the result may no longer contain a
  /// Groebner basis.
  bool containment_at_risk = false;
};

PruneResult prune_universe(const GroebnerViolatorSpace& space, std::optional<std::size_t> max_terms,
                           std::optional<std::uint64_t> degree_cap);

GroebnerViolatorSpace read_universe(const std::string& path, const RingOverrides& overrides = {});
void write_universe(std::ostream& out, const GroebnerViolatorSpace& space);

}  // namespace spark
