#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "spark/monomial.hpp"

namespace spark {

/// Coefficients are exact rationals. Over a prime field they are kept as
/// integers in [0, p).
using Coefficient = mpq_class;

/// The coefficient field K: either QQ or F_p.
class Field {
 public:
  static Field rationals() { return Field(0); }
  /// Throws std::invalid_argument unless p is prime.
  static Field prime(std::uint64_t p);
  /// Accepts "QQ" or "Fp:<p>".
  static Field parse(std::string_view text);

  bool is_prime_field() const { return characteristic_ != 0; }
  std::uint64_t characteristic() const { return characteristic_; }
  std::string name() const;

  /// Maps a rational into the field's canonical representation. Throws
  /// std::domain_error if the denominator vanishes mod p.
  Coefficient embed(const mpq_class& value) const;

  Coefficient add(const Coefficient& a, const Coefficient& b) const;
  Coefficient sub(const Coefficient& a, const Coefficient& b) const;
  Coefficient mul(const Coefficient& a, const Coefficient& b) const;
  Coefficient neg(const Coefficient& a) const;
  /// Throws std::domain_error on zero.
  Coefficient inv(const Coefficient& a) const;
  Coefficient div(const Coefficient& a, const Coefficient& b) const { return mul(a, inv(b)); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : characteristic_(p) {}
  Coefficient reduce(const mpz_class& v) const;

  std::uint64_t characteristic_;
};

/// The ambient ring K[x1..xn] with its fixed monomial order.
struct Ring {
  std::size_t nvars;
  Field field;
  MonomialOrder order;

  /// "vars=n order=<ord> field=<f>" as used by the ideal and universe files.
  std::string header() const;
  friend bool operator==(const Ring&, const Ring&) = default;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::size_t nvars, Field field = Field::rationals(),
                  MonomialOrder order = MonomialOrder());

struct Term {
  Coefficient coeff;
  Monomial monomial;
};

/// A polynomial in canonical form: terms strictly decreasing in the ring's
/// order, no zero coefficients. The zero polynomial has no terms.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);
  /// Sorts, merges like monomials and drops zeros.
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial constant(RingPtr ring, const Coefficient& c);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Coefficient& c = 1);

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.size() == 1 && terms_[0].monomial.is_one(); }

  /// init(f) with its coefficient. Throws std::invalid_argument("no initial
  /// term") on the zero polynomial.
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  const Coefficient& leading_coefficient() const { return leading_term().coeff; }

  /// Largest total degree over all terms; 0 for the zero polynomial.
  std::uint64_t total_degree() const;
  bool is_homogeneous() const;

  /// Scaled to leading coefficient 1; zero stays zero.
  Polynomial monic() const;
  Polynomial scale(const Coefficient& c) const;
  Polynomial mul_term(const Coefficient& c, const Monomial& m) const;

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend Polynomial operator-(const Polynomial& f);
  friend bool operator==(const Polynomial& f, const Polynomial& g);

  /// this - c * m * g, merging in a single pass.
  Polynomial sub_mul(const Coefficient& c, const Monomial& m, const Polynomial& g) const;

 private:
  friend struct PolynomialAccess;
  void check_same_ring(const Polynomial& other) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Total order on polynomials of one ring: term by term, monomials under the
/// ring order, then coefficients numerically; a proper prefix sorts first.
std::strong_ordering canonical_compare(const Polynomial& a, const Polynomial& b);
struct CanonicalLess {
  bool operator()(const Polynomial& a, const Polynomial& b) const {
    return canonical_compare(a, b) < 0;
  }
};

struct Division {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division of f by the list G. Always reduces the largest
/// reducible monomial with the first divisor in list order, so
/// f = sum q_i g_i + r and no monomial of r is divisible by any init(g_i).
Division normal_form(const Polynomial& f, std::span<const Polynomial> divisors);
/// Same remainder as normal_form, without building quotients.
Polynomial remainder(const Polynomial& f, std::span<const Polynomial> divisors);

/// S(f, g) = (L / init f) f / lc(f) - (L / init g) g / lc(g), L the lcm of
/// the initial monomials. Throws on zero input.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// Parses the text grammar: terms joined by + / -, each an optional integer
/// or rational coefficient followed by *-separated powers such as x3^2.
/// Throws ParseError.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);
std::string to_string(const Polynomial& f);
std::string to_string(const Coefficient& c);

}  // namespace spark
