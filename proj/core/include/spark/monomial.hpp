#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace spark {

using Exponent = std::uint32_t;

/// Dense exponent vector x^a over a fixed number of variables.
class Monomial {
 public:
  Monomial() = default;
  /// The unit monomial 1 in `nvars` variables.
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<Exponent> exponents);
  explicit Monomial(std::span<const Exponent> exponents);

  std::size_t arity() const { return exps_.size(); }
  std::uint64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::span<const Exponent> exponents() const { return {exps_.data(), exps_.size()}; }

  /// True when this monomial divides `other`.
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

 private:
  boost::container::small_vector<Exponent, 8> exps_;
  std::uint64_t degree_ = 0;
};

Monomial lcm(const Monomial& a, const Monomial& b);
Monomial gcd(const Monomial& a, const Monomial& b);
/// a / b; requires b | a.
Monomial quotient(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

/// Renders with variables x1..xn, e.g. "x1^2*x3"; the unit monomial is "1".
std::string to_string(const Monomial& m);

/// Structural (exponent-wise lexicographic) order, for use as a container key.
struct MonomialKeyLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

enum class OrderKind { kLex, kGrlex, kGrevlex };

/// A multiplicative well-order on monomials. `precedence[0]` is the most
/// significant variable; an empty precedence means x1 > x2 > ... > xn.
class MonomialOrder {
 public:
  explicit MonomialOrder(OrderKind kind = OrderKind::kGrevlex,
                         std::vector<std::size_t> precedence = {});

  /// Accepts "lex", "grlex", "grevlex".
  static MonomialOrder parse(std::string_view name);

  OrderKind kind() const { return kind_; }
  std::string_view name() const;
  const std::vector<std::size_t>& precedence() const { return precedence_; }

  /// Throws std::invalid_argument on arity mismatch.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  std::size_t variable_at(std::size_t rank) const {
    return precedence_.empty() ? rank : precedence_[rank];
  }
  std::strong_ordering compare_lex(const Monomial& a, const Monomial& b) const;

  OrderKind kind_;
  std::vector<std::size_t> precedence_;
};

enum class CountMode { kExactDegree, kUpToDegree };

/// Number of monomials in n variables of degree exactly d, C(d+n-1, d), or of
/// degree at most d, C(d+n, n). The frequently quoted "C(d+n, d) monomials of
/// degree exactly d" is in fact the up-to-degree count, since C(d+n, d) ==
/// C(d+n, n); both modes are exposed so callers pick explicitly.
mpz_class count_monomials(long n, long d, CountMode mode);

/// All exponent vectors of total degree exactly d in n variables, in
/// descending lex order of exponent vectors.
std::vector<Monomial> monomials_of_degree(std::size_t n, std::size_t d);
/// All monomials of degree <= d, grouped by ascending degree.
std::vector<Monomial> monomials_up_to_degree(std::size_t n, std::size_t d);

}  // namespace spark
