#include "spark/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace spark {

Monomial::Monomial(std::size_t nvars) : exps_(nvars, 0) {}

Monomial::Monomial(std::initializer_list<Exponent> exponents)
    : Monomial(std::span<const Exponent>(exponents.begin(), exponents.size())) {}

Monomial::Monomial(std::span<const Exponent> exponents)
    : exps_(exponents.begin(), exponents.end()) {
  degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("monomial arity mismatch");
  Monomial out = a;
  for (std::size_t i = 0; i < a.exps_.size(); ++i) out.exps_[i] += b.exps_[i];
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("monomial arity mismatch");
  std::vector<Exponent> e(a.arity());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(e);
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("monomial arity mismatch");
  std::vector<Exponent> e(a.arity());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(a[i], b[i]);
  return Monomial(e);
}

Monomial quotient(const Monomial& a, const Monomial& b) {
  if (!b.divides(a)) throw std::invalid_argument("monomial quotient: divisor does not divide");
  std::vector<Exponent> e(a.arity());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] - b[i];
  return Monomial(e);
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a[i] != 0 && b[i] != 0) return false;
  }
  return true;
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x';
    out += std::to_string(i + 1);
    if (m[i] > 1) {
      out += '^';
      out += std::to_string(m[i]);
    }
  }
  return out;
}

bool MonomialKeyLess::operator()(const Monomial& a, const Monomial& b) const {
  auto ea = a.exponents();
  auto eb = b.exponents();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence)
    : kind_(kind), precedence_(std::move(precedence)) {
  if (!precedence_.empty()) {
    std::vector<std::size_t> sorted = precedence_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i) throw std::invalid_argument("variable precedence is not a permutation");
    }
  }
}

MonomialOrder MonomialOrder::parse(std::string_view name) {
  if (name == "lex") return MonomialOrder(OrderKind::kLex);
  if (name == "grlex") return MonomialOrder(OrderKind::kGrlex);
  if (name == "grevlex") return MonomialOrder(OrderKind::kGrevlex);
  throw std::invalid_argument("unknown monomial order '" + std::string(name) + "'");
}

std::string_view MonomialOrder::name() const {
  switch (kind_) {
    case OrderKind::kLex: return "lex";
    case OrderKind::kGrlex: return "grlex";
    case OrderKind::kGrevlex: return "grevlex";
  }
  return "?";
}

std::strong_ordering MonomialOrder::compare_lex(const Monomial& a, const Monomial& b) const {
  for (std::size_t r = 0; r < a.arity(); ++r) {
    const std::size_t v = variable_at(r);
    if (a[v] != b[v]) return a[v] <=> b[v];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a.arity() != b.arity()) throw std::invalid_argument("monomial arity mismatch");
  if (!precedence_.empty() && precedence_.size() != a.arity()) {
    throw std::invalid_argument("monomial arity does not match the order's variable count");
  }
  switch (kind_) {
    case OrderKind::kLex:
      return compare_lex(a, b);
    case OrderKind::kGrlex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      return compare_lex(a, b);
    case OrderKind::kGrevlex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      // Smaller exponent in the least significant differing variable wins.
      for (std::size_t r = a.arity(); r-- > 0;) {
        const std::size_t v = variable_at(r);
        if (a[v] != b[v]) return b[v] <=> a[v];
      }
      return std::strong_ordering::equal;
  }
  return std::strong_ordering::equal;
}

mpz_class count_monomials(long n, long d, CountMode mode) {
  if (n < 1 || d < 0) throw std::invalid_argument("count_monomials: need n >= 1 and d >= 0");
  mpz_class out;
  if (mode == CountMode::kExactDegree) {
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(d + n - 1),
                 static_cast<unsigned long>(d));
  } else {
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(d + n),
                 static_cast<unsigned long>(n));
  }
  return out;
}

namespace {

void fill_degree(std::size_t var, std::size_t remaining, std::vector<Exponent>& scratch,
                 std::vector<Monomial>& out) {
  if (var + 1 == scratch.size()) {
    scratch[var] = static_cast<Exponent>(remaining);
    out.emplace_back(std::span<const Exponent>(scratch));
    return;
  }
  for (std::size_t e = remaining + 1; e-- > 0;) {
    scratch[var] = static_cast<Exponent>(e);
    fill_degree(var + 1, remaining - e, scratch, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t n, std::size_t d) {
  if (n == 0) throw std::invalid_argument("monomials_of_degree: n must be positive");
  std::vector<Monomial> out;
  std::vector<Exponent> scratch(n, 0);
  fill_degree(0, d, scratch, out);
  return out;
}

std::vector<Monomial> monomials_up_to_degree(std::size_t n, std::size_t d) {
  std::vector<Monomial> out;
  for (std::size_t e = 0; e <= d; ++e) {
    auto layer = monomials_of_degree(n, e);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace spark
