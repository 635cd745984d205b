#include "spark/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "spark/errors.hpp"

namespace spark {

// ---------------------------------------------------------------------------
// Field

Field Field::prime(std::uint64_t p) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) {
    throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  }
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "QQ") return rationals();
  if (text.starts_with("Fp:")) {
    std::uint64_t p = 0;
    auto body = text.substr(3);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    if (ec != std::errc() || ptr != body.data() + body.size()) {
      throw ParseError("bad field '" + std::string(text) + "'");
    }
    return prime(p);
  }
  throw ParseError("unknown field '" + std::string(text) + "' (expected QQ or Fp:<p>)");
}

std::string Field::name() const {
  return is_prime_field() ? "Fp:" + std::to_string(characteristic_) : "QQ";
}

Coefficient Field::reduce(const mpz_class& v) const {
  mpz_class p;
  mpz_set_ui(p.get_mpz_t(), characteristic_);
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return Coefficient(r);
}

Coefficient Field::embed(const mpq_class& value) const {
  if (!is_prime_field()) {
    Coefficient out = value;
    out.canonicalize();
    return out;
  }
  mpz_class p;
  mpz_set_ui(p.get_mpz_t(), characteristic_);
  mpz_class den = value.get_den();
  mpz_class den_inv;
  if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) {
    throw std::domain_error("denominator is zero in " + name());
  }
  return reduce(value.get_num() * den_inv);
}

Coefficient Field::add(const Coefficient& a, const Coefficient& b) const {
  if (!is_prime_field()) return a + b;
  return reduce(a.get_num() + b.get_num());
}

Coefficient Field::sub(const Coefficient& a, const Coefficient& b) const {
  if (!is_prime_field()) return a - b;
  return reduce(a.get_num() - b.get_num());
}

Coefficient Field::mul(const Coefficient& a, const Coefficient& b) const {
  if (!is_prime_field()) return a * b;
  return reduce(a.get_num() * b.get_num());
}

Coefficient Field::neg(const Coefficient& a) const {
  if (!is_prime_field()) return -a;
  return reduce(-a.get_num());
}

Coefficient Field::inv(const Coefficient& a) const {
  if (sgn(a) == 0) throw std::domain_error("division by zero coefficient");
  if (!is_prime_field()) return 1 / a;
  mpz_class p;
  mpz_set_ui(p.get_mpz_t(), characteristic_);
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), p.get_mpz_t());
  return Coefficient(r);
}

// ---------------------------------------------------------------------------
// Ring

std::string Ring::header() const {
  return "vars=" + std::to_string(nvars) + " order=" + std::string(order.name()) +
         " field=" + field.name();
}

RingPtr make_ring(std::size_t nvars, Field field, MonomialOrder order) {
  if (nvars == 0) throw std::invalid_argument("ring needs at least one variable");
  if (!order.precedence().empty() && order.precedence().size() != nvars) {
    throw std::invalid_argument("order precedence length differs from variable count");
  }
  return std::make_shared<const Ring>(Ring{nvars, field, std::move(order)});
}

// ---------------------------------------------------------------------------
// Polynomial

struct PolynomialAccess {
  static Polynomial from_sorted(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }
  static const std::vector<Term>& terms(const Polynomial& p) { return p.terms_; }
};

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("polynomial needs a ring");
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : Polynomial(std::move(ring)) {
  const Ring& r = *ring_;
  for (auto& t : terms) {
    if (t.monomial.arity() != r.nvars) throw std::invalid_argument("term arity mismatch");
    t.coeff = r.field.embed(t.coeff);
  }
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return r.order.compare(a.monomial, b.monomial) > 0;
  });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().monomial == t.monomial) {
      terms_.back().coeff = r.field.add(terms_.back().coeff, t.coeff);
      if (sgn(terms_.back().coeff) == 0) terms_.pop_back();
      continue;
    }
    if (sgn(t.coeff) != 0) terms_.push_back(std::move(t));
  }
}

Polynomial Polynomial::constant(RingPtr ring, const Coefficient& c) {
  const std::size_t n = ring->nvars;
  return Polynomial(std::move(ring), {Term{c, Monomial(n)}});
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Coefficient& c) {
  return Polynomial(std::move(ring), {Term{c, m}});
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::invalid_argument("no initial term");
  return terms_.front();
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_) {
    if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
  }
  return true;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scale(ring_->field.inv(leading_coefficient()));
}

Polynomial Polynomial::scale(const Coefficient& c) const {
  if (sgn(c) == 0) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({ring_->field.mul(t.coeff, c), t.monomial});
  return PolynomialAccess::from_sorted(ring_, std::move(out));
}

Polynomial Polynomial::mul_term(const Coefficient& c, const Monomial& m) const {
  if (sgn(c) == 0) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  // Multiplication by a monomial preserves the order of terms.
  for (const auto& t : terms_) out.push_back({ring_->field.mul(t.coeff, c), t.monomial * m});
  return PolynomialAccess::from_sorted(ring_, std::move(out));
}

void Polynomial::check_same_ring(const Polynomial& other) const {
  if (ring_ != other.ring_ && !(*ring_ == *other.ring_)) {
    throw std::invalid_argument("ring mismatch");
  }
}

namespace {

// Merges a with c*m*b; both descending. A null m means m = 1.
std::vector<Term> merge_scaled(const Ring& ring, std::span<const Term> a, const Coefficient& c,
                               const Monomial* m, std::span<const Term> b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  auto scaled = [&](std::size_t k) {
    return Term{ring.field.mul(b[k].coeff, c), m ? b[k].monomial * *m : b[k].monomial};
  };
  if (j < b.size() && i < a.size()) {
    Term bj = scaled(j);
    while (true) {
      auto order = ring.order.compare(a[i].monomial, bj.monomial);
      if (order > 0) {
        out.push_back(a[i++]);
        if (i == a.size()) break;
        continue;
      }
      if (order < 0) {
        out.push_back(std::move(bj));
      } else {
        Coefficient s = ring.field.add(a[i].coeff, bj.coeff);
        if (sgn(s) != 0) out.push_back({std::move(s), a[i].monomial});
        ++i;
      }
      ++j;
      if (i == a.size() || j == b.size()) break;
      bj = scaled(j);
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(scaled(j));
  return out;
}

}  // namespace

Polynomial operator+(const Polynomial& f, const Polynomial& g) {
  f.check_same_ring(g);
  return PolynomialAccess::from_sorted(
      f.ring_, merge_scaled(*f.ring_, f.terms_, Coefficient(1), nullptr, g.terms_));
}

Polynomial operator-(const Polynomial& f, const Polynomial& g) {
  f.check_same_ring(g);
  return PolynomialAccess::from_sorted(
      f.ring_, merge_scaled(*f.ring_, f.terms_, f.ring_->field.neg(1), nullptr, g.terms_));
}

Polynomial operator-(const Polynomial& f) { return f.scale(f.ring_->field.neg(1)); }

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  f.check_same_ring(g);
  std::vector<Term> acc;
  for (const auto& t : f.terms_) {
    acc = merge_scaled(*f.ring_, acc, t.coeff, &t.monomial, g.terms_);
  }
  return PolynomialAccess::from_sorted(f.ring_, std::move(acc));
}

bool operator==(const Polynomial& f, const Polynomial& g) {
  if (f.terms_.size() != g.terms_.size()) return false;
  if (f.ring_ != g.ring_ && !(*f.ring_ == *g.ring_)) return false;
  for (std::size_t i = 0; i < f.terms_.size(); ++i) {
    if (!(f.terms_[i].monomial == g.terms_[i].monomial) || f.terms_[i].coeff != g.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

Polynomial Polynomial::sub_mul(const Coefficient& c, const Monomial& m,
                               const Polynomial& g) const {
  check_same_ring(g);
  return PolynomialAccess::from_sorted(
      ring_, merge_scaled(*ring_, terms_, ring_->field.neg(c), &m, g.terms_));
}

std::strong_ordering canonical_compare(const Polynomial& a, const Polynomial& b) {
  const auto& order = a.ring().order;
  auto ta = a.terms();
  auto tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = order.compare(ta[i].monomial, tb[i].monomial); c != 0) return c;
    const int cc = cmp(ta[i].coeff, tb[i].coeff);
    if (cc != 0) return cc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return ta.size() <=> tb.size();
}

// ---------------------------------------------------------------------------
// Division

namespace {

template <bool kWithQuotients>
Division divide(const Polynomial& f, std::span<const Polynomial> divisors) {
  const RingPtr& ring_ptr = f.ring_ptr();
  const Ring& ring = *ring_ptr;
  for (const auto& g : divisors) {
    if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    if (!(g.ring() == ring)) throw std::invalid_argument("ring mismatch");
  }
  std::vector<Term> work = PolynomialAccess::terms(f);
  std::size_t head = 0;
  std::vector<Term> rem;
  std::vector<std::vector<Term>> quot(kWithQuotients ? divisors.size() : 0);

  while (head < work.size()) {
    const Term& lead = work[head];
    std::size_t which = divisors.size();
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (divisors[i].leading_monomial().divides(lead.monomial)) {
        which = i;
        break;
      }
    }
    if (which == divisors.size()) {
      rem.push_back(lead);
      ++head;
      continue;
    }
    const Polynomial& g = divisors[which];
    Coefficient c = ring.field.div(lead.coeff, g.leading_coefficient());
    Monomial m = quotient(lead.monomial, g.leading_monomial());
    auto gt = g.terms();
    // The leading terms cancel exactly; merge the remaining tails only.
    std::span<const Term> rest(work.data() + head + 1, work.size() - head - 1);
    std::vector<Term> next = merge_scaled(ring, rest, ring.field.neg(c), &m, gt.subspan(1));
    if constexpr (kWithQuotients) {
      // Quotient terms arrive in strictly decreasing order per divisor.
      quot[which].push_back({std::move(c), std::move(m)});
    }
    work = std::move(next);
    head = 0;
  }

  Division out{{}, PolynomialAccess::from_sorted(ring_ptr, std::move(rem))};
  if constexpr (kWithQuotients) {
    out.quotients.reserve(quot.size());
    for (auto& q : quot) out.quotients.push_back(PolynomialAccess::from_sorted(ring_ptr, std::move(q)));
  }
  return out;
}

}  // namespace

Division normal_form(const Polynomial& f, std::span<const Polynomial> divisors) {
  return divide<true>(f, divisors);
}

Polynomial remainder(const Polynomial& f, std::span<const Polynomial> divisors) {
  return divide<false>(f, divisors).remainder;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("S-polynomial of the zero polynomial");
  const Field& field = f.ring().field;
  Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  Polynomial left = f.mul_term(field.inv(f.leading_coefficient()), quotient(l, f.leading_monomial()));
  return left.sub_mul(field.inv(g.leading_coefficient()), quotient(l, g.leading_monomial()), g);
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Term t = parse_term();
      if (negative) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
    }
    return Polynomial(ring_, std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(text_) + "' at column " +
                     std::to_string(pos_ + 1) + ": " + what);
  }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) out += text_[pos_++];
    if (out.empty()) fail("expected digits");
    return out;
  }

  Term parse_term() {
    mpq_class coeff = 1;
    std::vector<Exponent> exps(ring_->nvars, 0);
    while (true) {
      skip_ws();
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        mpq_class value{mpz_class{digits()}};
        skip_ws();
        if (peek() == '/') {
          ++pos_;
          skip_ws();
          mpz_class den{digits()};
          if (den == 0) fail("zero denominator");
          value /= mpq_class(den);
        }
        coeff *= value;
      } else if (c == 'x') {
        ++pos_;
        const std::string idx = digits();
        const std::size_t var = std::stoul(idx);
        if (var < 1 || var > ring_->nvars) fail("variable x" + idx + " outside x1..x" + std::to_string(ring_->nvars));
        Exponent e = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          skip_ws();
          e = static_cast<Exponent>(std::stoul(digits()));
        }
        exps[var - 1] += e;
      } else {
        fail("expected a coefficient or a variable");
      }
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      // Implicit product, e.g. "3x1".
      if (peek() == 'x' || std::isdigit(static_cast<unsigned char>(peek()))) continue;
      break;
    }
    return Term{coeff, Monomial(std::span<const Exponent>(exps))};
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return PolyParser(text, ring).parse();
}

std::string to_string(const Coefficient& c) { return c.get_str(); }

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    const bool negative = sgn(t.coeff) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Coefficient mag = abs(t.coeff);
    if (t.monomial.is_one()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += to_string(t.monomial);
    } else {
      out += to_string(mag) + "*" + to_string(t.monomial);
    }
  }
  return out;
}

}  // namespace spark
