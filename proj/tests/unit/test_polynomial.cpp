#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "spark/errors.hpp"
#include "spark/polynomial.hpp"
#include "spark/random.hpp"

using namespace spark;

namespace {

using Dense = std::map<std::vector<Exponent>, mpq_class>;

Dense dense(const Polynomial& f) {
  Dense out;
  for (const auto& t : f.terms()) out[{t.monomial.exponents().begin(), t.monomial.exponents().end()}] = t.coeff;
  return out;
}

// Schoolbook product on exponent maps, independent of the merge code.
Dense expand(const Polynomial& f, const Polynomial& g) {
  Dense out;
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      std::vector<Exponent> e(a.monomial.arity());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.monomial[i] + b.monomial[i];
      out[e] += a.coeff * b.coeff;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Polynomial random_poly(const RingPtr& ring, std::size_t terms, std::size_t degree, std::mt19937_64& rng) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < terms; ++i) {
    const long c = static_cast<long>(uniform_below(11, rng)) - 5;
    ts.push_back(Term{ring->field.embed(c), random_monomial(ring->nvars, uniform_below(degree + 1, rng), rng)});
  }
  return Polynomial(ring, std::move(ts));
}

bool strictly_decreasing(const Polynomial& f) {
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (!f.ring().order.less(f.terms()[i].monomial, f.terms()[i - 1].monomial)) return false;
  }
  for (const auto& t : f.terms()) {
    if (t.coeff == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("leading term under grevlex") {
  const RingPtr r = make_ring(3);
  const Polynomial f = parse_polynomial("x1^2 - x2", r);
  CHECK(f.leading_monomial() == Monomial{2, 0, 0});
  CHECK(f.leading_coefficient() == 1);
  const Polynomial c = Polynomial::constant(r, 7);
  CHECK(c.leading_coefficient() == 7);
  CHECK(c.leading_monomial().is_one());
  CHECK(parse_polynomial("x1*x2 - x3", r).leading_monomial() == Monomial{1, 1, 0});
  CHECK_THROWS_WITH_AS((void)Polynomial(r).leading_term(), "no initial term", std::invalid_argument);
}

TEST_CASE("ring arithmetic examples") {
  const RingPtr r = make_ring(2);
  const Polynomial f = parse_polynomial("x1^2 - x2", r);
  CHECK(f + parse_polynomial("x2", r) == parse_polynomial("x1^2", r));
  CHECK((f * Polynomial(r)).is_zero());
  const Polynomial p = parse_polynomial("x1 + x2", r) * parse_polynomial("x1 - x2", r);
  CHECK(p == parse_polynomial("x1^2 - x2^2", r));
  CHECK(dense(p) == expand(parse_polynomial("x1 + x2", r), parse_polynomial("x1 - x2", r)));
  CHECK_THROWS_AS(f + parse_polynomial("x1", make_ring(3)), std::invalid_argument);
}

TEST_CASE("products agree with term-by-term expansion") {
  std::mt19937_64 rng(3);
  const RingPtr r = make_ring(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial f = random_poly(r, 5, 4, rng);
    const Polynomial g = random_poly(r, 5, 4, rng);
    const Polynomial h = f * g;
    REQUIRE(strictly_decreasing(h));
    REQUIRE(dense(h) == expand(f, g));
  }
}

TEST_CASE("arithmetic is exact and distributive") {
  std::mt19937_64 rng(4);
  for (const Field field : {Field::rationals(), Field::prime(101)}) {
    const RingPtr r = make_ring(3, field);
    for (int trial = 0; trial < 200; ++trial) {
      const Polynomial f = random_poly(r, 4, 3, rng).scale(field.embed(mpq_class(1, 3)));
      const Polynomial g = random_poly(r, 4, 3, rng);
      const Polynomial h = random_poly(r, 3, 2, rng);
      REQUIRE((f + g) - g == f);
      REQUIRE(f * (g + h) == f * g + f * h);
      REQUIRE(strictly_decreasing(f + g));
    }
  }
}

TEST_CASE("prime field coefficients") {
  const Field f = Field::prime(7);
  CHECK(f.add(5, 4) == 2);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.embed(mpq_class(1, 2)) == 4);
  CHECK(f.neg(1) == 6);
  CHECK_THROWS(f.inv(0));
  CHECK_THROWS(Field::prime(12));
  CHECK(Field::parse("Fp:101").characteristic() == 101);
  CHECK(Field::parse("QQ") == Field::rationals());
  const RingPtr r = make_ring(2, f);
  CHECK(parse_polynomial("3*x1 + 2", r).monic() == parse_polynomial("x1 + 3", r));
}

TEST_CASE("normal form of x^3 - z by x^2 - y") {
  const RingPtr r = make_ring(3);
  const Polynomial f = parse_polynomial("x1^3 - x3", r);
  const std::vector<Polynomial> g = {parse_polynomial("x1^2 - x2", r)};
  const Division d = normal_form(f, g);
  CHECK(d.quotients[0] == parse_polynomial("x1", r));
  CHECK(d.remainder == parse_polynomial("x1*x2 - x3", r));
  CHECK(dense(f) == dense(d.quotients[0] * g[0] + d.remainder));
  CHECK(remainder(f, g) == d.remainder);

  const std::vector<Polynomial> x2 = {parse_polynomial("x1^2", r)};
  CHECK(normal_form(parse_polynomial("x2", r), x2).remainder == parse_polynomial("x2", r));
  CHECK(normal_form(f, std::vector<Polynomial>{}).remainder == f);
}

TEST_CASE("division identity and remainder irreducibility on random input") {
  std::mt19937_64 rng(9);
  const RingPtr r = make_ring(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial f = random_poly(r, 6, 5, rng);
    std::vector<Polynomial> g;
    for (int i = 0; i < 3; ++i) {
      Polynomial p = random_poly(r, 3, 3, rng);
      if (!p.is_zero()) g.push_back(p);
    }
    const Division d = normal_form(f, g);
    Polynomial sum = d.remainder;
    for (std::size_t i = 0; i < g.size(); ++i) {
      sum = sum + d.quotients[i] * g[i];
      if (!d.quotients[i].is_zero() && !f.is_zero()) {
        REQUIRE(r->order.compare((d.quotients[i] * g[i]).leading_monomial(), f.leading_monomial()) <= 0);
      }
    }
    REQUIRE(sum == f);
    for (const auto& t : d.remainder.terms()) {
      for (const auto& gi : g) REQUIRE_FALSE(gi.leading_monomial().divides(t.monomial));
    }
  }
}

TEST_CASE("S-polynomials from the worked example") {
  const RingPtr r = make_ring(3);
  const Polynomial f = parse_polynomial("x1^2 - x2", r);
  const Polynomial g = parse_polynomial("x1^3 - x3", r);
  const Polynomial s = s_polynomial(f, g);
  CHECK(s == parse_polynomial("-x1*x2 + x3", r));
  CHECK(s.monic() == parse_polynomial("x1*x2 - x3", r));
  CHECK(s_polynomial(f, f).is_zero());
  CHECK(s_polynomial(parse_polynomial("x1*x2 - x3", r), f) == parse_polynomial("x2^2 - x1*x3", r));
  CHECK_THROWS(s_polynomial(Polynomial(r), f));
}

TEST_CASE("S-polynomial cancels the lcm") {
  std::mt19937_64 rng(17);
  const RingPtr r = make_ring(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Polynomial f = random_poly(r, 3, 4, rng);
    const Polynomial g = random_poly(r, 3, 4, rng);
    if (f.is_zero() || g.is_zero()) continue;
    const Polynomial s = s_polynomial(f, g);
    if (s.is_zero()) continue;
    REQUIRE(r->order.less(s.leading_monomial(), lcm(f.leading_monomial(), g.leading_monomial())));
  }
}

TEST_CASE("parser and printer") {
  const RingPtr r = make_ring(3);
  CHECK(to_string(parse_polynomial("3/2*x1*x3 + 1", r)) == "3/2*x1*x3 + 1");
  CHECK(to_string(parse_polynomial("x3 + x1^2 - x2", r)) == "x1^2 - x2 + x3");
  CHECK(to_string(parse_polynomial("2 x1 x2", r)) == "2*x1*x2");
  CHECK(to_string(parse_polynomial("x1 - x1", r)) == "0");
  CHECK(parse_polynomial("-x2^2 + x1*x3", r).leading_coefficient() == -1);
  CHECK_THROWS_AS(parse_polynomial("x4", r), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 +", r), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1/0", r), ParseError);
  CHECK_THROWS_AS(parse_polynomial("1/0*x1", r), ParseError);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial f = random_poly(r, 4, 3, rng).scale(mpq_class(-5, 7));
    REQUIRE(parse_polynomial(to_string(f), r) == f);
  }
}

TEST_CASE("canonical compare is a strict total order") {
  const RingPtr r = make_ring(2);
  const Polynomial a = parse_polynomial("x1 - x2", r);
  const Polynomial b = parse_polynomial("x1 + x2", r);
  const Polynomial c = parse_polynomial("x1", r);
  CHECK(canonical_compare(a, a) == 0);
  CHECK(canonical_compare(a, b) < 0);
  CHECK(canonical_compare(c, a) < 0);
  CHECK(canonical_compare(b, a) > 0);
}
