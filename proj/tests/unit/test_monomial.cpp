#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "spark/monomial.hpp"
#include "spark/random.hpp"

using namespace spark;

namespace {

// Graded reverse lex by the textbook rule: higher degree wins; on a tie the
// rightmost nonzero entry of a - b is negative iff a is larger.
int grevlex_reference(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0;
  int db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    const int diff = a[i] - b[i];
    if (diff != 0) return diff < 0 ? 1 : -1;
  }
  return 0;
}

int lex_reference(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

int sign(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

std::vector<std::vector<int>> all_exponents(std::size_t n, int max_degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(rec, 0, max_degree);
  return out;
}

Monomial to_monomial(const std::vector<int>& e) {
  std::vector<Exponent> x(e.begin(), e.end());
  return Monomial(std::span<const Exponent>(x));
}

Monomial random_small(std::size_t n, std::mt19937_64& rng) {
  return random_monomial(n, uniform_below(6, rng), rng);
}

}  // namespace

TEST_CASE("lex compares the first exponent first") {
  const MonomialOrder lex(OrderKind::kLex);
  CHECK(lex.compare(Monomial{1, 0}, Monomial{0, 5}) > 0);
  CHECK(lex.compare(Monomial{2, 3}, Monomial{2, 3}) == 0);
}

TEST_CASE("grevlex puts xy above z^2") {
  const MonomialOrder grevlex(OrderKind::kGrevlex);
  CHECK(grevlex.compare(Monomial{1, 1, 0}, Monomial{0, 0, 2}) > 0);
}

TEST_CASE("grevlex matches the reference rule on all pairs of degree <= 4 in 3 variables") {
  const MonomialOrder grevlex(OrderKind::kGrevlex);
  const auto exps = all_exponents(3, 4);
  REQUIRE(exps.size() == 35);
  for (const auto& a : exps) {
    for (const auto& b : exps) {
      REQUIRE(sign(grevlex.compare(to_monomial(a), to_monomial(b))) == grevlex_reference(a, b));
    }
  }
}

TEST_CASE("lex and grlex match reference comparators") {
  const MonomialOrder lex(OrderKind::kLex);
  const MonomialOrder grlex(OrderKind::kGrlex);
  const auto exps = all_exponents(3, 3);
  for (const auto& a : exps) {
    for (const auto& b : exps) {
      REQUIRE(sign(lex.compare(to_monomial(a), to_monomial(b))) == lex_reference(a, b));
      const int da = a[0] + a[1] + a[2];
      const int db = b[0] + b[1] + b[2];
      const int expected = da != db ? (da > db ? 1 : -1) : lex_reference(a, b);
      REQUIRE(sign(grlex.compare(to_monomial(a), to_monomial(b))) == expected);
    }
  }
}

TEST_CASE("variable precedence permutes the lex order") {
  const MonomialOrder order(OrderKind::kLex, {2, 0, 1});
  CHECK(order.compare(Monomial{0, 0, 1}, Monomial{5, 5, 0}) > 0);
  CHECK(order.compare(Monomial{1, 0, 0}, Monomial{0, 7, 0}) > 0);
}

TEST_CASE("order axioms hold on random triples") {
  std::mt19937_64 rng(11);
  for (OrderKind kind : {OrderKind::kLex, OrderKind::kGrlex, OrderKind::kGrevlex}) {
    const MonomialOrder order(kind);
    const Monomial one(4);
    for (int trial = 0; trial < 1000; ++trial) {
      const Monomial a = random_small(4, rng);
      const Monomial b = random_small(4, rng);
      const Monomial c = random_small(4, rng);
      const auto ab = order.compare(a, b);
      REQUIRE(sign(ab) == -sign(order.compare(b, a)));
      REQUIRE((ab == 0) == (a == b));
      if (ab < 0 && order.compare(b, c) < 0) REQUIRE(order.compare(a, c) < 0);
      REQUIRE(sign(order.compare(a * c, b * c)) == sign(ab));
      REQUIRE(order.compare(one, a) <= 0);
    }
  }
}

TEST_CASE("compare rejects an arity mismatch") {
  const MonomialOrder order;
  CHECK_THROWS_AS((void)order.compare(Monomial{1, 2}, Monomial{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("order names parse") {
  CHECK(MonomialOrder::parse("lex").kind() == OrderKind::kLex);
  CHECK(MonomialOrder::parse("grlex").kind() == OrderKind::kGrlex);
  CHECK(MonomialOrder::parse("grevlex").name() == "grevlex");
  CHECK_THROWS(MonomialOrder::parse("revlex"));
}

TEST_CASE("divisibility, lcm, gcd and quotient") {
  const Monomial a{2, 1, 0};
  const Monomial b{1, 3, 1};
  CHECK(lcm(a, b) == Monomial{2, 3, 1});
  CHECK(gcd(a, b) == Monomial{1, 1, 0});
  CHECK(Monomial({1, 1, 0}).divides(a));
  CHECK_FALSE(a.divides(b));
  CHECK(quotient(lcm(a, b), a) == Monomial{0, 2, 1});
  CHECK_THROWS(quotient(a, b));
  CHECK(coprime(Monomial{1, 0, 0}, Monomial{0, 2, 1}));
  CHECK_FALSE(coprime(a, b));
  CHECK(to_string(Monomial{2, 0, 1}) == "x1^2*x3");
  CHECK(to_string(Monomial(3)) == "1");
}

TEST_CASE("count_monomials examples") {
  CHECK(count_monomials(3, 0, CountMode::kUpToDegree) == 1);
  CHECK(count_monomials(3, 2, CountMode::kUpToDegree) == 10);
  CHECK(count_monomials(2, 3, CountMode::kExactDegree) == 4);
  CHECK(count_monomials(3, 7, CountMode::kUpToDegree) == 120);
  CHECK_THROWS(count_monomials(0, 2, CountMode::kUpToDegree));
  CHECK_THROWS(count_monomials(2, -1, CountMode::kExactDegree));
}

TEST_CASE("count_monomials equals enumeration for n <= 5, d <= 8") {
  for (long n = 1; n <= 5; ++n) {
    for (long d = 0; d <= 8; ++d) {
      const auto exps = all_exponents(static_cast<std::size_t>(n), static_cast<int>(d));
      std::size_t exact = 0;
      for (const auto& e : exps) {
        int s = 0;
        for (int x : e) s += x;
        exact += s == d;
      }
      REQUIRE(count_monomials(n, d, CountMode::kUpToDegree) == exps.size());
      REQUIRE(count_monomials(n, d, CountMode::kExactDegree) == exact);
      REQUIRE(monomials_up_to_degree(static_cast<std::size_t>(n), static_cast<std::size_t>(d)).size() == exps.size());
      REQUIRE(monomials_of_degree(static_cast<std::size_t>(n), static_cast<std::size_t>(d)).size() == exact);
    }
  }
}

TEST_CASE("random_monomial hits the requested degree and covers the simplex") {
  std::mt19937_64 rng(5);
  std::set<std::vector<Exponent>> seen;
  for (int i = 0; i < 2000; ++i) {
    const Monomial m = random_monomial(3, 2, rng);
    REQUIRE(m.degree() == 2);
    seen.insert(std::vector<Exponent>(m.exponents().begin(), m.exponents().end()));
  }
  CHECK(seen.size() == 6);
}
