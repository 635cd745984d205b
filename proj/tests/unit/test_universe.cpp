#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "spark/buchberger.hpp"
#include "spark/errors.hpp"
#include "spark/universe.hpp"
#include "toy_spaces.hpp"

using namespace spark;
using namespace spark::testing;

namespace {

ToricMatrix twisted_cubic_matrix() { return ToricMatrix(2, 4, {3, 2, 1, 0, 0, 1, 2, 3}); }

}  // namespace

TEST_CASE("toric universe of the twisted cubic at degree 2") {
  const RingPtr r = make_ring(4);
  const auto space = toric_universe(twisted_cubic_matrix(), 2, r);
  REQUIRE(space.size() == 3);
  std::vector<std::string> got;
  for (const auto& p : space.elements()) got.push_back(to_string(p));
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::string>{"x2*x3 - x1*x4", "x2^2 - x1*x3", "x3^2 - x2*x4"});
  for (const auto& p : space.elements()) CHECK(in_toric_ideal(twisted_cubic_matrix(), p));
}

TEST_CASE("toric universe equals fiber enumeration") {
  const RingPtr r = make_ring(4);
  const ToricMatrix a = twisted_cubic_matrix();
  for (std::size_t d = 1; d <= 4; ++d) {
    std::map<std::vector<long>, std::size_t> fibers;
    for (const auto& m : monomials_up_to_degree(4, d)) ++fibers[a.image(m)];
    std::size_t pairs = 0;
    for (const auto& [b, c] : fibers) pairs += c * (c - 1) / 2;
    REQUIRE(toric_universe(a, d, r).size() == pairs);
  }
}

TEST_CASE("toric membership") {
  const RingPtr r = make_ring(4);
  const ToricMatrix a = twisted_cubic_matrix();
  CHECK(in_toric_ideal(a, parse_polynomial("x1*x3 - x2^2", r)));
  CHECK(in_toric_ideal(a, parse_polynomial("x1*x3 - x2^2 + 2*x1*x4 - 2*x2*x3", r)));
  CHECK_FALSE(in_toric_ideal(a, parse_polynomial("x1*x3 - x2*x3", r)));
  CHECK_FALSE(in_toric_ideal(a, parse_polynomial("x1", r)));
  CHECK(in_toric_ideal(a, Polynomial(r)));
}

TEST_CASE("toric matrix parsing") {
  std::istringstream good("2 4\n3 2 1 0\n0 1 2 3\n");
  const ToricMatrix a = ToricMatrix::parse(good);
  CHECK(a.rows() == 2);
  CHECK(a.at(1, 3) == 3);
  CHECK_FALSE(a.has_zero_column());
  std::istringstream short_input("2 4\n3 2 1\n");
  CHECK_THROWS_AS(ToricMatrix::parse(short_input), ParseError);
  std::istringstream extra("1 2\n1 1 5\n");
  CHECK_THROWS_AS(ToricMatrix::parse(extra), ParseError);
  CHECK(ToricMatrix(1, 2, {0, 1}).has_zero_column());
  CHECK_THROWS(toric_universe(a, 2, make_ring(3)));
}

TEST_CASE("size bounds") {
  const UniverseSizeBound b = universe_size_bound(3, 7, std::nullopt, false);
  CHECK(b.monomials == 120);
  CHECK(b.pairs == 7140);
  CHECK_FALSE(b.gamma);
  const UniverseSizeBound fp = universe_size_bound(2, 1, 5, false);
  REQUIRE(fp.gamma);
  CHECK(*fp.gamma == 15);
  CHECK_THROWS(universe_size_bound(0, 1, std::nullopt, false));
}

TEST_CASE("size bounds match enumeration for n <= 5, d <= 8") {
  for (long n = 1; n <= 5; ++n) {
    for (long d = 0; d <= 8; ++d) {
      const auto ms = monomials_up_to_degree(static_cast<std::size_t>(n), static_cast<std::size_t>(d));
      std::map<std::uint64_t, std::size_t> by_degree;
      for (const auto& m : ms) ++by_degree[m.degree()];
      std::size_t homogeneous = 0;
      for (const auto& [deg, c] : by_degree) homogeneous += c * (c - 1) / 2;
      const std::size_t all = ms.size() * (ms.size() - 1) / 2;
      REQUIRE(universe_size_bound(n, d, std::nullopt, false).pairs == all);
      REQUIRE(universe_size_bound(n, d, std::nullopt, true).pairs == homogeneous);
    }
  }
}

TEST_CASE("oracle universe lies in the ideal and contains its reduced basis") {
  const GeneratorSet f = worked_example_ideal();
  const auto space = oracle_universe(f, 100, 3);
  CHECK(space.size() >= 100);
  const auto gb = reduced_groebner_basis(f).polynomials();
  for (const auto& p : space.elements()) REQUIRE(remainder(p, gb).is_zero());
  for (const auto& g : gb) {
    CHECK(std::find(space.elements().begin(), space.elements().end(), g) != space.elements().end());
  }
  const auto again = oracle_universe(f, 100, 3);
  CHECK(again.elements() == space.elements());
}

TEST_CASE("pruning removes elements and flags the risk") {
  const auto space = oracle_universe(worked_example_ideal(), 50, 1);
  const PruneResult none = prune_universe(space, std::nullopt, std::nullopt);
  CHECK(none.removed == 0);
  CHECK_FALSE(none.containment_at_risk);
  const PruneResult low = prune_universe(space, std::nullopt, 2);
  CHECK(low.removed > 0);
  CHECK(low.containment_at_risk);
  for (const auto& p : low.space.elements()) CHECK(p.total_degree() <= 2);
  const PruneResult short_terms = prune_universe(space, 2, std::nullopt);
  for (const auto& p : short_terms.space.elements()) CHECK(p.size() <= 2);
}

TEST_CASE("universe files round trip") {
  const auto space = toric_universe(twisted_cubic_matrix(), 3, make_ring(4));
  std::stringstream buffer;
  write_universe(buffer, space);
  const PolynomialFile file = read_polynomial_file(buffer);
  const GroebnerViolatorSpace back(file.ring, file.polynomials);
  CHECK(back.elements() == space.elements());
}
