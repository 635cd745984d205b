#include <doctest.h>

#include <random>

#include "spark/buchberger.hpp"
#include "spark/errors.hpp"
#include "spark/predictor.hpp"
#include "toy_spaces.hpp"

using namespace spark;
using spark::testing::monomial_strings;
using spark::testing::worked_example_ideal;

TEST_CASE("worked example: four tracked elements and their lineages") {
  const GeneratorSet f = worked_example_ideal();
  const GroebnerBasisResult gb = buchberger(f);
  REQUIRE(gb.size() == 4);
  const char* lineages[] = {"0", "1", "(0,1)", "((0,1),0)"};
  const char* polys[] = {"x1^2 - x2", "x1^3 - x3", "x1*x2 - x3", "x2^2 - x1*x3"};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(gb.elements[i].lineage.to_string() == lineages[i]);
    CHECK(to_string(gb.elements[i].poly) == polys[i]);
  }
  CHECK(longest_lineage(gb) == 2);
  CHECK(longest_lineage(gb, LineageMeasure::kLeafCount) == 3);
  const GroebnerBasisResult minimal = minimalize(gb);
  CHECK(minimal.size() == 3);
  CHECK(minimal.minimal);
  CHECK(monomial_strings(minimal.initial_monomials()) == std::vector<std::string>{"x1*x2", "x1^2", "x2^2"});
}

TEST_CASE("reduced basis of the worked example") {
  const GroebnerBasisResult r = reduced_groebner_basis(worked_example_ideal());
  REQUIRE(r.size() == 3);
  CHECK(r.reduced);
  CHECK(to_string(r.elements[0].poly) == "x1^2 - x2");
  CHECK(to_string(r.elements[1].poly) == "x1*x2 - x3");
  CHECK(to_string(r.elements[2].poly) == "x2^2 - x1*x3");
}

TEST_CASE("lineage parse and print") {
  const Lineage l = Lineage::parse("((0,1),0)");
  CHECK(l.to_string() == "((0,1),0)");
  CHECK(l.depth() == 2);
  CHECK(l.leaf_count() == 3);
  CHECK(l == Lineage::pair(Lineage::pair(Lineage::leaf(0), Lineage::leaf(1)), Lineage::leaf(0)));
  CHECK(l.left().right().leaf_index() == 1);
  CHECK_THROWS_AS(Lineage::parse("(0,"), ParseError);
  CHECK_THROWS_AS(Lineage::parse("(0,1)x"), ParseError);
}

TEST_CASE("unit ideal collapses to {1}") {
  const RingPtr r = make_ring(2);
  const GroebnerBasisResult gb = reduced_groebner_basis(make_generator_set(r, {"x1*x2 - 1", "x1"}));
  REQUIRE(gb.size() == 1);
  CHECK(gb.elements[0].poly.is_constant());
}

TEST_CASE("minimal basis size does not depend on strategy or criteria") {
  RandomIdealParams params;
  params.count = 30;
  params.degree = 5;
  params.seed = 21;
  for (const auto& f : random_binomial_ideals(params)) {
    const auto a = minimalize(buchberger(f));
    BuchbergerOptions fast;
    fast.strategy = PairStrategy::kDegree;
    fast.use_criteria = true;
    const auto b = minimalize(buchberger(f, fast));
    const auto c = reduced_groebner_basis(f, fast);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == c.size());
    REQUIRE(monomial_strings(a.initial_monomials()) == monomial_strings(c.initial_monomials()));
    REQUIRE(is_groebner_basis(c.polynomials(), f).is_basis);
  }
}

TEST_CASE("is_groebner_basis reports witnesses") {
  const GeneratorSet f = worked_example_ideal();
  auto basis = reduced_groebner_basis(f).polynomials();
  CHECK(is_groebner_basis(basis, f).is_basis);

  // The generators alone fail the S-pair test.
  const GroebnerCertificate gens = is_groebner_basis(f.generators, f);
  CHECK_FALSE(gens.is_basis);
  REQUIRE(gens.witness);
  CHECK(gens.witness->kind == GroebnerWitness::Kind::kSPair);

  // Two elements of the reduced basis miss the third generator of init(I).
  const std::vector<Polynomial> partial = {basis[1], basis[2]};
  const GroebnerCertificate missing = is_groebner_basis(partial, f);
  CHECK_FALSE(missing.is_basis);
  REQUIRE(missing.witness);
}

TEST_CASE("minimal_generators of a monomial set") {
  const MonomialOrder order;
  const auto gens = minimal_generators({Monomial{2, 0}, Monomial{2, 1}, Monomial{0, 3}, Monomial{2, 0}}, order);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0] == Monomial{0, 3});
  CHECK(gens[1] == Monomial{2, 0});
}

TEST_CASE("resource caps raise") {
  const RingPtr r = make_ring(3);
  const GeneratorSet f = make_generator_set(r, {"x1^5 - x2*x3^2", "x2^4 - x1*x3^3", "x3^5 - x1^2*x2"});
  BuchbergerOptions tiny;
  tiny.max_pairs = 2;
  CHECK_THROWS_AS(buchberger(f, tiny), ResourceCapExceeded);
}
