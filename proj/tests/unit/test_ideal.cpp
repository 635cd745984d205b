#include <doctest.h>

#include <sstream>

#include "spark/errors.hpp"
#include "spark/ideal.hpp"

using namespace spark;

TEST_CASE("ring header defaults and overrides") {
  const RingPtr r = parse_ring_header("vars=3");
  CHECK(r->nvars == 3);
  CHECK(r->order.kind() == OrderKind::kGrevlex);
  CHECK(r->field == Field::rationals());
  const RingPtr s = parse_ring_header("vars=2 order=lex field=Fp:7", RingOverrides{MonomialOrder(OrderKind::kGrlex), {}});
  CHECK(s->order.kind() == OrderKind::kGrlex);
  CHECK(s->field.characteristic() == 7);
  CHECK(s->header() == "vars=2 order=grlex field=Fp:7");
  CHECK_THROWS_AS(parse_ring_header("order=lex"), ParseError);
  CHECK_THROWS_AS(parse_ring_header("vars=0"), ParseError);
  CHECK_THROWS_AS(parse_ring_header("vars=2 colour=red"), ParseError);
}

TEST_CASE("ideal files skip comments and blank lines") {
  const GeneratorSet f = parse_ideal("vars=3 order=grevlex field=QQ\n# worked example\n\nx1^2 - x2\nx1^3 - x3\n");
  REQUIRE(f.size() == 2);
  CHECK(to_string(f.generators[1]) == "x1^3 - x3");
}

TEST_CASE("ideal files reject zero and empty input") {
  CHECK_THROWS_AS(parse_ideal("vars=2\nx1 - x1\n"), ParseError);
  CHECK_THROWS_AS(parse_ideal("vars=2\n"), ParseError);
  CHECK_THROWS_AS(parse_ideal(""), ParseError);
  CHECK_THROWS_AS(parse_ideal("vars=2\nx3\n"), ParseError);
}

TEST_CASE("polynomial files round trip") {
  const GeneratorSet f = parse_ideal("vars=3 order=lex\nx1^2 - x2\n1/2*x3 + x1\n");
  std::stringstream buffer;
  write_polynomial_file(buffer, *f.ring, f.generators);
  const PolynomialFile back = read_polynomial_file(buffer);
  CHECK(*back.ring == *f.ring);
  REQUIRE(back.polynomials.size() == 2);
  CHECK(back.polynomials[0] == f.generators[0]);
  CHECK(back.polynomials[1] == f.generators[1]);
}
