#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spark/polynomial.hpp"

namespace spark {

/// An ideal presentation <f_0, ..., f_{s-1}>. Generator indices are the
/// lineage leaves.
struct GeneratorSet {
  RingPtr ring;
  std::vector<Polynomial> generators;

  std::size_t size() const { return generators.size(); }
};

/// Overrides applied on top of a file header.
struct RingOverrides {
  std::optional<MonomialOrder> order;
  std::optional<Field> field;
};

/// Parses "vars=n order=<ord> field=<f>"; order defaults to grevlex and field
/// to QQ when omitted.
RingPtr parse_ring_header(std::string_view line, const RingOverrides& overrides = {});

/// Ideal and universe files share one layout: a header line followed by one
/// polynomial per line. Blank lines and lines starting with '#' are skipped.
struct PolynomialFile {
  RingPtr ring;
  std::vector<Polynomial> polynomials;
};

PolynomialFile read_polynomial_file(std::istream& in, const RingOverrides& overrides = {});
PolynomialFile read_polynomial_file(const std::string& path, const RingOverrides& overrides = {});
void write_polynomial_file(std::ostream& out, const Ring& ring,
                           const std::vector<Polynomial>& polynomials);

/// Reads an ideal file; zero generators are rejected.
GeneratorSet read_ideal(const std::string& path, const RingOverrides& overrides = {});
GeneratorSet parse_ideal(std::string_view text, const RingOverrides& overrides = {});
GeneratorSet make_generator_set(const RingPtr& ring, const std::vector<std::string>& generators);

}  // namespace spark
