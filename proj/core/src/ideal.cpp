#include "spark/ideal.hpp"

#include <fstream>
#include <sstream>

#include "spark/errors.hpp"

namespace spark {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

RingPtr parse_ring_header(std::string_view line, const RingOverrides& overrides) {
  std::optional<std::size_t> nvars;
  MonomialOrder order;
  Field field = Field::rationals();
  std::istringstream words{std::string(line)};
  std::string word;
  while (words >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw ParseError("header token '" + word + "' is not key=value");
    const std::string key = word.substr(0, eq);
    const std::string value = word.substr(eq + 1);
    try {
      if (key == "vars") {
        nvars = std::stoul(value);
      } else if (key == "order") {
        order = MonomialOrder::parse(value);
      } else if (key == "field") {
        field = Field::parse(value);
      } else {
        throw ParseError("unknown header key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError("bad header value '" + word + "': " + e.what());
    }
  }
  if (!nvars || *nvars == 0) throw ParseError("header must declare vars=n with n >= 1");
  if (overrides.order) order = *overrides.order;
  if (overrides.field) field = *overrides.field;
  return make_ring(*nvars, field, order);
}

PolynomialFile read_polynomial_file(std::istream& in, const RingOverrides& overrides) {
  PolynomialFile out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    try {
      if (!out.ring) {
        out.ring = parse_ring_header(body, overrides);
      } else {
        out.polynomials.push_back(parse_polynomial(body, out.ring));
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::domain_error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!out.ring) throw ParseError("missing header line 'vars=n order=<ord> field=<f>'");
  return out;
}

PolynomialFile read_polynomial_file(const std::string& path, const RingOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_polynomial_file(in, overrides);
}

void write_polynomial_file(std::ostream& out, const Ring& ring,
                           const std::vector<Polynomial>& polynomials) {
  out << ring.header() << '\n';
  for (const auto& p : polynomials) out << to_string(p) << '\n';
}

namespace {

GeneratorSet to_generator_set(PolynomialFile file) {
  if (file.polynomials.empty()) throw ParseError("ideal has no generators");
  for (std::size_t i = 0; i < file.polynomials.size(); ++i) {
    if (file.polynomials[i].is_zero()) {
      throw ParseError("generator " + std::to_string(i) + " is zero");
    }
  }
  return GeneratorSet{std::move(file.ring), std::move(file.polynomials)};
}

}  // namespace

GeneratorSet read_ideal(const std::string& path, const RingOverrides& overrides) {
  return to_generator_set(read_polynomial_file(path, overrides));
}

GeneratorSet parse_ideal(std::string_view text, const RingOverrides& overrides) {
  std::istringstream in{std::string(text)};
  return to_generator_set(read_polynomial_file(in, overrides));
}

GeneratorSet make_generator_set(const RingPtr& ring, const std::vector<std::string>& generators) {
  GeneratorSet out{ring, {}};
  for (const auto& g : generators) out.generators.push_back(parse_polynomial(g, ring));
  return out;
}

}  // namespace spark
