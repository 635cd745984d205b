#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include <gmpxx.h>

#include "spark/monomial.hpp"

namespace spark {

/// Uniform integer in [0, bound) by rejection. Unlike the standard
/// distributions its output does not depend on the standard library.
std::uint64_t uniform_below(std::uint64_t bound, std::mt19937_64& rng);
mpz_class uniform_below(const mpz_class& bound, std::mt19937_64& rng);

/// Independent child seed for item `index` of a seeded batch (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform exponent vector on the simplex of total degree `degree`.
Monomial random_monomial(std::size_t nvars, std::size_t degree, std::mt19937_64& rng);

}  // namespace spark
