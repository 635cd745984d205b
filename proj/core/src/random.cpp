#include "spark/random.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace spark {

std::uint64_t uniform_below(std::uint64_t bound, std::mt19937_64& rng) {
  if (bound <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

mpz_class uniform_below(const mpz_class& bound, std::mt19937_64& rng) {
  if (bound <= 1) return 0;
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  while (true) {
    mpz_class x = 0;
    for (std::size_t have = 0; have < bits; have += 64) {
      const std::uint64_t word = rng();
      mpz_class chunk;
      mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      x <<= 64;
      x += chunk;
    }
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), bits);
    if (x < bound) return x;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Monomial random_monomial(std::size_t nvars, std::size_t degree, std::mt19937_64& rng) {
  // Stars and bars: choose nvars-1 bar slots among degree+nvars-1.
  const std::size_t slots = degree + nvars - 1;
  std::vector<std::size_t> pool(slots);
  for (std::size_t i = 0; i < slots; ++i) pool[i] = i;
  const std::size_t bars = nvars - 1;
  for (std::size_t i = 0; i < bars; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(slots - i, rng));
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> cut(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(bars));
  std::sort(cut.begin(), cut.end());
  std::vector<Exponent> exps(nvars);
  std::size_t prev = 0;
  for (std::size_t v = 0; v < nvars; ++v) {
    const std::size_t end = v < bars ? cut[v] : slots;
    exps[v] = static_cast<Exponent>(end - prev);
    prev = end + 1;
  }
  return Monomial(std::span<const Exponent>(exps));
}

}  // namespace spark
