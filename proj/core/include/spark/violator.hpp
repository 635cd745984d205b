#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace spark {

using ElementId = std::uint32_t;
/// Sorted, duplicate-free element ids.
using Subset = std::vector<ElementId>;

Subset make_subset(std::vector<ElementId> ids);
Subset full_subset(std::size_t size);

/// A finite universe 0..size()-1 with a violator mapping vi.
class ViolatorSpace {
 public:
  virtual ~ViolatorSpace() = default;
  virtual std::size_t size() const = 0;
  /// Raw membership h in vi(s), defined for every h including h in s. The
  /// axiom checker needs it; sampling code goes through PrimitiveOracle.
  virtual bool in_violator_set(ElementId h, std::span<const ElementId> s) const = 0;
};

/// The primitive test with an audited query counter. Safe to call from
/// several threads.
class PrimitiveOracle {
 public:
  explicit PrimitiveOracle(const ViolatorSpace& space) : space_(&space) {}

  /// h in vi(s) for h outside s. Throws std::invalid_argument if h is in s.
  bool violates(ElementId h, std::span<const ElementId> s);

  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }
  const ViolatorSpace& space() const { return *space_; }

 private:
  const ViolatorSpace* space_;
  std::atomic<std::uint64_t> queries_{0};
};

/// {h in G \ C : h violates C}; |G \ C| primitive queries.
Subset violator_set(PrimitiveOracle& oracle, std::span<const ElementId> g, std::span<const ElementId> c);

/// Smallest B of G with no violators in G; sizes ascending, each size in
/// lexicographic id order.
Subset brute_force_basis(PrimitiveOracle& oracle, std::span<const ElementId> g);

/// Per-element multiplicities m(h) >= 1, unbounded.
class MultiplicityMap {
 public:
  explicit MultiplicityMap(std::size_t universe_size) : weights_(universe_size, mpz_class(1)) {}

  const mpz_class& operator[](ElementId h) const { return weights_[h]; }
  void double_weight(ElementId h) { weights_[h] *= 2; }
  mpz_class total(std::span<const ElementId> g) const;
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<mpz_class> weights_;
};

/// Draws `count` distinct elements of g, each draw proportional to the
/// remaining multiplicities. Takes all of g when count >= |g|.
Subset weighted_sample(std::span<const ElementId> g, std::size_t count, const MultiplicityMap& weights,
                       std::mt19937_64& rng);
/// Uniform `count`-subset of g (all of g when count >= |g|).
Subset uniform_sample(std::span<const ElementId> g, std::size_t count, std::mt19937_64& rng);

struct BasisResult {
  Subset basis;
  std::uint64_t primitive_queries = 0;
  std::uint64_t rounds = 0;
  std::uint64_t reweightings = 0;
  std::uint64_t seed = 0;

  /// {basis_size, primitive_queries, rounds, seed}
  std::string to_json() const;
};

using SmallBasisFn = std::function<Subset(PrimitiveOracle&, std::span<const ElementId>)>;

struct ClarksonOptions {
  /// Combinatorial dimension (or its upper estimate) used to size samples.
  std::size_t delta = 1;
  /// Loop iterations allowed per basis2/clarkson1 call before giving up.
  std::uint64_t round_cap = 10'000;
  /// Inner exact solver; brute_force_basis when empty.
  SmallBasisFn small_basis;
};

/// Clarkson's sampling algorithms over one violator space. The multiplicity
/// map and the random stream persist across calls on the same solver.
class ClarksonSolver {
 public:
  ClarksonSolver(const ViolatorSpace& space, ClarksonOptions options, std::uint64_t seed);

  /// Second algorithm: brute force below 6*delta^2 elements, otherwise
  /// multiplicity-weighted resampling with doubling of light violator sets.
  BasisResult basis2(std::span<const ElementId> g);
  /// First algorithm: basis2 below 9*delta^2 elements, otherwise uniform
  /// samples of floor(delta*sqrt|G|) grown by a mandatory set W.
  BasisResult clarkson1(std::span<const ElementId> g);

  void set_delta(std::size_t delta);
  std::size_t delta() const { return options_.delta; }
  /// Restores every multiplicity to 1.
  void reset_multiplicities();

  const MultiplicityMap& multiplicities() const { return weights_; }
  PrimitiveOracle& oracle() { return oracle_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Subset solve_small(std::span<const ElementId> g);
  BasisResult finish(Subset basis, std::uint64_t queries_before, std::uint64_t rounds,
                     std::uint64_t reweightings) const;

  const ViolatorSpace& space_;
  ClarksonOptions options_;
  PrimitiveOracle oracle_;
  MultiplicityMap weights_;
  std::mt19937_64 rng_;
  std::uint64_t seed_;
};

struct AxiomFailure {
  enum class Kind { kConsistency, kLocality, kMonotonicity };
  Kind kind;
  Subset f;
  Subset g;
  std::optional<ElementId> h;

  std::string describe() const;
};

struct AxiomReport {
  std::size_t trials = 0;
  std::size_t locality_premises = 0;  // trials where G meets no violator of F
  std::optional<AxiomFailure> failure;

  bool passed() const { return !failure.has_value(); }
};

/// Samples F subset G subset H and checks consistency on both, locality when
/// G misses vi(F), and vi(G) subset vi(F). Half the trials build G from F
/// plus non-violators of F so the locality premise is exercised. Stops at the
/// first failure.
AxiomReport check_axioms(const ViolatorSpace& space, std::size_t trials, std::mt19937_64& rng);

}  // namespace spark
