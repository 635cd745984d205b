#include "spark/violator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "spark/errors.hpp"
#include "spark/random.hpp"

namespace spark {

Subset make_subset(std::vector<ElementId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Subset full_subset(std::size_t size) {
  Subset out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = static_cast<ElementId>(i);
  return out;
}

bool PrimitiveOracle::violates(ElementId h, std::span<const ElementId> s) {
  if (std::binary_search(s.begin(), s.end(), h)) {
    throw std::invalid_argument("primitive query on an element of the tested set");
  }
  queries_.fetch_add(1, std::memory_order_relaxed);
  return space_->in_violator_set(h, s);
}

Subset violator_set(PrimitiveOracle& oracle, std::span<const ElementId> g, std::span<const ElementId> c) {
  Subset out;
  for (ElementId h : g) {
    if (std::binary_search(c.begin(), c.end(), h)) continue;
    if (oracle.violates(h, c)) out.push_back(h);
  }
  return out;
}

Subset brute_force_basis(PrimitiveOracle& oracle, std::span<const ElementId> g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> pick;
  Subset candidate;
  for (std::size_t size = 0; size <= n; ++size) {
    pick.resize(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      candidate.clear();
      for (std::size_t p : pick) candidate.push_back(g[p]);
      bool clean = true;
      for (ElementId h : g) {
        if (std::binary_search(candidate.begin(), candidate.end(), h)) continue;
        if (oracle.violates(h, candidate)) {
          clean = false;
          break;
        }
      }
      if (clean) return candidate;
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return Subset(g.begin(), g.end());
}

mpz_class MultiplicityMap::total(std::span<const ElementId> g) const {
  mpz_class sum = 0;
  for (ElementId h : g) sum += weights_[h];
  return sum;
}

Subset weighted_sample(std::span<const ElementId> g, std::size_t count, const MultiplicityMap& weights,
                       std::mt19937_64& rng) {
  if (count >= g.size()) return Subset(g.begin(), g.end());
  std::vector<ElementId> pool(g.begin(), g.end());
  Subset out;
  out.reserve(count);

  mpz_class total = weights.total(pool);
  if (total.fits_ulong_p() && sizeof(unsigned long) == sizeof(std::uint64_t)) {
    std::vector<std::uint64_t> w(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) w[i] = weights[pool[i]].get_ui();
    std::uint64_t sum = total.get_ui();
    for (std::size_t k = 0; k < count; ++k) {
      std::uint64_t r = uniform_below(sum, rng);
      std::size_t i = 0;
      while (r >= w[i]) r -= w[i++];
      out.push_back(pool[i]);
      sum -= w[i];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      mpz_class r = uniform_below(total, rng);
      std::size_t i = 0;
      while (r >= weights[pool[i]]) r -= weights[pool[i++]];
      out.push_back(pool[i]);
      total -= weights[pool[i]];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subset uniform_sample(std::span<const ElementId> g, std::size_t count, std::mt19937_64& rng) {
  if (count >= g.size()) return Subset(g.begin(), g.end());
  std::vector<ElementId> pool(g.begin(), g.end());
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(pool.size() - i, rng));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::string BasisResult::to_json() const {
  nlohmann::json j = {{"basis_size", basis.size()},
                      {"primitive_queries", primitive_queries},
                      {"rounds", rounds},
                      {"seed", seed}};
  return j.dump();
}

// ---------------------------------------------------------------------------
// Clarkson

namespace {

std::uint64_t isqrt(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  mpz_sqrt(z.get_mpz_t(), z.get_mpz_t());
  return z.get_ui();
}

Subset set_union(std::span<const ElementId> a, std::span<const ElementId> b) {
  Subset out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Subset set_difference(std::span<const ElementId> a, std::span<const ElementId> b) {
  Subset out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

ClarksonSolver::ClarksonSolver(const ViolatorSpace& space, ClarksonOptions options, std::uint64_t seed)
    : space_(space),
      options_(std::move(options)),
      oracle_(space),
      weights_(space.size()),
      rng_(seed),
      seed_(seed) {
  if (options_.delta == 0) throw std::invalid_argument("clarkson: delta must be at least 1");
}

void ClarksonSolver::set_delta(std::size_t delta) {
  if (delta == 0) throw std::invalid_argument("clarkson: delta must be at least 1");
  options_.delta = delta;
}

void ClarksonSolver::reset_multiplicities() { weights_ = MultiplicityMap(space_.size()); }

Subset ClarksonSolver::solve_small(std::span<const ElementId> g) {
  if (options_.small_basis) return options_.small_basis(oracle_, g);
  return brute_force_basis(oracle_, g);
}

BasisResult ClarksonSolver::finish(Subset basis, std::uint64_t queries_before, std::uint64_t rounds,
                                   std::uint64_t reweightings) const {
  BasisResult out;
  out.basis = std::move(basis);
  out.primitive_queries = oracle_.queries() - queries_before;
  out.rounds = rounds;
  out.reweightings = reweightings;
  out.seed = seed_;
  return out;
}

BasisResult ClarksonSolver::basis2(std::span<const ElementId> g) {
  const std::uint64_t q0 = oracle_.queries();
  const std::uint64_t delta = options_.delta;
  const std::uint64_t sample = 6 * delta * delta;
  if (g.size() <= sample) return finish(solve_small(g), q0, 0, 0);

  std::uint64_t rounds = 0;
  std::uint64_t reweightings = 0;
  while (true) {
    if (++rounds > options_.round_cap) {
      throw RoundCapExceeded("basis2: no basis after " + std::to_string(options_.round_cap) +
                             " rounds (|G| = " + std::to_string(g.size()) +
                             ", delta = " + std::to_string(delta) + ")");
    }
    Subset r = weighted_sample(g, sample, weights_, rng_);
    Subset c = solve_small(r);
    Subset v = violator_set(oracle_, g, c);
    if (v.empty()) return finish(std::move(c), q0, rounds, reweightings);
    if (3 * delta * weights_.total(v) <= weights_.total(g)) {
      for (ElementId h : v) weights_.double_weight(h);
      ++reweightings;
    }
  }
}

BasisResult ClarksonSolver::clarkson1(std::span<const ElementId> g) {
  const std::uint64_t q0 = oracle_.queries();
  const std::uint64_t delta = options_.delta;
  const std::uint64_t n = g.size();
  if (n <= 9 * delta * delta) {
    BasisResult inner = basis2(g);
    return finish(std::move(inner.basis), q0, inner.rounds, inner.reweightings);
  }

  const std::uint64_t sample = isqrt(delta * delta * n);
  Subset w;
  std::uint64_t rounds = 0;
  std::uint64_t reweightings = 0;
  std::uint64_t outer = 0;
  while (true) {
    if (++outer > options_.round_cap) {
      throw RoundCapExceeded("clarkson1: no basis after " + std::to_string(options_.round_cap) +
                             " rounds (|G| = " + std::to_string(n) +
                             ", delta = " + std::to_string(delta) + ")");
    }
    ++rounds;
    Subset rest = set_difference(g, w);
    Subset r = uniform_sample(rest, sample, rng_);
    BasisResult inner = basis2(set_union(w, r));
    rounds += inner.rounds;
    reweightings += inner.reweightings;
    Subset v = violator_set(oracle_, g, inner.basis);
    if (v.empty()) return finish(std::move(inner.basis), q0, rounds, reweightings);
    // |V| <= 2 sqrt|G|
    if (v.size() * v.size() <= 4 * n) w = set_union(w, v);
  }
}

// ---------------------------------------------------------------------------
// Axioms

std::string AxiomFailure::describe() const {
  auto fmt = [](const Subset& s) {
    std::ostringstream o;
    o << '{';
    for (std::size_t i = 0; i < s.size(); ++i) o << (i ? "," : "") << s[i];
    o << '}';
    return o.str();
  };
  std::string what;
  switch (kind) {
    case Kind::kConsistency: what = "consistency"; break;
    case Kind::kLocality: what = "locality"; break;
    case Kind::kMonotonicity: what = "monotonicity"; break;
  }
  std::string out = what + " fails for F=" + fmt(f) + " G=" + fmt(g);
  if (h) out += " h=" + std::to_string(*h);
  return out;
}

namespace {

Subset full_violators(const ViolatorSpace& space, const Subset& s) {
  Subset out;
  for (std::size_t h = 0; h < space.size(); ++h) {
    if (space.in_violator_set(static_cast<ElementId>(h), s)) out.push_back(static_cast<ElementId>(h));
  }
  return out;
}

Subset random_subset_of(std::span<const ElementId> from, std::mt19937_64& rng) {
  Subset out;
  for (ElementId h : from) {
    if (rng() & 1U) out.push_back(h);
  }
  return out;
}

std::optional<ElementId> first_common(const Subset& a, const Subset& b) {
  Subset both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  if (both.empty()) return std::nullopt;
  return both.front();
}

}  // namespace

AxiomReport check_axioms(const ViolatorSpace& space, std::size_t trials, std::mt19937_64& rng) {
  AxiomReport report;
  const Subset universe = full_subset(space.size());
  for (std::size_t t = 0; t < trials; ++t) {
    ++report.trials;
    Subset f;
    Subset g;
    Subset vf;
    if (t % 2 == 0) {
      g = random_subset_of(universe, rng);
      f = random_subset_of(g, rng);
      vf = full_violators(space, f);
    } else {
      f = random_subset_of(universe, rng);
      vf = full_violators(space, f);
      g = set_union(f, random_subset_of(set_difference(universe, vf), rng));
    }
    const Subset vg = full_violators(space, g);

    if (auto h = first_common(f, vf)) {
      report.failure = AxiomFailure{AxiomFailure::Kind::kConsistency, f, f, h};
      return report;
    }
    if (auto h = first_common(g, vg)) {
      report.failure = AxiomFailure{AxiomFailure::Kind::kConsistency, g, g, h};
      return report;
    }
    if (!std::includes(vf.begin(), vf.end(), vg.begin(), vg.end())) {
      Subset extra = set_difference(vg, vf);
      report.failure = AxiomFailure{AxiomFailure::Kind::kMonotonicity, f, g, extra.front()};
      return report;
    }
    if (!first_common(g, vf)) {
      ++report.locality_premises;
      if (vf != vg) {
        Subset diff = set_difference(vf, vg);
        std::optional<ElementId> h;
        if (!diff.empty()) h = diff.front();
        report.failure = AxiomFailure{AxiomFailure::Kind::kLocality, f, g, h};
        return report;
      }
    }
  }
  return report;
}

}  // namespace spark
