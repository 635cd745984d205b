#include "spark/gb_violator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace spark {

GroebnerViolatorSpace::GroebnerViolatorSpace(RingPtr ring, std::vector<Polynomial> elements)
    : ring_(std::move(ring)) {
  std::set<Polynomial, CanonicalLess> seen;
  for (auto& p : elements) {
    if (p.is_zero()) continue;
    if (!(p.ring() == *ring_)) throw std::invalid_argument("universe element from another ring");
    Polynomial m = p.monic();
    if (!seen.insert(m).second) continue;
    const auto id = static_cast<ElementId>(elements_.size());
    leading_.push_back(m.leading_monomial());
    index_[m.leading_monomial()].push_back(id);
    if (!unit_ && m.leading_monomial().is_one()) unit_ = id;
    elements_.push_back(std::move(m));
  }
}

bool GroebnerViolatorSpace::in_violator_set(ElementId h, std::span<const ElementId> s) const {
  const Monomial& lm = leading_[h];
  for (ElementId e : s) {
    if (leading_[e].divides(lm)) return false;
  }
  return true;
}

bool GroebnerViolatorSpace::representative_less(ElementId a, ElementId b) const {
  const Polynomial& pa = elements_[a];
  const Polynomial& pb = elements_[b];
  if (pa.size() != pb.size()) return pa.size() < pb.size();
  if (auto c = canonical_compare(pa, pb); c != 0) return c < 0;
  return a < b;
}

Subset GroebnerViolatorSpace::specialized_basis(std::span<const ElementId> g, PrimitiveOracle* oracle) const {
  // Best representative per distinct initial monomial.
  std::map<Monomial, ElementId, MonomialKeyLess> best;
  for (ElementId id : g) {
    auto [it, inserted] = best.emplace(leading_[id], id);
    if (!inserted && representative_less(id, it->second)) it->second = id;
  }
  std::vector<std::pair<const Monomial*, ElementId>> distinct;
  distinct.reserve(best.size());
  for (const auto& [m, id] : best) distinct.emplace_back(&m, id);
  // Divisors have no larger degree, so a degree sort bounds the scan.
  std::sort(distinct.begin(), distinct.end(),
            [](const auto& a, const auto& b) { return a.first->degree() < b.first->degree(); });

  Subset out;
  for (const auto& [m, id] : distinct) {
    const bool minimal = oracle ? oracle->violates(id, out) : in_violator_set(id, out);
    if (minimal) out.insert(std::upper_bound(out.begin(), out.end(), id), id);
  }
  return out;
}

SmallBasisFn GroebnerViolatorSpace::small_basis_fn() const {
  return [this](PrimitiveOracle& oracle, std::span<const ElementId> g) { return specialized_basis(g, &oracle); };
}

bool gb_violates(PrimitiveOracle& oracle, ElementId h, std::span<const ElementId> s) {
  return oracle.violates(h, s);
}

IdealViolatorSpace::IdealViolatorSpace(RingPtr ring, std::vector<Polynomial> elements)
    : ring_(std::move(ring)) {
  for (auto& p : elements) {
    if (!p.is_zero()) elements_.push_back(p.monic());
  }
}

bool IdealViolatorSpace::in_violator_set(ElementId h, std::span<const ElementId> s) const {
  if (s.empty()) return true;
  GeneratorSet gens{ring_, {}};
  for (ElementId e : s) gens.generators.push_back(elements_[e]);
  const auto gb = reduced_groebner_basis(gens);
  const Monomial& lm = elements_[h].leading_monomial();
  for (const auto& e : gb.elements) {
    if (e.poly.leading_monomial().divides(lm)) return false;
  }
  return true;
}

Subset largest_basis_bruteforce(const GroebnerViolatorSpace& space) {
  const Subset all = full_subset(space.size());
  Subset fast = space.specialized_basis(all);
  if (space.size() <= 12) {
    PrimitiveOracle oracle(space);
    Subset slow = brute_force_basis(oracle, all);
    auto violators = [&](const Subset& b) {
      Subset v;
      for (ElementId h : all) {
        if (space.in_violator_set(h, b)) v.push_back(h);
      }
      return v;
    };
    if (slow.size() != fast.size() || violators(slow) != violators(fast)) {
      throw std::logic_error("specialized basis disagrees with exhaustive search");
    }
  }
  return fast;
}

std::vector<Monomial> SparkBasisResult::initial_monomials() const {
  std::vector<Monomial> out;
  for (const auto& p : basis) out.push_back(p.leading_monomial());
  return out;
}

ClarksonOptions gb_clarkson_options(const GroebnerViolatorSpace& space, std::size_t k,
                                    const SparkBasisOptions& options) {
  ClarksonOptions opts;
  opts.delta = std::max<std::size_t>(k, 1);
  opts.round_cap = options.round_cap;
  opts.small_basis = space.small_basis_fn();
  return opts;
}

ClarksonSolver make_gb_solver(const GroebnerViolatorSpace& space, std::size_t k, std::uint64_t seed,
                              const SparkBasisOptions& options) {
  return ClarksonSolver(space, gb_clarkson_options(space, k, options), seed);
}

SparkBasisResult spark_basis(const GroebnerViolatorSpace& space, ClarksonSolver& solver) {
  SparkBasisResult out;
  if (auto unit = space.unit_element()) {
    out.stats.basis = {*unit};
    out.stats.seed = solver.seed();
  } else {
    out.stats = solver.clarkson1(full_subset(space.size()));
  }
  for (ElementId id : out.stats.basis) out.basis.push_back(space.element(id));
  return out;
}

SparkBasisResult spark_basis(const GroebnerViolatorSpace& space, std::size_t k, std::uint64_t seed,
                             const SparkBasisOptions& options) {
  if (k == 0) throw std::invalid_argument("spark_basis: k must be at least 1");
  ClarksonSolver solver = make_gb_solver(space, k, seed, options);
  return spark_basis(space, solver);
}

}  // namespace spark
