#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "spark/buchberger.hpp"
#include "spark/polynomial.hpp"
#include "spark/violator.hpp"

namespace spark {

/// A finite universe H of polynomials with the violator mapping
///   vi(S) = { h in H : <init(S)> is strictly smaller than <init(S + h)> },
/// init(S) meaning the monomial ideal generated by the initial monomials of
/// S. The primitive is a divisibility scan over S.
class GroebnerViolatorSpace : public ViolatorSpace {
 public:
  /// Elements are stored monic; zeros and structural duplicates are dropped,
  /// first occurrence wins.
  GroebnerViolatorSpace(RingPtr ring, std::vector<Polynomial> elements);

  std::size_t size() const override { return elements_.size(); }
  bool in_violator_set(ElementId h, std::span<const ElementId> s) const override;

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& elements() const { return elements_; }
  const Polynomial& element(ElementId id) const { return elements_.at(id); }
  const Monomial& leading_monomial(ElementId id) const { return leading_.at(id); }
  /// Element ids grouped by initial monomial.
  const std::map<Monomial, std::vector<ElementId>, MonomialKeyLess>& leading_index() const {
    return index_;
  }
  /// First element whose initial monomial is 1, if any.
  std::optional<ElementId> unit_element() const { return unit_; }

  /// Basis of G without subset enumeration: the minimal generators of
  /// <init(g) : g in G>, one representative each. Among elements sharing a
  /// minimal initial monomial the pick is: fewest terms, then the smaller
  /// tail under canonical_compare, then the smaller id. With an oracle, each
  /// distinct initial monomial costs one counted primitive query.
  Subset specialized_basis(std::span<const ElementId> g, PrimitiveOracle* oracle = nullptr) const;

  /// Adapter for ClarksonOptions::small_basis.
  SmallBasisFn small_basis_fn() const;

 private:
  bool representative_less(ElementId a, ElementId b) const;

  RingPtr ring_;
  std::vector<Polynomial> elements_;
  std::vector<Monomial> leading_;
  std::map<Monomial, std::vector<ElementId>, MonomialKeyLess> index_;
  std::optional<ElementId> unit_;
};

/// Counted primitive: init(h) is divisible by no init(s), s in S.
bool gb_violates(PrimitiveOracle& oracle, ElementId h, std::span<const ElementId> s);

/// Alternative reading vi(S) = { h : init(h) not in init(<S>) }, which needs
/// a Groebner basis of <S> per query. Kept for experiments only; it is not
/// guaranteed to satisfy locality and the pipeline never uses it.
class IdealViolatorSpace : public ViolatorSpace {
 public:
  IdealViolatorSpace(RingPtr ring, std::vector<Polynomial> elements);

  std::size_t size() const override { return elements_.size(); }
  bool in_violator_set(ElementId h, std::span<const ElementId> s) const override;

 private:
  RingPtr ring_;
  std::vector<Polynomial> elements_;
};

/// specialized_basis(H), cross-checked against generic subset enumeration
/// when |H| <= 12 (throws std::logic_error on disagreement).
Subset largest_basis_bruteforce(const GroebnerViolatorSpace& space);

struct SparkBasisOptions {
  std::uint64_t round_cap = 10'000;
};

struct SparkBasisResult {
  BasisResult stats;
  std::vector<Polynomial> basis;

  std::vector<Monomial> initial_monomials() const;
};

/// Clarkson's first algorithm on (H, vi) with delta := k and the specialized
/// basis as inner solver. A unit element short-circuits to {1}.
SparkBasisResult spark_basis(const GroebnerViolatorSpace& space, std::size_t k, std::uint64_t seed,
                             const SparkBasisOptions& options = {});
/// Same, reusing a caller-owned solver (keeps multiplicities between calls).
SparkBasisResult spark_basis(const GroebnerViolatorSpace& space, ClarksonSolver& solver);

/// delta := max(k, 1), the given round cap, and the specialized inner solver.
ClarksonOptions gb_clarkson_options(const GroebnerViolatorSpace& space, std::size_t k,
                                    const SparkBasisOptions& options = {});
ClarksonSolver make_gb_solver(const GroebnerViolatorSpace& space, std::size_t k, std::uint64_t seed,
                              const SparkBasisOptions& options = {});

}  // namespace spark
