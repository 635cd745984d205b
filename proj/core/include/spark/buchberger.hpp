#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spark/ideal.hpp"
#include "spark/polynomial.hpp"

namespace spark {

/// History of a basis element: a generator index, or the pair of parent
/// lineages whose S-polynomial remainder produced it. Serialized as "3" or
/// "((0,1),0)".
class Lineage {
 public:
  static Lineage leaf(std::size_t index);
  static Lineage pair(Lineage left, Lineage right);
  /// Throws ParseError.
  static Lineage parse(std::string_view text);

  bool is_leaf() const;
  std::size_t leaf_index() const;
  const Lineage& left() const;
  const Lineage& right() const;

  /// 0 for a leaf, 1 + max(child depths) for a pair.
  std::size_t depth() const;
  std::size_t leaf_count() const;
  std::string to_string() const;

  friend bool operator==(const Lineage& a, const Lineage& b);

 private:
  struct Node;
  explicit Lineage(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class PairStrategy {
  kFirstCome,  // queue order
  kDegree,     // smallest lcm degree first (normal strategy)
};

struct BuchbergerOptions {
  PairStrategy strategy = PairStrategy::kFirstCome;
  /// Product and chain criteria. Off by default: skipping pairs changes the
  /// lineage trace.
  bool use_criteria = false;
  std::size_t max_pairs = 2'000'000;
  std::size_t max_basis_size = 20'000;
};

struct BasisElement {
  Polynomial poly;
  Lineage lineage;
};

struct BuchbergerStats {
  std::size_t pairs_processed = 0;
  std::size_t pairs_skipped = 0;
  std::size_t additions = 0;
  std::size_t zero_reductions = 0;
};

struct GroebnerBasisResult {
  RingPtr ring;
  std::vector<BasisElement> elements;
  bool minimal = false;
  bool reduced = false;
  BuchbergerStats stats;

  std::vector<Polynomial> polynomials() const;
  std::vector<Monomial> initial_monomials() const;
  std::size_t size() const { return elements.size(); }
};

/// Buchberger's algorithm with lineage tracking. Generators are stored monic.
/// When pairs are formed after an addition the newcomer is listed first, so
/// (x^2 - y, x^3 - z) under grevlex yields lineages 0, 1, (0,1), ((0,1),0).
/// A nonzero constant remainder short-circuits to the basis {1}. Throws
/// ResourceCapExceeded past the configured caps.
GroebnerBasisResult buchberger(const GeneratorSet& generators, const BuchbergerOptions& options = {});

/// Drops every element whose initial monomial is divisible by another's
/// (the earlier one survives among equal initial monomials).
GroebnerBasisResult minimalize(GroebnerBasisResult basis);

/// Inter-reduces until no monomial of any element is divisible by another
/// element's initial monomial; output is monic and sorted by descending
/// initial monomial. For a Groebner basis this is the reduced basis.
GroebnerBasisResult reduce(GroebnerBasisResult basis);

/// reduce(minimalize(buchberger(F))).
GroebnerBasisResult reduced_groebner_basis(const GeneratorSet& generators,
                                           const BuchbergerOptions& options = {});

struct GroebnerWitness {
  enum class Kind { kSPair, kGenerator };
  Kind kind;
  std::size_t first;   // S-pair index i, or generator index
  std::size_t second;  // S-pair index j (unused for generators)
  Polynomial remainder;

  std::string describe() const;
};

struct GroebnerCertificate {
  bool is_basis = false;
  std::optional<GroebnerWitness> witness;
  explicit operator bool() const { return is_basis; }
};

/// True iff every S-polynomial of pairs from `candidate` and every generator
/// reduces to zero modulo `candidate`; otherwise carries the first failure.
GroebnerCertificate is_groebner_basis(std::span<const Polynomial> candidate,
                                      const GeneratorSet& generators);

enum class LineageMeasure { kDepth, kLeafCount };
std::size_t longest_lineage(const GroebnerBasisResult& basis,
                            LineageMeasure measure = LineageMeasure::kDepth);

/// Minimal generators of the monomial ideal spanned by `monomials`, sorted
/// descending under `order`, duplicates removed.
std::vector<Monomial> minimal_generators(std::vector<Monomial> monomials, const MonomialOrder& order);

}  // namespace spark
