#include "spark/buchberger.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <stdexcept>
#include <utility>

#include "spark/errors.hpp"

namespace spark {

// ---------------------------------------------------------------------------
// Lineage

struct Lineage::Node {
  std::size_t leaf = 0;
  std::optional<Lineage> left;
  std::optional<Lineage> right;
  std::size_t depth = 0;
  std::size_t leaves = 1;
};

Lineage Lineage::leaf(std::size_t index) {
  auto node = std::make_shared<Node>();
  node->leaf = index;
  return Lineage(std::move(node));
}

Lineage Lineage::pair(Lineage left, Lineage right) {
  auto node = std::make_shared<Node>();
  node->depth = 1 + std::max(left.depth(), right.depth());
  node->leaves = left.leaf_count() + right.leaf_count();
  node->left = std::move(left);
  node->right = std::move(right);
  return Lineage(std::move(node));
}

bool Lineage::is_leaf() const { return !node_->left.has_value(); }

std::size_t Lineage::leaf_index() const {
  if (!is_leaf()) throw std::logic_error("lineage is not a leaf");
  return node_->leaf;
}

const Lineage& Lineage::left() const {
  if (is_leaf()) throw std::logic_error("lineage leaf has no children");
  return *node_->left;
}

const Lineage& Lineage::right() const {
  if (is_leaf()) throw std::logic_error("lineage leaf has no children");
  return *node_->right;
}

std::size_t Lineage::depth() const { return node_->depth; }
std::size_t Lineage::leaf_count() const { return node_->leaves; }

std::string Lineage::to_string() const {
  if (is_leaf()) return std::to_string(node_->leaf);
  return "(" + left().to_string() + "," + right().to_string() + ")";
}

bool operator==(const Lineage& a, const Lineage& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.leaf_index() == b.leaf_index();
  return a.left() == b.left() && a.right() == b.right();
}

namespace {

class LineageParser {
 public:
  explicit LineageParser(std::string_view text) : text_(text) {}

  Lineage parse() {
    Lineage out = parse_node();
    skip_ws();
    if (pos_ != text_.size()) fail();
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail() const {
    throw ParseError("malformed lineage '" + std::string(text_) + "'");
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail();
    ++pos_;
  }
  Lineage parse_node() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      Lineage l = parse_node();
      expect(',');
      Lineage r = parse_node();
      expect(')');
      return Lineage::pair(std::move(l), std::move(r));
    }
    std::size_t value = 0;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
    }
    if (pos_ == start) fail();
    return Lineage::leaf(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Lineage Lineage::parse(std::string_view text) { return LineageParser(text).parse(); }

// ---------------------------------------------------------------------------
// Result helpers

std::vector<Polynomial> GroebnerBasisResult::polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(e.poly);
  return out;
}

std::vector<Monomial> GroebnerBasisResult::initial_monomials() const {
  std::vector<Monomial> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(e.poly.leading_monomial());
  return out;
}

std::vector<Monomial> minimal_generators(std::vector<Monomial> monomials, const MonomialOrder& order) {
  std::sort(monomials.begin(), monomials.end(),
            [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) > 0; });
  monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    bool divisible = false;
    for (std::size_t j = 0; j < monomials.size() && !divisible; ++j) {
      divisible = j != i && monomials[j].divides(monomials[i]);
    }
    if (!divisible) out.push_back(monomials[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Buchberger

namespace {

struct CriticalPair {
  std::size_t first;   // f in S(f, g)
  std::size_t second;  // g in S(f, g)
  Monomial lcm;
  std::size_t seq;
};

GroebnerBasisResult unit_basis(const RingPtr& ring, Lineage lineage, BuchbergerStats stats) {
  GroebnerBasisResult out;
  out.ring = ring;
  out.elements.push_back({Polynomial::constant(ring, 1), std::move(lineage)});
  out.minimal = true;
  out.reduced = true;
  out.stats = stats;
  return out;
}

class BuchbergerRun {
 public:
  BuchbergerRun(const GeneratorSet& generators, const BuchbergerOptions& options)
      : ring_(generators.ring), options_(options) {}

  GroebnerBasisResult run(const GeneratorSet& generators) {
    if (generators.generators.empty()) throw std::invalid_argument("buchberger: empty generating set");
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const Polynomial& g = generators.generators[i];
      if (g.is_zero()) throw std::invalid_argument("buchberger: generator " + std::to_string(i) + " is zero");
      if (!(g.ring() == *ring_)) throw std::invalid_argument("ring mismatch");
      if (g.is_constant()) return unit_basis(ring_, Lineage::leaf(i), stats_);
      polys_.push_back(g.monic());
      lineages_.push_back(Lineage::leaf(i));
    }
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      for (std::size_t j = i + 1; j < polys_.size(); ++j) push_pair(i, j);
    }

    while (!pending_.empty()) {
      CriticalPair pair = pop_pair();
      if (options_.use_criteria && skippable(pair)) {
        ++stats_.pairs_skipped;
        continue;
      }
      if (++stats_.pairs_processed > options_.max_pairs) {
        throw ResourceCapExceeded("buchberger: more than " + std::to_string(options_.max_pairs) +
                                  " S-pairs processed");
      }
      Polynomial r = remainder(s_polynomial(polys_[pair.first], polys_[pair.second]), polys_);
      if (r.is_zero()) {
        ++stats_.zero_reductions;
        continue;
      }
      Lineage lineage = Lineage::pair(lineages_[pair.first], lineages_[pair.second]);
      if (r.is_constant()) {
        ++stats_.additions;
        return unit_basis(ring_, std::move(lineage), stats_);
      }
      if (polys_.size() >= options_.max_basis_size) {
        throw ResourceCapExceeded("buchberger: basis exceeded " +
                                  std::to_string(options_.max_basis_size) + " elements");
      }
      polys_.push_back(r.monic());
      lineages_.push_back(std::move(lineage));
      ++stats_.additions;
      const std::size_t t = polys_.size() - 1;
      for (std::size_t i = 0; i < t; ++i) push_pair(t, i);
    }

    GroebnerBasisResult out;
    out.ring = ring_;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      out.elements.push_back({std::move(polys_[i]), std::move(lineages_[i])});
    }
    out.stats = stats_;
    return out;
  }

 private:
  static std::pair<std::size_t, std::size_t> key(std::size_t a, std::size_t b) {
    return {std::min(a, b), std::max(a, b)};
  }

  void push_pair(std::size_t first, std::size_t second) {
    Monomial l = lcm(polys_[first].leading_monomial(), polys_[second].leading_monomial());
    pending_.push_back({first, second, std::move(l), next_seq_++});
    pending_keys_.insert(key(first, second));
  }

  CriticalPair pop_pair() {
    auto it = pending_.begin();
    if (options_.strategy == PairStrategy::kDegree) {
      const auto& order = ring_->order;
      it = std::min_element(pending_.begin(), pending_.end(),
                            [&](const CriticalPair& a, const CriticalPair& b) {
                              if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
                              auto c = order.compare(a.lcm, b.lcm);
                              if (c != 0) return c < 0;
                              return a.seq < b.seq;
                            });
    }
    CriticalPair out = std::move(*it);
    pending_.erase(it);
    pending_keys_.erase(key(out.first, out.second));
    return out;
  }

  bool skippable(const CriticalPair& pair) const {
    const Monomial& a = polys_[pair.first].leading_monomial();
    const Monomial& b = polys_[pair.second].leading_monomial();
    if (coprime(a, b)) return true;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (k == pair.first || k == pair.second) continue;
      if (!polys_[k].leading_monomial().divides(pair.lcm)) continue;
      if (!pending_keys_.contains(key(pair.first, k)) && !pending_keys_.contains(key(pair.second, k))) {
        return true;
      }
    }
    return false;
  }

  RingPtr ring_;
  BuchbergerOptions options_;
  std::vector<Polynomial> polys_;
  std::vector<Lineage> lineages_;
  std::deque<CriticalPair> pending_;
  std::set<std::pair<std::size_t, std::size_t>> pending_keys_;
  std::size_t next_seq_ = 0;
  BuchbergerStats stats_;
};

}  // namespace

GroebnerBasisResult buchberger(const GeneratorSet& generators, const BuchbergerOptions& options) {
  return BuchbergerRun(generators, options).run(generators);
}

GroebnerBasisResult minimalize(GroebnerBasisResult basis) {
  std::vector<BasisElement> kept;
  const auto& elems = basis.elements;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Monomial& mi = elems[i].poly.leading_monomial();
    bool drop = false;
    for (std::size_t j = 0; j < elems.size() && !drop; ++j) {
      if (j == i) continue;
      const Monomial& mj = elems[j].poly.leading_monomial();
      if (!mj.divides(mi)) continue;
      // Equal initial monomials: keep the earliest.
      drop = !(mj == mi) || j < i;
    }
    if (!drop) kept.push_back(elems[i]);
  }
  basis.elements = std::move(kept);
  basis.minimal = true;
  return basis;
}

GroebnerBasisResult reduce(GroebnerBasisResult basis) {
  std::vector<BasisElement> elems;
  for (auto& e : basis.elements) {
    if (e.poly.is_zero()) continue;
    if (e.poly.is_constant()) return unit_basis(basis.ring, e.lineage, basis.stats);
    elems.push_back({e.poly.monic(), e.lineage});
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < elems.size();) {
      std::vector<Polynomial> others;
      others.reserve(elems.size());
      for (std::size_t j = 0; j < elems.size(); ++j) {
        if (j != i) others.push_back(elems[j].poly);
      }
      Polynomial r = remainder(elems[i].poly, others);
      if (r.is_zero()) {
        elems.erase(elems.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        continue;
      }
      if (r.is_constant()) return unit_basis(basis.ring, elems[i].lineage, basis.stats);
      r = r.monic();
      if (!(r == elems[i].poly)) {
        elems[i].poly = std::move(r);
        changed = true;
      }
      ++i;
    }
  }
  const auto& order = basis.ring->order;
  std::sort(elems.begin(), elems.end(), [&](const BasisElement& a, const BasisElement& b) {
    return order.compare(a.poly.leading_monomial(), b.poly.leading_monomial()) > 0;
  });
  basis.elements = std::move(elems);
  basis.minimal = true;
  basis.reduced = true;
  return basis;
}

GroebnerBasisResult reduced_groebner_basis(const GeneratorSet& generators,
                                           const BuchbergerOptions& options) {
  return reduce(minimalize(buchberger(generators, options)));
}

std::string GroebnerWitness::describe() const {
  if (kind == Kind::kSPair) {
    return "S-pair (" + std::to_string(first) + "," + std::to_string(second) +
           ") leaves remainder " + to_string(remainder);
  }
  return "generator " + std::to_string(first) + " leaves remainder " + to_string(remainder);
}

GroebnerCertificate is_groebner_basis(std::span<const Polynomial> candidate,
                                      const GeneratorSet& generators) {
  std::vector<Polynomial> basis;
  for (const auto& c : candidate) {
    if (!c.is_zero()) basis.push_back(c);
  }
  GroebnerCertificate out;
  if (basis.empty()) {
    // Only the zero ideal has an empty basis, and generators are nonzero.
    out.witness = GroebnerWitness{GroebnerWitness::Kind::kGenerator, 0, 0, generators.generators.at(0)};
    return out;
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Polynomial r = remainder(s_polynomial(basis[i], basis[j]), basis);
      if (!r.is_zero()) {
        out.witness = GroebnerWitness{GroebnerWitness::Kind::kSPair, i, j, std::move(r)};
        return out;
      }
    }
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    Polynomial r = remainder(generators.generators[i], basis);
    if (!r.is_zero()) {
      out.witness = GroebnerWitness{GroebnerWitness::Kind::kGenerator, i, 0, std::move(r)};
      return out;
    }
  }
  out.is_basis = true;
  return out;
}

std::size_t longest_lineage(const GroebnerBasisResult& basis, LineageMeasure measure) {
  std::size_t best = 0;
  for (const auto& e : basis.elements) {
    best = std::max(best, measure == LineageMeasure::kDepth ? e.lineage.depth() : e.lineage.leaf_count());
  }
  return best;
}

}  // namespace spark
