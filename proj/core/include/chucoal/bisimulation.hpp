#pragma once

#include "chucoal/coalgebra.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chucoal {

// A relation between the carriers of two coalgebras, as explicit id pairs.
struct Relation {
  std::vector<std::pair<std::string, std::string>> pairs;
};

// An equivalence over a fixed id universe. Blocks are numbered by first
// occurrence in universe order; display order is lexicographic by smallest
// member.
class Partition {
public:
  Partition(std::vector<std::string> universe, std::vector<std::size_t> block_of);

  const std::vector<std::string>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  std::size_t block_count() const { return block_count_; }

  std::size_t block_of(std::string_view id) const;
  std::size_t block_of_index(std::size_t i) const { return block_of_[i]; }
  bool same_block(std::string_view a, std::string_view b) const {
    return block_of(a) == block_of(b);
  }

  // Blocks sorted lexicographically by smallest member; members sorted.
  std::vector<std::vector<std::string>> blocks() const;

  // Same universe (as a set) and same grouping.
  bool operator==(const Partition& other) const;

  // Every block of *this is contained in a block of `other`.
  bool refines(const Partition& other) const;

private:
  std::vector<std::string> universe_;
  std::vector<std::size_t> block_of_;
  std::size_t block_count_ = 0;
  std::map<std::string, std::size_t> index_;
};

struct RefineOptions {
  // Grid width for float probability keys inside refinement signatures;
  // rational mode uses exact keys and ignores this.
  double eps_grid = kDefaultEpsGrid;
};

// Checks the bisimulation clauses for every pair of R and every question:
// no-answers match, yes-answers match in probability, and successors are
// again related.
bool is_bisimulation(const Relation& r, const FiniteCoalgebra& a,
                     const FiniteCoalgebra& b, double eps = kDefaultEps);

// Greatest bisimulation between two coalgebras, computed by Moore-style
// partition refinement on their disjoint union ("L:"/"R:"-tagged ids).
// Two states share a block iff they are bisimilar.
Partition largest_bisimulation(const FiniteCoalgebra& a,
                               const FiniteCoalgebra& b,
                               const RefineOptions& options = {});

// Greatest auto-bisimulation of a single coalgebra, over its own ids.
Partition largest_auto_bisimulation(const FiniteCoalgebra& a,
                                    const RefineOptions& options = {});

bool bisimilar(const FiniteCoalgebra& a, std::string_view x,
               const FiniteCoalgebra& b, std::string_view y,
               const RefineOptions& options = {});

struct QuotientResult {
  FiniteCoalgebra coalgebra;
  std::map<std::string, std::string> projection;  // state -> block representative
};

// Quotient by the greatest auto-bisimulation. Block representatives are
// first members in carrier order; the projection is a homomorphism and the
// quotient is strongly extensional (its auto-partition is discrete).
QuotientResult strongly_extensional_quotient(const FiniteCoalgebra& a,
                                             const RefineOptions& options = {});

}  // namespace chucoal
