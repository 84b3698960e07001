#include "chucoal/bisimulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace chucoal {

Partition::Partition(std::vector<std::string> universe,
                     std::vector<std::size_t> block_of)
    : universe_(std::move(universe)) {
  if (block_of.size() != universe_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "partition assignment does not cover the universe");
  }
  // Renumber blocks by first occurrence so equal groupings compare equal.
  std::map<std::size_t, std::size_t> renumber;
  block_of_.reserve(block_of.size());
  for (std::size_t raw : block_of) {
    auto [it, inserted] = renumber.emplace(raw, renumber.size());
    block_of_.push_back(it->second);
  }
  block_count_ = renumber.size();
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    if (!index_.emplace(universe_[i], i).second) {
      throw Error(ErrorCode::invalid_argument,
                  "duplicate id '" + universe_[i] + "' in partition universe",
                  universe_[i]);
    }
  }
}

std::size_t Partition::block_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw Error(ErrorCode::domain_mismatch,
                "unknown id '" + std::string(id) + "' in partition",
                std::string(id));
  }
  return block_of_[it->second];
}

std::vector<std::vector<std::string>> Partition::blocks() const {
  std::vector<std::vector<std::string>> raw(block_count_);
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    raw[block_of_[i]].push_back(universe_[i]);
  }
  for (auto& block : raw) std::sort(block.begin(), block.end());
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return raw;
}

bool Partition::operator==(const Partition& other) const {
  if (universe_.size() != other.universe_.size() ||
      block_count_ != other.block_count_) {
    return false;
  }
  // Compare groupings through the canonical block lists, so universe order
  // does not matter.
  return blocks() == other.blocks();
}

bool Partition::refines(const Partition& other) const {
  if (index_.size() != other.index_.size()) return false;
  std::map<std::size_t, std::size_t> witness;
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    std::size_t mine = block_of_[i];
    std::size_t theirs = other.block_of(universe_[i]);
    auto [it, inserted] = witness.emplace(mine, theirs);
    if (!inserted && it->second != theirs) return false;
  }
  return true;
}

bool is_bisimulation(const Relation& r, const FiniteCoalgebra& a,
                     const FiniteCoalgebra& b, double eps) {
  require_same_questions(a, b);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(r.pairs.size());
  for (const auto& [x, y] : r.pairs) {
    pairs.emplace_back(a.require_state(x), b.require_state(y));
  }
  auto related = [&](std::size_t x, std::size_t y) {
    return std::find(pairs.begin(), pairs.end(), std::make_pair(x, y)) !=
           pairs.end();
  };
  for (const auto& [x, y] : pairs) {
    for (std::size_t q = 0; q < a.question_count(); ++q) {
      const Answer& ax = a.answer(x, q);
      const Answer& by = b.answer(y, q);
      if (ax.is_no()) {
        if (!by.is_no()) return false;
        continue;
      }
      if (by.is_no()) return false;
      if (!prob_equal(ax.prob(), by.prob(), eps)) return false;
      if (!related(ax.next(), by.next())) return false;
    }
  }
  return true;
}

namespace {

// Probability key inside a refinement signature: exact for rationals,
// rounded to the eps_grid lattice for floats (tolerance comparison is not
// transitive; the grid keeps block membership an equivalence).
std::pair<std::int64_t, std::int64_t> prob_key(const Prob& p, double eps_grid) {
  if (const auto* r = std::get_if<Rational>(&p)) {
    return {r->numerator(), r->denominator()};
  }
  double x = std::get<double>(p);
  if (eps_grid <= 0.0) {
    // Degenerate grid: exact double identity.
    std::int64_t bits;
    static_assert(sizeof(bits) == sizeof(x));
    std::memcpy(&bits, &x, sizeof(bits));
    return {bits, 0};
  }
  return {std::llround(x / eps_grid), 0};
}

// Moore iteration: recompute every state's signature against the current
// partition until stable. Reaches the fixpoint in at most |carrier| rounds.
std::vector<std::size_t> refine(const FiniteCoalgebra& c, double eps_grid) {
  const std::size_t n = c.state_count();
  const std::size_t qn = c.question_count();
  std::vector<std::size_t> block(n, 0);
  if (n == 0) return block;

  // Per question: no, or (prob key, successor block).
  using Signature =
      std::vector<std::optional<std::tuple<std::int64_t, std::int64_t, std::size_t>>>;

  std::size_t block_count = 1;
  for (std::size_t round = 0; round <= n; ++round) {
    std::map<Signature, std::size_t> seen;
    std::vector<std::size_t> next(n);
    for (std::size_t x = 0; x < n; ++x) {
      Signature sig;
      sig.reserve(qn + 1);
      // Refinement: new blocks must sit below old ones, so the previous
      // block id is part of the signature.
      sig.push_back(std::make_tuple(std::int64_t(block[x]), std::int64_t(0),
                                    std::size_t(0)));
      for (std::size_t q = 0; q < qn; ++q) {
        const Answer& a = c.answer(x, q);
        if (a.is_no()) {
          sig.push_back(std::nullopt);
        } else {
          auto [hi, lo] = prob_key(a.prob(), eps_grid);
          sig.push_back(std::make_tuple(hi, lo, block[a.next()]));
        }
      }
      auto [it, inserted] = seen.emplace(std::move(sig), seen.size());
      next[x] = it->second;
    }
    bool stable = seen.size() == block_count;
    block = std::move(next);
    block_count = seen.size();
    if (stable) break;
  }
  return block;
}

}  // namespace

Partition largest_bisimulation(const FiniteCoalgebra& a,
                               const FiniteCoalgebra& b,
                               const RefineOptions& options) {
  DisjointUnion u = disjoint_union(a, b);
  return Partition(u.coalgebra.states(), refine(u.coalgebra, options.eps_grid));
}

Partition largest_auto_bisimulation(const FiniteCoalgebra& a,
                                    const RefineOptions& options) {
  return Partition(a.states(), refine(a, options.eps_grid));
}

bool bisimilar(const FiniteCoalgebra& a, std::string_view x,
               const FiniteCoalgebra& b, std::string_view y,
               const RefineOptions& options) {
  a.require_state(x);
  b.require_state(y);
  Partition p = largest_bisimulation(a, b, options);
  return p.same_block("L:" + std::string(x), "R:" + std::string(y));
}

QuotientResult strongly_extensional_quotient(const FiniteCoalgebra& a,
                                             const RefineOptions& options) {
  Partition p = largest_auto_bisimulation(a, options);

  // Representative = first member of each block in carrier order; blocks are
  // already numbered by first occurrence.
  std::vector<std::size_t> rep_state(p.block_count());
  std::vector<bool> seen(p.block_count(), false);
  for (std::size_t i = 0; i < a.state_count(); ++i) {
    std::size_t blk = p.block_of_index(i);
    if (!seen[blk]) {
      seen[blk] = true;
      rep_state[blk] = i;
    }
  }

  std::vector<std::string> states;
  states.reserve(p.block_count());
  for (std::size_t blk = 0; blk < p.block_count(); ++blk) {
    states.push_back(a.states()[rep_state[blk]]);
  }

  std::vector<FiniteCoalgebra::Cell> cells;
  cells.reserve(p.block_count() * a.question_count());
  for (std::size_t blk = 0; blk < p.block_count(); ++blk) {
    std::size_t x = rep_state[blk];
    for (std::size_t q = 0; q < a.question_count(); ++q) {
      const Answer& ans = a.answer(x, q);
      if (ans.is_no()) {
        cells.emplace_back(std::nullopt);
      } else {
        cells.emplace_back(std::make_pair(
            ans.prob(), states[p.block_of_index(ans.next())]));
      }
    }
  }

  QuotientResult result{FiniteCoalgebra(a.mode(), a.questions(),
                                        std::move(states), std::move(cells)),
                        {}};
  for (std::size_t i = 0; i < a.state_count(); ++i) {
    result.projection.emplace(a.states()[i],
                              a.states()[rep_state[p.block_of_index(i)]]);
  }
  return result;
}

}  // namespace chucoal
