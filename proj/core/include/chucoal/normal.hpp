#pragma once

#include "chucoal/chu.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace chucoal {

// Canonical id for the subset of `points` selected by `mask` (bit i selects
// points[i]): "{}", "{p0}", "{p0,p1}", ... Members appear in sequence order.
std::string subset_id(const std::vector<std::string>& points,
                      std::uint64_t mask);

// All 2^|points| subset ids in ascending bitmask order.
std::vector<std::string> canonical_subset_ids(
    const std::vector<std::string>& points);

// A Chu space whose attribute sequence is the canonical enumeration of the
// full powerset of its points.
class NormalChuSpace {
public:
  explicit NormalChuSpace(ChuSpace base);

  const ChuSpace& base() const { return base_; }
  std::size_t point_count() const { return base_.point_count(); }

  bool equal_to(const NormalChuSpace& other, double eps = kDefaultEps) const {
    return base_.equal_to(other.base_, eps);
  }

private:
  struct Trusted {};
  NormalChuSpace(Trusted, ChuSpace base) : base_(std::move(base)) {}
  friend NormalChuSpace coalgebra_to_normal(const class FkCoalgebra&);

  ChuSpace base_;
};

// Tabular coalgebra for the contravariant-powerset functor X -> K^(P X):
// one row per carrier element, one column per subset in bitmask order.
// There are no successor states; the behaviour is a static K-valued table.
class FkCoalgebra {
public:
  FkCoalgebra(ValueAlphabet alphabet, std::vector<std::string> carrier,
              std::vector<Value> table);

  const ValueAlphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& carrier() const { return carrier_; }
  std::size_t subset_count() const {
    return std::size_t(1) << carrier_.size();
  }

  // alpha(x)(S) with S given as a bitmask over the carrier sequence.
  const Value& behaviour(std::size_t state, std::uint64_t subset_mask) const {
    return table_[state * subset_count() + subset_mask];
  }
  const std::vector<Value>& table() const { return table_; }

  std::size_t require_state(std::string_view id) const;

  bool equal_to(const FkCoalgebra& other, double eps = kDefaultEps) const;

private:
  ValueAlphabet alphabet_;
  std::vector<std::string> carrier_;
  std::vector<Value> table_;
};

// alpha(x)(S) = e(x, S). Rejects carriers larger than `max_points` (the
// powerset guard) with carrier_limit.
FkCoalgebra normal_to_coalgebra(const NormalChuSpace& space,
                                std::size_t max_points = 4);

// Inverse of the above: e(x, S) = alpha(x)(S); round-trips are identities.
NormalChuSpace coalgebra_to_normal(const FkCoalgebra& coalgebra);

// Homomorphism square for the powerset functor:
// beta(h(x))(S) = alpha(x)(h^{-1}(S)) for every x and every S over B.
bool check_fk_homomorphism(const FkCoalgebra& source, const FkCoalgebra& target,
                           const std::map<std::string, std::string>& h,
                           double eps = kDefaultEps);

}  // namespace chucoal
