#include "chucoal/normal.hpp"

#include "chucoal/error.hpp"

#include <algorithm>

namespace chucoal {

std::string subset_id(const std::vector<std::string>& points,
                      std::uint64_t mask) {
  std::string id = "{";
  bool first = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (mask & (std::uint64_t(1) << i)) {
      if (!first) id += ',';
      id += points[i];
      first = false;
    }
  }
  id += '}';
  return id;
}

std::vector<std::string> canonical_subset_ids(
    const std::vector<std::string>& points) {
  if (points.size() >= 63) {
    throw Error(ErrorCode::carrier_limit,
                "powerset enumeration over " + std::to_string(points.size()) +
                    " points is not representable");
  }
  std::vector<std::string> ids;
  ids.reserve(std::size_t(1) << points.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << points.size());
       ++mask) {
    ids.push_back(subset_id(points, mask));
  }
  return ids;
}

NormalChuSpace::NormalChuSpace(ChuSpace base) : base_(std::move(base)) {
  auto expected = canonical_subset_ids(base_.points());
  if (base_.attributes() != expected) {
    throw Error(ErrorCode::invalid_argument,
                "attributes are not the canonical powerset enumeration of the "
                "points (ascending bitmask order)");
  }
}

FkCoalgebra::FkCoalgebra(ValueAlphabet alphabet,
                         std::vector<std::string> carrier,
                         std::vector<Value> table)
    : alphabet_(std::move(alphabet)),
      carrier_(std::move(carrier)),
      table_(std::move(table)) {
  if (carrier_.size() >= 63) {
    throw Error(ErrorCode::carrier_limit,
                "carrier too large for a powerset table");
  }
  const std::size_t expected = carrier_.size() << carrier_.size();
  if (table_.size() != expected) {
    throw Error(ErrorCode::invalid_argument,
                "behaviour table has " + std::to_string(table_.size()) +
                    " entries, expected " + std::to_string(expected));
  }
  for (const Value& v : table_) {
    if (!alphabet_.contains(v)) {
      throw Error(ErrorCode::invalid_argument,
                  "behaviour value " + alphabet_.repr(v) +
                      " outside the alphabet");
    }
  }
  std::vector<std::string> sorted = carrier_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::invalid_argument, "duplicate carrier id");
  }
}

std::size_t FkCoalgebra::require_state(std::string_view id) const {
  auto it = std::find(carrier_.begin(), carrier_.end(), id);
  if (it == carrier_.end()) {
    throw Error(ErrorCode::domain_mismatch,
                "unknown state id '" + std::string(id) + "'", std::string(id));
  }
  return static_cast<std::size_t>(it - carrier_.begin());
}

bool FkCoalgebra::equal_to(const FkCoalgebra& other, double eps) const {
  if (alphabet_ != other.alphabet_ || carrier_ != other.carrier_) return false;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (!value_equal(table_[i], other.table_[i], eps)) return false;
  }
  return true;
}

FkCoalgebra normal_to_coalgebra(const NormalChuSpace& space,
                                std::size_t max_points) {
  const ChuSpace& base = space.base();
  if (base.point_count() > max_points) {
    throw Error(ErrorCode::carrier_limit,
                "carrier of " + std::to_string(base.point_count()) +
                    " points exceeds the powerset guard (limit " +
                    std::to_string(max_points) + ")");
  }
  // The attribute order is already the subset order, so the table transfers
  // row by row.
  return FkCoalgebra(base.alphabet(), base.points(), base.table());
}

NormalChuSpace coalgebra_to_normal(const FkCoalgebra& coalgebra) {
  // Attributes are canonical by construction; skip the normality re-check.
  return NormalChuSpace(
      NormalChuSpace::Trusted{},
      ChuSpace(coalgebra.alphabet(), coalgebra.carrier(),
               canonical_subset_ids(coalgebra.carrier()), coalgebra.table()));
}

bool check_fk_homomorphism(const FkCoalgebra& source, const FkCoalgebra& target,
                           const std::map<std::string, std::string>& h,
                           double eps) {
  if (source.alphabet() != target.alphabet()) {
    throw Error(ErrorCode::space_mismatch,
                "source and target use different alphabets");
  }
  const std::size_t n = source.carrier().size();
  const std::size_t m = target.carrier().size();

  // Resolve h into index form; totality and domain errors surface here.
  std::vector<std::size_t> image(n);
  for (const auto& [from, to] : h) {
    source.require_state(from);
    target.require_state(to);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto it = h.find(source.carrier()[i]);
    if (it == h.end()) {
      throw Error(ErrorCode::domain_mismatch,
                  "map is not total: no image for state '" +
                      source.carrier()[i] + "'",
                  source.carrier()[i]);
    }
    image[i] = target.require_state(it->second);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t subset = 0; subset < (std::uint64_t(1) << m);
         ++subset) {
      // h^{-1}(S) as a bitmask over the source carrier.
      std::uint64_t preimage = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (subset & (std::uint64_t(1) << image[j])) {
          preimage |= std::uint64_t(1) << j;
        }
      }
      if (!value_equal(target.behaviour(image[i], subset),
                       source.behaviour(i, preimage), eps)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace chucoal
