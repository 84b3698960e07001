#pragma once

#include "chucoal/alphabet.hpp"

#include <cstdint>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chucoal {

// A finite Chu space: ordered points X, ordered attributes A, and a total
// evaluation table e : X x A -> K stored row-major. Immutable once built.
class ChuSpace {
public:
  ChuSpace(ValueAlphabet alphabet, std::vector<std::string> points,
           std::vector<std::string> attributes, std::vector<Value> eval);

  const ValueAlphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<std::string>& attributes() const { return attributes_; }

  std::size_t point_count() const { return points_.size(); }
  std::size_t attribute_count() const { return attributes_.size(); }

  const Value& eval(std::size_t point, std::size_t attribute) const {
    return eval_[point * attributes_.size() + attribute];
  }
  const std::vector<Value>& table() const { return eval_; }

  std::optional<std::size_t> point_index(std::string_view id) const;
  std::optional<std::size_t> attribute_index(std::string_view id) const;

  // Index lookups that throw domain_mismatch naming the offending id.
  std::size_t require_point(std::string_view id) const;
  std::size_t require_attribute(std::string_view id) const;

  bool equal_to(const ChuSpace& other, double eps = kDefaultEps) const;

private:
  ValueAlphabet alphabet_;
  std::vector<std::string> points_;
  std::vector<std::string> attributes_;
  std::vector<Value> eval_;
  // Id lookup via indices sorted by id (cheap to build, binary search).
  std::vector<std::uint32_t> point_order_;
  std::vector<std::uint32_t> attribute_order_;
};

// An adjoint pair: forward on points (X -> X'), backward on attributes
// (A' -> A). Stored as explicit id maps, so a morphism document stands alone.
struct ChuMorphism {
  std::map<std::string, std::string> forward;
  std::map<std::string, std::string> backward;

  static ChuMorphism identity(const ChuSpace& space);

  bool operator==(const ChuMorphism&) const = default;
};

// Adjointness: e(x, f^*(a')) = e'(f_*(x), a') for every x in X, a' in A'.
// Throws domain_mismatch when a map is not total or mentions unknown ids,
// space_mismatch when the alphabets differ.
bool check_chu_morphism(const ChuSpace& source, const ChuSpace& target,
                        const ChuMorphism& m, double eps = kDefaultEps);

// Componentwise composition: (g.f)_* = g_*.f_*, (g.f)^* = f^*.g^*.
ChuMorphism compose_chu(const ChuMorphism& outer, const ChuMorphism& inner);

struct CollapseResult {
  ChuSpace space;
  std::map<std::string, std::string> point_map;      // X -> representative
  std::map<std::string, std::string> attribute_map;  // A -> representative
};

// Quotient by identical rows, then identical columns. Representatives are
// first occurrences in sequence order; the surjections commute with
// evaluation and the operation is idempotent.
CollapseResult biextensional_collapse(const ChuSpace& space,
                                      double eps = kDefaultEps);

}  // namespace chucoal
