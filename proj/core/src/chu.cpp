#include "chucoal/chu.hpp"

#include "chucoal/error.hpp"

#include <algorithm>

namespace chucoal {

namespace {

std::vector<std::uint32_t> index_ids(const std::vector<std::string>& ids,
                                     const char* what) {
  std::vector<std::uint32_t> order(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    order[i] = static_cast<std::uint32_t>(i);
  }
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return ids[a] < ids[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (ids[order[i - 1]] == ids[order[i]]) {
      throw Error(ErrorCode::invalid_argument,
                  std::string("duplicate ") + what + " id '" + ids[order[i]] +
                      "'",
                  ids[order[i]]);
    }
  }
  return order;
}

std::optional<std::size_t> lookup(const std::vector<std::string>& ids,
                                  const std::vector<std::uint32_t>& order,
                                  std::string_view id) {
  auto it = std::lower_bound(
      order.begin(), order.end(), id,
      [&](std::uint32_t i, std::string_view key) { return ids[i] < key; });
  if (it == order.end() || ids[*it] != id) return std::nullopt;
  return *it;
}

// Total-map lookup with structured errors, shared by morphism checks.
const std::string& map_apply(const std::map<std::string, std::string>& m,
                             const std::string& id, const char* what) {
  auto it = m.find(id);
  if (it == m.end()) {
    throw Error(ErrorCode::domain_mismatch,
                std::string("morphism is not total: no image for ") + what +
                    " '" + id + "'",
                id);
  }
  return it->second;
}

}  // namespace

ChuSpace::ChuSpace(ValueAlphabet alphabet, std::vector<std::string> points,
                   std::vector<std::string> attributes, std::vector<Value> eval)
    : alphabet_(std::move(alphabet)),
      points_(std::move(points)),
      attributes_(std::move(attributes)),
      eval_(std::move(eval)) {
  if (eval_.size() != points_.size() * attributes_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "evaluation table has " + std::to_string(eval_.size()) +
                    " entries, expected " +
                    std::to_string(points_.size() * attributes_.size()));
  }
  for (const Value& v : eval_) {
    if (!alphabet_.contains(v)) {
      throw Error(ErrorCode::invalid_argument,
                  "evaluation value " + alphabet_.repr(v) +
                      " outside the alphabet");
    }
  }
  point_order_ = index_ids(points_, "point");
  attribute_order_ = index_ids(attributes_, "attribute");
}

std::optional<std::size_t> ChuSpace::point_index(std::string_view id) const {
  return lookup(points_, point_order_, id);
}

std::optional<std::size_t> ChuSpace::attribute_index(
    std::string_view id) const {
  return lookup(attributes_, attribute_order_, id);
}

std::size_t ChuSpace::require_point(std::string_view id) const {
  auto idx = point_index(id);
  if (!idx) {
    throw Error(ErrorCode::domain_mismatch,
                "unknown point id '" + std::string(id) + "'", std::string(id));
  }
  return *idx;
}

std::size_t ChuSpace::require_attribute(std::string_view id) const {
  auto idx = attribute_index(id);
  if (!idx) {
    throw Error(ErrorCode::domain_mismatch,
                "unknown attribute id '" + std::string(id) + "'",
                std::string(id));
  }
  return *idx;
}

bool ChuSpace::equal_to(const ChuSpace& other, double eps) const {
  if (alphabet_ != other.alphabet_ || points_ != other.points_ ||
      attributes_ != other.attributes_) {
    return false;
  }
  for (std::size_t i = 0; i < eval_.size(); ++i) {
    if (!value_equal(eval_[i], other.eval_[i], eps)) return false;
  }
  return true;
}

ChuMorphism ChuMorphism::identity(const ChuSpace& space) {
  ChuMorphism m;
  for (const auto& p : space.points()) m.forward.emplace(p, p);
  for (const auto& a : space.attributes()) m.backward.emplace(a, a);
  return m;
}

bool check_chu_morphism(const ChuSpace& source, const ChuSpace& target,
                        const ChuMorphism& m, double eps) {
  if (source.alphabet() != target.alphabet()) {
    throw Error(ErrorCode::space_mismatch,
                "source and target evaluate into different alphabets");
  }
  // Totality and domain checks, with the offending id in the error.
  for (const auto& [from, to] : m.forward) {
    source.require_point(from);
    target.require_point(to);
  }
  for (const auto& p : source.points()) map_apply(m.forward, p, "point");
  for (const auto& [from, to] : m.backward) {
    target.require_attribute(from);
    source.require_attribute(to);
  }
  for (const auto& a : target.attributes()) {
    map_apply(m.backward, a, "attribute");
  }

  for (const auto& x : source.points()) {
    std::size_t xi = source.point_index(x).value();
    std::size_t fx = target.require_point(map_apply(m.forward, x, "point"));
    for (const auto& a2 : target.attributes()) {
      std::size_t a2i = target.attribute_index(a2).value();
      std::size_t fa =
          source.require_attribute(map_apply(m.backward, a2, "attribute"));
      if (!value_equal(source.eval(xi, fa), target.eval(fx, a2i), eps)) {
        return false;
      }
    }
  }
  return true;
}

ChuMorphism compose_chu(const ChuMorphism& outer, const ChuMorphism& inner) {
  ChuMorphism result;
  for (const auto& [x, y] : inner.forward) {
    auto it = outer.forward.find(y);
    if (it == outer.forward.end()) {
      throw Error(ErrorCode::space_mismatch,
                  "morphisms do not compose: point '" + y +
                      "' has no image in the outer morphism",
                  y);
    }
    result.forward.emplace(x, it->second);
  }
  for (const auto& [a2, a1] : outer.backward) {
    auto it = inner.backward.find(a1);
    if (it == inner.backward.end()) {
      throw Error(ErrorCode::space_mismatch,
                  "morphisms do not compose: attribute '" + a1 +
                      "' has no image in the inner morphism",
                  a1);
    }
    result.backward.emplace(a2, it->second);
  }
  return result;
}

CollapseResult biextensional_collapse(const ChuSpace& space, double eps) {
  const std::size_t n = space.point_count();
  const std::size_t m = space.attribute_count();

  // Group rows by first matching representative, in sequence order.
  std::vector<std::size_t> row_reps;
  std::vector<std::size_t> row_rep_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool matched = false;
    for (std::size_t rep : row_reps) {
      bool same = true;
      for (std::size_t a = 0; a < m; ++a) {
        if (!value_equal(space.eval(i, a), space.eval(rep, a), eps)) {
          same = false;
          break;
        }
      }
      if (same) {
        row_rep_of[i] = rep;
        matched = true;
        break;
      }
    }
    if (!matched) {
      row_rep_of[i] = i;
      row_reps.push_back(i);
    }
  }

  // Columns, restricted to the surviving rows.
  std::vector<std::size_t> col_reps;
  std::vector<std::size_t> col_rep_of(m);
  for (std::size_t j = 0; j < m; ++j) {
    bool matched = false;
    for (std::size_t rep : col_reps) {
      bool same = true;
      for (std::size_t r : row_reps) {
        if (!value_equal(space.eval(r, j), space.eval(r, rep), eps)) {
          same = false;
          break;
        }
      }
      if (same) {
        col_rep_of[j] = rep;
        matched = true;
        break;
      }
    }
    if (!matched) {
      col_rep_of[j] = j;
      col_reps.push_back(j);
    }
  }

  std::vector<std::string> points;
  points.reserve(row_reps.size());
  for (std::size_t r : row_reps) points.push_back(space.points()[r]);
  std::vector<std::string> attributes;
  attributes.reserve(col_reps.size());
  for (std::size_t c : col_reps) attributes.push_back(space.attributes()[c]);

  std::vector<Value> eval;
  eval.reserve(row_reps.size() * col_reps.size());
  for (std::size_t r : row_reps) {
    for (std::size_t c : col_reps) eval.push_back(space.eval(r, c));
  }

  CollapseResult result{
      ChuSpace(space.alphabet(), std::move(points), std::move(attributes),
               std::move(eval)),
      {},
      {}};
  for (std::size_t i = 0; i < n; ++i) {
    result.point_map.emplace(space.points()[i], space.points()[row_rep_of[i]]);
  }
  for (std::size_t j = 0; j < m; ++j) {
    result.attribute_map.emplace(space.attributes()[j],
                                 space.attributes()[col_rep_of[j]]);
  }
  return result;
}

}  // namespace chucoal
