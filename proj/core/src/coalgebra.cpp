#include "chucoal/coalgebra.hpp"

namespace chucoal {

namespace {

std::unordered_map<std::string, std::size_t> index_ids(
    const std::vector<std::string>& ids, const char* what) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], i).second) {
      throw Error(ErrorCode::invalid_argument,
                  std::string("duplicate ") + what + " id '" + ids[i] + "'",
                  ids[i]);
    }
  }
  return index;
}

}  // namespace

FiniteCoalgebra::FiniteCoalgebra(NumericMode mode,
                                 std::vector<std::string> questions,
                                 std::vector<std::string> states,
                                 std::vector<Cell> behaviour)
    : mode_(mode), questions_(std::move(questions)), states_(std::move(states)) {
  state_index_ = index_ids(states_, "state");
  question_index_ = index_ids(questions_, "question");
  if (behaviour.size() != states_.size() * questions_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "behaviour table has " + std::to_string(behaviour.size()) +
                    " cells, expected " +
                    std::to_string(states_.size() * questions_.size()));
  }
  behaviour_.reserve(behaviour.size());
  for (const Cell& cell : behaviour) {
    if (!cell) {
      behaviour_.push_back(Answer{});
      continue;
    }
    const auto& [prob, next_id] = *cell;
    if (prob_mode(prob) != mode_) {
      throw Error(ErrorCode::mode_mismatch,
                  "probability " + prob_repr(prob) + " does not match the " +
                      std::string(to_string(mode_)) + " mode");
    }
    if (!prob_in_unit_open(prob)) {
      throw Error(ErrorCode::invalid_argument,
                  "yes-probability " + prob_repr(prob) + " outside (0,1]");
    }
    auto it = state_index_.find(next_id);
    if (it == state_index_.end()) {
      throw Error(ErrorCode::domain_mismatch,
                  "yes-successor '" + next_id + "' is not in the carrier",
                  next_id);
    }
    behaviour_.push_back(Answer{std::make_pair(prob, it->second)});
  }
}

FiniteCoalgebra::Cell FiniteCoalgebra::cell(std::size_t state,
                                            std::size_t question) const {
  const Answer& a = answer(state, question);
  if (a.is_no()) return std::nullopt;
  return std::make_pair(a.prob(), states_[a.next()]);
}

std::optional<std::size_t> FiniteCoalgebra::state_index(
    std::string_view id) const {
  auto it = state_index_.find(std::string(id));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FiniteCoalgebra::question_index(
    std::string_view id) const {
  auto it = question_index_.find(std::string(id));
  if (it == question_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteCoalgebra::require_state(std::string_view id) const {
  auto idx = state_index(id);
  if (!idx) {
    throw Error(ErrorCode::domain_mismatch,
                "unknown state id '" + std::string(id) + "'", std::string(id));
  }
  return *idx;
}

bool FiniteCoalgebra::equal_to(const FiniteCoalgebra& other, double eps) const {
  if (mode_ != other.mode_ || questions_ != other.questions_ ||
      states_ != other.states_) {
    return false;
  }
  for (std::size_t i = 0; i < behaviour_.size(); ++i) {
    const Answer& a = behaviour_[i];
    const Answer& b = other.behaviour_[i];
    if (a.is_no() != b.is_no()) return false;
    if (a.is_no()) continue;
    if (a.next() != b.next() || !prob_equal(a.prob(), b.prob(), eps)) {
      return false;
    }
  }
  return true;
}

void require_same_questions(const FiniteCoalgebra& a,
                            const FiniteCoalgebra& b) {
  if (a.questions() != b.questions()) {
    throw Error(ErrorCode::question_mismatch,
                "coalgebras do not share a question sequence");
  }
  if (a.mode() != b.mode()) {
    throw Error(ErrorCode::mode_mismatch,
                "cannot mix rational-mode and float-mode coalgebras");
  }
}

bool check_homomorphism(const FiniteCoalgebra& source,
                        const FiniteCoalgebra& target,
                        const std::map<std::string, std::string>& h,
                        double eps) {
  require_same_questions(source, target);
  for (const auto& [from, to] : h) {
    source.require_state(from);
    target.require_state(to);
  }
  std::vector<std::size_t> image(source.state_count());
  for (std::size_t i = 0; i < source.state_count(); ++i) {
    auto it = h.find(source.states()[i]);
    if (it == h.end()) {
      throw Error(ErrorCode::domain_mismatch,
                  "map is not total: no image for state '" +
                      source.states()[i] + "'",
                  source.states()[i]);
    }
    image[i] = target.require_state(it->second);
  }

  for (std::size_t x = 0; x < source.state_count(); ++x) {
    for (std::size_t q = 0; q < source.question_count(); ++q) {
      const Answer& a = source.answer(x, q);
      const Answer& b = target.answer(image[x], q);
      if (a.is_no()) {
        if (!b.is_no()) return false;
        continue;
      }
      if (b.is_no()) return false;
      if (!prob_equal(a.prob(), b.prob(), eps)) return false;
      if (b.next() != image[a.next()]) return false;
    }
  }
  return true;
}

DisjointUnion disjoint_union(const FiniteCoalgebra& left,
                             const FiniteCoalgebra& right) {
  require_same_questions(left, right);

  std::vector<std::string> states;
  states.reserve(left.state_count() + right.state_count());
  std::map<std::string, std::string> left_inj, right_inj;
  for (const auto& s : left.states()) {
    states.push_back("L:" + s);
    left_inj.emplace(s, states.back());
  }
  for (const auto& s : right.states()) {
    states.push_back("R:" + s);
    right_inj.emplace(s, states.back());
  }

  std::vector<FiniteCoalgebra::Cell> cells;
  cells.reserve(states.size() * left.question_count());
  for (std::size_t x = 0; x < left.state_count(); ++x) {
    for (std::size_t q = 0; q < left.question_count(); ++q) {
      auto cell = left.cell(x, q);
      if (cell) cell->second = "L:" + cell->second;
      cells.push_back(std::move(cell));
    }
  }
  for (std::size_t x = 0; x < right.state_count(); ++x) {
    for (std::size_t q = 0; q < right.question_count(); ++q) {
      auto cell = right.cell(x, q);
      if (cell) cell->second = "R:" + cell->second;
      cells.push_back(std::move(cell));
    }
  }

  return DisjointUnion{FiniteCoalgebra(left.mode(), left.questions(),
                                       std::move(states), std::move(cells)),
                       std::move(left_inj), std::move(right_inj)};
}

bool is_static(const FiniteCoalgebra& coalgebra) {
  for (std::size_t x = 0; x < coalgebra.state_count(); ++x) {
    for (std::size_t q = 0; q < coalgebra.question_count(); ++q) {
      const Answer& a = coalgebra.answer(x, q);
      if (!a.is_no() && a.next() != x) return false;
    }
  }
  return true;
}

}  // namespace chucoal
