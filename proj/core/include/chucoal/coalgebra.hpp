#pragma once

#include "chucoal/error.hpp"
#include "chucoal/numeric.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chucoal {

// Per-state, per-question behaviour cell: either "no", or "yes" with a
// probability in (0,1] and a successor state (stored as a carrier index).
struct Answer {
  std::optional<std::pair<Prob, std::size_t>> yes;

  bool is_no() const { return !yes.has_value(); }
  const Prob& prob() const { return yes->first; }
  std::size_t next() const { return yes->second; }
};

// A finite coalgebra for the question functor X -> ({no} + (0,1] x X)^Q,
// stored as a total row-major table over (carrier x questions).
class FiniteCoalgebra {
public:
  // Construction cell: "no" = nullopt, "yes" = (prob, successor id).
  using Cell = std::optional<std::pair<Prob, std::string>>;

  FiniteCoalgebra(NumericMode mode, std::vector<std::string> questions,
                  std::vector<std::string> states, std::vector<Cell> behaviour);

  NumericMode mode() const { return mode_; }
  const std::vector<std::string>& questions() const { return questions_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t state_count() const { return states_.size(); }
  std::size_t question_count() const { return questions_.size(); }

  const Answer& answer(std::size_t state, std::size_t question) const {
    return behaviour_[state * questions_.size() + question];
  }
  Cell cell(std::size_t state, std::size_t question) const;

  std::optional<std::size_t> state_index(std::string_view id) const;
  std::optional<std::size_t> question_index(std::string_view id) const;
  std::size_t require_state(std::string_view id) const;

  bool equal_to(const FiniteCoalgebra& other, double eps = kDefaultEps) const;

private:
  NumericMode mode_;
  std::vector<std::string> questions_;
  std::vector<std::string> states_;
  std::vector<Answer> behaviour_;
  std::unordered_map<std::string, std::size_t> state_index_;
  std::unordered_map<std::string, std::size_t> question_index_;
};

// Throws question_mismatch unless the two coalgebras have identical question
// sequences and matching numeric modes.
void require_same_questions(const FiniteCoalgebra& a, const FiniteCoalgebra& b);

// Homomorphism square for the question functor: h preserves "no" answers and
// maps yes-successors forward with equal probability.
bool check_homomorphism(const FiniteCoalgebra& source,
                        const FiniteCoalgebra& target,
                        const std::map<std::string, std::string>& h,
                        double eps = kDefaultEps);

struct DisjointUnion {
  FiniteCoalgebra coalgebra;
  std::map<std::string, std::string> left_injection;
  std::map<std::string, std::string> right_injection;
};

// Tagged union of carriers ("L:" / "R:" prefixes); behaviour inherited, and
// both injections are homomorphisms.
DisjointUnion disjoint_union(const FiniteCoalgebra& left,
                             const FiniteCoalgebra& right);

// True iff every yes-answer loops back to its own state.
bool is_static(const FiniteCoalgebra& coalgebra);

// A coalgebra whose carrier is not enumerated up front: behaviour is a pure
// oracle over an arbitrary state representation.
template <typename State>
struct ImplicitCoalgebra {
  NumericMode mode = NumericMode::floating;
  std::string universe;  // human-readable carrier description
  std::vector<std::string> questions;
  // Deterministic and stateless: equal inputs give equal answers.
  std::function<std::optional<std::pair<Prob, State>>(const State&,
                                                      std::size_t question)>
      behaviour;
};

template <typename State>
struct MaterializeOptions {
  std::function<bool(const State&, const State&)> equal;
  // Id for the carrier element first discovered at `index`.
  std::function<std::string(const State&, std::size_t index)> label =
      [](const State&, std::size_t index) { return "s" + std::to_string(index); };
  std::size_t max_states = 10000;
};

template <typename State>
struct Materialized {
  FiniteCoalgebra coalgebra;
  std::vector<State> values;    // aligned with the carrier sequence
  std::vector<bool> absorbing;  // true for frontier stand-ins (all-no rows)

  struct FrontierEntry {
    std::size_t state;          // source of the redirected answer
    std::size_t question;
    std::size_t redirected_to;  // index of the absorbing stand-in
  };
  std::vector<FrontierEntry> frontier;

  std::size_t reachable_count() const {
    std::size_t n = 0;
    for (bool a : absorbing) n += !a;
    return n;
  }
};

// Depth-bounded closure of `seeds` under yes-successors, deduplicated by
// `options.equal` (first occurrence wins). Successors discovered beyond
// depth `depth` are redirected to absorbing stand-ins (all-no rows) so the
// result stays a total coalgebra; each redirection is reported in
// `frontier`. Deterministic: discovery order is seed order, then breadth
// first by question order.
template <typename State>
Materialized<State> materialize(const ImplicitCoalgebra<State>& implicit,
                                const std::vector<State>& seeds, int depth,
                                const MaterializeOptions<State>& options) {
  if (depth < 0) {
    throw Error(ErrorCode::invalid_argument, "negative materialize depth");
  }
  if (!options.equal) {
    throw Error(ErrorCode::invalid_argument,
                "materialize needs a state-equality predicate");
  }

  const std::size_t q_count = implicit.questions.size();
  using Outcome = std::optional<std::pair<Prob, State>>;

  std::vector<State> values;
  std::vector<int> level;  // discovery depth
  std::vector<std::vector<Outcome>> outcomes;
  auto find_equal = [&](const State& s) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (options.equal(values[i], s)) return i;
    }
    return std::nullopt;
  };
  auto push_state = [&](const State& s, int lvl) {
    if (values.size() >= options.max_states) {
      throw Error(ErrorCode::state_explosion,
                  "materialize exceeded its state cap of " +
                      std::to_string(options.max_states) + " states");
    }
    values.push_back(s);
    level.push_back(lvl);
  };

  for (const State& seed : seeds) {
    if (!find_equal(seed)) push_state(seed, 0);
  }

  // Phase 1: close the reachable set. Each state's behaviour is evaluated
  // exactly once; successors of depth-d states are not pursued.
  for (std::size_t i = 0; i < values.size(); ++i) {
    outcomes.emplace_back();
    outcomes[i].reserve(q_count);
    for (std::size_t q = 0; q < q_count; ++q) {
      outcomes[i].push_back(implicit.behaviour(values[i], q));
      const Outcome& result = outcomes[i].back();
      if (result && level[i] < depth && !find_equal(result->second)) {
        push_state(result->second, level[i] + 1);
      }
    }
  }

  // Phase 2: link rows against the complete carrier; out-of-carrier
  // successors (only possible from depth-d states) become absorbing copies.
  const std::size_t reachable = values.size();
  std::vector<std::optional<std::pair<Prob, std::size_t>>> rows;
  std::vector<typename Materialized<State>::FrontierEntry> frontier;
  std::vector<State> absorb_values;
  auto find_absorb = [&](const State& s) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < absorb_values.size(); ++k) {
      if (options.equal(absorb_values[k], s)) return reachable + k;
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < reachable; ++i) {
    for (std::size_t q = 0; q < q_count; ++q) {
      const Outcome& result = outcomes[i][q];
      if (!result) {
        rows.emplace_back(std::nullopt);
        continue;
      }
      if (auto known = find_equal(result->second)) {
        rows.emplace_back(std::make_pair(result->first, *known));
        continue;
      }
      std::size_t copy;
      if (auto existing = find_absorb(result->second)) {
        copy = *existing;
      } else {
        if (reachable + absorb_values.size() >= options.max_states) {
          throw Error(ErrorCode::state_explosion,
                      "materialize exceeded its state cap of " +
                          std::to_string(options.max_states) + " states");
        }
        absorb_values.push_back(result->second);
        copy = reachable + absorb_values.size() - 1;
      }
      rows.emplace_back(std::make_pair(result->first, copy));
      frontier.push_back({i, q, copy});
    }
  }

  std::vector<bool> absorbing(reachable, false);
  for (const State& s : absorb_values) {
    values.push_back(s);
    absorbing.push_back(true);
    for (std::size_t q = 0; q < q_count; ++q) rows.emplace_back(std::nullopt);
  }

  std::vector<std::string> ids;
  ids.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::string id = options.label(values[i], i);
    if (i >= reachable) id += "!";  // stand-in marker
    ids.push_back(std::move(id));
  }

  std::vector<FiniteCoalgebra::Cell> cells;
  cells.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row) {
      cells.emplace_back(std::nullopt);
    } else {
      cells.emplace_back(std::make_pair(row->first, ids[row->second]));
    }
  }

  return Materialized<State>{
      FiniteCoalgebra(implicit.mode, implicit.questions, ids, std::move(cells)),
      std::move(values), std::move(absorbing), std::move(frontier)};
}

}  // namespace chucoal
