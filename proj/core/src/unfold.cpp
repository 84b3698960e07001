#include "chucoal/unfold.hpp"

#include <deque>
#include <map>
#include <set>

namespace chucoal {

BehaviourTree::BehaviourTree(std::vector<std::string> questions, int depth,
                             std::shared_ptr<const Node> root)
    : questions_(std::move(questions)), depth_(depth), root_(std::move(root)) {
  if (depth_ < 0 || !root_) {
    throw Error(ErrorCode::invalid_argument, "malformed behaviour tree");
  }
}

namespace {

using NodePtr = std::shared_ptr<const BehaviourTree::Node>;

// Memoized on (state, depth): the unfolding of a finite coalgebra is a DAG
// with at most |carrier| * (depth+1) distinct nodes.
NodePtr build(const FiniteCoalgebra& c, std::size_t state, int depth,
              std::map<std::pair<std::size_t, int>, NodePtr>& memo) {
  auto key = std::make_pair(state, depth);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  auto node = std::make_shared<BehaviourTree::Node>();
  node->branches.reserve(c.question_count());
  for (std::size_t q = 0; q < c.question_count(); ++q) {
    const Answer& a = c.answer(state, q);
    if (a.is_no()) {
      node->branches.emplace_back(std::nullopt);
    } else if (depth == 0) {
      node->branches.emplace_back(std::make_pair(a.prob(), nullptr));
    } else {
      node->branches.emplace_back(
          std::make_pair(a.prob(), build(c, a.next(), depth - 1, memo)));
    }
  }
  memo.emplace(key, node);
  return node;
}

}  // namespace

BehaviourTree unfold(const FiniteCoalgebra& coalgebra, std::string_view state,
                     int depth) {
  if (depth < 0) {
    throw Error(ErrorCode::invalid_argument, "negative unfold depth");
  }
  std::size_t idx = coalgebra.require_state(state);
  std::map<std::pair<std::size_t, int>, NodePtr> memo;
  return BehaviourTree(coalgebra.questions(), depth,
                       build(coalgebra, idx, depth, memo));
}

namespace {

bool nodes_equal(const BehaviourTree::Node& a, const BehaviourTree::Node& b,
                 double eps,
                 std::set<std::pair<const void*, const void*>>& verified) {
  if (&a == &b) return true;
  if (!verified.emplace(&a, &b).second) return true;  // already being checked
  if (a.branches.size() != b.branches.size()) return false;
  for (std::size_t q = 0; q < a.branches.size(); ++q) {
    const auto& ba = a.branches[q];
    const auto& bb = b.branches[q];
    if (ba.has_value() != bb.has_value()) return false;
    if (!ba) continue;
    if (!prob_equal(ba->first, bb->first, eps)) return false;
    if (static_cast<bool>(ba->second) != static_cast<bool>(bb->second)) {
      return false;
    }
    if (ba->second && !nodes_equal(*ba->second, *bb->second, eps, verified)) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool tree_equal(const BehaviourTree& a, const BehaviourTree& b, double eps) {
  if (a.questions() != b.questions()) {
    throw Error(ErrorCode::question_mismatch,
                "trees branch over different question sequences");
  }
  if (a.depth() != b.depth()) {
    throw Error(ErrorCode::invalid_argument,
                "trees have different depths (" + std::to_string(a.depth()) +
                    " vs " + std::to_string(b.depth()) + ")");
  }
  std::set<std::pair<const void*, const void*>> verified;
  return nodes_equal(a.root(), b.root(), eps, verified);
}

std::optional<std::vector<std::string>> behaviour_diff(const BehaviourTree& a,
                                                       const BehaviourTree& b,
                                                       double eps) {
  if (a.questions() != b.questions()) {
    throw Error(ErrorCode::question_mismatch,
                "trees branch over different question sequences");
  }
  if (a.depth() != b.depth()) {
    throw Error(ErrorCode::invalid_argument, "trees have different depths");
  }

  // Breadth-first over node pairs; the first branch mismatch found is the
  // shallowest (and question-order-first) differing path.
  struct Item {
    const BehaviourTree::Node* left;
    const BehaviourTree::Node* right;
    std::vector<std::string> path;
  };
  std::deque<Item> queue;
  std::set<std::pair<const void*, const void*>> visited;
  queue.push_back({&a.root(), &b.root(), {}});
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    if (!visited.emplace(item.left, item.right).second) continue;
    for (std::size_t q = 0; q < a.questions().size(); ++q) {
      const auto& ba = item.left->branches[q];
      const auto& bb = item.right->branches[q];
      std::vector<std::string> path = item.path;
      path.push_back(a.questions()[q]);
      if (ba.has_value() != bb.has_value() ||
          (ba && !prob_equal(ba->first, bb->first, eps))) {
        return path;
      }
      if (ba && ba->second) {
        queue.push_back({ba->second.get(), bb->second.get(), std::move(path)});
      }
    }
  }
  return std::nullopt;
}

bool semantic_equal(const FiniteCoalgebra& a, std::string_view x,
                    const FiniteCoalgebra& b, std::string_view y,
                    double eps, std::optional<int> depth) {
  require_same_questions(a, b);
  int d = depth.value_or(
      static_cast<int>(a.state_count() + b.state_count()));
  return tree_equal(unfold(a, x, d), unfold(b, y, d), eps);
}

}  // namespace chucoal
