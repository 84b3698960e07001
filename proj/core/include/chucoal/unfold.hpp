#pragma once

#include "chucoal/coalgebra.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chucoal {

// Depth-d observable behaviour of a state: a Q-branching tree with
// probability-labelled arcs. Depth-0 trees answer every question with
// "no" or a bare probability (no subtrees). Subtrees are shared, so a
// deep unfolding of a finite coalgebra stays small.
class BehaviourTree {
public:
  struct Node {
    // Aligned with the question sequence; child is null at depth 0.
    std::vector<std::optional<std::pair<Prob, std::shared_ptr<const Node>>>>
        branches;
  };

  BehaviourTree(std::vector<std::string> questions, int depth,
                std::shared_ptr<const Node> root);

  const std::vector<std::string>& questions() const { return questions_; }
  int depth() const { return depth_; }
  const Node& root() const { return *root_; }
  std::shared_ptr<const Node> root_ptr() const { return root_; }

private:
  std::vector<std::string> questions_;
  int depth_;
  std::shared_ptr<const Node> root_;
};

// Depth-d unfolding of `state` into the tree of observable behaviours; the
// finite-depth view of the state's image in the final coalgebra.
BehaviourTree unfold(const FiniteCoalgebra& coalgebra, std::string_view state,
                     int depth);

// Structural equality (same depth, same questions required) with numeric-mode
// probability comparison.
bool tree_equal(const BehaviourTree& a, const BehaviourTree& b,
                double eps = kDefaultEps);

// Shallowest question path at which the trees differ (lexicographically first
// among equally shallow ones), or nullopt when equal.
std::optional<std::vector<std::string>> behaviour_diff(
    const BehaviourTree& a, const BehaviourTree& b, double eps = kDefaultEps);

// Equality of denotation at finite depth. The default depth |X_A| + |X_B| is
// a stabilization bound for finite carriers, so this coincides with
// bisimilarity.
bool semantic_equal(const FiniteCoalgebra& a, std::string_view x,
                    const FiniteCoalgebra& b, std::string_view y,
                    double eps = kDefaultEps,
                    std::optional<int> depth = std::nullopt);

}  // namespace chucoal
