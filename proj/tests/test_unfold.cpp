#include "chucoal/unfold.hpp"

#include "chucoal/bisimulation.hpp"
#include "chucoal/error.hpp"
#include "chucoal/io.hpp"
#include "chucoal/quantum.hpp"
#include "chucoal/random.hpp"

#include <doctest.h>

using namespace chucoal;

namespace {

Prob r(std::int64_t num, std::int64_t den) { return Prob(Rational(num, den)); }

FiniteCoalgebra::Cell yes(Prob p, std::string next) {
  return std::make_pair(std::move(p), std::move(next));
}

const FiniteCoalgebra::Cell no = std::nullopt;

}  // namespace

TEST_CASE("depth zero on an all-no state is the all-no leaf map") {
  FiniteCoalgebra a(NumericMode::rational, {"q0", "q1"}, {"x"}, {no, no});
  BehaviourTree t = unfold(a, "x", 0);
  CHECK(t.depth() == 0);
  for (const auto& b : t.root().branches) CHECK_FALSE(b.has_value());
}

TEST_CASE("static coalgebra: every yes subtree is the root one level shallower") {
  FiniteCoalgebra a(NumericMode::rational, {"q0", "q1"}, {"x"},
                    {yes(r(1, 2), "x"), no});
  for (int depth = 1; depth <= 4; ++depth) {
    BehaviourTree t = unfold(a, "x", depth);
    BehaviourTree shallower = unfold(a, "x", depth - 1);
    const auto& branch = t.root().branches[0];
    REQUIRE(branch.has_value());
    BehaviourTree subtree(a.questions(), depth - 1, branch->second);
    CHECK(tree_equal(subtree, shallower));
  }
}

TEST_CASE("unfolding is invariant under the strongly extensional quotient") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    RandomCoalgebraOptions opts;
    opts.questions = {"q0", "q1"};
    opts.max_denominator = 2;
    FiniteCoalgebra a = random_coalgebra(rng, opts);
    QuotientResult q = strongly_extensional_quotient(a);
    for (const auto& x : a.states()) {
      for (int depth = 0; depth <= 3; ++depth) {
        CHECK(tree_equal(unfold(a, x, depth),
                         unfold(q.coalgebra, q.projection.at(x), depth)));
      }
    }
  }
}

TEST_CASE("tree equality is reflexive and sensitive to one branch probability") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x"}, {yes(r(1, 2), "x")});
  FiniteCoalgebra b(NumericMode::rational, {"q"}, {"x"}, {yes(r(1, 3), "x")});
  BehaviourTree ta = unfold(a, "x", 2);
  BehaviourTree tb = unfold(b, "x", 2);
  CHECK(tree_equal(ta, ta));
  CHECK_FALSE(tree_equal(ta, tb));
}

TEST_CASE("tree equality agrees with serialized-form comparison in rational mode") {
  Rng rng(103);
  RandomCoalgebraOptions opts;
  opts.questions = {"q0", "q1"};
  opts.max_denominator = 2;
  opts.max_states = 4;
  for (int trial = 0; trial < 20; ++trial) {
    opts.state_prefix = "a";
    FiniteCoalgebra a = random_coalgebra(rng, opts);
    opts.state_prefix = "b";
    FiniteCoalgebra b = random_coalgebra(rng, opts);
    for (const auto& x : a.states()) {
      for (const auto& y : b.states()) {
        BehaviourTree tx = unfold(a, x, 3);
        BehaviourTree ty = unfold(b, y, 3);
        CHECK(tree_equal(tx, ty) == (print_tree(tx) == print_tree(ty)));
      }
    }
  }
}

TEST_CASE("depth or question mismatches are structured errors") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x"}, {no});
  FiniteCoalgebra b(NumericMode::rational, {"p"}, {"x"}, {no});
  CHECK_THROWS_AS(tree_equal(unfold(a, "x", 1), unfold(a, "x", 2)), Error);
  CHECK_THROWS_AS(tree_equal(unfold(a, "x", 1), unfold(b, "x", 1)), Error);
  CHECK_THROWS_AS(unfold(a, "ghost", 1), Error);
}

TEST_CASE("semantic equality is reflexive and matches refinement on the 2-state example") {
  // x and y answer identically and their successors are bisimilar.
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x", "y", "u", "v"},
                    {yes(r(1, 2), "u"), yes(r(1, 2), "v"), no, no});
  CHECK(semantic_equal(a, "x", a, "x"));
  CHECK(semantic_equal(a, "x", a, "y"));
  CHECK(bisimilar(a, "x", a, "y"));
}

TEST_CASE("semantic equality coincides with bisimilarity on random systems") {
  Rng rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    RandomCoalgebraOptions opts;
    std::size_t nq = 1 + rng.below(3);
    for (std::size_t q = 0; q < nq; ++q) {
      opts.questions.push_back("q" + std::to_string(q));
    }
    opts.max_denominator = 2;
    opts.max_states = 5;
    opts.state_prefix = "a";
    FiniteCoalgebra a = random_coalgebra(rng, opts);
    opts.state_prefix = "b";
    FiniteCoalgebra b = random_coalgebra(rng, opts);
    for (const auto& x : a.states()) {
      for (const auto& y : b.states()) {
        CHECK(semantic_equal(a, x, b, y) == bisimilar(a, x, b, y));
      }
    }
  }
}

TEST_CASE("monotone separation and stabilization") {
  Rng rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    RandomCoalgebraOptions opts;
    opts.questions = {"q0", "q1"};
    opts.max_denominator = 2;
    opts.max_states = 5;
    opts.state_prefix = "a";
    FiniteCoalgebra a = random_coalgebra(rng, opts);
    opts.state_prefix = "b";
    FiniteCoalgebra b = random_coalgebra(rng, opts);
    int stable = static_cast<int>(a.state_count() + b.state_count());
    for (const auto& x : a.states()) {
      for (const auto& y : b.states()) {
        for (int d = 0; d + 1 <= stable; ++d) {
          bool eq_d = tree_equal(unfold(a, x, d), unfold(b, y, d));
          bool eq_next = tree_equal(unfold(a, x, d + 1), unfold(b, y, d + 1));
          if (!eq_d) CHECK_FALSE(eq_next);
        }
        CHECK(tree_equal(unfold(a, x, stable), unfold(b, y, stable)) ==
              tree_equal(unfold(a, x, stable + 3), unfold(b, y, stable + 3)));
      }
    }
  }
}

TEST_CASE("homomorphisms are absorbed by unfolding") {
  Rng rng(113);
  for (int trial = 0; trial < 15; ++trial) {
    RandomCoalgebraOptions opts;
    opts.max_states = 4;
    HomomorphismInstance inst = random_homomorphism_instance(rng, opts);
    for (const auto& x : inst.source.states()) {
      for (int d = 0; d <= 4; ++d) {
        CHECK(tree_equal(unfold(inst.source, x, d),
                         unfold(inst.target, inst.map.at(x), d)));
      }
    }
  }
}

TEST_CASE("quantum states: scalar multiples agree, orthogonal states differ at depth 0") {
  StateVector psi(2), phi(2);
  psi << Complex(1, 0), Complex(1, 0);
  phi << Complex(1, 0), Complex(-1, 0);
  StateVector scaled = Complex(0, 2) * psi;
  auto questions = discriminating_questions({psi, phi}, 2);
  HilbertSystem system = make_hilbert_system(2, {psi, scaled, phi}, questions);
  auto mat = materialize(quantum_coalgebra(system), {psi, scaled, phi}, 1,
                         vector_equal_options());
  const auto& ids = mat.coalgebra.states();
  CHECK(semantic_equal(mat.coalgebra, ids[0], mat.coalgebra, ids[1]));
  CHECK_FALSE(semantic_equal(mat.coalgebra, ids[0], mat.coalgebra, ids[2],
                             kDefaultEps, 0));
}

TEST_CASE("behaviour diff reports the shallowest differing path") {
  FiniteCoalgebra a(NumericMode::rational, {"q0", "q1"}, {"x", "u"},
                    {yes(r(1, 2), "u"), no, no, no});
  FiniteCoalgebra b(NumericMode::rational, {"q0", "q1"}, {"x", "u"},
                    {yes(r(1, 2), "u"), no, no, yes(r(1, 1), "u")});
  auto diff = behaviour_diff(unfold(a, "x", 2), unfold(b, "x", 2));
  REQUIRE(diff.has_value());
  CHECK(*diff == std::vector<std::string>{"q0", "q1"});
  CHECK_FALSE(behaviour_diff(unfold(a, "x", 2), unfold(a, "x", 2)).has_value());
}
