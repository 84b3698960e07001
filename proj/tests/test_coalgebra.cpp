#include "chucoal/coalgebra.hpp"

#include "chucoal/bisimulation.hpp"
#include "chucoal/error.hpp"
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

// Direct definition-unfolding oracle for the homomorphism square.
bool homomorphism_by_hand(const FiniteCoalgebra& a, const FiniteCoalgebra& b,
                          const std::vector<std::size_t>& h) {
  for (std::size_t x = 0; x < a.state_count(); ++x) {
    for (std::size_t q = 0; q < a.question_count(); ++q) {
      const Answer& ax = a.answer(x, q);
      const Answer& bh = b.answer(h[x], q);
      if (ax.is_no()) {
        if (!bh.is_no()) return false;
      } else {
        if (bh.is_no()) return false;
        if (!prob_equal(ax.prob(), bh.prob())) return false;
        if (bh.next() != h[ax.next()]) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("identity map is a homomorphism") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x", "y"},
                    {yes(r(1, 2), "y"), no});
  std::map<std::string, std::string> id{{"x", "x"}, {"y", "y"}};
  CHECK(check_homomorphism(a, a, id));
}

TEST_CASE("probability clash breaks the constant map") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x", "y"},
                    {yes(r(1, 2), "x"), yes(r(1, 3), "y")});
  FiniteCoalgebra b(NumericMode::rational, {"q"}, {"z"}, {yes(r(1, 2), "z")});
  std::map<std::string, std::string> constant{{"x", "z"}, {"y", "z"}};
  CHECK_FALSE(check_homomorphism(a, b, constant));
}

TEST_CASE("all maps between random 3-state systems match the oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    RandomCoalgebraOptions opts;
    opts.min_states = 3;
    opts.max_states = 3;
    opts.questions = {"q0", "q1"};
    opts.max_denominator = 2;  // few distinct probabilities, so homs exist
    opts.state_prefix = "a";
    FiniteCoalgebra a = random_coalgebra(rng, opts);
    opts.state_prefix = "b";
    FiniteCoalgebra b = random_coalgebra(rng, opts);
    for (std::size_t code = 0; code < 27; ++code) {
      std::vector<std::size_t> h{code % 3, (code / 3) % 3, (code / 9) % 3};
      std::map<std::string, std::string> hmap;
      for (std::size_t i = 0; i < 3; ++i) {
        hmap.emplace(a.states()[i], b.states()[h[i]]);
      }
      CHECK(check_homomorphism(a, b, hmap) == homomorphism_by_hand(a, b, h));
    }
  }
}

TEST_CASE("question sequence mismatch is a structured error") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x"}, {no});
  FiniteCoalgebra b(NumericMode::rational, {"p"}, {"x"}, {no});
  try {
    check_homomorphism(a, b, {{"x", "x"}});
    FAIL("expected question mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::question_mismatch);
  }
}

TEST_CASE("construction validates probabilities, successors and modes") {
  CHECK_THROWS_AS(FiniteCoalgebra(NumericMode::rational, {"q"}, {"x"},
                                  {yes(r(3, 2), "x")}),
                  Error);
  CHECK_THROWS_AS(FiniteCoalgebra(NumericMode::rational, {"q"}, {"x"},
                                  {yes(r(0, 1), "x")}),
                  Error);
  CHECK_THROWS_AS(FiniteCoalgebra(NumericMode::rational, {"q"}, {"x"},
                                  {yes(r(1, 2), "ghost")}),
                  Error);
  CHECK_THROWS_AS(FiniteCoalgebra(NumericMode::rational, {"q"}, {"x"},
                                  {yes(Prob(0.5), "x")}),
                  Error);
}

TEST_CASE("disjoint union with the empty coalgebra is the original up to tagging") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x", "y"},
                    {yes(r(1, 2), "y"), no});
  FiniteCoalgebra empty(NumericMode::rational, {"q"}, {}, {});
  DisjointUnion u = disjoint_union(a, empty);
  CHECK(u.coalgebra.state_count() == a.state_count());
  for (std::size_t x = 0; x < a.state_count(); ++x) {
    CHECK(u.coalgebra.states()[x] == "L:" + a.states()[x]);
    for (std::size_t q = 0; q < a.question_count(); ++q) {
      const Answer& orig = a.answer(x, q);
      const Answer& tagged = u.coalgebra.answer(x, q);
      CHECK(orig.is_no() == tagged.is_no());
    }
  }
}

TEST_CASE("union cardinality and injection homomorphisms") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    RandomCoalgebraOptions opts;
    opts.questions = {"q0", "q1", "q2"};
    opts.state_prefix = "a";
    FiniteCoalgebra a = random_coalgebra(rng, opts);
    opts.state_prefix = "b";
    FiniteCoalgebra b = random_coalgebra(rng, opts);
    DisjointUnion u = disjoint_union(a, b);
    CHECK(u.coalgebra.state_count() == a.state_count() + b.state_count());
    CHECK(check_homomorphism(a, u.coalgebra, u.left_injection));
    CHECK(check_homomorphism(b, u.coalgebra, u.right_injection));
  }
}

TEST_CASE("valid homomorphisms compose to valid homomorphisms") {
  Rng rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    RandomCoalgebraOptions opts;
    opts.max_states = 4;
    HomomorphismInstance inst = random_homomorphism_instance(rng, opts);
    // Chain with the quotient projection of the target.
    QuotientResult q = strongly_extensional_quotient(inst.target);
    REQUIRE(check_homomorphism(inst.source, inst.target, inst.map));
    REQUIRE(check_homomorphism(inst.target, q.coalgebra, q.projection));
    std::map<std::string, std::string> composed;
    for (const auto& [x, y] : inst.map) {
      composed.emplace(x, q.projection.at(y));
    }
    CHECK(check_homomorphism(inst.source, q.coalgebra, composed));
  }
}

TEST_CASE("static detection") {
  FiniteCoalgebra all_no(NumericMode::rational, {"q"}, {"x"}, {no});
  CHECK(is_static(all_no));
  FiniteCoalgebra self_loop(NumericMode::rational, {"q"}, {"x"},
                            {yes(r(1, 1), "x")});
  CHECK(is_static(self_loop));
  FiniteCoalgebra moving(NumericMode::rational, {"q"}, {"x", "y"},
                         {yes(r(1, 2), "y"), no});
  CHECK_FALSE(is_static(moving));
}

TEST_CASE("a superposition state under a basis-ray question is not static") {
  StateVector plus(2);
  plus << Complex(1, 0), Complex(1, 0);
  StateVector e1(2);
  e1 << Complex(1, 0), Complex(0, 0);
  HilbertSystem system =
      make_hilbert_system(2, {plus}, {Subspace::ray(e1)});
  auto mat = materialize(quantum_coalgebra(system), {plus}, 1,
                         vector_equal_options());
  CHECK_FALSE(is_static(mat.coalgebra));
}

// ---- materialize ----------------------------------------------------------

namespace {

// A small integer-state implicit coalgebra: one question, successor n+1 up
// to a ceiling, then "no".
ImplicitCoalgebra<int> counter_coalgebra(int ceiling) {
  ImplicitCoalgebra<int> c;
  c.mode = NumericMode::rational;
  c.universe = "integers";
  c.questions = {"step"};
  c.behaviour = [ceiling](const int& n, std::size_t)
      -> std::optional<std::pair<Prob, int>> {
    if (n >= ceiling) return std::nullopt;
    return std::make_pair(Prob(Rational(1)), n + 1);
  };
  return c;
}

MaterializeOptions<int> int_options() {
  MaterializeOptions<int> options;
  options.equal = [](int a, int b) { return a == b; };
  return options;
}

}  // namespace

TEST_CASE("depth zero materializes exactly the deduplicated seeds") {
  auto mat = materialize(counter_coalgebra(10), {0, 1, 0, 1}, 0, int_options());
  CHECK(mat.reachable_count() == 2);
  // 0's successor is the seed 1; only 1's successor 2 is out of carrier.
  CHECK(mat.frontier.size() == 1);
  for (const auto& entry : mat.frontier) {
    const Answer& a = mat.coalgebra.answer(entry.state, entry.question);
    CHECK(a.next() == entry.redirected_to);
    CHECK(mat.absorbing[entry.redirected_to]);
    // Absorbing stand-ins answer no to everything.
    CHECK(mat.coalgebra.answer(entry.redirected_to, 0).is_no());
  }
}

TEST_CASE("a static implicit coalgebra never grows past its seeds") {
  ImplicitCoalgebra<int> c;
  c.mode = NumericMode::rational;
  c.universe = "integers";
  c.questions = {"ask"};
  c.behaviour = [](const int& n, std::size_t)
      -> std::optional<std::pair<Prob, int>> {
    return std::make_pair(Prob(Rational(1, 2)), n);
  };
  for (int depth = 0; depth <= 3; ++depth) {
    auto mat = materialize(c, {4, 7}, depth, int_options());
    CHECK(mat.reachable_count() == 2);
    CHECK(mat.frontier.empty());
  }
}

TEST_CASE("materialized closure is monotone in depth") {
  for (int depth = 0; depth < 4; ++depth) {
    auto small = materialize(counter_coalgebra(10), {0}, depth, int_options());
    auto large = materialize(counter_coalgebra(10), {0}, depth + 1, int_options());
    CHECK(small.reachable_count() == std::size_t(depth) + 1);
    CHECK(large.reachable_count() == small.reachable_count() + 1);
    for (std::size_t i = 0; i < small.reachable_count(); ++i) {
      CHECK(small.values[i] == large.values[i]);
    }
  }
}

TEST_CASE("the state cap trips as a structured error") {
  MaterializeOptions<int> options = int_options();
  options.max_states = 3;
  try {
    materialize(counter_coalgebra(100), {0}, 50, options);
    FAIL("expected state explosion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::state_explosion);
  }
}

TEST_CASE("two-basis-ray quantum closure from (1,1) has three projective classes") {
  StateVector plus(2);
  plus << Complex(1, 0), Complex(1, 0);
  StateVector e1(2), e2(2);
  e1 << Complex(1, 0), Complex(0, 0);
  e2 << Complex(0, 0), Complex(1, 0);
  HilbertSystem system = make_hilbert_system(
      2, {plus}, {Subspace::ray(e1), Subspace::ray(e2)});
  auto mat = materialize(quantum_coalgebra(system), {plus}, 1,
                         ray_equal_options());
  CHECK(mat.reachable_count() == 3);  // [(1,1)], [e1], [e2]
  CHECK(mat.frontier.empty());        // projections are fixpoints of their rays
}
