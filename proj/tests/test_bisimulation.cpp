#include "chucoal/bisimulation.hpp"

#include "chucoal/error.hpp"
#include "chucoal/quantum.hpp"
#include "chucoal/random.hpp"

#include <doctest.h>

#include <set>

using namespace chucoal;

namespace {

Prob r(std::int64_t num, std::int64_t den) { return Prob(Rational(num, den)); }

FiniteCoalgebra::Cell yes(Prob p, std::string next) {
  return std::make_pair(std::move(p), std::move(next));
}

const FiniteCoalgebra::Cell no = std::nullopt;

// Independent oracle: shrink the full relation on one coalgebra until the
// bisimulation clauses hold, then read off equivalence classes.
std::vector<std::size_t> greatest_relation_blocks(const FiniteCoalgebra& c) {
  const std::size_t n = c.state_count();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (!rel[x][y]) continue;
        bool keep = true;
        for (std::size_t q = 0; keep && q < c.question_count(); ++q) {
          const Answer& ax = c.answer(x, q);
          const Answer& ay = c.answer(y, q);
          if (ax.is_no() != ay.is_no()) {
            keep = false;
          } else if (!ax.is_no()) {
            keep = prob_equal(ax.prob(), ay.prob(), 0.0) &&
                   rel[ax.next()][ay.next()];
          }
        }
        if (!keep) {
          rel[x][y] = false;
          changed = true;
        }
      }
    }
  }
  std::vector<std::size_t> block(n);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < n; ++x) {
    bool found = false;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (rel[reps[i]][x]) {
        block[x] = i;
        found = true;
        break;
      }
    }
    if (!found) {
      block[x] = reps.size();
      reps.push_back(x);
    }
  }
  return block;
}

}  // namespace

TEST_CASE("empty and identity relations are bisimulations") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x", "y"},
                    {yes(r(1, 2), "y"), no});
  CHECK(is_bisimulation(Relation{}, a, a));
  Relation id{{{"x", "x"}, {"y", "y"}}};
  CHECK(is_bisimulation(id, a, a));
}

TEST_CASE("a relation missing its successor pairs is rejected") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x", "y", "z"},
                    {yes(r(1, 2), "y"), yes(r(1, 2), "z"), yes(r(1, 2), "z")});
  // x ~ x holds only if (y, y) is also present.
  Relation partial{{{"x", "x"}}};
  CHECK_FALSE(is_bisimulation(partial, a, a));
}

TEST_CASE("projective equivalence is a bisimulation on a quantum materialization") {
  StateVector plus(2);
  plus << Complex(1, 0), Complex(1, 0);
  StateVector doubled = 2.0 * plus;
  StateVector e1(2), e2(2);
  e1 << Complex(1, 0), Complex(0, 0);
  e2 << Complex(0, 0), Complex(1, 0);
  HilbertSystem system = make_hilbert_system(
      2, {plus, doubled}, {Subspace::ray(e1), Subspace::ray(e2)});
  auto mat = materialize(quantum_coalgebra(system), {plus, doubled}, 2,
                         vector_equal_options());
  Relation proj;
  for (std::size_t i = 0; i < mat.values.size(); ++i) {
    for (std::size_t j = 0; j < mat.values.size(); ++j) {
      if (projective_equiv(mat.values[i], mat.values[j], 1e-9)) {
        proj.pairs.emplace_back(mat.coalgebra.states()[i],
                                mat.coalgebra.states()[j]);
      }
    }
  }
  CHECK(is_bisimulation(proj, mat.coalgebra, mat.coalgebra, 1e-9));
}

TEST_CASE("uniform self-looping rows collapse to a single block") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x", "y", "z"},
                    {yes(r(1, 2), "x"), yes(r(1, 2), "y"), yes(r(1, 2), "z")});
  Partition p = largest_auto_bisimulation(a);
  CHECK(p.block_count() == 1);
}

TEST_CASE("a no/yes disagreement separates states immediately") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x", "y"},
                    {no, yes(r(1, 1), "y")});
  Partition p = largest_auto_bisimulation(a);
  CHECK(p.block_count() == 2);
  CHECK_FALSE(p.same_block("x", "y"));
}

TEST_CASE("partition refinement matches the naive fixpoint on random systems") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    RandomCoalgebraOptions opts;
    std::size_t nq = 1 + rng.below(4);
    for (std::size_t q = 0; q < nq; ++q) {
      opts.questions.push_back("q" + std::to_string(q));
    }
    opts.state_prefix = "a";
    FiniteCoalgebra a = random_coalgebra(rng, opts);
    opts.state_prefix = "b";
    FiniteCoalgebra b = random_coalgebra(rng, opts);
    DisjointUnion u = disjoint_union(a, b);
    Partition refined = largest_bisimulation(a, b);
    Partition naive(u.coalgebra.states(),
                    greatest_relation_blocks(u.coalgebra));
    CHECK(refined == naive);
  }
}

TEST_CASE("bisimilarity is reflexive, symmetric, and transitive on samples") {
  Rng rng(41);
  RandomCoalgebraOptions opts;
  opts.questions = {"q0", "q1"};
  opts.max_denominator = 2;
  for (int trial = 0; trial < 10; ++trial) {
    opts.state_prefix = "a";
    FiniteCoalgebra a = random_coalgebra(rng, opts);
    opts.state_prefix = "b";
    FiniteCoalgebra b = random_coalgebra(rng, opts);
    opts.state_prefix = "c";
    FiniteCoalgebra c = random_coalgebra(rng, opts);
    for (const auto& x : a.states()) CHECK(bisimilar(a, x, a, x));
    for (const auto& x : a.states()) {
      for (const auto& y : b.states()) {
        CHECK(bisimilar(a, x, b, y) == bisimilar(b, y, a, x));
        if (bisimilar(a, x, b, y)) {
          for (const auto& z : c.states()) {
            if (bisimilar(b, y, c, z)) CHECK(bisimilar(a, x, c, z));
          }
        }
      }
    }
  }
}

TEST_CASE("quotient of an extensional coalgebra is an isomorphic copy") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x", "y"},
                    {no, yes(r(1, 1), "y")});
  QuotientResult q = strongly_extensional_quotient(a);
  CHECK(q.coalgebra.equal_to(a));
  CHECK(q.projection.at("x") == "x");
  CHECK(q.projection.at("y") == "y");
}

TEST_CASE("quotient projection is a homomorphism and the quotient is extensional") {
  Rng rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    RandomCoalgebraOptions opts;
    opts.questions = {"q0", "q1"};
    opts.max_denominator = 2;
    FiniteCoalgebra a = random_coalgebra(rng, opts);
    QuotientResult q = strongly_extensional_quotient(a);
    CHECK(check_homomorphism(a, q.coalgebra, q.projection));
    CHECK(largest_auto_bisimulation(q.coalgebra).block_count() ==
          q.coalgebra.state_count());
    // Idempotence.
    QuotientResult again = strongly_extensional_quotient(q.coalgebra);
    CHECK(again.coalgebra.equal_to(q.coalgebra));
  }
}

TEST_CASE("kernels of homomorphisms are bisimulations") {
  Rng rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    RandomCoalgebraOptions opts;
    opts.max_states = 4;
    HomomorphismInstance inst = random_homomorphism_instance(rng, opts);
    REQUIRE(check_homomorphism(inst.source, inst.target, inst.map));
    Relation kernel;
    for (const auto& x : inst.source.states()) {
      for (const auto& y : inst.source.states()) {
        if (inst.map.at(x) == inst.map.at(y)) kernel.pairs.emplace_back(x, y);
      }
    }
    CHECK(is_bisimulation(kernel, inst.source, inst.source));
  }
}

TEST_CASE("homomorphisms out of a strongly extensional coalgebra are injective") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    RandomCoalgebraOptions opts;
    opts.max_states = 3;
    opts.questions = {"q0", "q1"};
    opts.max_denominator = 2;
    opts.state_prefix = "a";
    FiniteCoalgebra extensional =
        strongly_extensional_quotient(random_coalgebra(rng, opts)).coalgebra;
    opts.state_prefix = "c";
    FiniteCoalgebra target =
        disjoint_union(extensional, random_coalgebra(rng, opts)).coalgebra;

    const std::size_t n = extensional.state_count();
    const std::size_t m = target.state_count();
    std::vector<std::size_t> pick(n, 0);
    std::size_t valid = 0;
    while (true) {
      std::map<std::string, std::string> h;
      for (std::size_t i = 0; i < n; ++i) {
        h.emplace(extensional.states()[i], target.states()[pick[i]]);
      }
      if (check_homomorphism(extensional, target, h)) {
        ++valid;
        std::set<std::size_t> image(pick.begin(), pick.end());
        CHECK(image.size() == n);
      }
      std::size_t pos = 0;
      while (pos < n && ++pick[pos] == m) {
        pick[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
    CHECK(valid >= 1);  // at least the union injection
  }
}

TEST_CASE("partitions order blocks lexicographically by smallest member") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"zz", "aa", "mm"},
                    {no, yes(r(1, 1), "aa"), no});
  Partition p = largest_auto_bisimulation(a);
  auto blocks = p.blocks();
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::vector<std::string>{"aa"});
  CHECK(blocks[1] == std::vector<std::string>{"mm", "zz"});
}

TEST_CASE("unknown ids in relations are structured errors") {
  FiniteCoalgebra a(NumericMode::rational, {"q"}, {"x"}, {no});
  Relation bad{{{"x", "ghost"}}};
  CHECK_THROWS_AS(is_bisimulation(bad, a, a), Error);
}
