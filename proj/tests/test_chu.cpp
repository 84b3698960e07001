#include "chucoal/chu.hpp"

#include "chucoal/error.hpp"
#include "chucoal/random.hpp"

#include <doctest.h>

#include <set>

using namespace chucoal;

namespace {

Value sym(int i) { return Value(static_cast<std::int32_t>(i)); }

ChuSpace boolean_space(std::vector<std::string> points,
                       std::vector<std::string> attributes,
                       std::vector<int> bits) {
  std::vector<Value> eval;
  for (int b : bits) eval.push_back(sym(b));
  return ChuSpace(ValueAlphabet::booleans(), std::move(points),
                  std::move(attributes), std::move(eval));
}

// Independent oracle: evaluate the adjointness equation directly from two
// explicit function tables (indices into points/attributes).
bool adjoint_by_hand(const ChuSpace& c, const ChuSpace& d,
                     const std::vector<std::size_t>& fwd,
                     const std::vector<std::size_t>& bwd) {
  for (std::size_t x = 0; x < c.point_count(); ++x) {
    for (std::size_t a2 = 0; a2 < d.attribute_count(); ++a2) {
      if (!value_equal(c.eval(x, bwd[a2]), d.eval(fwd[x], a2))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("identity morphism is always valid") {
  ChuSpace c = boolean_space({"x", "y"}, {"a", "b"}, {1, 0, 0, 1});
  CHECK(check_chu_morphism(c, c, ChuMorphism::identity(c)));
}

TEST_CASE("single-cell value clash is rejected") {
  ChuSpace c = boolean_space({"x"}, {"a"}, {1});
  ChuSpace d = boolean_space({"y"}, {"b"}, {0});
  ChuMorphism m{{{"x", "y"}}, {{"b", "a"}}};
  CHECK_FALSE(check_chu_morphism(c, d, m));
}

TEST_CASE("all 16 function pairs between fixed 2x2 spaces match the direct oracle") {
  ChuSpace c = boolean_space({"x0", "x1"}, {"a0", "a1"}, {1, 0, 0, 1});
  ChuSpace d = boolean_space({"y0", "y1"}, {"b0", "b1"}, {1, 1, 0, 1});
  for (std::size_t f0 = 0; f0 < 2; ++f0) {
    for (std::size_t f1 = 0; f1 < 2; ++f1) {
      for (std::size_t g0 = 0; g0 < 2; ++g0) {
        for (std::size_t g1 = 0; g1 < 2; ++g1) {
          std::vector<std::size_t> fwd{f0, f1};
          std::vector<std::size_t> bwd{g0, g1};
          ChuMorphism m{{{"x0", d.points()[f0]}, {"x1", d.points()[f1]}},
                        {{"b0", c.attributes()[g0]},
                         {"b1", c.attributes()[g1]}}};
          CHECK(check_chu_morphism(c, d, m) == adjoint_by_hand(c, d, fwd, bwd));
        }
      }
    }
  }
}

TEST_CASE("morphism errors are structured and name the offending id") {
  ChuSpace c = boolean_space({"x"}, {"a"}, {1});
  ChuMorphism bad{{{"x", "nowhere"}}, {{"a", "a"}}};
  try {
    check_chu_morphism(c, c, bad);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain_mismatch);
    CHECK(e.id() == "nowhere");
  }

  ChuMorphism partial{{}, {{"a", "a"}}};
  CHECK_THROWS_AS(check_chu_morphism(c, c, partial), Error);
}

TEST_CASE("alphabet mismatch is a space mismatch") {
  ChuSpace c = boolean_space({"x"}, {"a"}, {1});
  ChuSpace d(ValueAlphabet::rational_unit(), {"x"}, {"a"},
             {Value(Rational(1))});
  CHECK_THROWS_AS(check_chu_morphism(c, d, ChuMorphism::identity(c)), Error);
}

TEST_CASE("composition laws") {
  ChuSpace c = boolean_space({"x0", "x1"}, {"a0", "a1"}, {1, 0, 0, 1});
  ChuMorphism id = ChuMorphism::identity(c);
  ChuMorphism flip{{{"x0", "x1"}, {"x1", "x0"}}, {{"a0", "a1"}, {"a1", "a0"}}};
  CHECK(check_chu_morphism(c, c, flip));

  SUBCASE("composition with the identity") {
    CHECK(compose_chu(flip, id) == flip);
    CHECK(compose_chu(id, flip) == flip);
  }
  SUBCASE("the two flips compose to the identity") {
    CHECK(compose_chu(flip, flip) == id);
  }
  SUBCASE("valid compose valid is valid") {
    ChuMorphism both = compose_chu(flip, flip);
    CHECK(check_chu_morphism(c, c, both));
  }
}

TEST_CASE("associativity on random permutation triples over 3-point spaces") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    // Permuted copies of one table give valid morphisms by construction.
    std::vector<int> bits;
    for (int i = 0; i < 9; ++i) bits.push_back(int(rng.below(2)));
    auto space_named = [&](const std::string& p, const std::string& a,
                           const std::vector<int>& b) {
      return boolean_space({p + "0", p + "1", p + "2"},
                           {a + "0", a + "1", a + "2"}, b);
    };
    ChuSpace c1 = space_named("x", "a", bits);

    auto permuted = [&](const ChuSpace& base, const std::string& p,
                        const std::string& a,
                        const std::vector<std::size_t>& perm) {
      // Both rows and columns move, so (perm, perm) is a valid morphism.
      std::vector<int> out(9);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          out[perm[i] * 3 + perm[j]] = std::get<std::int32_t>(base.eval(i, j));
        }
      }
      return space_named(p, a, out);
    };
    auto random_perm = [&] {
      std::vector<std::size_t> perm{0, 1, 2};
      for (std::size_t i = 3; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      return perm;
    };
    auto p1 = random_perm(), p2 = random_perm(), p3 = random_perm();
    ChuSpace c2 = permuted(c1, "y", "b", p1);
    ChuSpace c3 = permuted(c2, "z", "c", p2);
    ChuSpace c4 = permuted(c3, "w", "d", p3);

    auto perm_morphism = [](const ChuSpace& from, const ChuSpace& to,
                            const std::vector<std::size_t>& perm) {
      ChuMorphism m;
      for (std::size_t i = 0; i < 3; ++i) {
        m.forward.emplace(from.points()[i], to.points()[perm[i]]);
        m.backward.emplace(to.attributes()[perm[i]], from.attributes()[i]);
      }
      return m;
    };
    ChuMorphism f = perm_morphism(c1, c2, p1);
    ChuMorphism g = perm_morphism(c2, c3, p2);
    ChuMorphism h = perm_morphism(c3, c4, p3);
    REQUIRE(check_chu_morphism(c1, c2, f));
    REQUIRE(check_chu_morphism(c2, c3, g));
    REQUIRE(check_chu_morphism(c3, c4, h));

    CHECK(compose_chu(h, compose_chu(g, f)) ==
          compose_chu(compose_chu(h, g), f));
    CHECK(check_chu_morphism(c1, c3, compose_chu(g, f)));
  }
}

TEST_CASE("collapse of an already-extensional space is an isomorphic copy") {
  ChuSpace c = boolean_space({"x", "y"}, {"a", "b"}, {1, 0, 0, 1});
  CollapseResult r = biextensional_collapse(c);
  CHECK(r.space.equal_to(c));
  for (const auto& [from, to] : r.point_map) CHECK(from == to);
  for (const auto& [from, to] : r.attribute_map) CHECK(from == to);
}

TEST_CASE("duplicate row shrinks the point count by one") {
  ChuSpace c = boolean_space({"x", "y", "z"}, {"a", "b"},
                             {1, 0, 1, 0, 0, 1});
  CollapseResult r = biextensional_collapse(c);
  CHECK(r.space.point_count() == 2);
  CHECK(r.point_map.at("y") == "x");
  CHECK(r.point_map.at("z") == "z");
}

TEST_CASE("collapse matches the brute-force distinct row/column sets on random 4x4 tables") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> bits;
    for (int i = 0; i < 16; ++i) bits.push_back(int(rng.below(2)));
    ChuSpace c = boolean_space({"x0", "x1", "x2", "x3"},
                               {"a0", "a1", "a2", "a3"}, bits);
    CollapseResult r = biextensional_collapse(c);

    // Brute force: the sets of distinct rows and distinct columns.
    std::set<std::vector<int>> distinct_rows, distinct_cols;
    for (std::size_t i = 0; i < 4; ++i) {
      std::vector<int> row, col;
      for (std::size_t j = 0; j < 4; ++j) {
        row.push_back(std::get<std::int32_t>(c.eval(i, j)));
        col.push_back(std::get<std::int32_t>(c.eval(j, i)));
      }
      distinct_rows.insert(row);
      distinct_cols.insert(col);
    }
    CHECK(r.space.point_count() == distinct_rows.size());
    CHECK(r.space.attribute_count() == distinct_cols.size());

    std::set<std::vector<int>> collapsed_rows;
    for (std::size_t i = 0; i < r.space.point_count(); ++i) {
      std::vector<int> row;
      for (std::size_t j = 0; j < r.space.attribute_count(); ++j) {
        row.push_back(std::get<std::int32_t>(r.space.eval(i, j)));
      }
      collapsed_rows.insert(row);
    }
    CHECK(collapsed_rows.size() == r.space.point_count());

    // Surjections commute with evaluation.
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        std::size_t pi = r.space.require_point(r.point_map.at(c.points()[i]));
        std::size_t aj =
            r.space.require_attribute(r.attribute_map.at(c.attributes()[j]));
        CHECK(value_equal(c.eval(i, j), r.space.eval(pi, aj)));
      }
    }

    // Idempotence.
    CollapseResult again = biextensional_collapse(r.space);
    CHECK(again.space.equal_to(r.space));
  }
}

TEST_CASE("empty spaces are handled as vacuous cases") {
  ChuSpace no_points(ValueAlphabet::booleans(), {}, {"a"}, {});
  ChuSpace no_attrs(ValueAlphabet::booleans(), {"x"}, {}, {});
  CHECK(biextensional_collapse(no_points).space.point_count() == 0);
  CHECK(biextensional_collapse(no_attrs).space.attribute_count() == 0);
  ChuMorphism empty_m{{}, {{"a", "a"}}};
  CHECK(check_chu_morphism(no_points, no_points, empty_m));
}

TEST_CASE("float alphabets compare within eps") {
  ChuSpace c(ValueAlphabet::float_unit(), {"x"}, {"a"}, {Value(0.5)});
  ChuSpace d(ValueAlphabet::float_unit(), {"y"}, {"b"}, {Value(0.5 + 1e-12)});
  ChuMorphism m{{{"x", "y"}}, {{"b", "a"}}};
  CHECK(check_chu_morphism(c, d, m, 1e-9));
  CHECK_FALSE(check_chu_morphism(c, d, m, 1e-13));
}
