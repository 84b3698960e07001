#include "chucoal/io.hpp"

#include "chucoal/error.hpp"
#include "chucoal/random.hpp"

#include <doctest.h>

using namespace chucoal;

TEST_CASE("empty Chu space round-trips") {
  ChuSpace empty(ValueAlphabet::booleans(), {}, {}, {});
  ChuSpace back = parse_chu(print_chu(empty));
  CHECK(back.equal_to(empty, 0.0));
}

TEST_CASE("Chu spaces round-trip bit-exactly over every alphabet kind") {
  Rng rng(401);
  RandomChuOptions opts;
  for (int trial = 0; trial < 10; ++trial) {
    opts.points = rng.below(4);
    opts.attributes = rng.below(4);
    for (auto alphabet : {ValueAlphabet::booleans(),
                          ValueAlphabet::symbols({"low", "mid", "high"}),
                          ValueAlphabet::rational_unit(),
                          ValueAlphabet::float_unit()}) {
      opts.alphabet = alphabet;
      ChuSpace space = random_chu(rng, opts);
      ChuSpace back = parse_chu(print_chu(space));
      CHECK(back.equal_to(space, 0.0));  // exact, even in float mode
    }
  }
}

TEST_CASE("coalgebras round-trip in both numeric modes") {
  Rng rng(409);
  for (int trial = 0; trial < 20; ++trial) {
    RandomCoalgebraOptions opts;
    opts.mode = trial % 2 == 0 ? NumericMode::rational : NumericMode::floating;
    FiniteCoalgebra c = random_coalgebra(rng, opts);
    FiniteCoalgebra back = parse_coalgebra(print_coalgebra(c));
    CHECK(back.equal_to(c, 0.0));
  }
}

TEST_CASE("morphism documents round-trip") {
  ChuMorphism m{{{"x", "y"}}, {{"b", "a"}}};
  CHECK(parse_chu_morphism(print_chu_morphism(m)) == m);

  StateMap h{{{"x", "y"}, {"z", "y"}}};
  CHECK(parse_state_map(print_state_map(h)) == h);

  QuestionMap f({"r0", "r1"}, {"q0"}, {{"r0", "q0"}, {"r1", "q0"}});
  QuestionMap f2 = parse_question_map(print_question_map(f));
  CHECK(f2 == f);
  CHECK(f2.surjective());

  GrothMorphism g{f, {{"x", "y"}}};
  CHECK(parse_groth_morphism(print_groth_morphism(g)) == g);
}

TEST_CASE("quantum documents round-trip") {
  Rng rng(419);
  std::vector<StateVector> states{random_state(rng, 3), random_state(rng, 3)};
  auto questions = discriminating_questions(states, 3);
  HilbertSystem system = make_hilbert_system(3, states, questions);
  HilbertSystem back = parse_quantum(print_quantum(system));
  CHECK(back.dim == system.dim);
  REQUIRE(back.states.size() == system.states.size());
  for (std::size_t i = 0; i < system.states.size(); ++i) {
    CHECK((back.states[i] - system.states[i]).cwiseAbs().maxCoeff() == 0.0);
  }
  REQUIRE(back.questions.size() == system.questions.size());
  for (std::size_t i = 0; i < system.questions.size(); ++i) {
    CHECK(subspace_equal(back.questions[i], system.questions[i], 1e-12));
  }

  Semiunitary u = random_semiunitary(rng, 3);
  Semiunitary u2 = parse_semiunitary(print_semiunitary(u));
  CHECK(u2.antiunitary == u.antiunitary);
  CHECK((u2.matrix - u.matrix).cwiseAbs().maxCoeff() == 0.0);

  RayMap map;
  map.dim = 3;
  for (const auto& probe : wigner_probe_rays(3)) {
    map.pairs.emplace_back(probe, u.apply(probe));
  }
  RayMap map2 = parse_ray_map(print_ray_map(map));
  REQUIRE(map2.pairs.size() == map.pairs.size());
  CHECK((map2.pairs[3].second - map.pairs[3].second).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("out-of-range probabilities are rejected with a range check") {
  std::string doc = R"({
    "kind": "coalgebra",
    "mode": "float",
    "questions": ["q"],
    "states": ["x"],
    "behaviour": [[[1.5, "x"]]]
  })";
  try {
    parse_coalgebra(doc);
    FAIL("expected rejection of probability 1.5");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("(0,1]") != std::string::npos);
  }

  std::string rational_doc = R"({
    "kind": "coalgebra",
    "mode": "rational",
    "questions": ["q"],
    "states": ["x"],
    "behaviour": [[["3/2", "x"]]]
  })";
  CHECK_THROWS_AS(parse_coalgebra(rational_doc), Error);
}

TEST_CASE("syntax errors carry line and column") {
  std::string broken = "{\n  \"kind\": \"chu\",\n  oops\n}";
  try {
    parse_chu(broken);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 1);
  }
}

TEST_CASE("unknown kinds and wrong variants are schema errors") {
  CHECK_THROWS_AS(parse_document("{\"kind\": \"mystery\"}"), Error);
  ChuMorphism m{{{"x", "y"}}, {{"b", "a"}}};
  CHECK_THROWS_AS(parse_state_map(print_chu_morphism(m)), Error);
}

TEST_CASE("output-only kinds pass the full validator") {
  Rng rng(421);
  FiniteCoalgebra c(NumericMode::rational, {"q"}, {"x", "y"},
                    {std::make_pair(Prob(Rational(1, 2)), std::string("y")),
                     std::nullopt});
  CHECK(validate_document(print_partition(largest_auto_bisimulation(c)))
            .find("partition") != std::string::npos);
  CHECK(validate_document(print_tree(unfold(c, "x", 2))).find("depth 2") !=
        std::string::npos);
  ChuSpace dup(ValueAlphabet::booleans(), {"x", "y"}, {"a"},
               {Value(std::int32_t(1)), Value(std::int32_t(1))});
  CHECK(validate_document(print_collapse(biextensional_collapse(dup)))
            .find("collapse") != std::string::npos);

  std::vector<StateVector> seeds{random_state(rng, 2)};
  HilbertSystem k =
      make_hilbert_system(2, seeds, discriminating_questions(seeds, 2));
  CHECK(validate_document(print_embedding(embed_system(k, 4)))
            .find("embedding into dim 4") != std::string::npos);

  // A structurally broken tree is rejected.
  CHECK_THROWS_AS(validate_document(
                      R"({"kind":"tree","depth":1,"questions":["q"],"root":[[0.5]]})"),
                  Error);
}

TEST_CASE("document dispatch and descriptions") {
  FiniteCoalgebra c(NumericMode::rational, {"q"}, {"x"},
                    {std::make_pair(Prob(Rational(1, 2)), std::string("x"))});
  Document doc = parse_document(print_coalgebra(c));
  CHECK(std::holds_alternative<FiniteCoalgebra>(doc));
  CHECK(describe(doc).find("coalgebra") != std::string::npos);
  CHECK(describe(doc).find("1 states") != std::string::npos);
}

TEST_CASE("ray map lookup is projective") {
  RayMap map;
  map.dim = 2;
  StateVector e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  map.pairs.emplace_back(e1, e2);
  StateVector scaled = Complex(0, 3) * e1;
  CHECK((map.apply(scaled) - e2).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(map.apply(e2), Error);
}

TEST_CASE("float documents re-parse to identical doubles") {
  std::vector<FiniteCoalgebra::Cell> cells{
      std::make_pair(Prob(0.1), std::string("x")),
      std::make_pair(Prob(1.0 / 3.0), std::string("x"))};
  FiniteCoalgebra c(NumericMode::floating, {"q0", "q1"}, {"x"}, cells);
  FiniteCoalgebra back = parse_coalgebra(print_coalgebra(c));
  CHECK(prob_value(back.answer(0, 0).prob()) == 0.1);
  CHECK(prob_value(back.answer(0, 1).prob()) == 1.0 / 3.0);
}
