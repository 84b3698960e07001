#pragma once

#include "chucoal/chu.hpp"
#include "chucoal/coalgebra.hpp"
#include "chucoal/indexed.hpp"
#include "chucoal/quantum.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace chucoal {

// Named seeded generator; every random artifact in the workbench flows from
// one of these, so runs are reproducible from (seed, parameters) alone.
// Primitive draws avoid std distributions on purpose: their exact output is
// implementation-defined, a raw engine is not.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n);        // uniform-ish over [0, n)
  double unit();                           // uniform over [0, 1)
  bool chance(double p) { return unit() < p; }
  double normal();                         // standard normal (Box-Muller)
  Complex complex_normal();

  // Child generator for an independent substream.
  Rng fork() { return Rng(next() ^ 0x9e3779b97f4a7c15ull); }

private:
  std::mt19937_64 engine_;
};

struct RandomCoalgebraOptions {
  std::size_t min_states = 1;
  std::size_t max_states = 8;
  NumericMode mode = NumericMode::rational;
  int max_denominator = 4;   // rational probabilities p/q with q <= this
  double no_ratio = 0.35;    // fraction of "no" answers
  std::string state_prefix = "x";
  // Generated when empty, otherwise the fixed shared question sequence.
  std::vector<std::string> questions;
  std::size_t min_questions = 1;
  std::size_t max_questions = 5;
};

FiniteCoalgebra random_coalgebra(Rng& rng, const RandomCoalgebraOptions& options);

struct RandomChuOptions {
  std::size_t points = 3;
  std::size_t attributes = 3;
  ValueAlphabet alphabet = ValueAlphabet::booleans();
  int max_denominator = 4;  // numeric alphabets
};

ChuSpace random_chu(Rng& rng, const RandomChuOptions& options);

// Total map source -> target; with force_surjective every target question is
// hit (requires |source| >= |target|).
QuestionMap random_question_map(Rng& rng, std::vector<std::string> source,
                                std::vector<std::string> target,
                                bool force_surjective);

Rational random_rational_prob(Rng& rng, int max_denominator);

StateVector random_state(Rng& rng, int dim);
ComplexMatrix random_unitary(Rng& rng, int dim);  // Haar-style via QR
Semiunitary random_semiunitary(Rng& rng, int dim);

// A valid homomorphism built by construction: the source covers the target
// with `copies`-way duplicated states wired consistently; the returned map
// is the covering projection.
struct HomomorphismInstance {
  FiniteCoalgebra source;
  FiniteCoalgebra target;
  std::map<std::string, std::string> map;
};

HomomorphismInstance random_homomorphism_instance(
    Rng& rng, const RandomCoalgebraOptions& target_options,
    std::size_t max_copies = 3);

}  // namespace chucoal
