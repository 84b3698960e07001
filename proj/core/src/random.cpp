#include "chucoal/random.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace chucoal {

std::size_t Rng::below(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::invalid_argument, "empty range");
  }
  return static_cast<std::size_t>(next() % n);
}

double Rng::unit() {
  // 53 uniform bits.
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  double u1 = unit();
  double u2 = unit();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() { return Complex(normal(), normal()); }

Rational random_rational_prob(Rng& rng, int max_denominator) {
  if (max_denominator < 1) {
    throw Error(ErrorCode::invalid_argument, "max denominator must be >= 1");
  }
  std::int64_t den = 1 + static_cast<std::int64_t>(
                             rng.below(static_cast<std::size_t>(max_denominator)));
  std::int64_t num = 1 + static_cast<std::int64_t>(
                             rng.below(static_cast<std::size_t>(den)));
  return Rational(num, den);
}

FiniteCoalgebra random_coalgebra(Rng& rng,
                                 const RandomCoalgebraOptions& options) {
  std::vector<std::string> questions = options.questions;
  if (questions.empty()) {
    std::size_t count =
        options.min_questions +
        rng.below(options.max_questions - options.min_questions + 1);
    for (std::size_t q = 0; q < count; ++q) {
      questions.push_back("q" + std::to_string(q));
    }
  }
  std::size_t n = options.min_states +
                  rng.below(options.max_states - options.min_states + 1);
  std::vector<std::string> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    states.push_back(options.state_prefix + std::to_string(i));
  }

  std::vector<FiniteCoalgebra::Cell> cells;
  cells.reserve(n * questions.size());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t q = 0; q < questions.size(); ++q) {
      if (rng.chance(options.no_ratio)) {
        cells.emplace_back(std::nullopt);
        continue;
      }
      Prob prob = options.mode == NumericMode::rational
                      ? Prob(random_rational_prob(rng, options.max_denominator))
                      : Prob((1.0 + rng.below(16)) / 16.0);
      cells.emplace_back(std::make_pair(prob, states[rng.below(n)]));
    }
  }
  return FiniteCoalgebra(options.mode, std::move(questions), std::move(states),
                         std::move(cells));
}

ChuSpace random_chu(Rng& rng, const RandomChuOptions& options) {
  std::vector<std::string> points, attributes;
  for (std::size_t i = 0; i < options.points; ++i) {
    points.push_back("x" + std::to_string(i));
  }
  for (std::size_t i = 0; i < options.attributes; ++i) {
    attributes.push_back("a" + std::to_string(i));
  }
  std::vector<Value> eval;
  eval.reserve(options.points * options.attributes);
  for (std::size_t i = 0; i < options.points * options.attributes; ++i) {
    switch (options.alphabet.kind()) {
      case AlphabetKind::symbols:
        eval.emplace_back(static_cast<std::int32_t>(
            rng.below(options.alphabet.symbol_table().size())));
        break;
      case AlphabetKind::rational_unit: {
        // Include both endpoints: 0 with a small weight, else p/q.
        if (rng.chance(0.25)) {
          eval.emplace_back(Rational(0));
        } else {
          eval.emplace_back(random_rational_prob(rng, options.max_denominator));
        }
        break;
      }
      case AlphabetKind::float_unit:
        eval.emplace_back(rng.chance(0.25) ? 0.0
                                           : (1.0 + rng.below(16)) / 16.0);
        break;
    }
  }
  return ChuSpace(options.alphabet, std::move(points), std::move(attributes),
                  std::move(eval));
}

QuestionMap random_question_map(Rng& rng, std::vector<std::string> source,
                                std::vector<std::string> target,
                                bool force_surjective) {
  if (force_surjective && source.size() < target.size()) {
    throw Error(ErrorCode::invalid_argument,
                "cannot build a surjection onto a larger question set");
  }
  std::map<std::string, std::string> assignment;
  if (force_surjective) {
    // Hit every target once via a random injection of positions, then fill.
    std::vector<std::size_t> positions(source.size());
    for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
    for (std::size_t i = positions.size(); i > 1; --i) {
      std::swap(positions[i - 1], positions[rng.below(i)]);
    }
    for (std::size_t t = 0; t < target.size(); ++t) {
      assignment.emplace(source[positions[t]], target[t]);
    }
    for (std::size_t i = target.size(); i < positions.size(); ++i) {
      assignment.emplace(source[positions[i]], target[rng.below(target.size())]);
    }
  } else {
    for (const auto& q : source) {
      assignment.emplace(q, target[rng.below(target.size())]);
    }
  }
  return QuestionMap(std::move(source), std::move(target),
                     std::move(assignment));
}

StateVector random_state(Rng& rng, int dim) {
  StateVector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.complex_normal();
  } while (v.norm() == 0.0);
  return v;
}

ComplexMatrix random_unitary(Rng& rng, int dim) {
  ComplexMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) g(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the factor is Haar-distributed.
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double m = std::abs(d);
    q.col(j) *= m == 0.0 ? Complex(1.0) : d / m;
  }
  return q;
}

Semiunitary random_semiunitary(Rng& rng, int dim) {
  ComplexMatrix m = random_unitary(rng, dim);
  bool anti = rng.chance(0.5);
  return Semiunitary{std::move(m), anti};
}

HomomorphismInstance random_homomorphism_instance(
    Rng& rng, const RandomCoalgebraOptions& target_options,
    std::size_t max_copies) {
  FiniteCoalgebra target = random_coalgebra(rng, target_options);
  const std::size_t n = target.state_count();

  // Each target state gets 1..max_copies source copies; every yes-answer in
  // a copy picks some copy of the target successor, which makes the
  // projection a homomorphism by construction.
  std::vector<std::size_t> copies(n);
  std::vector<std::vector<std::string>> copy_ids(n);
  std::vector<std::string> states;
  std::map<std::string, std::string> projection;
  for (std::size_t i = 0; i < n; ++i) {
    copies[i] = 1 + rng.below(max_copies);
    for (std::size_t c = 0; c < copies[i]; ++c) {
      std::string id = target.states()[i] + "." + std::to_string(c);
      copy_ids[i].push_back(id);
      states.push_back(id);
      projection.emplace(id, target.states()[i]);
    }
  }

  std::vector<FiniteCoalgebra::Cell> cells;
  cells.reserve(states.size() * target.question_count());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < copies[i]; ++c) {
      for (std::size_t q = 0; q < target.question_count(); ++q) {
        const Answer& a = target.answer(i, q);
        if (a.is_no()) {
          cells.emplace_back(std::nullopt);
        } else {
          const auto& successors = copy_ids[a.next()];
          cells.emplace_back(std::make_pair(
              a.prob(), successors[rng.below(successors.size())]));
        }
      }
    }
  }

  FiniteCoalgebra source(target.mode(), target.questions(), std::move(states),
                         std::move(cells));
  return HomomorphismInstance{std::move(source), std::move(target),
                              std::move(projection)};
}

}  // namespace chucoal
