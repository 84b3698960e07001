#include "chucoal/indexed.hpp"

#include <algorithm>
#include <set>

namespace chucoal {

QuestionMap::QuestionMap(std::vector<std::string> source,
                         std::vector<std::string> target,
                         std::map<std::string, std::string> assignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      assignment_(std::move(assignment)) {
  std::map<std::string, std::size_t> target_index;
  for (std::size_t i = 0; i < target_.size(); ++i) {
    if (!target_index.emplace(target_[i], i).second) {
      throw Error(ErrorCode::invalid_argument,
                  "duplicate target question '" + target_[i] + "'", target_[i]);
    }
  }
  std::set<std::string> source_ids(source_.begin(), source_.end());
  if (source_ids.size() != source_.size()) {
    throw Error(ErrorCode::invalid_argument, "duplicate source question");
  }
  for (const auto& [from, to] : assignment_) {
    if (!source_ids.count(from)) {
      throw Error(ErrorCode::domain_mismatch,
                  "question map mentions unknown source question '" + from +
                      "'",
                  from);
    }
    if (!target_index.count(to)) {
      throw Error(ErrorCode::domain_mismatch,
                  "question map mentions unknown target question '" + to + "'",
                  to);
    }
  }
  image_index_.reserve(source_.size());
  std::set<std::size_t> hit;
  for (const auto& q : source_) {
    auto it = assignment_.find(q);
    if (it == assignment_.end()) {
      throw Error(ErrorCode::domain_mismatch,
                  "question map is not total: no image for '" + q + "'", q);
    }
    std::size_t idx = target_index.at(it->second);
    image_index_.push_back(idx);
    hit.insert(idx);
  }
  surjective_ = hit.size() == target_.size();
}

QuestionMap QuestionMap::identity(std::vector<std::string> questions) {
  std::map<std::string, std::string> assignment;
  for (const auto& q : questions) assignment.emplace(q, q);
  auto copy = questions;
  return QuestionMap(std::move(copy), std::move(questions),
                     std::move(assignment));
}

const std::string& QuestionMap::apply(std::string_view q) const {
  auto it = assignment_.find(std::string(q));
  if (it == assignment_.end()) {
    throw Error(ErrorCode::domain_mismatch,
                "unknown question '" + std::string(q) + "'", std::string(q));
  }
  return it->second;
}

QuestionMap compose_question_maps(const QuestionMap& f, const QuestionMap& g) {
  if (g.target() != f.source()) {
    throw Error(ErrorCode::question_mismatch,
                "question maps do not compose: inner target differs from "
                "outer source");
  }
  std::map<std::string, std::string> assignment;
  for (const auto& q : g.source()) assignment.emplace(q, f.apply(g.apply(q)));
  return QuestionMap(g.source(), f.target(), std::move(assignment));
}

FiniteCoalgebra reindex_coalgebra(const QuestionMap& f,
                                  const FiniteCoalgebra& coalgebra) {
  if (f.target() != coalgebra.questions()) {
    throw Error(ErrorCode::question_mismatch,
                "question map does not target this coalgebra's questions");
  }
  std::vector<FiniteCoalgebra::Cell> cells;
  cells.reserve(coalgebra.state_count() * f.source().size());
  for (std::size_t x = 0; x < coalgebra.state_count(); ++x) {
    for (std::size_t q = 0; q < f.source().size(); ++q) {
      cells.push_back(coalgebra.cell(x, f.apply_index(q)));
    }
  }
  return FiniteCoalgebra(coalgebra.mode(), f.source(), coalgebra.states(),
                         std::move(cells));
}

ChuSpace reindex_chu(const QuestionMap& f, const ChuSpace& space) {
  if (f.target() != space.attributes()) {
    throw Error(ErrorCode::question_mismatch,
                "question map does not target this space's attributes");
  }
  std::vector<Value> eval;
  eval.reserve(space.point_count() * f.source().size());
  for (std::size_t x = 0; x < space.point_count(); ++x) {
    for (std::size_t q = 0; q < f.source().size(); ++q) {
      eval.push_back(space.eval(x, f.apply_index(q)));
    }
  }
  return ChuSpace(space.alphabet(), space.points(), f.source(),
                  std::move(eval));
}

ChuSpace truncate(const FiniteCoalgebra& coalgebra) {
  ValueAlphabet alphabet = coalgebra.mode() == NumericMode::rational
                               ? ValueAlphabet::rational_unit()
                               : ValueAlphabet::float_unit();
  std::vector<Value> eval;
  eval.reserve(coalgebra.state_count() * coalgebra.question_count());
  for (std::size_t x = 0; x < coalgebra.state_count(); ++x) {
    for (std::size_t q = 0; q < coalgebra.question_count(); ++q) {
      const Answer& a = coalgebra.answer(x, q);
      if (a.is_no()) {
        eval.push_back(alphabet.zero());
      } else if (const auto* r = std::get_if<Rational>(&a.prob())) {
        eval.push_back(Value(*r));
      } else {
        eval.push_back(Value(std::get<double>(a.prob())));
      }
    }
  }
  return ChuSpace(std::move(alphabet), coalgebra.states(),
                  coalgebra.questions(), std::move(eval));
}

FiniteCoalgebra static_embed(const ChuSpace& space) {
  if (!space.alphabet().numeric()) {
    throw Error(ErrorCode::invalid_argument,
                "static embedding needs a numeric [0,1] alphabet");
  }
  NumericMode mode = space.alphabet().numeric_mode();
  std::vector<FiniteCoalgebra::Cell> cells;
  cells.reserve(space.point_count() * space.attribute_count());
  for (std::size_t x = 0; x < space.point_count(); ++x) {
    for (std::size_t q = 0; q < space.attribute_count(); ++q) {
      const Value& v = space.eval(x, q);
      if (const auto* r = std::get_if<Rational>(&v)) {
        if (*r == Rational(0)) {
          cells.emplace_back(std::nullopt);
        } else {
          cells.emplace_back(std::make_pair(Prob(*r), space.points()[x]));
        }
      } else {
        double d = std::get<double>(v);
        if (d == 0.0) {
          cells.emplace_back(std::nullopt);
        } else {
          cells.emplace_back(std::make_pair(Prob(d), space.points()[x]));
        }
      }
    }
  }
  return FiniteCoalgebra(mode, space.attributes(), space.points(),
                         std::move(cells));
}

bool groth_check(const GrothMorphism& m, const FiniteCoalgebra& source,
                 const FiniteCoalgebra& target, double eps) {
  if (m.qmap.target() != source.questions()) {
    throw Error(ErrorCode::question_mismatch,
                "question map does not target the source's questions");
  }
  if (m.qmap.source() != target.questions()) {
    throw Error(ErrorCode::question_mismatch,
                "question map's source differs from the target's questions");
  }
  return check_homomorphism(reindex_coalgebra(m.qmap, source), target,
                            m.carrier, eps);
}

bool groth_check(const GrothMorphism& m, const ChuSpace& source,
                 const ChuSpace& target, double eps) {
  if (m.qmap.target() != source.attributes()) {
    throw Error(ErrorCode::question_mismatch,
                "question map does not target the source's attributes");
  }
  if (m.qmap.source() != target.attributes()) {
    throw Error(ErrorCode::question_mismatch,
                "question map's source differs from the target's attributes");
  }
  ChuMorphism chu{m.carrier, m.qmap.assignment()};
  return check_chu_morphism(source, target, chu, eps);
}

GrothMorphism groth_compose(const GrothMorphism& second,
                            const GrothMorphism& first) {
  // first : (Q_A, A) -> (Q_B, B) carries f1 : Q_B -> Q_A,
  // second : (Q_B, B) -> (Q_C, C) carries f2 : Q_C -> Q_B.
  QuestionMap qmap = compose_question_maps(first.qmap, second.qmap);
  std::map<std::string, std::string> carrier;
  for (const auto& [x, y] : first.carrier) {
    auto it = second.carrier.find(y);
    if (it == second.carrier.end()) {
      throw Error(ErrorCode::domain_mismatch,
                  "carrier maps do not compose: no image for '" + y + "'", y);
    }
    carrier.emplace(x, it->second);
  }
  return GrothMorphism{std::move(qmap), std::move(carrier)};
}

GrothMorphism chu_to_groth(const ChuSpace& source, const ChuSpace& target,
                           const ChuMorphism& m) {
  QuestionMap qmap(target.attributes(), source.attributes(), m.backward);
  return GrothMorphism{std::move(qmap), m.forward};
}

ChuMorphism groth_to_chu(const GrothMorphism& m) {
  return ChuMorphism{m.carrier, m.qmap.assignment()};
}

}  // namespace chucoal
