#pragma once

#include "chucoal/chu.hpp"
#include "chucoal/coalgebra.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chucoal {

// A total map f : Q' -> Q between question sequences, the contravariant leg
// of every reindexing. Surjectivity is computed eagerly and cached; it gates
// the bisimilarity-stability results.
class QuestionMap {
public:
  QuestionMap(std::vector<std::string> source, std::vector<std::string> target,
              std::map<std::string, std::string> assignment);

  static QuestionMap identity(std::vector<std::string> questions);

  const std::vector<std::string>& source() const { return source_; }
  const std::vector<std::string>& target() const { return target_; }
  const std::map<std::string, std::string>& assignment() const {
    return assignment_;
  }

  const std::string& apply(std::string_view q) const;
  std::size_t apply_index(std::size_t source_index) const {
    return image_index_[source_index];
  }

  bool surjective() const { return surjective_; }

  bool operator==(const QuestionMap& other) const {
    return source_ == other.source_ && target_ == other.target_ &&
           assignment_ == other.assignment_;
  }

private:
  std::vector<std::string> source_;
  std::vector<std::string> target_;
  std::map<std::string, std::string> assignment_;
  std::vector<std::size_t> image_index_;
  bool surjective_;
};

// (f . g)(q'') = f(g(q'')): g : Q'' -> Q', f : Q' -> Q.
QuestionMap compose_question_maps(const QuestionMap& f, const QuestionMap& g);

// Reindexing along f : Q' -> Q, precomposition of behaviour with f:
// alpha'(x)(q') = alpha(x)(f(q')). The carrier is untouched.
FiniteCoalgebra reindex_coalgebra(const QuestionMap& f,
                                  const FiniteCoalgebra& coalgebra);

// The Chu analogue: (X, Q, e) -> (X, Q', e . (1 x f)).
ChuSpace reindex_chu(const QuestionMap& f, const ChuSpace& space);

// Truncation: forget successors, keep the probability table. Sends a
// coalgebra over Q to the Chu space (X, Q, e) with e(x,q) = 0 on "no" and
// the yes-probability otherwise.
ChuSpace truncate(const FiniteCoalgebra& coalgebra);

// Static embedding of a numeric Chu space: zero entries become "no", r > 0
// becomes a probability-r self-loop. Inverse to truncate on static
// coalgebras.
FiniteCoalgebra static_embed(const ChuSpace& space);

// An arrow of the glued (Grothendieck) category: a question map running
// backward and a carrier map running forward. Stored exactly in that
// orientation, so translating to a Chu morphism is a relabelling.
struct GrothMorphism {
  QuestionMap qmap;                            // Q_target -> Q_source
  std::map<std::string, std::string> carrier;  // X_source -> X_target

  bool operator==(const GrothMorphism&) const = default;
};

// Validity over coalgebras: carrier is a homomorphism from the f-reindexed
// source to the target.
bool groth_check(const GrothMorphism& m, const FiniteCoalgebra& source,
                 const FiniteCoalgebra& target, double eps = kDefaultEps);

// Validity over Chu spaces: exactly the Chu-morphism condition of
// (carrier, qmap).
bool groth_check(const GrothMorphism& m, const ChuSpace& source,
                 const ChuSpace& target, double eps = kDefaultEps);

// Question maps compose contravariantly, carrier maps covariantly.
GrothMorphism groth_compose(const GrothMorphism& second,
                            const GrothMorphism& first);

// The isomorphism between Chu morphisms and glued-category arrows: a field
// relabelling in both directions.
GrothMorphism chu_to_groth(const ChuSpace& source, const ChuSpace& target,
                           const ChuMorphism& m);
ChuMorphism groth_to_chu(const GrothMorphism& m);

}  // namespace chucoal
