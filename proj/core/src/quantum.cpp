#include "chucoal/quantum.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace chucoal {

namespace {

void require_dim(const StateVector& psi, int dim) {
  if (psi.size() != dim) {
    throw Error(ErrorCode::dimension_mismatch,
                "vector has dimension " + std::to_string(psi.size()) +
                    ", expected " + std::to_string(dim));
  }
}

void require_nonzero(const StateVector& psi) {
  if (psi.size() == 0 || psi.norm() == 0.0) {
    throw Error(ErrorCode::invalid_argument, "zero state vector");
  }
}

void require_well_formed(const HilbertSystem& system) {
  if (system.state_ids.size() != system.states.size() ||
      system.question_ids.size() != system.questions.size()) {
    throw Error(ErrorCode::invalid_argument,
                "system ids are not aligned with its states/questions");
  }
}

}  // namespace

ComplexMatrix orthonormalize(const ComplexMatrix& columns, double eps_rank) {
  ComplexMatrix basis(columns.rows(), columns.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    StateVector v = columns.col(j);
    double original = v.norm();
    // Two passes of subtraction keep the result orthogonal even when the
    // input is poorly conditioned.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < kept; ++k) {
        v -= basis.col(k).dot(v) * basis.col(k);
      }
    }
    double residual = v.norm();
    if (residual <= eps_rank * std::max(1.0, original)) continue;
    basis.col(kept++) = v / residual;
  }
  return basis.leftCols(kept);
}

Subspace::Subspace(int dim, ComplexMatrix orthonormal_basis,
                   const QuantumTolerances& tol)
    : dim_(dim), basis_(std::move(orthonormal_basis)) {
  if (dim_ < 0 || basis_.rows() != dim_ || basis_.cols() > dim_) {
    throw Error(ErrorCode::dimension_mismatch, "malformed subspace basis");
  }
  ComplexMatrix gram = basis_.adjoint() * basis_;
  gram -= ComplexMatrix::Identity(basis_.cols(), basis_.cols());
  if (basis_.cols() > 0 && gram.cwiseAbs().maxCoeff() > tol.eps_orth) {
    throw Error(ErrorCode::invalid_argument,
                "subspace basis is not orthonormal within tolerance");
  }
}

Subspace Subspace::zero(int dim) {
  return Subspace(dim, ComplexMatrix(dim, 0));
}

Subspace Subspace::full(int dim) {
  return Subspace(dim, ComplexMatrix::Identity(dim, dim));
}

Subspace Subspace::ray(const StateVector& v) {
  require_nonzero(v);
  ComplexMatrix basis(v.size(), 1);
  basis.col(0) = v / v.norm();
  return Subspace(static_cast<int>(v.size()), std::move(basis));
}

Subspace Subspace::span(int dim, const std::vector<StateVector>& vectors,
                        const QuantumTolerances& tol) {
  ComplexMatrix columns(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    require_dim(vectors[i], dim);
    columns.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return Subspace(dim, orthonormalize(columns, tol.eps_rank), tol);
}

ComplexMatrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

StateVector Subspace::project(const StateVector& psi) const {
  require_dim(psi, dim_);
  if (rank() == 0) return StateVector::Zero(dim_);
  return basis_ * (basis_.adjoint() * psi);
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return (a.projector() - b.projector()).cwiseAbs().maxCoeff() <= tol;
}

double born(const StateVector& psi, const Subspace& s) {
  require_dim(psi, s.dim());
  require_nonzero(psi);
  if (s.rank() == 0) return 0.0;
  double ratio = (s.basis().adjoint() * psi).norm() / psi.norm();
  return std::min(1.0, ratio * ratio);
}

std::optional<std::pair<Prob, StateVector>> lueders(const StateVector& psi,
                                                    const Subspace& s,
                                                    double eps_eq) {
  double r = born(psi, s);
  if (r <= eps_eq) return std::nullopt;
  return std::make_pair(Prob(r), s.project(psi));
}

HilbertSystem make_hilbert_system(int dim, std::vector<StateVector> states,
                                  std::vector<Subspace> questions) {
  if (dim <= 0) {
    throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  }
  HilbertSystem system;
  system.dim = dim;
  for (std::size_t i = 0; i < states.size(); ++i) {
    require_dim(states[i], dim);
    require_nonzero(states[i]);
    system.state_ids.push_back("s" + std::to_string(i));
  }
  for (std::size_t i = 0; i < questions.size(); ++i) {
    if (questions[i].dim() != dim) {
      throw Error(ErrorCode::dimension_mismatch,
                  "question subspace has wrong ambient dimension");
    }
    system.question_ids.push_back("q" + std::to_string(i));
  }
  system.states = std::move(states);
  system.questions = std::move(questions);
  return system;
}

ImplicitCoalgebra<StateVector> quantum_coalgebra(const HilbertSystem& system,
                                                 const QuantumTolerances& tol) {
  ImplicitCoalgebra<StateVector> implicit;
  implicit.mode = NumericMode::floating;
  implicit.universe = "nonzero vectors of C^" + std::to_string(system.dim);
  implicit.questions = system.question_ids;
  implicit.behaviour = [questions = system.questions, eps = tol.eps_eq](
                           const StateVector& psi, std::size_t q)
      -> std::optional<std::pair<Prob, StateVector>> {
    return lueders(psi, questions.at(q), eps);
  };
  return implicit;
}

bool projective_equiv(const StateVector& psi, const StateVector& phi,
                      double eps) {
  if (psi.size() != phi.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "vectors of different dimension");
  }
  require_nonzero(psi);
  require_nonzero(phi);
  // Cauchy-Schwarz equality, on normalized vectors: |<a,b>|^2 = 1.
  Complex overlap = (psi / psi.norm()).dot(phi / phi.norm());
  return 1.0 - std::norm(overlap) <= eps;
}

StateVector canonical_ray(const StateVector& psi, double eps) {
  require_nonzero(psi);
  StateVector unit = psi / psi.norm();
  Eigen::Index anchor = -1;
  for (Eigen::Index i = 0; i < unit.size(); ++i) {
    if (std::abs(unit[i]) > eps) {
      anchor = i;
      break;
    }
  }
  if (anchor < 0) {
    // A unit vector always has a component of modulus >= 1/sqrt(dim).
    Eigen::Index best = 0;
    unit.cwiseAbs().maxCoeff(&best);
    anchor = best;
  }
  Complex phase = unit[anchor] / std::abs(unit[anchor]);
  return unit / phase;
}

std::string ray_id(const StateVector& psi, double eps) {
  StateVector rep = canonical_ray(psi, eps);
  // Snap to the printing grid first, so -1e-17 and +1e-17 render alike.
  auto snap = [](double x) {
    double rounded = std::round(x * 1e6) / 1e6;
    return rounded == 0.0 ? 0.0 : rounded;
  };
  std::string id = "[";
  char buf[64];
  for (Eigen::Index i = 0; i < rep.size(); ++i) {
    if (i > 0) id += ",";
    std::snprintf(buf, sizeof(buf), "%.6f%+.6fi", snap(rep[i].real()),
                  snap(rep[i].imag()));
    id += buf;
  }
  id += "]";
  return id;
}

MaterializeOptions<StateVector> vector_equal_options(double eps,
                                                     std::size_t max_states) {
  MaterializeOptions<StateVector> options;
  options.equal = [eps](const StateVector& a, const StateVector& b) {
    return a.size() == b.size() &&
           (a - b).cwiseAbs().maxCoeff() <= eps;
  };
  options.max_states = max_states;
  return options;
}

MaterializeOptions<StateVector> ray_equal_options(double eps,
                                                  std::size_t max_states) {
  MaterializeOptions<StateVector> options;
  options.equal = [eps](const StateVector& a, const StateVector& b) {
    return a.size() == b.size() && projective_equiv(a, b, eps);
  };
  options.max_states = max_states;
  return options;
}

RayQuotient projective_quotient(const Materialized<StateVector>& m,
                                const QuantumTolerances& tol) {
  const FiniteCoalgebra& c = m.coalgebra;
  const std::size_t n = c.state_count();

  // Group carrier states into rays; absorbing stand-ins group separately so
  // a truncated row never speaks for a live one.
  std::vector<std::size_t> group_rep;  // representative carrier index
  std::vector<std::size_t> group_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool matched = false;
    for (std::size_t g = 0; g < group_rep.size(); ++g) {
      std::size_t rep = group_rep[g];
      if (m.absorbing[rep] == m.absorbing[i] &&
          projective_equiv(m.values[rep], m.values[i], tol.eps_eq)) {
        group_of[i] = g;
        matched = true;
        break;
      }
    }
    if (!matched) {
      group_of[i] = group_rep.size();
      group_rep.push_back(i);
    }
  }

  std::vector<std::string> ray_ids;
  ray_ids.reserve(group_rep.size());
  for (std::size_t g = 0; g < group_rep.size(); ++g) {
    std::string id = ray_id(m.values[group_rep[g]], tol.eps_eq);
    if (m.absorbing[group_rep[g]]) id += "!";
    while (std::find(ray_ids.begin(), ray_ids.end(), id) != ray_ids.end()) {
      id += "'";  // formatting collision between distinct rays
    }
    ray_ids.push_back(std::move(id));
  }

  std::vector<FiniteCoalgebra::Cell> cells;
  cells.reserve(group_rep.size() * c.question_count());
  for (std::size_t g = 0; g < group_rep.size(); ++g) {
    std::size_t rep = group_rep[g];
    for (std::size_t q = 0; q < c.question_count(); ++q) {
      const Answer& a = c.answer(rep, q);
      if (a.is_no()) {
        cells.emplace_back(std::nullopt);
      } else {
        cells.emplace_back(
            std::make_pair(a.prob(), ray_ids[group_of[a.next()]]));
      }
    }
  }

  RayQuotient result{FiniteCoalgebra(c.mode(), c.questions(), ray_ids,
                                     std::move(cells)),
                     {}};
  for (std::size_t i = 0; i < n; ++i) {
    result.to_ray.emplace(c.states()[i], ray_ids[group_of[i]]);
  }
  return result;
}

std::vector<Subspace> discriminating_questions(
    const std::vector<StateVector>& states, int dim,
    const QuantumTolerances& tol) {
  std::vector<StateVector> generators;
  auto add = [&](const StateVector& v) {
    for (const StateVector& g : generators) {
      if (projective_equiv(g, v, tol.eps_eq)) return;
    }
    generators.push_back(canonical_ray(v, tol.eps_eq));
  };

  for (int i = 0; i < dim; ++i) {
    StateVector e = StateVector::Zero(dim);
    e[i] = 1.0;
    add(e);
  }
  std::vector<StateVector> reps;
  for (const StateVector& psi : states) {
    require_dim(psi, dim);
    reps.push_back(canonical_ray(psi, tol.eps_eq));
    add(reps.back());
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (projective_equiv(reps[i], reps[j], tol.eps_eq)) continue;
      add(reps[i] + reps[j]);
      add(reps[i] + Complex(0, 1) * reps[j]);
    }
  }

  std::vector<Subspace> questions;
  questions.reserve(generators.size());
  for (const StateVector& g : generators) questions.push_back(Subspace::ray(g));
  return questions;
}

Semiunitary Semiunitary::identity(int dim) {
  return Semiunitary{ComplexMatrix::Identity(dim, dim), false};
}

Semiunitary Semiunitary::conjugation(int dim) {
  return Semiunitary{ComplexMatrix::Identity(dim, dim), true};
}

StateVector Semiunitary::apply(const StateVector& psi) const {
  require_dim(psi, dim());
  if (antiunitary) return matrix * psi.conjugate();
  return matrix * psi;
}

Subspace Semiunitary::apply(const Subspace& s, const QuantumTolerances& tol) const {
  if (s.dim() != dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "subspace dimension does not match the operator");
  }
  ComplexMatrix image = antiunitary ? ComplexMatrix(matrix * s.basis().conjugate())
                                    : ComplexMatrix(matrix * s.basis());
  // Semiunitaries preserve orthonormality; re-orthonormalize only to scrub
  // rounding noise.
  return Subspace(dim(), orthonormalize(image, tol.eps_rank), tol);
}

Semiunitary Semiunitary::inverse() const {
  if (!antiunitary) return Semiunitary{matrix.adjoint(), false};
  // (M . conj)^{-1} = M^T . conj.
  return Semiunitary{matrix.transpose(), true};
}

Semiunitary compose_semiunitary(const Semiunitary& u, const Semiunitary& v) {
  if (u.dim() != v.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "semiunitaries of different dimension");
  }
  ComplexMatrix m =
      u.antiunitary ? ComplexMatrix(u.matrix * v.matrix.conjugate())
                    : ComplexMatrix(u.matrix * v.matrix);
  return Semiunitary{std::move(m), u.antiunitary != v.antiunitary};
}

bool is_unitary_matrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix gram = m.adjoint() * m;
  gram -= ComplexMatrix::Identity(m.rows(), m.cols());
  return gram.cwiseAbs().maxCoeff() <= tol;
}

SemiunitaryMorphism semiunitary_morphism(const Semiunitary& u,
                                         const HilbertSystem& source,
                                         const HilbertSystem& target,
                                         const QuantumTolerances& tol) {
  require_well_formed(source);
  require_well_formed(target);
  if (source.dim != target.dim || u.dim() != source.dim) {
    throw Error(ErrorCode::dimension_mismatch,
                "systems and operator must share one dimension");
  }
  if (!is_unitary_matrix(u.matrix, tol.eps_orth)) {
    throw Error(ErrorCode::invalid_argument,
                "operator matrix is not unitary within tolerance");
  }

  Semiunitary u_inv = u.inverse();
  std::map<std::string, std::string> assignment;
  std::vector<std::string> missing;
  for (std::size_t j = 0; j < target.questions.size(); ++j) {
    Subspace preimage = u_inv.apply(target.questions[j], tol);
    bool found = false;
    for (std::size_t k = 0; k < source.questions.size(); ++k) {
      if (subspace_equal(preimage, source.questions[k], tol.eps_orth)) {
        assignment.emplace(target.question_ids[j], source.question_ids[k]);
        found = true;
        break;
      }
    }
    if (!found) missing.push_back(target.question_ids[j]);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) {
      if (!list.empty()) list += ", ";
      list += id;
    }
    throw Error(ErrorCode::domain_mismatch,
                "source question list is not closed under the inverse; "
                "missing preimages of: " + list,
                missing.front());
  }
  return SemiunitaryMorphism{
      QuestionMap(target.question_ids, source.question_ids,
                  std::move(assignment)),
      u};
}

GrothMorphism semiunitary_groth(const SemiunitaryMorphism& sm,
                                const Materialized<StateVector>& source,
                                const Materialized<StateVector>& target,
                                double match_eps) {
  std::map<std::string, std::string> carrier;
  for (std::size_t i = 0; i < source.values.size(); ++i) {
    StateVector image = sm.map.apply(source.values[i]);
    bool found = false;
    for (std::size_t j = 0; j < target.values.size(); ++j) {
      if (target.absorbing[j] == source.absorbing[i] &&
          image.size() == target.values[j].size() &&
          (image - target.values[j]).cwiseAbs().maxCoeff() <= match_eps) {
        carrier.emplace(source.coalgebra.states()[i],
                        target.coalgebra.states()[j]);
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::domain_mismatch,
                  "image of state '" + source.coalgebra.states()[i] +
                      "' is not in the target carrier",
                  source.coalgebra.states()[i]);
    }
  }
  return GrothMorphism{sm.qmap, std::move(carrier)};
}

std::vector<Subspace> image_questions(const Semiunitary& u,
                                      const std::vector<Subspace>& questions,
                                      const QuantumTolerances& tol) {
  std::vector<Subspace> images;
  images.reserve(questions.size());
  for (const Subspace& s : questions) images.push_back(u.apply(s, tol));
  return images;
}

Subspace subspace_preimage(const ComplexMatrix& isometry, const Subspace& s,
                           const QuantumTolerances& tol) {
  if (isometry.rows() != s.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "isometry codomain does not match the subspace");
  }
  ComplexMatrix gram = isometry.adjoint() * isometry;
  gram -= ComplexMatrix::Identity(isometry.cols(), isometry.cols());
  if (gram.cwiseAbs().maxCoeff() > tol.eps_orth) {
    throw Error(ErrorCode::invalid_argument,
                "map is not isometric within tolerance");
  }

  ComplexMatrix residual =
      isometry - s.basis() * (s.basis().adjoint() * isometry);
  Eigen::FullPivLU<ComplexMatrix> lu(residual);
  lu.setThreshold(tol.eps_rank);
  const int m = static_cast<int>(isometry.cols());
  if (lu.dimensionOfKernel() == 0) return Subspace::zero(m);
  ComplexMatrix kernel = lu.kernel();
  return Subspace(m, orthonormalize(kernel, tol.eps_rank), tol);
}

EmbeddedSystem embed_system(const HilbertSystem& k, int universal_dim,
                            std::vector<int> basis_map,
                            const QuantumTolerances& tol) {
  require_well_formed(k);
  if (k.dim > universal_dim) {
    throw Error(ErrorCode::dimension_mismatch,
                "system dimension " + std::to_string(k.dim) +
                    " exceeds the universal dimension " +
                    std::to_string(universal_dim));
  }
  if (basis_map.empty()) {
    basis_map.resize(k.dim);
    for (int i = 0; i < k.dim; ++i) basis_map[i] = i;
  }
  if (static_cast<int>(basis_map.size()) != k.dim) {
    throw Error(ErrorCode::invalid_argument,
                "basis map must assign every basis vector");
  }
  std::vector<bool> used(universal_dim, false);
  ComplexMatrix isometry = ComplexMatrix::Zero(universal_dim, k.dim);
  for (int n = 0; n < k.dim; ++n) {
    int t = basis_map[n];
    if (t < 0 || t >= universal_dim || used[t]) {
      throw Error(ErrorCode::invalid_argument,
                  "basis map is not injective into the universal basis");
    }
    used[t] = true;
    isometry(t, n) = 1.0;
  }

  std::vector<StateVector> states;
  states.reserve(k.states.size());
  for (const StateVector& psi : k.states) states.push_back(isometry * psi);
  std::vector<Subspace> questions;
  questions.reserve(k.questions.size());
  for (const Subspace& s : k.questions) {
    questions.emplace_back(universal_dim,
                           ComplexMatrix(isometry * s.basis()), tol);
  }

  EmbeddedSystem result{make_hilbert_system(universal_dim, std::move(states),
                                            std::move(questions)),
                        QuestionMap::identity(k.question_ids), isometry};
  result.system.state_ids = k.state_ids;
  result.system.question_ids = k.question_ids;
  return result;
}

std::vector<StateVector> wigner_probe_rays(int dim) {
  std::vector<StateVector> probes;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < dim; ++j) {
    StateVector e = StateVector::Zero(dim);
    e[j] = 1.0;
    probes.push_back(e);
  }
  for (int j = 1; j < dim; ++j) {
    StateVector v = StateVector::Zero(dim);
    v[0] = inv_sqrt2;
    v[j] = inv_sqrt2;
    probes.push_back(v);
  }
  for (int j = 1; j < dim; ++j) {
    StateVector v = StateVector::Zero(dim);
    v[0] = inv_sqrt2;
    v[j] = Complex(0, inv_sqrt2);
    probes.push_back(v);
  }
  return probes;
}

namespace {

double ray_distance(const StateVector& a, const StateVector& b) {
  Complex overlap = (a / a.norm()).dot(b / b.norm());
  return std::sqrt(std::max(0.0, 1.0 - std::norm(overlap)));
}

}  // namespace

Semiunitary wigner_reconstruct(
    const std::function<StateVector(const StateVector&)>& ray_map, int dim,
    double fit_tol, const QuantumTolerances& tol) {
  if (dim <= 2) {
    throw Error(ErrorCode::dimension_mismatch,
                "ray-map reconstruction needs dimension greater than 2");
  }

  auto image_of = [&](const StateVector& probe) {
    StateVector image = ray_map(probe);
    if (image.size() != dim) {
      throw Error(ErrorCode::dimension_mismatch,
                  "ray map changes the dimension");
    }
    require_nonzero(image);
    return canonical_ray(image, tol.eps_eq);
  };

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto basis_probe = [&](int j) {
    StateVector e = StateVector::Zero(dim);
    e[j] = 1.0;
    return e;
  };
  auto sum_probe = [&](int j, bool imaginary) {
    StateVector v = StateVector::Zero(dim);
    v[0] = inv_sqrt2;
    v[j] = imaginary ? Complex(0, inv_sqrt2) : Complex(inv_sqrt2, 0);
    return v;
  };

  // Images of the basis rays must again be orthonormal.
  std::vector<StateVector> u(dim);
  for (int j = 0; j < dim; ++j) u[j] = image_of(basis_probe(j));
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if (std::abs(u[i].dot(u[j])) > fit_tol) {
        throw Error(ErrorCode::numeric,
                    "inconsistent ray map: images of the basis rays are not "
                    "orthogonal");
      }
    }
  }

  // [e_0 + e_j] pins the relative scale of column j against column 0.
  std::vector<Complex> scale(dim);
  scale[0] = 1.0;
  for (int j = 1; j < dim; ++j) {
    StateVector w = image_of(sum_probe(j, false));
    Complex alpha = u[0].dot(w);
    Complex beta = u[j].dot(w);
    if ((w - alpha * u[0] - beta * u[j]).norm() > fit_tol ||
        std::abs(alpha) <= fit_tol) {
      throw Error(ErrorCode::numeric,
                  "inconsistent ray map: image of a sum ray leaves the plane "
                  "of its basis images");
    }
    scale[j] = beta / alpha;
  }

  // [e_0 + i e_j] decides linearity vs antilinearity: conjugation flips the
  // sign of the imaginary part.
  StateVector v1 = image_of(sum_probe(1, true));
  auto i_candidate = [&](int j, bool anti) {
    StateVector expected = u[0] + Complex(0, anti ? -1.0 : 1.0) * scale[j] * u[j];
    return expected;
  };
  bool antiunitary =
      ray_distance(v1, i_candidate(1, true)) < ray_distance(v1, i_candidate(1, false));
  for (int j = 1; j < dim; ++j) {
    StateVector vj = j == 1 ? v1 : image_of(sum_probe(j, true));
    if (ray_distance(vj, i_candidate(j, antiunitary)) > fit_tol) {
      throw Error(ErrorCode::numeric,
                  "inconsistent ray map: imaginary-sum probes fit neither a "
                  "unitary nor an antiunitary");
    }
  }

  ComplexMatrix matrix(dim, dim);
  for (int j = 0; j < dim; ++j) matrix.col(j) = scale[j] * u[j];
  Semiunitary result{std::move(matrix), antiunitary};
  if (!is_unitary_matrix(result.matrix, std::max(tol.eps_orth, 10 * fit_tol))) {
    throw Error(ErrorCode::numeric,
                "inconsistent ray map: reconstructed matrix is not unitary "
                "within tolerance");
  }

  // Final agreement check on every probe ray.
  for (const StateVector& probe : wigner_probe_rays(dim)) {
    if (ray_distance(result.apply(probe), image_of(probe)) > fit_tol) {
      throw Error(ErrorCode::numeric,
                  "inconsistent ray map: reconstruction disagrees on a probe "
                  "ray");
    }
  }
  return result;
}

}  // namespace chucoal
