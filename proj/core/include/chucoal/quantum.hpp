#pragma once

#include "chucoal/coalgebra.hpp"
#include "chucoal/indexed.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chucoal {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

struct QuantumTolerances {
  double eps_eq = 1e-9;     // value and probability equality
  double eps_orth = 1e-8;   // orthonormality and subspace identity
  double eps_rank = 1e-10;  // rank decisions in elimination
};

// Modified Gram-Schmidt with re-orthogonalization. Returns orthonormal
// columns spanning the input columns; near-dependent columns (residual below
// eps_rank relative to the column norm) are dropped.
ComplexMatrix orthonormalize(const ComplexMatrix& columns,
                             double eps_rank = 1e-10);

// A closed subspace of C^dim, held as an orthonormal basis (possibly empty:
// the zero subspace).
class Subspace {
public:
  Subspace(int dim, ComplexMatrix orthonormal_basis,
           const QuantumTolerances& tol = {});

  static Subspace zero(int dim);
  static Subspace full(int dim);
  static Subspace ray(const StateVector& v);
  static Subspace span(int dim, const std::vector<StateVector>& vectors,
                       const QuantumTolerances& tol = {});

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(basis_.cols()); }
  const ComplexMatrix& basis() const { return basis_; }

  ComplexMatrix projector() const;  // B B^dagger
  StateVector project(const StateVector& psi) const;

private:
  int dim_;
  ComplexMatrix basis_;  // dim_ x rank, orthonormal columns
};

bool subspace_equal(const Subspace& a, const Subspace& b, double tol = 1e-8);

// The statistical algorithm: ||P_S psi||^2 / ||psi||^2, clamped to [0,1].
double born(const StateVector& psi, const Subspace& s);

// Unnormalized collapse dynamics: "no" iff the Born value vanishes (within
// eps_eq), otherwise yes with that value and the projected vector.
std::optional<std::pair<Prob, StateVector>> lueders(const StateVector& psi,
                                                    const Subspace& s,
                                                    double eps_eq = kDefaultEps);

// A finite-dimensional system: chosen states and a finite question list of
// subspaces, with stable ids for both.
struct HilbertSystem {
  int dim = 0;
  std::vector<std::string> state_ids;
  std::vector<StateVector> states;
  std::vector<std::string> question_ids;
  std::vector<Subspace> questions;
};

// Validates dimensions and generates ids ("s0...", "q0...").
HilbertSystem make_hilbert_system(int dim, std::vector<StateVector> states,
                                  std::vector<Subspace> questions);

// The collapse-dynamics coalgebra of a system, as a lazy oracle over state
// vectors (the carrier is not finite in general).
ImplicitCoalgebra<StateVector> quantum_coalgebra(const HilbertSystem& system,
                                                 const QuantumTolerances& tol = {});

// Equality up to a nonzero complex scalar, decided through Cauchy-Schwarz
// equality on normalized vectors.
bool projective_equiv(const StateVector& psi, const StateVector& phi,
                      double eps = kDefaultEps);

// Canonical ray representative: unit norm, first amplitude of modulus above
// eps rotated to the positive real axis.
StateVector canonical_ray(const StateVector& psi, double eps = kDefaultEps);

// Printable id of a ray (the canonical representative to six decimals).
std::string ray_id(const StateVector& psi, double eps = kDefaultEps);

// A projective class, held by its canonical representative. Two equivalent
// vectors construct Rays with identical representatives (within tolerance),
// so Ray equality is representational.
class Ray {
public:
  explicit Ray(const StateVector& psi, double eps = kDefaultEps)
      : representative_(canonical_ray(psi, eps)) {}

  const StateVector& representative() const { return representative_; }
  int dim() const { return static_cast<int>(representative_.size()); }
  std::string id() const { return ray_id(representative_); }

  bool equivalent_to(const Ray& other, double eps = kDefaultEps) const {
    return representative_.size() == other.representative_.size() &&
           projective_equiv(representative_, other.representative_, eps);
  }

private:
  StateVector representative_;
};

// Materialize equality predicates: componentwise vector identity, or
// projective (ray) identity.
MaterializeOptions<StateVector> vector_equal_options(
    double eps = kDefaultEps, std::size_t max_states = 10000);
MaterializeOptions<StateVector> ray_equal_options(double eps = kDefaultEps,
                                                  std::size_t max_states = 10000);

struct RayQuotient {
  FiniteCoalgebra coalgebra;                    // carrier: canonical ray ids
  std::map<std::string, std::string> to_ray;    // old state id -> ray id
};

// The projective coalgebra of a materialized system: states grouped into
// rays (absorbing stand-ins grouped separately), behaviour mirrored with ray
// successors. Coincides with the strongly extensional quotient when the
// question list is discriminating.
RayQuotient projective_quotient(const Materialized<StateVector>& m,
                                const QuantumTolerances& tol = {});

// A finite question set that separates every non-equivalent pair from
// `states`: the coordinate rays, each state's own ray, and the rays of the
// pairwise sums psi_i + psi_j and psi_i + i*psi_j.
std::vector<Subspace> discriminating_questions(
    const std::vector<StateVector>& states, int dim,
    const QuantumTolerances& tol = {});

// A unitary, or an antiunitary presented as entrywise conjugation followed
// by a unitary matrix.
struct Semiunitary {
  ComplexMatrix matrix;
  bool antiunitary = false;

  static Semiunitary identity(int dim);
  static Semiunitary conjugation(int dim);  // plain entrywise conjugation

  int dim() const { return static_cast<int>(matrix.rows()); }
  StateVector apply(const StateVector& psi) const;
  Subspace apply(const Subspace& s, const QuantumTolerances& tol = {}) const;
  Semiunitary inverse() const;
};

// u after v (u . v); antiunitary flags compose by parity.
Semiunitary compose_semiunitary(const Semiunitary& u, const Semiunitary& v);

bool is_unitary_matrix(const ComplexMatrix& m, double tol = 1e-8);

// The symmetry-induced arrow between two systems: questions pull back along
// the inverse, states push forward along the map.
struct SemiunitaryMorphism {
  QuestionMap qmap;  // target question ids -> source question ids
  Semiunitary map;
};

// Requires every target question's preimage under `u` to appear in the
// source question list; otherwise fails listing the missing subspaces.
SemiunitaryMorphism semiunitary_morphism(const Semiunitary& u,
                                         const HilbertSystem& source,
                                         const HilbertSystem& target,
                                         const QuantumTolerances& tol = {});

// Resolve the symbolic state map against two materializations, matching
// u(state) inside the target carrier (absorbing stand-ins match stand-ins).
GrothMorphism semiunitary_groth(const SemiunitaryMorphism& sm,
                                const Materialized<StateVector>& source,
                                const Materialized<StateVector>& target,
                                double match_eps = 1e-7);

// Image question list {u(S)} with the source's question ids, for building
// systems whose question lists are closed under u^{-1} by construction.
std::vector<Subspace> image_questions(const Semiunitary& u,
                                      const std::vector<Subspace>& questions,
                                      const QuantumTolerances& tol = {});

// {v : P_S(i v) = i v}: the null space of (I - P_S) i, computed by
// complete-pivoting elimination with rank tolerance eps_rank.
Subspace subspace_preimage(const ComplexMatrix& isometry, const Subspace& s,
                           const QuantumTolerances& tol = {});

struct EmbeddedSystem {
  HilbertSystem system;     // over the universal dimension
  QuestionMap qmap;         // universal question ids -> original ids
  ComplexMatrix isometry;   // universal_dim x dim(original)
};

// Isometric embedding psi_n -> e_{basis_map[n]} into a universal space of
// dimension `universal_dim` (basis_map defaults to 0..dim-1). Born values on
// embedded questions and bisimilarity are invariant under this.
EmbeddedSystem embed_system(const HilbertSystem& k, int universal_dim,
                            std::vector<int> basis_map = {},
                            const QuantumTolerances& tol = {});

// Canonical probe rays [e_j], [e_0+e_j], [e_0+i e_j] (unit representatives).
std::vector<StateVector> wigner_probe_rays(int dim);

// Reconstructs the semiunitary realizing a ray transformation, given its
// action on the probe rays. Requires dim >= 3; fails structurally when no
// semiunitary fits within fit_tol.
Semiunitary wigner_reconstruct(
    const std::function<StateVector(const StateVector&)>& ray_map, int dim,
    double fit_tol = 1e-7, const QuantumTolerances& tol = {});

}  // namespace chucoal
