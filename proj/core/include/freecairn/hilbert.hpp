#pragma once

// Finite-dimensional complex inner-product spaces. A subspace is carried by
// an orthonormal frame (the columns of an ambient_dim x k matrix); equality
// of subspaces is decided by mutual projection residuals, never by comparing
// frames.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace freecairn {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Tolerance ladder: construction <= relation <= decomposition.
struct Tolerances {
  double construction = 1e-10;
  double relation = 1e-9;
  double decomposition = 1e-8;
};

class Subspace {
 public:
  Subspace() = default;
  // The trivial subspace {0} of C^ambient_dim.
  explicit Subspace(Eigen::Index ambient_dim) : frame_(ambient_dim, 0) {}
  // Takes `frame` as already orthonormal; use orthonormalize() otherwise.
  static Subspace from_orthonormal(Matrix frame);

  static Subspace full(Eigen::Index ambient_dim);
  static Subspace coordinate(Eigen::Index ambient_dim, std::span<const Eigen::Index> axes);

  Eigen::Index ambient_dim() const noexcept { return frame_.rows(); }
  Eigen::Index dim() const noexcept { return frame_.cols(); }
  bool is_trivial() const noexcept { return frame_.cols() == 0; }
  const Matrix& frame() const noexcept { return frame_; }
  Vector vector(Eigen::Index i) const { return frame_.col(i); }

  // Largest entry of |F^* F - I|.
  double gram_residual() const;

 private:
  Matrix frame_;
};

// Two-pass Gram-Schmidt; columns whose residual norm is <= drop_tol are
// discarded.
Subspace orthonormalize(const Matrix& columns, double drop_tol = Tolerances{}.construction);
Subspace orthonormalize(std::span<const Vector> vectors, Eigen::Index ambient_dim,
                        double drop_tol = Tolerances{}.construction);

Vector project(const Vector& v, const Subspace& S);
Subspace join(const Subspace& S1, const Subspace& S2);
Subspace join(std::span<const Subspace> parts, Eigen::Index ambient_dim);
// Orthogonal projection of S2 onto the complement of S1.
Subspace ominus(const Subspace& S2, const Subspace& S1);
Subspace complement(const Subspace& S);
// (S1^⊥ + S2^⊥)^⊥.
Subspace intersection(const Subspace& S1, const Subspace& S2);
// Image of S under a linear map, re-orthonormalized.
Subspace apply(const Matrix& op, const Subspace& S);

// max over frame vectors f of `inner` of |f - P_outer f|.
double containment_residual(const Subspace& inner, const Subspace& outer);
bool contains(const Subspace& outer, const Subspace& inner, double tol = Tolerances{}.relation);
double equality_residual(const Subspace& S1, const Subspace& S2);
bool equal(const Subspace& S1, const Subspace& S2, double tol = Tolerances{}.relation);
// Largest |<f, g>| over frame vectors f of S1 and g of S2.
double orthogonality_residual(const Subspace& S1, const Subspace& S2);

// H0 ⊥_{H1} H2: projecting H0 onto H1H2 or onto H1 gives the same result.
// Returns the largest |P_{H1H2} f - P_{H1} f| over frame vectors f of H0.
double rel_orth_residual(const Subspace& H0, const Subspace& H1, const Subspace& H2);
bool rel_orth(const Subspace& H0, const Subspace& H1, const Subspace& H2,
              double tol = Tolerances{}.relation);

// A subspace of dimension dim(H0) lying in the complement of H1H2, hence
// independent from H2 over H1. Throws ResourceError if there is no room.
Subspace independent_copy(const Subspace& H0, const Subspace& H1, const Subspace& H2);

Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);
Vector random_vector(Eigen::Index dim, std::mt19937_64& rng);
// Span of `k` random combinations of S's frame vectors.
Subspace random_subspace_of(const Subspace& S, Eigen::Index k, std::mt19937_64& rng);

// ----------------------------------------------------------------------------
// Independence axioms for ⊥ on single instances. `applicable` is false when
// the hypotheses of the axiom do not hold for the given subspaces.

struct AxiomOutcome {
  bool applicable = false;
  bool holds = true;
};

// H0 ⊥_{H1} H2 implies H0' ⊥_{H1} H2' for H0' ⊆ H0, H2' ⊆ H2.
AxiomOutcome check_monotonicity(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                                const Subspace& H0_sub, const Subspace& H2_sub, double tol);
// For H1 ⊆ H2 ⊆ H2':  H0 ⊥_{H1} H2'  iff  H0 ⊥_{H1} H2 and H0 ⊥_{H2} H2'.
AxiomOutcome check_transitivity(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                                const Subspace& H2_big, double tol);
// H0 ⊥_{H1} H2 with H1 ⊆ H0 ∩ H2 implies H2 ⊥_{H1} H0.
AxiomOutcome check_weak_symmetry(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                                 double tol);
// H0 ⊥_{H1} H2 with H1 ⊆ H2 implies H0 ∩ H2 ⊆ H1.
AxiomOutcome check_anti_reflexivity(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                                    double tol);
// H0 ⊥_{H1} H2 iff f ⊥_{H1} g for all frame vectors f of H0, g of H2.
AxiomOutcome check_triviality(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                              double tol);

struct AxiomTally {
  std::string name;
  std::size_t instances = 0;
  std::size_t applicable = 0;
  std::size_t violations = 0;
};

struct AxiomReport {
  std::size_t trials = 0;
  Eigen::Index dim = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<AxiomTally> axioms;

  std::size_t violations() const;
  bool passed() const { return violations() == 0; }
};

// Random instances for each axiom, drawn so that both outcomes of every
// hypothesis occur with substantial frequency.
AxiomReport check_independence_axioms(std::size_t trials, Eigen::Index dim, std::uint64_t seed,
                                      double tol = 1e-8);

}  // namespace freecairn
