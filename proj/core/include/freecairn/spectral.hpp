#pragma once

// The operator A = λ_a + λ_{a^-1} + λ_b + λ_{b^-1} of the left-regular
// representation, compressed to the ball of radius R, and its top eigenvalue.
// On all of ℓ²(F) the norm of A is 2√3 (Kesten); every compression has
// λ_max strictly below that.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "freecairn/freegroup.hpp"

namespace freecairn {

inline constexpr int kDefaultSpectralRadiusCap = 12;

class SparseOperator {
 public:
  static constexpr std::int32_t kOutside = -1;

  int radius() const noexcept { return radius_; }
  Eigen::Index dimension() const noexcept { return static_cast<Eigen::Index>(nodes_.size()); }
  // Shortlex order.
  const std::vector<Word>& nodes() const noexcept { return nodes_; }
  // Index of l * nodes()[i], or kOutside.
  std::int32_t left_neighbor(std::size_t i, Letter l) const {
    return left_[i][static_cast<std::size_t>(l)];
  }
  int degree(std::size_t i) const;
  std::size_t edge_count() const;
  bool is_symmetric() const;

  // y = A x.
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  // (λ_l ξ)(w) = ξ(l^-1 w), truncated to the ball.
  Eigen::VectorXd translate(Letter l, const Eigen::VectorXd& x) const;
  Eigen::MatrixXd dense() const;

  // One "u v" line per edge, u < v in shortlex.
  void write_edge_list(std::ostream& out) const;

  friend SparseOperator cayley_adjacency(int radius, int cap);

 private:
  int radius_ = 0;
  std::vector<Word> nodes_;
  std::vector<std::array<std::int32_t, 4>> left_;
};

// Throws ResourceError past `cap`.
SparseOperator cayley_adjacency(int radius, int cap = kDefaultSpectralRadiusCap);

struct EigenEstimate {
  double value = 0.0;
  double residual = 0.0;  // |A v - value v| with |v| = 1
  std::size_t matvecs = 0;
  Eigen::VectorXd vector;
};

struct EigenSolverOptions {
  double tol = 1e-10;
  std::size_t max_iter = 20000;  // matrix-vector products
  std::uint64_t seed = 0;
  int krylov_dim = 48;
};

// Explicitly restarted Lanczos with full reorthogonalization inside each
// cycle. Converges on the true residual. Throws ConvergenceError carrying the
// last residual when max_iter is exhausted.
EigenEstimate top_eigenvalue(const SparseOperator& op, const EigenSolverOptions& opts = {});

struct KazhdanConstant {
  double eta = 0.0;          // sqrt(2 - sqrt 3)
  double eta_squared = 0.0;  // 2 - sqrt 3
  double kesten_norm = 0.0;  // 2 sqrt 3
  double identity_residual = 0.0;  // |eta² + kesten_norm / 2 - 2|
};

KazhdanConstant kazhdan_eta();

struct KestenRow {
  int radius = 0;
  Eigen::Index dimension = 0;
  double lambda_max = 0.0;
  double gap = 0.0;  // 2√3 - lambda_max
  double residual = 0.0;
};

std::vector<KestenRow> kesten_report(int max_radius, const EigenSolverOptions& opts = {},
                                     int cap = kDefaultSpectralRadiusCap);
void write_kesten_csv(std::ostream& out, const std::vector<KestenRow>& rows);

// Σ_{l ∈ {a,b}} |λ_l ξ - ξ|² and 4|ξ|² - <Aξ, ξ>; equal when ξ is supported
// in the interior (length < R).
struct AveragingTerms {
  double displacement_sum = 0.0;
  double quadratic_form = 0.0;
};
AveragingTerms averaging_identity(const SparseOperator& op, const Eigen::VectorXd& xi);

// Indices of nodes of length < R.
std::vector<Eigen::Index> interior_nodes(const SparseOperator& op);
Eigen::VectorXd random_interior_unit_vector(const SparseOperator& op, std::uint64_t seed);

struct MinimaxResult {
  double best_max_displacement = 0.0;  // min over runs of max_l |λ_l ξ - ξ|
  std::size_t restarts = 0;
  Eigen::VectorXd argmin;
};

// Direct minimization of max_{l ∈ {a,b}} |λ_l ξ - ξ| over interior-supported
// unit vectors: Riemannian gradient descent on a soft-max of the two squared
// displacements, from `restarts` random starts.
MinimaxResult minimize_max_displacement(const SparseOperator& op, std::size_t restarts,
                                        std::uint64_t seed, std::size_t steps = 3000);

}  // namespace freecairn
