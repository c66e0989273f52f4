#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "freecairn/errors.hpp"
#include "freecairn/spectral.hpp"

using namespace freecairn;

namespace {

// Radial functions on the ball of the 4-regular tree span an invariant
// subspace containing the Perron vector. In the sphere-normalized basis A
// becomes tridiagonal with off-diagonal 2 (root to sphere 1) and sqrt(3).
double radial_top_eigenvalue(int radius) {
  if (radius == 0) return 0.0;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(radius + 1, radius + 1);
  for (int k = 0; k < radius; ++k) t(k, k + 1) = t(k + 1, k) = k == 0 ? 2.0 : std::sqrt(3.0);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t).eigenvalues().maxCoeff();
}

}  // namespace

TEST(CayleyBall, SmallCases) {
  const auto r0 = cayley_adjacency(0);
  EXPECT_EQ(r0.dimension(), 1);
  EXPECT_EQ(r0.edge_count(), 0u);
  const auto r1 = cayley_adjacency(1);
  EXPECT_EQ(r1.dimension(), 5);
  EXPECT_EQ(r1.edge_count(), 4u);
}

TEST(CayleyBall, TreeStructure) {
  for (int r = 1; r <= 6; ++r) {
    const auto op = cayley_adjacency(r);
    EXPECT_EQ(static_cast<std::size_t>(op.dimension()), ball_size(r));
    EXPECT_EQ(op.edge_count(), static_cast<std::size_t>(op.dimension()) - 1);
    EXPECT_TRUE(op.is_symmetric());
    for (std::size_t i = 0; i < op.nodes().size(); ++i) {
      if (static_cast<int>(op.nodes()[i].length()) < r) EXPECT_EQ(op.degree(i), 4);
      else EXPECT_EQ(op.degree(i), 1);
    }
  }
}

TEST(CayleyBall, Radius10) {
  const auto op = cayley_adjacency(10);
  EXPECT_EQ(op.dimension(), 118097);
  EXPECT_EQ(op.edge_count(), 118096u);
}

TEST(CayleyBall, CapEnforced) {
  EXPECT_THROW(cayley_adjacency(13), ResourceError);
  EXPECT_THROW(cayley_adjacency(5, 4), ResourceError);
}

TEST(CayleyBall, EdgeList) {
  std::ostringstream out;
  cayley_adjacency(1).write_edge_list(out);
  EXPECT_EQ(out.str(), "e a\ne A\ne b\ne B\n");
}

TEST(CayleyBall, TranslateMovesDelta) {
  const auto op = cayley_adjacency(2);
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(op.dimension());
  delta(0) = 1.0;
  const auto moved = op.translate(Letter::b, delta);
  const auto it = std::find(op.nodes().begin(), op.nodes().end(), parse_word("b"));
  EXPECT_EQ(moved(it - op.nodes().begin()), 1.0);
  EXPECT_EQ(moved.sum(), 1.0);
}

TEST(TopEigenvalue, Star) {
  const auto est = top_eigenvalue(cayley_adjacency(1));
  EXPECT_NEAR(est.value, 2.0, 1e-8);
  EXPECT_LE(est.residual, 1e-10);
}

TEST(TopEigenvalue, RadiusZero) { EXPECT_EQ(top_eigenvalue(cayley_adjacency(0)).value, 0.0); }

TEST(TopEigenvalue, MatchesDenseSolve) {
  for (int r = 1; r <= 4; ++r) {
    const auto op = cayley_adjacency(r);
    const double dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(op.dense()).eigenvalues().maxCoeff();
    EXPECT_NEAR(top_eigenvalue(op).value, dense, 1e-7) << r;
  }
}

TEST(TopEigenvalue, MatchesRadialReduction) {
  for (int r = 1; r <= 10; ++r) {
    EXPECT_NEAR(top_eigenvalue(cayley_adjacency(r)).value, radial_top_eigenvalue(r), 1e-9) << r;
  }
}

TEST(TopEigenvalue, DeterministicGivenSeed) {
  EigenSolverOptions opts;
  opts.seed = 42;
  const auto op = cayley_adjacency(5);
  EXPECT_EQ(top_eigenvalue(op, opts).value, top_eigenvalue(op, opts).value);
}

TEST(TopEigenvalue, ConvergenceFailureCarriesResidual) {
  EigenSolverOptions opts;
  opts.max_iter = 3;
  opts.krylov_dim = 2;
  try {
    top_eigenvalue(cayley_adjacency(6), opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.last_residual(), opts.tol);
  }
}

TEST(Kesten, Report) {
  const auto rows = kesten_report(6);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_NEAR(rows[0].lambda_max, 2.0, 1e-8);
  EXPECT_NEAR(rows[0].gap, 2.0 * std::sqrt(3.0) - 2.0, 1e-8);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].gap, 0.0);
    if (i) EXPECT_GT(rows[i].lambda_max, rows[i - 1].lambda_max);
  }
  const auto zero = kesten_report(0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].radius, 0);
  EXPECT_EQ(zero[0].lambda_max, 0.0);
}

TEST(Kesten, Csv) {
  std::ostringstream out;
  write_kesten_csv(out, kesten_report(1));
  EXPECT_EQ(out.str(), "radius,dimension,lambda_max,gap\n1,5,2,1.46410161514\n");
}

TEST(Kazhdan, Constants) {
  const auto k = kazhdan_eta();
  EXPECT_NEAR(k.eta, 0.517638, 1e-6);
  EXPECT_NEAR(k.eta_squared, 0.267949, 1e-6);
  EXPECT_NEAR(4.0 - k.kesten_norm, 2.0 * k.eta_squared, 1e-12);
  EXPECT_LE(k.identity_residual, 1e-12);
}

TEST(Averaging, DeltaAtIdentity) {
  for (int r = 1; r <= 4; ++r) {
    const auto op = cayley_adjacency(r);
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(op.dimension());
    delta(0) = 1.0;
    const auto t = averaging_identity(op, delta);
    EXPECT_DOUBLE_EQ(t.displacement_sum, 4.0);
    EXPECT_DOUBLE_EQ(t.quadratic_form, 4.0);
  }
}

TEST(Averaging, RandomInteriorVectors) {
  const auto op = cayley_adjacency(6);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto xi = random_interior_unit_vector(op, s);
    EXPECT_NEAR(xi.norm(), 1.0, 1e-12);
    const auto t = averaging_identity(op, xi);
    EXPECT_NEAR(t.displacement_sum, t.quadratic_form, 1e-10);
  }
}

TEST(Minimax, StaysAboveEta) {
  const double eta = kazhdan_eta().eta;
  for (int r = 1; r <= 3; ++r) {
    const auto res = minimize_max_displacement(cayley_adjacency(r), 5, 1, 1500);
    EXPECT_GE(res.best_max_displacement, eta - 1e-3) << r;
    EXPECT_EQ(res.restarts, 5u);
  }
}

TEST(Minimax, RadiusOneOptimum) {
  // Only δ_e is interior-supported; both displacements equal sqrt 2.
  const auto res = minimize_max_displacement(cayley_adjacency(1), 2, 0, 200);
  EXPECT_NEAR(res.best_max_displacement, std::sqrt(2.0), 1e-12);
}
