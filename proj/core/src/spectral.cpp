#include "freecairn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <cstdio>
#include <limits>
#include <random>
#include <unordered_map>

#include "freecairn/errors.hpp"

namespace freecairn {

namespace {

Eigen::VectorXd gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

}  // namespace

SparseOperator cayley_adjacency(int radius, int cap) {
  if (radius > cap) {
    throw ResourceError("ball radius " + std::to_string(radius) + " exceeds spectral cap " +
                        std::to_string(cap));
  }
  SparseOperator op;
  op.radius_ = radius;
  op.nodes_ = ball(radius, std::max(cap, radius));
  std::unordered_map<Word, std::int32_t, WordHash> pos;
  pos.reserve(op.nodes_.size());
  for (std::size_t i = 0; i < op.nodes_.size(); ++i) pos.emplace(op.nodes_[i], static_cast<std::int32_t>(i));
  op.left_.resize(op.nodes_.size());
  for (std::size_t i = 0; i < op.nodes_.size(); ++i) {
    for (Letter l : kLetters) {
      const auto it = pos.find(l * op.nodes_[i]);
      op.left_[i][static_cast<std::size_t>(l)] = it == pos.end() ? SparseOperator::kOutside : it->second;
    }
  }
  return op;
}

int SparseOperator::degree(std::size_t i) const {
  return static_cast<int>(std::count_if(left_[i].begin(), left_[i].end(),
                                        [](std::int32_t j) { return j != kOutside; }));
}

std::size_t SparseOperator::edge_count() const {
  std::size_t twice = 0;
  for (std::size_t i = 0; i < left_.size(); ++i) twice += static_cast<std::size_t>(degree(i));
  return twice / 2;
}

bool SparseOperator::is_symmetric() const {
  for (std::size_t i = 0; i < left_.size(); ++i) {
    for (Letter l : kLetters) {
      const auto j = left_[i][static_cast<std::size_t>(l)];
      if (j == kOutside) continue;
      if (left_[static_cast<std::size_t>(j)][static_cast<std::size_t>(inverse(l))] != static_cast<std::int32_t>(i)) {
        return false;
      }
    }
  }
  return true;
}

void SparseOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  y.setZero(x.size());
  for (std::size_t i = 0; i < left_.size(); ++i) {
    double acc = 0.0;
    for (std::int32_t j : left_[i]) {
      if (j != kOutside) acc += x(j);
    }
    y(static_cast<Eigen::Index>(i)) = acc;
  }
}

Eigen::VectorXd SparseOperator::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y;
  apply(x, y);
  return y;
}

Eigen::VectorXd SparseOperator::translate(Letter l, const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
  const auto slot = static_cast<std::size_t>(inverse(l));
  for (std::size_t i = 0; i < left_.size(); ++i) {
    const auto j = left_[i][slot];
    if (j != kOutside) y(static_cast<Eigen::Index>(i)) = x(j);
  }
  return y;
}

Eigen::MatrixXd SparseOperator::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dimension(), dimension());
  for (std::size_t i = 0; i < left_.size(); ++i) {
    for (std::int32_t j : left_[i]) {
      if (j != kOutside) m(static_cast<Eigen::Index>(i), j) += 1.0;
    }
  }
  return m;
}

void SparseOperator::write_edge_list(std::ostream& out) const {
  for (std::size_t i = 0; i < left_.size(); ++i) {
    std::vector<std::int32_t> higher;
    for (std::int32_t j : left_[i]) {
      if (j != kOutside && static_cast<std::size_t>(j) > i) higher.push_back(j);
    }
    std::sort(higher.begin(), higher.end());
    for (std::int32_t j : higher) out << to_string(nodes_[i]) << ' ' << to_string(nodes_[static_cast<std::size_t>(j)]) << '\n';
  }
}

// ---------------------------------------------------------------------------

EigenEstimate top_eigenvalue(const SparseOperator& op, const EigenSolverOptions& opts) {
  const Eigen::Index n = op.dimension();
  EigenEstimate est;
  if (n == 1) {
    est.vector = Eigen::VectorXd::Ones(1);
    est.value = op.apply(est.vector)(0);
    return est;
  }
  std::mt19937_64 rng(opts.seed);
  Eigen::VectorXd start = gaussian(n, rng);
  start.normalize();

  const Eigen::Index m = std::min<Eigen::Index>(opts.krylov_dim, n);
  Eigen::MatrixXd basis(n, m);
  Eigen::VectorXd w(n);
  double last_residual = std::numeric_limits<double>::infinity();

  while (est.matvecs < opts.max_iter) {
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
    basis.col(0) = start;
    Eigen::Index k = 0;
    for (; k < m; ++k) {
      op.apply(basis.col(k), w);
      ++est.matvecs;
      alpha(k) = basis.col(k).dot(w);
      // Full reorthogonalization, twice.
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
      }
      beta(k) = w.norm();
      if (k + 1 == m || beta(k) < 1e-14) break;
      basis.col(k + 1) = w / beta(k);
    }
    const Eigen::Index size = std::min<Eigen::Index>(k + 1, m);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      t(i, i) = alpha(i);
      if (i + 1 < size) t(i, i + 1) = t(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
    const Eigen::VectorXd s = tri.eigenvectors().col(size - 1);
    Eigen::VectorXd ritz = basis.leftCols(size) * s;
    ritz.normalize();

    op.apply(ritz, w);
    ++est.matvecs;
    const double rayleigh = ritz.dot(w);
    last_residual = (w - rayleigh * ritz).norm();
    est.value = rayleigh;
    est.residual = last_residual;
    est.vector = ritz;
    if (last_residual <= opts.tol) return est;
    start = ritz;
  }
  throw ConvergenceError("Lanczos did not reach residual " + std::to_string(opts.tol) + " within " +
                             std::to_string(opts.max_iter) + " matrix-vector products",
                         last_residual);
}

KazhdanConstant kazhdan_eta() {
  KazhdanConstant k;
  const double root3 = std::sqrt(3.0);
  k.eta_squared = 2.0 - root3;
  k.eta = std::sqrt(k.eta_squared);
  k.kesten_norm = 2.0 * root3;
  k.identity_residual = std::abs(k.eta_squared + k.kesten_norm / 2.0 - 2.0);
  return k;
}

std::vector<KestenRow> kesten_report(int max_radius, const EigenSolverOptions& opts, int cap) {
  if (max_radius < 0) throw std::invalid_argument("max_radius must be nonnegative");
  if (max_radius > cap) {
    throw ResourceError("max_radius " + std::to_string(max_radius) + " exceeds spectral cap " +
                        std::to_string(cap));
  }
  const double kesten = kazhdan_eta().kesten_norm;
  std::vector<KestenRow> rows;
  // Radius 0 is reported only when it is the whole table.
  for (int r = max_radius == 0 ? 0 : 1; r <= max_radius; ++r) {
    const auto op = cayley_adjacency(r, cap);
    const auto est = top_eigenvalue(op, opts);
    rows.push_back({r, op.dimension(), est.value, kesten - est.value, est.residual});
  }
  return rows;
}

void write_kesten_csv(std::ostream& out, const std::vector<KestenRow>& rows) {
  out << "radius,dimension,lambda_max,gap\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%lld,%.12g,%.12g\n", r.radius, static_cast<long long>(r.dimension),
                  r.lambda_max, r.gap);
    out << buf;
  }
}

AveragingTerms averaging_identity(const SparseOperator& op, const Eigen::VectorXd& xi) {
  AveragingTerms t;
  for (Letter l : {Letter::a, Letter::b}) t.displacement_sum += (op.translate(l, xi) - xi).squaredNorm();
  t.quadratic_form = 4.0 * xi.squaredNorm() - xi.dot(op.apply(xi));
  return t;
}

std::vector<Eigen::Index> interior_nodes(const SparseOperator& op) {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < op.nodes().size(); ++i) {
    if (static_cast<int>(op.nodes()[i].length()) < op.radius()) out.push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

Eigen::VectorXd random_interior_unit_vector(const SparseOperator& op, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(op.dimension());
  for (Eigen::Index i : interior_nodes(op)) xi(i) = g(rng);
  const double norm = xi.norm();
  if (norm == 0.0) throw std::invalid_argument("ball has no interior");
  return xi / norm;
}

MinimaxResult minimize_max_displacement(const SparseOperator& op, std::size_t restarts,
                                        std::uint64_t seed, std::size_t steps) {
  const auto interior = interior_nodes(op);
  if (interior.empty()) throw std::invalid_argument("ball has no interior");
  Eigen::VectorXd mask = Eigen::VectorXd::Zero(op.dimension());
  for (Eigen::Index i : interior) mask(i) = 1.0;

  auto displacement_sq = [&](Letter l, const Eigen::VectorXd& xi) {
    return (op.translate(l, xi) - xi).squaredNorm();
  };
  // Gradient of |λ_l ξ - ξ|² is 2(2ξ - λ_l ξ - λ_l^-1 ξ).
  auto gradient = [&](Letter l, const Eigen::VectorXd& xi) -> Eigen::VectorXd {
    return 2.0 * (2.0 * xi - op.translate(l, xi) - op.translate(inverse(l), xi));
  };

  MinimaxResult result;
  result.best_max_displacement = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    Eigen::VectorXd xi = random_interior_unit_vector(op, seed + r);
    double temperature = 0.05;
    double step = 0.05;
    for (std::size_t it = 0; it < steps; ++it) {
      const double qa = displacement_sq(Letter::a, xi);
      const double qb = displacement_sq(Letter::b, xi);
      const double hi = std::max(qa, qb);
      const double wa = std::exp((qa - hi) / temperature);
      const double wb = std::exp((qb - hi) / temperature);
      Eigen::VectorXd g = (wa * gradient(Letter::a, xi) + wb * gradient(Letter::b, xi)) / (wa + wb);
      g = g.cwiseProduct(mask);
      g -= g.dot(xi) * xi;
      xi -= step * g;
      xi.normalize();
      if ((it + 1) % 500 == 0) {
        temperature *= 0.3;
        step *= 0.7;
      }
    }
    const double value = std::sqrt(std::max(displacement_sq(Letter::a, xi), displacement_sq(Letter::b, xi)));
    ++result.restarts;
    if (value < result.best_max_displacement) {
      result.best_max_displacement = value;
      result.argmin = xi;
    }
  }
  return result;
}

}  // namespace freecairn
