#include "freecairn/hilbert.hpp"

#include <algorithm>
#include <numeric>

#include "freecairn/errors.hpp"

namespace freecairn {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": ambient dimensions " + std::to_string(a) + " and " +
                         std::to_string(b) + " differ");
  }
}

}  // namespace

Subspace Subspace::from_orthonormal(Matrix frame) {
  Subspace s;
  s.frame_ = std::move(frame);
  return s;
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
  return from_orthonormal(Matrix::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::coordinate(Eigen::Index ambient_dim, std::span<const Eigen::Index> axes) {
  Matrix f = Matrix::Zero(ambient_dim, static_cast<Eigen::Index>(axes.size()));
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i] < 0 || axes[i] >= ambient_dim) throw DimensionError("coordinate axis out of range");
    f(axes[i], static_cast<Eigen::Index>(i)) = 1.0;
  }
  return orthonormalize(f);
}

double Subspace::gram_residual() const {
  if (frame_.cols() == 0) return 0.0;
  const Matrix gram = frame_.adjoint() * frame_;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

Subspace orthonormalize(const Matrix& columns, double drop_tol) {
  const Eigen::Index n = columns.rows();
  Matrix frame(n, columns.cols());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Vector r = columns.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      if (k > 0) r -= frame.leftCols(k) * (frame.leftCols(k).adjoint() * r);
    }
    const double norm = r.norm();
    if (norm <= drop_tol) continue;
    frame.col(k++) = r / norm;
  }
  frame.conservativeResize(n, k);
  return Subspace::from_orthonormal(std::move(frame));
}

Subspace orthonormalize(std::span<const Vector> vectors, Eigen::Index ambient_dim, double drop_tol) {
  Matrix m(ambient_dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    require_same_dim(vectors[i].size(), ambient_dim, "orthonormalize");
    m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return orthonormalize(m, drop_tol);
}

Vector project(const Vector& v, const Subspace& S) {
  require_same_dim(v.size(), S.ambient_dim(), "project");
  if (S.is_trivial()) return Vector::Zero(v.size());
  return S.frame() * (S.frame().adjoint() * v);
}

Subspace join(const Subspace& S1, const Subspace& S2) {
  require_same_dim(S1.ambient_dim(), S2.ambient_dim(), "join");
  Matrix m(S1.ambient_dim(), S1.dim() + S2.dim());
  m << S1.frame(), S2.frame();
  return orthonormalize(m);
}

Subspace join(std::span<const Subspace> parts, Eigen::Index ambient_dim) {
  Eigen::Index cols = 0;
  for (const auto& p : parts) {
    require_same_dim(p.ambient_dim(), ambient_dim, "join");
    cols += p.dim();
  }
  Matrix m(ambient_dim, cols);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    m.middleCols(at, p.dim()) = p.frame();
    at += p.dim();
  }
  return orthonormalize(m);
}

Subspace ominus(const Subspace& S2, const Subspace& S1) {
  require_same_dim(S1.ambient_dim(), S2.ambient_dim(), "ominus");
  if (S1.is_trivial()) return S2;
  const Matrix residual = S2.frame() - S1.frame() * (S1.frame().adjoint() * S2.frame());
  return orthonormalize(residual);
}

Subspace complement(const Subspace& S) { return ominus(Subspace::full(S.ambient_dim()), S); }

Subspace intersection(const Subspace& S1, const Subspace& S2) {
  require_same_dim(S1.ambient_dim(), S2.ambient_dim(), "intersection");
  return complement(join(complement(S1), complement(S2)));
}

Subspace apply(const Matrix& op, const Subspace& S) {
  if (op.cols() != S.ambient_dim()) throw DimensionError("apply: operator/subspace mismatch");
  return orthonormalize(Matrix(op * S.frame()));
}

double containment_residual(const Subspace& inner, const Subspace& outer) {
  require_same_dim(inner.ambient_dim(), outer.ambient_dim(), "containment");
  if (inner.is_trivial()) return 0.0;
  const Matrix& f = inner.frame();
  const Matrix r = outer.is_trivial() ? f : Matrix(f - outer.frame() * (outer.frame().adjoint() * f));
  return r.colwise().norm().maxCoeff();
}

bool contains(const Subspace& outer, const Subspace& inner, double tol) {
  return containment_residual(inner, outer) <= tol;
}

double equality_residual(const Subspace& S1, const Subspace& S2) {
  return std::max(containment_residual(S1, S2), containment_residual(S2, S1));
}

bool equal(const Subspace& S1, const Subspace& S2, double tol) {
  return S1.dim() == S2.dim() && equality_residual(S1, S2) <= tol;
}

double orthogonality_residual(const Subspace& S1, const Subspace& S2) {
  require_same_dim(S1.ambient_dim(), S2.ambient_dim(), "orthogonality");
  if (S1.is_trivial() || S2.is_trivial()) return 0.0;
  return (S1.frame().adjoint() * S2.frame()).cwiseAbs().maxCoeff();
}

double rel_orth_residual(const Subspace& H0, const Subspace& H1, const Subspace& H2) {
  require_same_dim(H0.ambient_dim(), H1.ambient_dim(), "rel_orth");
  require_same_dim(H0.ambient_dim(), H2.ambient_dim(), "rel_orth");
  if (H0.is_trivial()) return 0.0;
  const Subspace H12 = join(H1, H2);
  auto proj = [](const Subspace& S, const Matrix& m) -> Matrix {
    if (S.is_trivial()) return Matrix::Zero(m.rows(), m.cols());
    return S.frame() * (S.frame().adjoint() * m);
  };
  const Matrix diff = proj(H12, H0.frame()) - proj(H1, H0.frame());
  return diff.colwise().norm().maxCoeff();
}

bool rel_orth(const Subspace& H0, const Subspace& H1, const Subspace& H2, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("rel_orth: tolerance must be positive");
  return rel_orth_residual(H0, H1, H2) <= tol;
}

Subspace independent_copy(const Subspace& H0, const Subspace& H1, const Subspace& H2) {
  const Subspace room = complement(join(H1, H2));
  if (room.dim() < H0.dim()) {
    throw ResourceError("independent_copy: only " + std::to_string(room.dim()) +
                        " free dimensions for a copy of dimension " + std::to_string(H0.dim()));
  }
  return Subspace::from_orthonormal(room.frame().leftCols(H0.dim()));
}

Vector random_vector(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Scalar(gauss(rng), gauss(rng));
  return v;
}

Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) g.col(j) = random_vector(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix column phases so the distribution is Haar.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Subspace random_subspace_of(const Subspace& S, Eigen::Index k, std::mt19937_64& rng) {
  if (S.is_trivial() || k <= 0) return Subspace(S.ambient_dim());
  Matrix coeffs(S.dim(), k);
  for (Eigen::Index j = 0; j < k; ++j) coeffs.col(j) = random_vector(S.dim(), rng);
  return orthonormalize(Matrix(S.frame() * coeffs));
}

// ----------------------------------------------------------------------------

AxiomOutcome check_monotonicity(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                                const Subspace& H0_sub, const Subspace& H2_sub, double tol) {
  if (!contains(H0, H0_sub, tol) || !contains(H2, H2_sub, tol)) return {};
  if (!rel_orth(H0, H1, H2, tol)) return {};
  return {true, rel_orth(H0_sub, H1, H2_sub, tol)};
}

AxiomOutcome check_transitivity(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                                const Subspace& H2_big, double tol) {
  if (!contains(H2, H1, tol) || !contains(H2_big, H2, tol)) return {};
  const bool lhs = rel_orth(H0, H1, H2_big, tol);
  const bool rhs = rel_orth(H0, H1, H2, tol) && rel_orth(H0, H2, H2_big, tol);
  return {true, lhs == rhs};
}

AxiomOutcome check_weak_symmetry(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                                 double tol) {
  if (!contains(H0, H1, tol) || !contains(H2, H1, tol)) return {};
  if (!rel_orth(H0, H1, H2, tol)) return {};
  return {true, rel_orth(H2, H1, H0, tol)};
}

AxiomOutcome check_anti_reflexivity(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                                    double tol) {
  if (!contains(H2, H1, tol)) return {};
  if (!rel_orth(H0, H1, H2, tol)) return {};
  return {true, contains(H1, intersection(H0, H2), tol)};
}

AxiomOutcome check_triviality(const Subspace& H0, const Subspace& H1, const Subspace& H2,
                              double tol) {
  const bool whole = rel_orth(H0, H1, H2, tol);
  bool pairwise = true;
  for (Eigen::Index i = 0; i < H0.dim() && pairwise; ++i) {
    const auto f = Subspace::from_orthonormal(H0.frame().col(i));
    for (Eigen::Index j = 0; j < H2.dim() && pairwise; ++j) {
      const auto g = Subspace::from_orthonormal(H2.frame().col(j));
      pairwise = rel_orth(f, H1, g, tol);
    }
  }
  return {true, whole == pairwise};
}

std::size_t AxiomReport::violations() const {
  std::size_t total = 0;
  for (const auto& a : axioms) total += a.violations;
  return total;
}

namespace {

// Hands out columns of a random unitary so that groups drawn from it are
// mutually orthogonal; mixing columns across groups breaks independence on
// purpose.
class ColumnPool {
 public:
  ColumnPool(Eigen::Index dim, std::mt19937_64& rng) : u_(random_unitary(dim, rng)) {}

  Matrix take(Eigen::Index k) {
    k = std::min(k, u_.cols() - next_);
    Matrix m = u_.middleCols(next_, k);
    next_ += k;
    return m;
  }
  Eigen::Index remaining() const { return u_.cols() - next_; }

 private:
  Matrix u_;
  Eigen::Index next_ = 0;
};

Matrix hcat(std::initializer_list<Matrix> parts, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const auto& p : parts) cols += p.cols();
  Matrix m(rows, cols);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    m.middleCols(at, p.cols()) = p;
    at += p.cols();
  }
  return m;
}

// One random combination of the columns of `a` plus one of `b`.
Matrix mix(const Matrix& a, const Matrix& b, std::mt19937_64& rng) {
  Vector v = Vector::Zero(a.rows());
  if (a.cols() > 0) v += a * random_vector(a.cols(), rng);
  if (b.cols() > 0) v += b * random_vector(b.cols(), rng);
  return v;
}

Matrix some_columns(const Matrix& m, std::mt19937_64& rng) {
  if (m.cols() == 0) return m;
  std::uniform_int_distribution<Eigen::Index> pick(0, m.cols());
  return m.leftCols(pick(rng));
}

struct Triple {
  Subspace h0, h1, h2, h2_big;
};

// H1 = span(C1) ⊆ H2 = span(C1, C2, Y1) ⊆ H2' = span(H2, Y2, Z); H0 draws
// from X and C1, sometimes a C2 column and sometimes a vector mixing X with a
// Y block, so that each relation holds in roughly half of the draws.
Triple draw_triple(Eigen::Index dim, std::mt19937_64& rng) {
  ColumnPool pool(dim, rng);
  std::uniform_int_distribution<Eigen::Index> small(0, 2);
  std::uniform_int_distribution<Eigen::Index> positive(1, 2);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> contamination(0, 5);

  const Matrix c1 = pool.take(small(rng));
  const Matrix c2 = pool.take(small(rng));
  const Matrix x = pool.take(positive(rng));
  const Matrix y1 = pool.take(positive(rng));
  const Matrix y2 = pool.take(positive(rng));
  const Matrix z = pool.take(pool.remaining() > 0 ? 1 : 0);

  Matrix h0_cols = hcat({x, some_columns(c1, rng)}, dim);
  switch (contamination(rng)) {
    case 0:
      h0_cols = hcat({h0_cols, mix(x, y1, rng)}, dim);
      break;
    case 1:
      h0_cols = hcat({h0_cols, mix(x, y2, rng)}, dim);
      break;
    case 2:
      if (c2.cols() > 0) h0_cols = hcat({h0_cols, c2.leftCols(1)}, dim);
      break;
    case 3:
      h0_cols = hcat({h0_cols, mix(x, z, rng)}, dim);
      break;
    default:
      break;
  }

  Triple t;
  t.h1 = orthonormalize(c1);
  t.h2 = orthonormalize(hcat({c1, c2, y1}, dim));
  t.h2_big = orthonormalize(hcat({c1, c2, y1, y2, coin(rng) ? z : Matrix(dim, 0)}, dim));
  t.h0 = orthonormalize(h0_cols);
  return t;
}

void tally(AxiomTally& t, AxiomOutcome o) {
  ++t.instances;
  if (!o.applicable) return;
  ++t.applicable;
  if (!o.holds) ++t.violations;
}

}  // namespace

AxiomReport check_independence_axioms(std::size_t trials, Eigen::Index dim, std::uint64_t seed,
                                      double tol) {
  if (dim < 8) throw std::invalid_argument("check_independence_axioms needs dim >= 8");
  AxiomReport report;
  report.trials = trials;
  report.dim = dim;
  report.seed = seed;
  report.tol = tol;
  report.axioms = {{"monotonicity"}, {"transitivity"}, {"weak_symmetry"}, {"anti_reflexivity"},
                   {"triviality"}};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> shrink(0, 2);
  for (std::size_t i = 0; i < trials; ++i) {
    const Triple t = draw_triple(dim, rng);
    const Subspace h0_sub = random_subspace_of(t.h0, std::min<Eigen::Index>(t.h0.dim(), shrink(rng) + 1), rng);
    const Subspace h2_sub = random_subspace_of(t.h2_big, std::min<Eigen::Index>(t.h2_big.dim(), shrink(rng) + 1), rng);
    tally(report.axioms[0], check_monotonicity(t.h0, t.h1, t.h2_big, h0_sub, h2_sub, tol));
    tally(report.axioms[1], check_transitivity(t.h0, t.h1, t.h2, t.h2_big, tol));

    // Weak symmetry wants H1 inside both sides.
    const Subspace h0_over = join(t.h0, t.h1);
    tally(report.axioms[2], check_weak_symmetry(h0_over, t.h1, t.h2, tol));
    tally(report.axioms[3], check_anti_reflexivity(t.h0, t.h1, t.h2, tol));

    // Triviality also sees fully generic subspaces every other trial.
    if (i % 2 == 0) {
      tally(report.axioms[4], check_triviality(t.h0, t.h1, t.h2_big, tol));
    } else {
      const Subspace g0 = random_subspace_of(Subspace::full(dim), shrink(rng) + 1, rng);
      const Subspace g1 = random_subspace_of(Subspace::full(dim), shrink(rng), rng);
      const Subspace g2 = random_subspace_of(Subspace::full(dim), shrink(rng) + 1, rng);
      tally(report.axioms[4], check_triviality(g0, g1, g2, tol));
    }
  }
  return report;
}

}  // namespace freecairn
