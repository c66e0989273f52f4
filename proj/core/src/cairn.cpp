#include "freecairn/cairn.hpp"

#include <algorithm>
#include <random>

#include "freecairn/errors.hpp"

namespace freecairn {

namespace {

std::size_t letter_slot(Letter l) { return static_cast<std::size_t>(l); }

}  // namespace

HilbertCairn::HilbertCairn(const IntervalSystem& sys, int window_rank)
    : sys_(&sys), window_rank_(window_rank) {
  window_ = sys.base_interval(window_rank);
  index_ = sys.subintervals(window_);
  for (std::size_t i = 0; i < index_.size(); ++i) positions_.emplace(index_[i].key(), i);
}

std::optional<std::size_t> HilbertCairn::position(const Interval& I) const {
  const auto it = positions_.find(I.key());
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

bool HilbertCairn::in_window(const Interval& I) const {
  return I.empty() || positions_.contains(I.key());
}

Subspace HilbertCairn::shift(Letter l, const Subspace& S) const {
  if (S.is_trivial()) return S;
  return orthonormalize(apply_shift(l, S.frame()));
}

std::vector<ShiftPair> HilbertCairn::shift_interval_map(Letter l) const {
  std::vector<ShiftPair> out;
  const Word step(l);
  for (const Interval& I : index_) {
    Interval image = sys_->translate(step, I);
    if (positions_.contains(image.key())) out.push_back({I, std::move(image)});
  }
  return out;
}

// ---------------------------------------------------------------------------

GradedCairn build_graded(const IntervalSystem& sys, int window_rank,
                         const std::map<IntervalKey, int>& dims, std::uint64_t seed,
                         Eigen::Index max_ambient) {
  GradedCairn c(sys, window_rank);
  const auto n = c.index_.size();

  c.block_dims_.assign(n, 1);
  for (const auto& [key, d] : dims) {
    const auto it = c.positions_.find(key);
    if (it == c.positions_.end()) {
      throw OutOfWindowError("block dimension given for an interval outside I" +
                             std::to_string(window_rank));
    }
    if (d <= 0) throw std::invalid_argument("block dimensions must be positive");
    c.block_dims_[it->second] = d;
  }

  c.offsets_.resize(n);
  Eigen::Index total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    c.offsets_[i] = total;
    total += c.block_dims_[i];
  }
  if (total > max_ambient) {
    throw ResourceError("graded cairn over I" + std::to_string(window_rank) + " needs ambient dimension " +
                        std::to_string(total) + " > cap " + std::to_string(max_ambient));
  }
  c.ambient_dim_ = total;
  c.seed_ = seed;

  c.below_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Interval& J : sys.subintervals(c.index_[i])) c.below_[i].push_back(c.positions_.at(J.key()));
  }

  if (seed != 0) {
    std::mt19937_64 rng(seed);
    c.rotation_ = random_unitary(total, rng);
  }
  c.blocks_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (seed != 0) {
      c.blocks_.push_back(Subspace::from_orthonormal(c.rotation_.middleCols(c.offsets_[i], c.block_dims_[i])));
    } else {
      std::vector<Eigen::Index> axes(static_cast<std::size_t>(c.block_dims_[i]));
      for (std::size_t k = 0; k < axes.size(); ++k) axes[k] = c.offsets_[i] + static_cast<Eigen::Index>(k);
      c.blocks_.push_back(Subspace::coordinate(total, axes));
    }
  }

  for (Letter l : kLetters) {
    auto& perm = c.coordinate_shift_[letter_slot(l)];
    perm.assign(static_cast<std::size_t>(total), -1);
    for (const auto& [from, to] : c.shift_interval_map(l)) {
      const auto i = c.positions_.at(from.key());
      const auto j = c.positions_.at(to.key());
      if (c.block_dims_[i] != c.block_dims_[j]) continue;
      for (int k = 0; k < c.block_dims_[i]; ++k) {
        perm[static_cast<std::size_t>(c.offsets_[i] + k)] = c.offsets_[j] + k;
      }
    }
  }
  return c;
}

Subspace GradedCairn::subspace_of(const Interval& I) const {
  if (I.empty()) return Subspace(ambient_dim_);
  const auto pos = position(I);
  if (!pos) {
    throw OutOfWindowError(to_literal(I) + " is not a subinterval of I" + std::to_string(window_rank_));
  }
  std::vector<Subspace> parts;
  parts.reserve(below_[*pos].size());
  for (std::size_t j : below_[*pos]) parts.push_back(blocks_[j]);
  return join(parts, ambient_dim_);
}

Matrix GradedCairn::apply_shift(Letter l, const Matrix& columns) const {
  if (columns.rows() != ambient_dim_) throw DimensionError("apply_shift: dimension mismatch");
  const auto& perm = coordinate_shift_[letter_slot(l)];
  const Matrix coords = rotation_.size() ? Matrix(rotation_.adjoint() * columns) : columns;
  Matrix moved = Matrix::Zero(coords.rows(), coords.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= 0) moved.row(perm[i]) = coords.row(static_cast<Eigen::Index>(i));
  }
  return rotation_.size() ? Matrix(rotation_ * moved) : moved;
}

GradedCairn GradedCairn::with_block(const Interval& I, Subspace replacement) const {
  const auto pos = position(I);
  if (!pos) throw OutOfWindowError(to_literal(I) + " is not in the window");
  if (replacement.ambient_dim() != ambient_dim_) throw DimensionError("with_block: dimension mismatch");
  GradedCairn copy = *this;
  copy.blocks_[*pos] = std::move(replacement);
  return copy;
}

// ---------------------------------------------------------------------------

CoordinateCairn::CoordinateCairn(const IntervalSystem& sys, int window_rank, int fiber_dim,
                                 Eigen::Index max_ambient)
    : HilbertCairn(sys, window_rank), fiber_dim_(fiber_dim) {
  if (fiber_dim <= 0) throw std::invalid_argument("fiber dimension must be positive");
  const auto words = static_cast<Eigen::Index>(window_.size());
  if (words * fiber_dim > max_ambient) {
    throw ResourceError("coordinate cairn needs ambient dimension " + std::to_string(words * fiber_dim) +
                        " > cap " + std::to_string(max_ambient));
  }
  ambient_dim_ = words * fiber_dim;
  for (Eigen::Index i = 0; i < words; ++i) word_pos_.emplace(window_.elements()[static_cast<std::size_t>(i)], i);
}

Subspace CoordinateCairn::subspace_of(const Interval& I) const {
  std::vector<Eigen::Index> axes;
  for (const Word& w : I.elements()) {
    const auto it = word_pos_.find(w);
    if (it == word_pos_.end()) continue;
    for (int k = 0; k < fiber_dim_; ++k) axes.push_back(it->second * fiber_dim_ + k);
  }
  std::sort(axes.begin(), axes.end());
  return Subspace::coordinate(ambient_dim_, axes);
}

Matrix CoordinateCairn::apply_shift(Letter l, const Matrix& columns) const {
  if (columns.rows() != ambient_dim_) throw DimensionError("apply_shift: dimension mismatch");
  Matrix out = Matrix::Zero(columns.rows(), columns.cols());
  const Word step(l);
  for (const auto& [w, i] : word_pos_) {
    const auto it = word_pos_.find(step * w);
    if (it == word_pos_.end()) continue;
    for (int k = 0; k < fiber_dim_; ++k) out.row(it->second * fiber_dim_ + k) = columns.row(i * fiber_dim_ + k);
  }
  return out;
}

std::size_t CoordinateCairn::count_basis_fixed_points(int radius) const {
  std::size_t fixed = 0;
  for (const Word& g : ball(radius)) {
    if (g.is_identity()) continue;
    for (const auto& [w, i] : word_pos_) {
      if (g * w == w) fixed += static_cast<std::size_t>(fiber_dim_);
    }
  }
  return fixed;
}

// ---------------------------------------------------------------------------

bool CairnReport::passed() const { return failures() == 0; }

std::size_t CairnReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CairnCheck& c) { return !c.pass; }));
}

double CairnReport::worst(const std::string& kind) const {
  double w = 0.0;
  for (const auto& c : checks) {
    if (c.kind == kind) w = std::max(w, c.residual);
  }
  return w;
}

std::size_t CairnReport::count(const std::string& kind) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const CairnCheck& c) { return c.kind == kind; }));
}

CairnReport verify_cairn(const HilbertCairn& c, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("verify_cairn: tolerance must be positive");
  CairnReport report{c.model_name(), c.window_rank(), tol, {}};
  const auto& index = c.index();
  const auto& sys = c.system();

  std::vector<Subspace> spaces;
  spaces.reserve(index.size());
  for (const Interval& I : index) spaces.push_back(c.subspace_of(I));

  auto add = [&](std::string kind, const Interval& I, const Interval& J, double residual) {
    report.checks.push_back({std::move(kind), to_literal(I), to_literal(J), residual, residual <= tol});
  };

  for (std::size_t i = 0; i < index.size(); ++i) {
    for (std::size_t j = 0; j < index.size(); ++j) {
      const Interval K = sys.intersect(index[i], index[j]);
      const Subspace HK = K.empty() ? Subspace(c.ambient_dim()) : spaces[*c.position(K)];
      add("independence", index[i], index[j], rel_orth_residual(spaces[i], HK, spaces[j]));
      if (i != j && index[j].is_subset_of(index[i])) {
        add("monotone", index[i], index[j], containment_residual(spaces[j], spaces[i]));
      }
    }
  }

  for (Letter l : kLetters) {
    for (const auto& [from, to] : c.shift_interval_map(l)) {
      const Subspace moved = c.shift(l, spaces[*c.position(from)]);
      const Subspace& target = spaces[*c.position(to)];
      const double r = moved.dim() == target.dim() ? equality_residual(moved, target) : 1.0;
      add("equivariance", from, to, r);
    }
  }

  // Finite stand-in for the direct limit: the window spaces exhaust H.
  const Subspace all = join(spaces, c.ambient_dim());
  report.checks.push_back({"exhaustion", "I" + std::to_string(c.window_rank()), "",
                           static_cast<double>(c.ambient_dim() - all.dim()),
                           all.dim() == c.ambient_dim()});
  return report;
}

}  // namespace freecairn
