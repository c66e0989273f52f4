#pragma once

// Finite models of an interval-indexed system of subspaces {H_I} with shift
// maps for the generators, restricted to the window of subintervals of I_N.
//
//   GradedCairn      one fresh block W_J per subinterval J, H_I = ⊕_{J ⊆ I} W_J
//   CoordinateCairn  ℓ²(I_N × {0..d-1}), H_I spanned by the coordinates over I
//
// The shifts are partial: l I is only defined when it stays inside I_N.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "freecairn/hilbert.hpp"
#include "freecairn/intervals.hpp"

namespace freecairn {

inline constexpr Eigen::Index kDefaultAmbientCap = 4096;

struct ShiftPair {
  Interval from;
  Interval to;  // l * from
};

class HilbertCairn {
 public:
  virtual ~HilbertCairn() = default;

  virtual std::string model_name() const = 0;
  int window_rank() const noexcept { return window_rank_; }
  const IntervalSystem& system() const noexcept { return *sys_; }
  Eigen::Index ambient_dim() const noexcept { return ambient_dim_; }
  // Nonempty subintervals of I_N, sorted by (rank, translate).
  const std::vector<Interval>& index() const noexcept { return index_; }
  std::optional<std::size_t> position(const Interval& I) const;
  bool in_window(const Interval& I) const;

  // H_I; H_∅ = {0}.
  virtual Subspace subspace_of(const Interval& I) const = 0;
  // Applies the partial isometry realizing l to each column.
  virtual Matrix apply_shift(Letter l, const Matrix& columns) const = 0;
  Subspace shift(Letter l, const Subspace& S) const;

  // I -> lI on the intervals where both sides lie in the window.
  std::vector<ShiftPair> shift_interval_map(Letter l) const;

 protected:
  HilbertCairn(const IntervalSystem& sys, int window_rank);

  const IntervalSystem* sys_;
  int window_rank_;
  Interval window_;
  std::vector<Interval> index_;
  std::unordered_map<IntervalKey, std::size_t, IntervalKeyHash> positions_;
  Eigen::Index ambient_dim_ = 0;
};

class GradedCairn final : public HilbertCairn {
 public:
  std::string model_name() const override { return "graded"; }

  int block_dim(std::size_t pos) const { return block_dims_.at(pos); }
  const Subspace& block(std::size_t pos) const { return blocks_.at(pos); }
  // Position in index() of every subinterval of index()[pos].
  const std::vector<std::size_t>& below(std::size_t pos) const { return below_.at(pos); }
  std::uint64_t seed() const noexcept { return seed_; }

  Subspace subspace_of(const Interval& I) const override;
  Matrix apply_shift(Letter l, const Matrix& columns) const override;

  // Copy with block W_I replaced. The shift maps are left untouched, which is
  // what negative controls rely on.
  GradedCairn with_block(const Interval& I, Subspace replacement) const;

  friend GradedCairn build_graded(const IntervalSystem&, int,
                                  const std::map<IntervalKey, int>&, std::uint64_t,
                                  Eigen::Index);

 private:
  GradedCairn(const IntervalSystem& sys, int window_rank) : HilbertCairn(sys, window_rank) {}

  std::vector<int> block_dims_;
  std::vector<Eigen::Index> offsets_;
  std::vector<std::vector<std::size_t>> below_;
  std::vector<Subspace> blocks_;
  Matrix rotation_;  // empty when seed == 0
  // Coordinate permutation per letter; -1 where the image leaves the window.
  std::array<std::vector<Eigen::Index>, 4> coordinate_shift_;
  std::uint64_t seed_ = 0;
};

// Blocks default to dimension 1; `dims` overrides per interval. seed != 0
// rotates all blocks by one Haar-random unitary. Throws ResourceError when
// the ambient dimension exceeds `max_ambient`.
GradedCairn build_graded(const IntervalSystem& sys, int window_rank,
                         const std::map<IntervalKey, int>& dims = {}, std::uint64_t seed = 0,
                         Eigen::Index max_ambient = kDefaultAmbientCap);

class CoordinateCairn final : public HilbertCairn {
 public:
  CoordinateCairn(const IntervalSystem& sys, int window_rank, int fiber_dim = 1,
                  Eigen::Index max_ambient = kDefaultAmbientCap);

  std::string model_name() const override { return "coordinate"; }
  int fiber_dim() const noexcept { return fiber_dim_; }
  const std::vector<Word>& window_words() const noexcept { return window_.elements(); }

  // Uses I ∩ I_N, so any interval is accepted.
  Subspace subspace_of(const Interval& I) const override;
  Matrix apply_shift(Letter l, const Matrix& columns) const override;

  // Number of (w, basis vector) pairs with w ≠ e, |w| <= radius, fixing the
  // basis vector. The action on the basis is free iff this is zero.
  std::size_t count_basis_fixed_points(int radius) const;

 private:
  int fiber_dim_;
  std::unordered_map<Word, Eigen::Index, WordHash> word_pos_;
};

// -----------------------------------------------------------------------------

struct CairnCheck {
  std::string kind;  // independence | monotone | equivariance | exhaustion
  std::string I;
  std::string J;
  double residual = 0.0;
  bool pass = true;
};

struct CairnReport {
  std::string model;
  int window_rank = 0;
  double tol = 0.0;
  std::vector<CairnCheck> checks;

  bool passed() const;
  std::size_t failures() const;
  double worst(const std::string& kind) const;
  std::size_t count(const std::string& kind) const;
};

// Over all ordered pairs I, J of the window index with K = I ∩ J:
//   independence  H_I ⊥_{H_K} H_J
//   monotone      H_J ⊆ H_I whenever J ⊆ I
//   equivariance  shift_l(H_I) = H_{lI} wherever the shift is defined
//   exhaustion    the H_I together span the ambient space
CairnReport verify_cairn(const HilbertCairn& c, double tol = Tolerances{}.relation);

}  // namespace freecairn
