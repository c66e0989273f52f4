#pragma once

// Bernoulli(1/2)^S product space over the coordinates S = I_N, with the
// algebra of an interval I generated by the coordinates in I ∩ S. All
// probabilities are exact: an atom of the sample space carries an integer
// weight and the total weight is a power of two.

#include <cstdint>
#include <string>
#include <vector>

#include "freecairn/intervals.hpp"

namespace freecairn {

inline constexpr std::size_t kMaxMeasureCoordinates = 12;

class ProductMeasureCairn {
 public:
  // Uniform product measure. Throws ResourceError if |I_N| exceeds
  // kMaxMeasureCoordinates.
  ProductMeasureCairn(const IntervalSystem& sys, int window_rank);

  // Arbitrary integer weights on the 2^|S| sample points (bit i of a point is
  // the value of coordinate i). Used for negative controls.
  static ProductMeasureCairn with_weights(const IntervalSystem& sys, int window_rank,
                                          std::vector<std::uint64_t> weights);

  int window_rank() const noexcept { return window_rank_; }
  const std::vector<Word>& coordinates() const noexcept { return coords_; }
  std::size_t atom_count() const noexcept { return weights_.size(); }
  std::uint64_t total_weight() const noexcept { return total_; }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  // Nonempty subintervals of I_N.
  const std::vector<Interval>& index() const noexcept { return index_; }
  const IntervalSystem& system() const noexcept { return *sys_; }

  // Bitmask of the coordinates in I ∩ S.
  std::uint32_t mask_of(const Interval& I) const;

  // Probability of the event {ω : ω restricted to `mask` equals `pattern`}
  // as numerator / total_weight().
  std::uint64_t weight_of(std::uint32_t mask, std::uint32_t pattern) const;

 private:
  ProductMeasureCairn(const IntervalSystem& sys, int window_rank, bool);

  const IntervalSystem* sys_;
  int window_rank_;
  std::vector<Word> coords_;
  std::vector<Interval> index_;
  std::vector<std::uint64_t> weights_;
  std::uint64_t total_ = 0;
};

ProductMeasureCairn build_measure_cairn(const IntervalSystem& sys, int window_rank);

struct MeasureCheck {
  std::string kind;  // conditional_independence | shift_invariance
  std::string I;
  std::string J;
  std::string K;
  std::size_t instances = 0;  // atom triples (or atoms) compared
  // Largest |P(A∩B∩C)P(C) - P(A∩C)P(B∩C)| in units of total_weight()^-2.
  std::uint64_t defect = 0;
  bool pass = true;
};

struct MeasureReport {
  int window_rank = 0;
  std::size_t atoms = 0;
  std::vector<MeasureCheck> checks;

  bool passed() const;
  std::size_t failures() const;
};

// For every ordered pair I, J in the window with K = I ∩ J and all atoms A, B,
// C of the algebras of I, J, K: P(A∩B∩C) P(C) = P(A∩C) P(B∩C), in exact
// integer arithmetic. Also checks that each l-shift carries the law of the
// I-coordinates to the law of the lI-coordinates.
MeasureReport verify_measure_independence(const ProductMeasureCairn& c);

}  // namespace freecairn
