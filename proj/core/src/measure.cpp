#include "freecairn/measure.hpp"

#include <algorithm>
#include <numeric>

#include "freecairn/errors.hpp"

namespace freecairn {

namespace {

__extension__ typedef unsigned __int128 u128;

// Marginal weights: out[pattern] = Σ weight(ω) over ω with ω & mask == pattern.
std::vector<std::uint64_t> marginal(const std::vector<std::uint64_t>& weights, std::uint32_t mask) {
  std::vector<std::uint64_t> out(weights.size(), 0);
  for (std::uint32_t w = 0; w < weights.size(); ++w) out[w & mask] += weights[w];
  return out;
}

std::uint64_t abs_diff(u128 a, u128 b) {
  const u128 d = a > b ? a - b : b - a;
  return d > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(d);
}

std::uint32_t coordinate_bit(const ProductMeasureCairn& c, const Word& w) {
  const auto& coords = c.coordinates();
  const auto it = std::lower_bound(coords.begin(), coords.end(), w);
  if (it == coords.end() || *it != w) throw ConsistencyError(to_string(w) + " is not a coordinate");
  return 1U << (it - coords.begin());
}

}  // namespace

ProductMeasureCairn::ProductMeasureCairn(const IntervalSystem& sys, int window_rank, bool)
    : sys_(&sys), window_rank_(window_rank) {
  const auto window = sys.base_interval(window_rank);
  if (window.size() > kMaxMeasureCoordinates) {
    throw ResourceError("measure cairn over I" + std::to_string(window_rank) + " has " +
                        std::to_string(window.size()) + " coordinates; at most " +
                        std::to_string(kMaxMeasureCoordinates) + " are supported");
  }
  coords_ = window.elements();
  index_ = sys.subintervals(window);
}

ProductMeasureCairn::ProductMeasureCairn(const IntervalSystem& sys, int window_rank)
    : ProductMeasureCairn(sys, window_rank, true) {
  weights_.assign(std::size_t{1} << coords_.size(), 1);
  total_ = weights_.size();
}

ProductMeasureCairn ProductMeasureCairn::with_weights(const IntervalSystem& sys, int window_rank,
                                                      std::vector<std::uint64_t> weights) {
  ProductMeasureCairn c(sys, window_rank, true);
  if (weights.size() != (std::size_t{1} << c.coords_.size())) {
    throw std::invalid_argument("with_weights: expected one weight per sample point");
  }
  c.weights_ = std::move(weights);
  c.total_ = std::accumulate(c.weights_.begin(), c.weights_.end(), std::uint64_t{0});
  if (c.total_ == 0) throw std::invalid_argument("with_weights: total weight is zero");
  return c;
}

ProductMeasureCairn build_measure_cairn(const IntervalSystem& sys, int window_rank) {
  return ProductMeasureCairn(sys, window_rank);
}

std::uint32_t ProductMeasureCairn::mask_of(const Interval& I) const {
  std::uint32_t mask = 0;
  for (const Word& w : I.elements()) {
    const auto it = std::lower_bound(coords_.begin(), coords_.end(), w);
    if (it != coords_.end() && *it == w) mask |= 1U << (it - coords_.begin());
  }
  return mask;
}

std::uint64_t ProductMeasureCairn::weight_of(std::uint32_t mask, std::uint32_t pattern) const {
  std::uint64_t total = 0;
  for (std::uint32_t w = 0; w < weights_.size(); ++w) {
    if ((w & mask) == (pattern & mask)) total += weights_[w];
  }
  return total;
}

bool MeasureReport::passed() const { return failures() == 0; }

std::size_t MeasureReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const MeasureCheck& c) { return !c.pass; }));
}

MeasureReport verify_measure_independence(const ProductMeasureCairn& c) {
  MeasureReport report{c.window_rank(), c.atom_count(), {}};
  const auto& sys = c.system();
  const auto& index = c.index();
  const auto& weights = c.weights();

  for (const Interval& I : index) {
    for (const Interval& J : index) {
      const Interval K = sys.intersect(I, J);
      const std::uint32_t mi = c.mask_of(I);
      const std::uint32_t mj = c.mask_of(J);
      const std::uint32_t mk = c.mask_of(K);
      if ((mi & mj) != mk) throw ConsistencyError("coordinate masks disagree with interval intersection");
      const std::uint32_t mu = mi | mj;
      const auto wi = marginal(weights, mi);
      const auto wj = marginal(weights, mj);
      const auto wk = marginal(weights, mk);
      const auto wu = marginal(weights, mu);

      // Only triples of atoms that agree on K can have nonzero terms; each is
      // a pattern on I ∪ J.
      MeasureCheck check{"conditional_independence", to_literal(I), to_literal(J), to_literal(K), 0, 0, true};
      for (std::uint32_t p = mu;; p = (p - 1) & mu) {
        const u128 lhs = static_cast<u128>(wu[p]) * wk[p & mk];
        const u128 rhs = static_cast<u128>(wi[p & mi]) * wj[p & mj];
        ++check.instances;
        if (lhs != rhs) {
          check.pass = false;
          check.defect = std::max(check.defect, abs_diff(lhs, rhs));
        }
        if (p == 0) break;
      }
      report.checks.push_back(std::move(check));
    }
  }

  for (Letter l : kLetters) {
    const Word step(l);
    for (const Interval& I : index) {
      const Interval image = sys.translate(step, I);
      if (!image.is_subset_of(sys.base_interval(c.window_rank()))) continue;
      // Transport patterns on I to patterns on lI coordinate by coordinate.
      std::vector<std::pair<std::uint32_t, std::uint32_t>> bits;
      for (const Word& w : I.elements()) {
        bits.emplace_back(coordinate_bit(c, w), coordinate_bit(c, step * w));
      }
      const std::uint32_t mi = c.mask_of(I);
      const std::uint32_t ml = c.mask_of(image);
      const auto wi = marginal(weights, mi);
      const auto wl = marginal(weights, ml);
      MeasureCheck check{"shift_invariance", to_literal(I), to_literal(image), "", 0, 0, true};
      for (std::uint32_t p = mi;; p = (p - 1) & mi) {
        std::uint32_t q = 0;
        for (const auto& [from, to] : bits) {
          if (p & from) q |= to;
        }
        ++check.instances;
        if (wi[p] != wl[q]) {
          check.pass = false;
          check.defect = std::max(check.defect, abs_diff(wi[p], wl[q]));
        }
        if (p == 0) break;
      }
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

}  // namespace freecairn
