#pragma once

// The interval system of the free group: the base chain
//   I_0 = {e},  I_{n+1} = I_n ∪ l_n I_n,
// its left translates wI_n, and the empty set.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "freecairn/freegroup.hpp"

namespace freecairn {

inline constexpr int kDefaultIntervalRankCap = 14;

// Identifies an interval: (rank, canonical translate). rank == -1 is the
// empty interval and carries translate e.
struct IntervalKey {
  int rank = -1;
  Word translate;

  friend bool operator==(const IntervalKey&, const IntervalKey&) = default;
  friend auto operator<=>(const IntervalKey& lhs, const IntervalKey& rhs) {
    if (auto c = lhs.rank <=> rhs.rank; c != 0) return c;
    return lhs.translate <=> rhs.translate;
  }
};

struct IntervalKeyHash {
  std::size_t operator()(const IntervalKey& k) const noexcept {
    return k.translate.hash() * 31U + static_cast<std::size_t>(k.rank + 1);
  }
};

class Interval {
 public:
  // The empty interval.
  Interval() = default;
  Interval(int rank, Word translate, std::vector<Word> elements);

  bool empty() const noexcept { return rank_ < 0; }
  int rank() const noexcept { return rank_; }
  const Word& translate() const noexcept { return translate_; }
  // Sorted shortlex.
  const std::vector<Word>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  IntervalKey key() const { return {rank_, translate_}; }

  bool contains(const Word& w) const;
  bool is_subset_of(const Interval& other) const;

  friend bool operator==(const Interval& lhs, const Interval& rhs) {
    return lhs.rank_ == rhs.rank_ && lhs.translate_ == rhs.translate_;
  }
  friend auto operator<=>(const Interval& lhs, const Interval& rhs) {
    return lhs.key() <=> rhs.key();
  }

 private:
  int rank_ = -1;
  Word translate_;
  std::vector<Word> elements_;
};

// "In" or "w*In" (e.g. "b^-1*I3", "aB*I2"), or "empty". Letters in `w` may be
// followed by "^-1".
struct IntervalLiteral {
  Word translate;
  int rank = -1;
};
IntervalLiteral parse_interval_literal(std::string_view text);
std::string to_literal(const Interval& I);

// Base chain cache plus the operations of the interval calculus. Immutable
// after construction; safe for concurrent readers.
class IntervalSystem {
 public:
  explicit IntervalSystem(int cap = kDefaultIntervalRankCap);

  // Process-wide instance with the default cap.
  static const IntervalSystem& standard();

  int cap() const noexcept { return cap_; }
  std::size_t base_size(int n) const;
  std::span<const std::size_t> base_sizes() const noexcept { return sizes_; }

  Interval base_interval(int n) const;
  bool in_base(int n, const Word& w) const;

  Interval translate(const Word& w, const Interval& I) const;
  Interval from_literal(const IntervalLiteral& lit) const;
  Interval from_key(const IntervalKey& key) const;

  // Decides membership of an arbitrary finite set in the interval system.
  // Returns nullopt for sets that are not intervals.
  std::optional<Interval> recognize(std::span<const Word> set) const;

  // Throws ConsistencyError if the intersection fails to be an interval.
  Interval intersect(const Interval& I, const Interval& J) const;

  // All J ⊆ I in the interval system, sorted by (rank, translate); the
  // empty interval is listed first when requested.
  std::vector<Interval> subintervals(const Interval& I, bool include_empty = false) const;

  // All w with w I_n = I_n.
  std::vector<Word> stabilizer(int n) const;

 private:
  void check_rank(int n) const;
  const std::vector<IntervalKey>& base_subinterval_keys(int n) const;
  Word canonical_translate(int rank, const Word& representative) const;

  int cap_;
  std::vector<std::vector<Word>> chain_;
  std::vector<std::unordered_set<Word, WordHash>> members_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<Word>> stabilizers_;
  std::vector<std::vector<IntervalKey>> base_subs_;
};

// Set operations on shortlex-sorted word vectors.
std::vector<Word> set_intersection(std::span<const Word> lhs, std::span<const Word> rhs);
std::vector<Word> set_union(std::span<const Word> lhs, std::span<const Word> rhs);
std::vector<Word> left_translate(const Word& w, std::span<const Word> set);

}  // namespace freecairn
