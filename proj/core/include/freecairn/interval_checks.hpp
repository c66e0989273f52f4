#pragma once

// Exhaustive checks of the combinatorial facts the interval calculus rests on:
//
//   prefix_suffix_closure  w ∈ I_n and w = u*v reduced  =>  u, v ∈ I_n
//   first_letter           w ∈ l I_n \ I_n  =>  w begins with l
//   basic_intersection     I_n ∩ l_n I_n = I_{n-3} (n even), I_{n-1} (n odd),
//                          with I_{-3} = I_{-1} = ∅
//   subinterval_split      every proper subinterval of I_{n+1} lies in I_n or
//                          in l_n I_n
//   meet_closure           subintervals of I_n are closed under ∩
//   enumeration_agreement  recursive subinterval enumeration equals the
//                          independent enumerations (translates, subsets)

#include <string>
#include <vector>

#include "freecairn/intervals.hpp"

namespace freecairn {

struct CheckRow {
  int n = 0;
  std::size_t instances = 0;
  std::vector<std::string> failures;
};

struct StatementCheck {
  std::string name;
  std::vector<CheckRow> rows;

  bool passed() const;
  std::size_t instances() const;
};

struct BasicIntersection {
  int n = 0;
  Letter step{};
  Interval result;    // recognized I_n ∩ l_n I_n
  int expected_rank;  // n-3, n-1 or -1
};

struct IntervalReport {
  int max_n = 0;
  int pair_cap = 0;
  std::vector<std::size_t> sizes;
  std::vector<StatementCheck> statements;
  std::vector<BasicIntersection> intersections;

  bool passed() const;
  const StatementCheck& statement(const std::string& name) const;
};

inline constexpr int kDefaultPairCap = 10;
// Subset brute force is run while |I_{n+1}| stays at or below this.
inline constexpr std::size_t kSubsetBruteForceLimit = 16;

// Subinterval and meet-closure checks run for n <= min(max_n, pair_cap).
IntervalReport verify_interval_calculus(const IntervalSystem& sys, int max_n,
                                        int pair_cap = kDefaultPairCap);

// All nonempty subintervals of I_n, found by testing every u I_m (m <= n)
// with u ranging over {s x^-1 : s ∈ I_n, x ∈ I_m}. Independent of the
// recursion used by IntervalSystem::subintervals.
std::vector<IntervalKey> enumerate_subintervals_by_translates(const IntervalSystem& sys, int n);

// All nonempty subintervals of I_n, found by recognizing every nonempty
// subset. Exponential; throws ResourceError past kSubsetBruteForceLimit.
std::vector<IntervalKey> enumerate_subintervals_by_subsets(const IntervalSystem& sys, int n);

}  // namespace freecairn
