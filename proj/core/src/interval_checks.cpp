#include "freecairn/interval_checks.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "freecairn/errors.hpp"

namespace freecairn {

namespace {

constexpr std::size_t kMaxFailuresPerRow = 20;

void record(CheckRow& row, bool ok, const std::string& what) {
  ++row.instances;
  if (!ok && row.failures.size() < kMaxFailuresPerRow) row.failures.push_back(what);
}

std::string describe(std::span<const Word> set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) s += ",";
    s += to_string(set[i]);
  }
  return s + "}";
}

std::string describe(const IntervalKey& k) {
  if (k.rank < 0) return "empty";
  return (k.translate.is_identity() ? std::string{} : to_string(k.translate) + "*") + "I" +
         std::to_string(k.rank);
}

StatementCheck check_prefix_suffix_closure(const IntervalSystem& sys, int max_n) {
  StatementCheck check{"prefix_suffix_closure", {}};
  for (int n = 0; n <= max_n; ++n) {
    CheckRow row{n, 0, {}};
    const auto base = sys.base_interval(n);
    for (const Word& w : base.elements()) {
      for (std::size_t k = 0; k <= w.length(); ++k) {
        const Word u = w.prefix(k);
        const Word v = w.suffix_from(k);
        record(row, sys.in_base(n, u) && sys.in_base(n, v),
               to_string(w) + " = " + to_string(u) + "*" + to_string(v));
      }
    }
    check.rows.push_back(std::move(row));
  }
  return check;
}

StatementCheck check_first_letter(const IntervalSystem& sys, int max_n) {
  StatementCheck check{"first_letter", {}};
  for (int n = 0; n <= max_n; ++n) {
    CheckRow row{n, 0, {}};
    const auto base = sys.base_interval(n);
    for (Letter l : kLetters) {
      for (const Word& x : base.elements()) {
        const Word w = l * x;
        if (sys.in_base(n, w)) continue;
        record(row, begins_with(w, l),
               to_string(w) + " in " + std::string(1, letter_char(l)) + "I" + std::to_string(n) +
                   " does not begin with " + std::string(1, letter_char(l)));
      }
    }
    check.rows.push_back(std::move(row));
  }
  return check;
}

StatementCheck check_basic_intersection(const IntervalSystem& sys, int max_n,
                                        std::vector<BasicIntersection>& out) {
  StatementCheck check{"basic_intersection", {}};
  for (int n = 0; n <= max_n; ++n) {
    CheckRow row{n, 0, {}};
    const Letter step = letter_schedule(static_cast<std::size_t>(n));
    const auto base = sys.base_interval(n);
    const auto shifted = left_translate(Word(step), base.elements());
    const auto lhs = set_intersection(base.elements(), shifted);
    const int expected_rank = n % 2 == 0 ? n - 3 : n - 1;
    std::vector<Word> rhs;
    if (expected_rank >= 0) rhs = sys.base_interval(expected_rank).elements();
    record(row, lhs == rhs,
           "I" + std::to_string(n) + " ∩ l_n I" + std::to_string(n) + " = " + describe(lhs) +
               ", expected " + describe(rhs));
    auto recognized = sys.recognize(lhs);
    out.push_back({n, step, recognized ? *recognized : Interval{}, expected_rank < 0 ? -1 : expected_rank});
    check.rows.push_back(std::move(row));
  }
  return check;
}

void check_subintervals(const IntervalSystem& sys, int max_n, int pair_cap,
                        StatementCheck& split, StatementCheck& meet, StatementCheck& agreement) {
  const int top = std::min(max_n, pair_cap);
  for (int n = 0; n <= top; ++n) {
    const auto base = sys.base_interval(n);
    const auto recursive = sys.subintervals(base);
    std::vector<IntervalKey> recursive_keys;
    for (const auto& I : recursive) recursive_keys.push_back(I.key());

    // Independent enumerations of Sub(I_n).
    CheckRow agree{n, 0, {}};
    const auto by_translates = enumerate_subintervals_by_translates(sys, n);
    record(agree, by_translates == recursive_keys,
           "recursion gives " + std::to_string(recursive_keys.size()) +
               " subintervals, translate enumeration gives " +
               std::to_string(by_translates.size()));
    if (base.size() <= kSubsetBruteForceLimit) {
      const auto by_subsets = enumerate_subintervals_by_subsets(sys, n);
      record(agree, by_subsets == recursive_keys,
             "recursion gives " + std::to_string(recursive_keys.size()) +
                 " subintervals, subset enumeration gives " + std::to_string(by_subsets.size()));
    }
    agreement.rows.push_back(std::move(agree));

    // Every proper subinterval of I_n (= I_{m+1}) lies in I_m or l_m I_m.
    if (n >= 1) {
      CheckRow row{n - 1, 0, {}};
      const auto lower = sys.base_interval(n - 1);
      const auto upper = sys.translate(Word(letter_schedule(static_cast<std::size_t>(n - 1))), lower);
      for (const IntervalKey& k : by_translates) {
        if (k.rank == n) continue;
        const auto J = sys.from_key(k);
        record(row, J.is_subset_of(lower) || J.is_subset_of(upper),
               describe(k) + " is in neither I" + std::to_string(n - 1) + " nor its l-translate");
      }
      split.rows.push_back(std::move(row));
    }

    // Pairwise intersections are intervals and stay in Sub(I_n).
    CheckRow row{n, 0, {}};
    const std::unordered_set<IntervalKey, IntervalKeyHash> known(recursive_keys.begin(),
                                                                 recursive_keys.end());
    for (std::size_t i = 0; i < recursive.size(); ++i) {
      for (std::size_t j = i; j < recursive.size(); ++j) {
        const auto common = set_intersection(recursive[i].elements(), recursive[j].elements());
        const auto r = sys.recognize(common);
        const bool ok = r && (r->empty() || known.contains(r->key()));
        record(row, ok,
               describe(recursive[i].key()) + " ∩ " + describe(recursive[j].key()) + " = " +
                   describe(common) + (r ? " (outside Sub)" : " is not an interval"));
      }
    }
    meet.rows.push_back(std::move(row));
  }
}

}  // namespace

bool StatementCheck::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.failures.empty(); });
}

std::size_t StatementCheck::instances() const {
  std::size_t total = 0;
  for (const auto& r : rows) total += r.instances;
  return total;
}

bool IntervalReport::passed() const {
  return std::all_of(statements.begin(), statements.end(),
                     [](const StatementCheck& s) { return s.passed(); });
}

const StatementCheck& IntervalReport::statement(const std::string& name) const {
  for (const auto& s : statements) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("no statement named " + name);
}

std::vector<IntervalKey> enumerate_subintervals_by_translates(const IntervalSystem& sys, int n) {
  const auto outer = sys.base_interval(n);
  std::map<std::pair<int, std::vector<Word>>, Word> found;
  for (int m = 0; m <= n; ++m) {
    const auto inner = sys.base_interval(m);
    std::unordered_set<Word, WordHash> tried;
    for (const Word& s : outer.elements()) {
      for (const Word& x : inner.elements()) {
        Word u = s * inv(x);
        if (!tried.insert(u).second) continue;
        const bool inside = std::all_of(inner.elements().begin(), inner.elements().end(),
                                        [&](const Word& y) { return sys.in_base(n, u * y); });
        if (!inside) continue;
        auto key = std::make_pair(m, left_translate(u, inner.elements()));
        auto it = found.find(key);
        if (it == found.end()) {
          found.emplace(std::move(key), std::move(u));
        } else if (u < it->second) {
          it->second = std::move(u);
        }
      }
    }
  }
  std::vector<IntervalKey> keys;
  keys.reserve(found.size());
  for (auto& [k, u] : found) keys.push_back({k.first, u});
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<IntervalKey> enumerate_subintervals_by_subsets(const IntervalSystem& sys, int n) {
  const auto outer = sys.base_interval(n);
  const auto& elems = outer.elements();
  if (elems.size() > kSubsetBruteForceLimit) {
    throw ResourceError("subset enumeration of I" + std::to_string(n) + " needs 2^" +
                        std::to_string(elems.size()) + " subsets");
  }
  std::vector<IntervalKey> keys;
  const std::uint32_t limit = 1U << elems.size();
  std::vector<Word> subset;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (mask & (1U << i)) subset.push_back(elems[i]);
    }
    if (auto r = sys.recognize(subset)) keys.push_back(r->key());
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

IntervalReport verify_interval_calculus(const IntervalSystem& sys, int max_n, int pair_cap) {
  if (max_n < 0) throw std::invalid_argument("max_n must be nonnegative");
  if (max_n > sys.cap()) {
    throw ResourceError("max_n " + std::to_string(max_n) + " exceeds interval cap " +
                        std::to_string(sys.cap()));
  }
  IntervalReport report;
  report.max_n = max_n;
  report.pair_cap = pair_cap;
  for (int n = 0; n <= max_n; ++n) report.sizes.push_back(sys.base_size(n));

  report.statements.push_back(check_prefix_suffix_closure(sys, max_n));
  report.statements.push_back(check_first_letter(sys, max_n));
  report.statements.push_back(check_basic_intersection(sys, max_n, report.intersections));

  StatementCheck split{"subinterval_split", {}};
  StatementCheck meet{"meet_closure", {}};
  StatementCheck agreement{"enumeration_agreement", {}};
  check_subintervals(sys, max_n, pair_cap, split, meet, agreement);
  report.statements.push_back(std::move(split));
  report.statements.push_back(std::move(meet));
  report.statements.push_back(std::move(agreement));
  return report;
}

}  // namespace freecairn
