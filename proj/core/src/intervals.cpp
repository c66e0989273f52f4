#include "freecairn/intervals.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <unordered_map>

#include "freecairn/errors.hpp"

namespace freecairn {

std::vector<Word> set_intersection(std::span<const Word> lhs, std::span<const Word> rhs) {
  std::vector<Word> out;
  std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(out));
  return out;
}

std::vector<Word> set_union(std::span<const Word> lhs, std::span<const Word> rhs) {
  std::vector<Word> out;
  std::set_union(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(out));
  return out;
}

std::vector<Word> left_translate(const Word& w, std::span<const Word> set) {
  std::vector<Word> out;
  out.reserve(set.size());
  for (const Word& s : set) out.push_back(w * s);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

Interval::Interval(int rank, Word translate, std::vector<Word> elements)
    : rank_(rank), translate_(std::move(translate)), elements_(std::move(elements)) {}

bool Interval::contains(const Word& w) const {
  return std::binary_search(elements_.begin(), elements_.end(), w);
}

bool Interval::is_subset_of(const Interval& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

IntervalLiteral parse_interval_literal(std::string_view text) {
  if (text == "empty" || text == "∅") return {};
  const auto star = text.rfind('*');
  std::string_view word_part = star == std::string_view::npos ? std::string_view{} : text.substr(0, star);
  std::string_view base_part = star == std::string_view::npos ? text : text.substr(star + 1);
  const std::size_t base_offset = star == std::string_view::npos ? 0 : star + 1;

  if (base_part.size() < 2 || base_part[0] != 'I') {
    throw ParseError("expected base interval 'I<n>' in \"" + std::string(text) + "\"", base_offset);
  }
  int rank = 0;
  for (std::size_t i = 1; i < base_part.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(base_part[i]))) {
      throw ParseError("expected digit in \"" + std::string(text) + "\"", base_offset + i);
    }
    rank = rank * 10 + (base_part[i] - '0');
    if (rank > 1000) throw ParseError("rank too large in \"" + std::string(text) + "\"", base_offset + i);
  }

  std::vector<Letter> letters;
  for (std::size_t i = 0; i < word_part.size(); ++i) {
    const char c = word_part[i];
    if (c == 'e' && word_part.size() == 1) break;
    if (c == '^') {
      if (word_part.substr(i, 3) != "^-1" || letters.empty()) {
        throw ParseError("expected '^-1' after a letter in \"" + std::string(text) + "\"", i);
      }
      letters.back() = inverse(letters.back());
      i += 2;
      continue;
    }
    switch (c) {
      case 'a':
        letters.push_back(Letter::a);
        break;
      case 'A':
        letters.push_back(Letter::a_inv);
        break;
      case 'b':
        letters.push_back(Letter::b);
        break;
      case 'B':
        letters.push_back(Letter::b_inv);
        break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "' in \"" +
                             std::string(text) + "\"",
                         i);
    }
  }
  return {Word(std::span<const Letter>(letters)), rank};
}

std::string to_literal(const Interval& I) {
  if (I.empty()) return "empty";
  const std::string base = "I" + std::to_string(I.rank());
  if (I.translate().is_identity()) return base;
  return to_string(I.translate()) + "*" + base;
}

// ---------------------------------------------------------------------------

IntervalSystem::IntervalSystem(int cap) : cap_(cap) {
  if (cap < 0) throw std::invalid_argument("interval rank cap must be nonnegative");
  chain_.reserve(static_cast<std::size_t>(cap) + 1);
  chain_.push_back({Word{}});
  for (int n = 0; n < cap; ++n) {
    const auto& current = chain_.back();
    chain_.push_back(set_union(current, left_translate(Word(letter_schedule(n)), current)));
  }
  for (const auto& base : chain_) {
    sizes_.push_back(base.size());
    members_.emplace_back(base.begin(), base.end());
  }

  // Setwise stabilizers, by exhausting every candidate s x^-1 with s, x in I_n.
  stabilizers_.resize(chain_.size());
  for (std::size_t n = 0; n < chain_.size(); ++n) {
    const auto& base = chain_[n];
    std::unordered_set<Word, WordHash> seen;
    for (const Word& s : base) {
      for (const Word& x : base) {
        Word u = s * inv(x);
        if (!seen.insert(u).second) continue;
        const bool fixes = std::all_of(base.begin(), base.end(),
                                       [&](const Word& y) { return members_[n].contains(u * y); });
        if (fixes) stabilizers_[n].push_back(std::move(u));
      }
    }
    std::sort(stabilizers_[n].begin(), stabilizers_[n].end());
  }

  // Sub(I_{n+1}) = Sub(I_n) ∪ l_n Sub(I_n) ∪ {I_{n+1}}.
  base_subs_.resize(chain_.size());
  base_subs_[0] = {IntervalKey{0, Word{}}};
  for (std::size_t n = 0; n + 1 < chain_.size(); ++n) {
    const Word step(letter_schedule(n));
    std::vector<IntervalKey> next = base_subs_[n];
    for (const IntervalKey& k : base_subs_[n]) {
      next.push_back({k.rank, canonical_translate(k.rank, step * k.translate)});
    }
    next.push_back({static_cast<int>(n) + 1, Word{}});
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    base_subs_[n + 1] = std::move(next);
  }
}

const IntervalSystem& IntervalSystem::standard() {
  static const IntervalSystem system(kDefaultIntervalRankCap);
  return system;
}

void IntervalSystem::check_rank(int n) const {
  if (n < 0) throw std::invalid_argument("interval rank must be nonnegative");
  if (n > cap_) {
    throw ResourceError("interval rank " + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap_));
  }
}

std::size_t IntervalSystem::base_size(int n) const {
  check_rank(n);
  return sizes_[static_cast<std::size_t>(n)];
}

Interval IntervalSystem::base_interval(int n) const {
  check_rank(n);
  return Interval(n, Word{}, chain_[static_cast<std::size_t>(n)]);
}

bool IntervalSystem::in_base(int n, const Word& w) const {
  check_rank(n);
  return members_[static_cast<std::size_t>(n)].contains(w);
}

Word IntervalSystem::canonical_translate(int rank, const Word& representative) const {
  // u I_n = w I_n iff w^-1 u is in the stabilizer of I_n.
  const auto& stab = stabilizers_[static_cast<std::size_t>(rank)];
  Word best = representative * stab.front();
  for (std::size_t i = 1; i < stab.size(); ++i) {
    Word candidate = representative * stab[i];
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

Interval IntervalSystem::translate(const Word& w, const Interval& I) const {
  if (I.empty()) return Interval{};
  check_rank(I.rank());
  return Interval(I.rank(), canonical_translate(I.rank(), w * I.translate()),
                  left_translate(w, I.elements()));
}

Interval IntervalSystem::from_key(const IntervalKey& key) const {
  if (key.rank < 0) return Interval{};
  check_rank(key.rank);
  return Interval(key.rank, key.translate,
                  left_translate(key.translate, chain_[static_cast<std::size_t>(key.rank)]));
}

Interval IntervalSystem::from_literal(const IntervalLiteral& lit) const {
  if (lit.rank < 0) return Interval{};
  return translate(lit.translate, base_interval(lit.rank));
}

std::optional<Interval> IntervalSystem::recognize(std::span<const Word> set) const {
  std::vector<Word> elements(set.begin(), set.end());
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty()) return Interval{};

  const auto it = std::find(sizes_.begin(), sizes_.end(), elements.size());
  if (it == sizes_.end()) return std::nullopt;
  const auto n = static_cast<std::size_t>(it - sizes_.begin());
  const auto& base = chain_[n];

  // Since e ∈ I_n, any u with u I_n = S lies in S; scanning S in shortlex
  // order finds the least such u first.
  const std::unordered_set<Word, WordHash> lookup(elements.begin(), elements.end());
  for (const Word& u : elements) {
    const bool match = std::all_of(base.begin(), base.end(),
                                   [&](const Word& x) { return lookup.contains(u * x); });
    if (match) return Interval(static_cast<int>(n), u, std::move(elements));
  }
  return std::nullopt;
}

Interval IntervalSystem::intersect(const Interval& I, const Interval& J) const {
  if (I.empty() || J.empty()) return Interval{};
  const auto common = set_intersection(I.elements(), J.elements());
  auto result = recognize(common);
  if (!result) {
    throw ConsistencyError("intersection of " + to_literal(I) + " and " + to_literal(J) +
                           " is not an interval");
  }
  return std::move(*result);
}

const std::vector<IntervalKey>& IntervalSystem::base_subinterval_keys(int n) const {
  check_rank(n);
  return base_subs_[static_cast<std::size_t>(n)];
}

std::vector<Interval> IntervalSystem::subintervals(const Interval& I, bool include_empty) const {
  std::vector<Interval> out;
  if (include_empty) out.emplace_back();
  if (I.empty()) return out;
  const auto& keys = base_subinterval_keys(I.rank());
  std::vector<IntervalKey> translated;
  translated.reserve(keys.size());
  for (const IntervalKey& k : keys) {
    translated.push_back({k.rank, canonical_translate(k.rank, I.translate() * k.translate)});
  }
  std::sort(translated.begin(), translated.end());
  out.reserve(out.size() + translated.size());
  for (const IntervalKey& k : translated) out.push_back(from_key(k));
  return out;
}

std::vector<Word> IntervalSystem::stabilizer(int n) const {
  check_rank(n);
  return stabilizers_[static_cast<std::size_t>(n)];
}

}  // namespace freecairn
