#include "freecairn/freegroup.hpp"

#include <algorithm>

#include "freecairn/errors.hpp"

namespace freecairn {

namespace {

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == inverse(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

char letter_char(Letter l) noexcept {
  switch (l) {
    case Letter::a:
      return 'a';
    case Letter::a_inv:
      return 'A';
    case Letter::b:
      return 'b';
    case Letter::b_inv:
      return 'B';
  }
  return '?';
}

Word::Word(std::initializer_list<Letter> letters)
    : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) push_reduced(letters_, l);
}

Word Word::prefix(std::size_t n) const {
  Word w;
  w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n));
  return w;
}

Word Word::suffix_from(std::size_t n) const {
  Word w;
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(n), letters_.end());
  return w;
}

std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
  if (auto c = lhs.length() <=> rhs.length(); c != 0) return c;
  return std::lexicographical_compare_three_way(lhs.letters_.begin(), lhs.letters_.end(),
                                                rhs.letters_.begin(), rhs.letters_.end());
}

std::size_t Word::hash() const noexcept {
  // FNV-1a over the letter codes, seeded by length.
  std::uint64_t h = 1469598103934665603ULL ^ letters_.size();
  for (Letter l : letters_) {
    h ^= static_cast<std::uint64_t>(l) + 1;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Word mul(const Word& u, const Word& v) {
  // Cancel the longest suffix of u that is inverse to a prefix of v.
  std::size_t k = 0;
  const std::size_t max_k = std::min(u.length(), v.length());
  while (k < max_k && u.letters_[u.length() - 1 - k] == inverse(v.letters_[k])) ++k;
  Word w;
  w.letters_.reserve(u.length() + v.length() - 2 * k);
  w.letters_.insert(w.letters_.end(), u.letters_.begin(),
                    u.letters_.end() - static_cast<std::ptrdiff_t>(k));
  w.letters_.insert(w.letters_.end(), v.letters_.begin() + static_cast<std::ptrdiff_t>(k),
                    v.letters_.end());
  return w;
}

Word mul(Letter l, const Word& w) {
  Word out;
  if (!w.letters_.empty() && w.letters_.front() == inverse(l)) {
    out.letters_.assign(w.letters_.begin() + 1, w.letters_.end());
  } else {
    out.letters_.reserve(w.length() + 1);
    out.letters_.push_back(l);
    out.letters_.insert(out.letters_.end(), w.letters_.begin(), w.letters_.end());
  }
  return out;
}

Word inv(const Word& u) {
  Word w;
  w.letters_.reserve(u.length());
  for (auto it = u.letters_.rbegin(); it != u.letters_.rend(); ++it) {
    w.letters_.push_back(inverse(*it));
  }
  return w;
}

bool begins_with(const Word& w, Letter l) noexcept {
  return !w.is_identity() && w[0] == l;
}

Word parse_word(std::string_view text) {
  if (text.empty() || text == "e") return Word{};
  std::vector<Letter> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    Letter l{};
    switch (text[i]) {
      case 'a':
        l = Letter::a;
        break;
      case 'A':
        l = Letter::a_inv;
        break;
      case 'b':
        l = Letter::b;
        break;
      case 'B':
        l = Letter::b_inv;
        break;
      default:
        throw ParseError("unexpected character '" + std::string(1, text[i]) +
                             "' at position " + std::to_string(i) + " in word \"" +
                             std::string(text) + "\"",
                         i);
    }
    push_reduced(out, l);
  }
  return Word(std::span<const Letter>(out));
}

std::string to_string(const Word& w) {
  if (w.is_identity()) return "e";
  std::string s;
  s.reserve(w.length());
  for (Letter l : w.letters()) s.push_back(letter_char(l));
  return s;
}

std::vector<Word> ball(int radius, int cap) {
  if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
  if (radius > cap) {
    throw ResourceError("ball radius " + std::to_string(radius) + " exceeds cap " +
                        std::to_string(cap));
  }
  std::vector<Word> out;
  out.reserve(ball_size(radius));
  out.emplace_back();
  // Appending letters to the previous sphere in order keeps each sphere in
  // lexicographic order, hence the whole ball in shortlex order.
  std::size_t sphere_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t sphere_end = out.size();
    for (std::size_t i = sphere_begin; i < sphere_end; ++i) {
      std::vector<Letter> letters(out[i].letters().begin(), out[i].letters().end());
      for (Letter l : kLetters) {
        if (!letters.empty() && letters.back() == inverse(l)) continue;
        letters.push_back(l);
        out.emplace_back(std::span<const Letter>(letters));
        letters.pop_back();
      }
    }
    sphere_begin = sphere_end;
  }
  return out;
}

}  // namespace freecairn
