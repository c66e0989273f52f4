#pragma once

// Reduced-word arithmetic in the free group on two generators a, b.
//
// Words serialize over the alphabet {a, A, b, B} where an uppercase letter is
// the inverse generator; the identity renders as "e". The canonical order on
// words is shortlex: shorter first, then lexicographic with a < A < b < B.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freecairn {

enum class Letter : std::uint8_t { a = 0, a_inv = 1, b = 2, b_inv = 3 };

inline constexpr std::array<Letter, 4> kLetters{Letter::a, Letter::a_inv, Letter::b,
                                                Letter::b_inv};

constexpr Letter inverse(Letter l) noexcept {
  return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1U);
}

char letter_char(Letter l) noexcept;

// a, a^-1, b, b^-1 for n = 0, 1, 2, 3 (mod 4).
constexpr Letter letter_schedule(std::size_t n) noexcept {
  return kLetters[n % 4];
}

class Word {
 public:
  Word() = default;

  // Freely reduces the given letters.
  Word(std::initializer_list<Letter> letters);
  explicit Word(std::span<const Letter> letters);
  explicit Word(Letter l) : letters_{l} {}

  static Word identity() { return Word{}; }

  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  // Prefix of the first `n` letters / suffix after the first `n` letters.
  Word prefix(std::size_t n) const;
  Word suffix_from(std::size_t n) const;

  friend bool operator==(const Word&, const Word&) = default;
  // Shortlex.
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs);

  std::size_t hash() const noexcept;

 private:
  friend Word mul(const Word& u, const Word& v);
  friend Word inv(const Word& u);
  friend Word mul(Letter l, const Word& w);

  std::vector<Letter> letters_;
};

Word mul(const Word& u, const Word& v);
Word mul(Letter l, const Word& w);
inline Word operator*(const Word& u, const Word& v) { return mul(u, v); }
inline Word operator*(Letter l, const Word& w) { return mul(l, w); }

Word inv(const Word& u);

// True iff the reduced word of `w` starts with `l`; false for e.
bool begins_with(const Word& w, Letter l) noexcept;

// Accepts "e", "" (both the identity) or a string over {a, A, b, B}. The
// result is freely reduced. Throws ParseError naming the offending position.
Word parse_word(std::string_view text);

std::string to_string(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};

// Default cap for ball(): 2 * 3^14 - 1 words.
inline constexpr int kDefaultBallRadiusCap = 14;

// All reduced words of length <= radius in shortlex order. Throws
// ResourceError if radius exceeds `cap`.
std::vector<Word> ball(int radius, int cap = kDefaultBallRadiusCap);

// Closed form for |ball(radius)|.
constexpr std::size_t ball_size(int radius) noexcept {
  std::size_t p = 1;
  for (int i = 0; i < radius; ++i) p *= 3;
  return radius == 0 ? 1 : 2 * p - 1;
}

}  // namespace freecairn

template <>
struct std::hash<freecairn::Word> {
  std::size_t operator()(const freecairn::Word& w) const noexcept { return w.hash(); }
};
