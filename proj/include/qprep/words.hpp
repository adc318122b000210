#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qprep {

/// A binary word z_1...z_m. The convention used across the whole library:
/// z_1 is the least-significant bit of the word's index,
///     index(w) = sum_r z_r * 2^(r-1),
/// so the word string "110" (z_1=1, z_2=1, z_3=0) has index 3.
class Word {
 public:
  Word() = default;  // empty word

  Word(int length, std::uint64_t index) : length_(length), index_(index) {
    if (length < 0 || length > 63)
      throw std::out_of_range("word length must be in [0, 63]");
    if (length < 63 && index >= (std::uint64_t{1} << length))
      throw std::out_of_range("word index out of range for length");
  }

  static Word parse(std::string_view text) {
    std::uint64_t index = 0;
    int r = 0;
    for (char c : text) {
      if (c != '0' && c != '1')
        throw std::invalid_argument("word characters must be '0' or '1'");
      if (c == '1') index |= std::uint64_t{1} << r;
      ++r;
    }
    return Word(r, index);
  }

  int length() const { return length_; }
  std::uint64_t index() const { return index_; }

  /// Bit z_r, 1-based.
  int bit(int r) const {
    if (r < 1 || r > length_) throw std::out_of_range("word bit out of range");
    return static_cast<int>((index_ >> (r - 1)) & 1u);
  }

  /// The word zw (new leading character z becomes z_1); its index is 2k + z.
  Word prepend(int z) const { return Word(length_ + 1, 2 * index_ + static_cast<unsigned>(z)); }

  /// Drops the first s characters, keeping z_{s+1}...z_m.
  Word suffix(int s) const {
    if (s < 0 || s > length_) throw std::out_of_range("suffix length out of range");
    return Word(length_ - s, index_ >> s);
  }

  std::string str() const {
    std::string out(static_cast<std::size_t>(length_), '0');
    for (int r = 1; r <= length_; ++r)
      if (bit(r)) out[static_cast<std::size_t>(r - 1)] = '1';
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  int length_ = 0;
  std::uint64_t index_ = 0;
};

inline Word word_of_index(std::uint64_t k, int m) {
  if (m < 1 || m > 63) throw std::out_of_range("word length must be in [1, 63]");
  if (k >= (std::uint64_t{1} << m)) throw std::out_of_range("index out of range for word length");
  return Word(m, k);
}

inline std::uint64_t index_of_word(const Word& w) { return w.index(); }

/// Exact nonnegative rational, kept in lowest terms.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Fraction() = default;
  Fraction(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct Interval {
  Fraction lo;
  Fraction hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The dyadic cell [k(w)/2^m, (k(w)+1)/2^m]; the empty word maps to [0, 1].
inline Interval interval_of_word(const Word& w) {
  const std::uint64_t den = std::uint64_t{1} << w.length();
  return Interval{Fraction(w.index(), den), Fraction(w.index() + 1, den)};
}

/// The trailing word z_{s+1}...z_n of b_n(k), equal to word_of_index(k >> s, n - s).
inline Word suffix_of_index(std::uint64_t k, int s, int n) {
  if (n < 2 || n > 63) throw std::out_of_range("word length must be in [2, 63]");
  if (k >= (std::uint64_t{1} << n)) throw std::out_of_range("index out of range for word length");
  if (s < 1 || s > n - 1) throw std::out_of_range("shift must be in [1, n-1]");
  return Word(n - s, k >> s);
}

}  // namespace qprep
