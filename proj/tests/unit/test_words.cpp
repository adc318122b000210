#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qprep/words.hpp"

using qprep::Fraction;
using qprep::Interval;
using qprep::Word;

TEST_CASE("word strings put the lowest-weight character first") {
  CHECK(Word::parse("110").index() == 3);
  CHECK(Word(3, 3).str() == "110");
  CHECK(qprep::word_of_index(5, 4).str() == "1010");
  CHECK(qprep::index_of_word(Word::parse("001")) == 4);
  CHECK(Word().length() == 0);
  CHECK(Word().str().empty());
}

TEST_CASE("parse/str round trip") {
  SECTION("exhaustive up to length 12") {
    for (int m = 1; m <= 12; ++m)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << m); ++k) {
        const Word w(m, k);
        CHECK(Word::parse(w.str()) == w);
        CHECK(qprep::word_of_index(k, m) == w);
      }
  }
  SECTION("random long words") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const int m = 13 + static_cast<int>(rng() % 8);
      const std::uint64_t k = rng() & ((std::uint64_t{1} << m) - 1);
      const Word w(m, k);
      CHECK(Word::parse(w.str()) == w);
    }
  }
}

TEST_CASE("word bits and prepending") {
  const Word w = Word::parse("110");
  CHECK(w.bit(1) == 1);
  CHECK(w.bit(2) == 1);
  CHECK(w.bit(3) == 0);
  CHECK_THROWS_AS(w.bit(0), std::out_of_range);
  CHECK_THROWS_AS(w.bit(4), std::out_of_range);

  CHECK(Word::parse("10").prepend(1) == Word::parse("110"));
  CHECK(Word::parse("10").prepend(0) == Word::parse("010"));
  CHECK(Word().prepend(1) == Word::parse("1"));
  // prepending z to a word of index k gives index 2k + z
  CHECK(Word::parse("10").prepend(1).index() == 2 * Word::parse("10").index() + 1);
}

TEST_CASE("suffixes drop leading characters") {
  CHECK(Word::parse("1010").suffix(1) == Word::parse("010"));
  CHECK(Word::parse("1010").suffix(4) == Word());
  CHECK(Word::parse("1010").suffix(0) == Word::parse("1010"));
  CHECK_THROWS_AS(Word::parse("10").suffix(3), std::out_of_range);

  CHECK(qprep::suffix_of_index(5, 1, 4) == Word::parse("010"));
  CHECK(qprep::suffix_of_index(5, 3, 4) == Word::parse("0"));
  CHECK_THROWS_AS(qprep::suffix_of_index(5, 4, 4), std::out_of_range);
  CHECK_THROWS_AS(qprep::suffix_of_index(16, 1, 4), std::out_of_range);
}

TEST_CASE("dyadic intervals") {
  CHECK(qprep::interval_of_word(Word()) == Interval{Fraction(0, 1), Fraction(1, 1)});
  CHECK(qprep::interval_of_word(Word::parse("1")) == Interval{Fraction(1, 2), Fraction(1, 1)});
  CHECK(qprep::interval_of_word(Word::parse("10")) == Interval{Fraction(1, 4), Fraction(1, 2)});
  CHECK(qprep::interval_of_word(Word::parse("00")) == Interval{Fraction(0, 1), Fraction(1, 4)});
}

TEST_CASE("fractions reduce") {
  CHECK(Fraction(2, 4) == Fraction(1, 2));
  CHECK(Fraction(0, 7) == Fraction(0, 3));
  CHECK(Fraction(6, 8).num == 3);
  CHECK(Fraction(6, 8).den == 4);
  CHECK(Fraction(1, 3).value() == Catch::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(Fraction(1, 0), std::invalid_argument);
}

TEST_CASE("word construction rejects bad input") {
  CHECK_THROWS_AS(Word(-1, 0), std::out_of_range);
  CHECK_THROWS_AS(Word(64, 0), std::out_of_range);
  CHECK_THROWS_AS(Word(3, 8), std::out_of_range);
  CHECK_THROWS_AS(Word::parse("102"), std::invalid_argument);
  CHECK_THROWS_AS(qprep::word_of_index(0, 0), std::out_of_range);
  CHECK_THROWS_AS(qprep::word_of_index(4, 2), std::out_of_range);
}
