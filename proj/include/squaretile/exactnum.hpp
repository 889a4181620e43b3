#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include "squaretile/errors.hpp"

namespace squaretile {

// Expression templates are disabled so that arithmetic results are plain values
// and overload resolution stays simple.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

Integer numerator(const Rational& r);
Integer denominator(const Rational& r);
/** @brief Largest integer <= r. */
Integer floor(const Rational& r);
/** @brief floor(a / b) for b != 0 of either sign. */
Integer floor_div(const Integer& a, const Integer& b);
/** @brief a / b as a rational; b may be negative. */
Rational ratio(const Integer& a, const Integer& b);
/** @brief r mod m, in [0, m). */
Rational mod(const Rational& r, const Integer& m);
/** @brief a mod m, in [0, m). */
Integer mod(const Integer& a, const Integer& m);
std::int64_t mod64(std::int64_t a, std::int64_t m);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/** @brief "a/b" (or "a" when b = 1). */
std::string to_string(const Rational& r);
std::string to_string(const Integer& r);
/** @brief Parses "a/b" or "a". */
Rational parse_rational(const std::string& s);
std::int64_t to_i64(const Integer& x);
std::int64_t to_i64(const Rational& x);

struct GaussVec {
    Rational re;
    Rational im;
    bool operator==(const GaussVec&) const = default;
};

using IVec2 = std::array<Integer, 2>;

/** @brief Sublattice of Z^2 with basis columns (a,0) and (b,c), c > 0, a > 0, 0 <= b < a. */
struct Lattice2 {
    Integer a = 1;
    Integer b = 0;
    Integer c = 1;

    Integer det() const { return a * c; }
    bool contains(const Integer& x, const Integer& y) const;
    bool operator==(const Lattice2&) const = default;
    static Lattice2 identity() { return {}; }
};

Lattice2 lattice_span(const std::vector<IVec2>& vectors);
Integer lattice_index(const Lattice2& sub, const Lattice2& sup);
bool lattice_subset(const Lattice2& sub, const Lattice2& sup);
Integer torsion_order(const GaussVec& v, const Lattice2& L);

/** @brief 2x2 integer matrix, row-major: (m[0] m[1]; m[2] m[3]). */
struct Mat2 {
    std::array<Integer, 4> m{1, 0, 0, 1};

    Integer det() const { return m[0] * m[3] - m[1] * m[2]; }
    Mat2 operator*(const Mat2& o) const;
    bool operator==(const Mat2&) const = default;
    static Mat2 identity() { return {}; }
};

enum class Letter : std::uint8_t { S, Sinv, R, Rinv };

char letter_char(Letter l);
Mat2 letter_matrix(Letter l);

/**
 * @brief A word in S = (1 1; 0 1), R = (0 -1; 1 0) and their inverses.
 *
 * The word acts on the left: the matrix is the left-to-right product of letter
 * matrices, so the rightmost letter is applied first.
 */
struct SL2Word {
    std::vector<Letter> letters;
    Mat2 matrix;

    SL2Word() = default;
    explicit SL2Word(std::vector<Letter> ls);
    static SL2Word parse(const std::string& s);
    std::string str() const;
    SL2Word inverse() const;
    SL2Word operator*(const SL2Word& o) const;
};

/** @brief A word whose matrix equals g (det g = 1), found by the Euclidean algorithm. */
SL2Word word_for_matrix(const Mat2& g);

}  // namespace squaretile
