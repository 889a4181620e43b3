#include "squaretile/exactnum.hpp"

#include <algorithm>

namespace squaretile {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::NotSublattice: return "NotSublattice";
        case ErrorKind::NotConnected: return "NotConnected";
        case ErrorKind::BadBranching: return "BadBranching";
        case ErrorKind::NotReduced: return "NotReduced";
        case ErrorKind::InvolutionNotFound: return "InvolutionNotFound";
        case ErrorKind::SpinUndefined: return "SpinUndefined";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::WrongDegree: return "WrongDegree";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::Inadmissible: return "Inadmissible";
        case ErrorKind::NonRationalTwist: return "NonRationalTwist";
        case ErrorKind::NonGeneric: return "NonGeneric";
        case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
        case ErrorKind::IntegralTwist: return "IntegralTwist";
        case ErrorKind::EaveBottom: return "EaveBottom";
        case ErrorKind::PagodaViolation: return "PagodaViolation";
        case ErrorKind::ParityConflict: return "ParityConflict";
        case ErrorKind::IoFailure: return "IoFailure";
        case ErrorKind::GcdPrecondition: return "GcdPrecondition";
        case ErrorKind::NotAnEave: return "NotAnEave";
        case ErrorKind::NotALighthouse: return "NotALighthouse";
        case ErrorKind::EvenTorsion: return "EvenTorsion";
        case ErrorKind::StartsAtSingularity: return "StartsAtSingularity";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

Integer floor(const Rational& r) {
    Integer n = numerator(r), d = denominator(r);
    Integer q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

Integer floor_div(const Integer& a, const Integer& b) {
    if (b == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
    Integer q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

Rational ratio(const Integer& a, const Integer& b) {
    if (b == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    return b < 0 ? Rational(-a, -b) : Rational(a, b);
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

std::int64_t mod64(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

Rational mod(const Rational& r, const Integer& m) {
    Rational q = r / Rational(m);
    return r - Rational(floor(q)) * Rational(m);  // m > 0 throughout the library
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

std::string to_string(const Integer& r) { return r.str(); }

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + s + "'");
        return ratio(n, d);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw Error(ErrorKind::InvalidArgument, "cannot parse rational '" + s + "'");
    }
}

std::int64_t to_i64(const Integer& x) { return x.convert_to<std::int64_t>(); }

std::int64_t to_i64(const Rational& x) {
    if (denominator(x) != 1) throw Error(ErrorKind::InvalidArgument, "not an integer: " + to_string(x));
    return to_i64(numerator(x));
}

bool Lattice2::contains(const Integer& x, const Integer& y) const {
    if (mod(y, c) != 0) return false;
    Integer k = y / c;
    return mod(x - k * b, a) == 0;
}

Lattice2 lattice_span(const std::vector<IVec2>& vectors) {
    // Column reduction to upper-triangular form: first clear the y-components
    // into a single vector by a gcd sweep, the remainder lives on the x-axis.
    Integer gx = 0;  // generator of the x-axis part
    IVec2 pivot{0, 0};
    bool have_pivot = false;
    for (const auto& v0 : vectors) {
        IVec2 v = v0;
        if (v[1] != 0) {
            if (!have_pivot) {
                pivot = v;
                have_pivot = true;
                continue;
            }
            // Euclid on the y-components of pivot and v.
            while (v[1] != 0) {
                Integer q = pivot[1] / v[1];
                IVec2 r{pivot[0] - q * v[0], pivot[1] - q * v[1]};
                pivot = v;
                v = r;
            }
            // v now lies on the x-axis.
        }
        gx = gcd(gx, v[0]);
    }
    if (!have_pivot || gx == 0) throw Error(ErrorKind::RankDeficient, "vectors do not span a rank-2 lattice");
    if (pivot[1] < 0) {
        pivot[0] = -pivot[0];
        pivot[1] = -pivot[1];
    }
    gx = boost::multiprecision::abs(gx);
    Lattice2 L;
    L.a = gx;
    L.c = pivot[1];
    L.b = mod(pivot[0], gx);
    return L;
}

bool lattice_subset(const Lattice2& sub, const Lattice2& sup) {
    return sup.contains(sub.a, 0) && sup.contains(sub.b, sub.c);
}

Integer lattice_index(const Lattice2& sub, const Lattice2& sup) {
    if (!lattice_subset(sub, sup)) throw Error(ErrorKind::NotSublattice, "first lattice is not contained in the second");
    return sub.det() / sup.det();
}

Integer torsion_order(const GaussVec& v, const Lattice2& L) {
    Integer D = lcm(denominator(v.re), denominator(v.im));
    Integer bound = D * L.det();
    for (Integer m = 1; m <= bound; ++m) {
        Rational x = v.re * Rational(m), y = v.im * Rational(m);
        if (denominator(x) == 1 && denominator(y) == 1 && L.contains(numerator(x), numerator(y))) return m;
    }
    return bound;  // unreachable: bound * v always lies in L
}

Mat2 Mat2::operator*(const Mat2& o) const {
    Mat2 r;
    r.m[0] = m[0] * o.m[0] + m[1] * o.m[2];
    r.m[1] = m[0] * o.m[1] + m[1] * o.m[3];
    r.m[2] = m[2] * o.m[0] + m[3] * o.m[2];
    r.m[3] = m[2] * o.m[1] + m[3] * o.m[3];
    return r;
}

char letter_char(Letter l) {
    switch (l) {
        case Letter::S: return 'S';
        case Letter::Sinv: return 's';
        case Letter::R: return 'R';
        case Letter::Rinv: return 'r';
    }
    return '?';
}

Mat2 letter_matrix(Letter l) {
    switch (l) {
        case Letter::S: return Mat2{{1, 1, 0, 1}};
        case Letter::Sinv: return Mat2{{1, -1, 0, 1}};
        case Letter::R: return Mat2{{0, -1, 1, 0}};
        case Letter::Rinv: return Mat2{{0, 1, -1, 0}};
    }
    return Mat2::identity();
}

SL2Word::SL2Word(std::vector<Letter> ls) : letters(std::move(ls)) {
    for (Letter l : letters) matrix = matrix * letter_matrix(l);
}

SL2Word SL2Word::parse(const std::string& s) {
    std::vector<Letter> ls;
    for (char ch : s) {
        switch (ch) {
            case 'S': ls.push_back(Letter::S); break;
            case 's': ls.push_back(Letter::Sinv); break;
            case 'R': ls.push_back(Letter::R); break;
            case 'r': ls.push_back(Letter::Rinv); break;
            case ' ': case '1': break;  // "1" spells the empty word
            default: throw Error(ErrorKind::InvalidArgument, std::string("bad letter '") + ch + "' in word");
        }
    }
    return SL2Word(std::move(ls));
}

std::string SL2Word::str() const {
    std::string s;
    for (Letter l : letters) s += letter_char(l);
    return s.empty() ? "1" : s;
}

SL2Word SL2Word::inverse() const {
    std::vector<Letter> ls;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        switch (*it) {
            case Letter::S: ls.push_back(Letter::Sinv); break;
            case Letter::Sinv: ls.push_back(Letter::S); break;
            case Letter::R: ls.push_back(Letter::Rinv); break;
            case Letter::Rinv: ls.push_back(Letter::R); break;
        }
    }
    return SL2Word(std::move(ls));
}

SL2Word SL2Word::operator*(const SL2Word& o) const {
    std::vector<Letter> ls = letters;
    ls.insert(ls.end(), o.letters.begin(), o.letters.end());
    return SL2Word(std::move(ls));
}

SL2Word word_for_matrix(const Mat2& g0) {
    if (g0.det() != 1) throw Error(ErrorKind::InvalidArgument, "matrix is not in SL2(Z)");
    std::vector<Letter> ls;
    auto push_power = [&](const Integer& k) {
        Integer n = boost::multiprecision::abs(k);
        for (Integer i = 0; i < n; ++i) ls.push_back(k > 0 ? Letter::S : Letter::Sinv);
    };
    Mat2 g = g0;
    const Mat2 Rinv = letter_matrix(Letter::Rinv);
    while (g.m[2] != 0) {
        // g = S^k * g', with the top-left entry of g' reduced modulo c.
        Integer k = floor_div(g.m[0], g.m[2]);
        push_power(k);
        Mat2 sk{{1, -k, 0, 1}};
        g = sk * g;
        ls.push_back(Letter::R);
        g = Rinv * g;
    }
    if (g.m[0] == -1) {
        ls.push_back(Letter::R);
        ls.push_back(Letter::R);
        push_power(-g.m[1]);
    } else {
        push_power(g.m[1]);
    }
    SL2Word w(std::move(ls));
    return w;
}

}  // namespace squaretile
