#include "squaretile/counts.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace squaretile {

GroupOrders group_orders(int m) {
    if (m < 2) throw Error(ErrorKind::InvalidArgument, "group orders need m >= 2");
    // |SL2(Z/m)| = m^3 prod_{p | m} (1 - 1/p^2)
    Integer sl = Integer(m) * m * m;
    int rest = m;
    for (int p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        sl = sl / (p * p) * (p * p - 1);
    }
    GroupOrders g;
    g.sl = sl;
    g.psl = m == 2 ? Integer(6) : sl / 2;
    return g;
}

const char* count_row_name(int row) {
    static const char* names[12] = {"",
                                    "degree of delta",
                                    "genus",
                                    "cusp poles",
                                    "non-cusp poles",
                                    "zeros |ST(d,0)|",
                                    "zeros of spin 0",
                                    "zeros of spin 1",
                                    "regular vertices |ST(d,1)|",
                                    "|ST(d,n)|",
                                    "|ST(d,n)| of spin 0",
                                    "|ST(d,n)| of spin 1"};
    return row >= 1 && row <= 11 ? names[row] : "?";
}

CountTable table(int d, std::optional<int> n) {
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "table needs d >= 2");
    if (n && *n < 2) throw Error(ErrorKind::InvalidArgument, "torsion rows need n >= 2");
    CountTable t;
    t.d = d;
    t.n = n;
    const Rational P = Rational(group_orders(d).psl);
    const Rational D = d;
    t.row[1] = (D - 1) / 6 * P;
    t.row[2] = (D - 6) / (12 * D) * P + 1;
    t.row[3] = P / D;
    t.row[4] = (5 * D - 6) / (12 * D) * P;
    t.row[5] = 3 * (D - 2) / (4 * D) * P;
    if (d % 2 == 1) {
        t.row[6] = 3 * (D - 3) / (8 * D) * P;
        t.row[7] = 3 * (D - 1) / (8 * D) * P;
    }
    t.row[8] = (D - 2) * (D - 3) / (3 * D) * P;
    if (n) {
        const Rational N = *n;
        const Rational SL = Rational(group_orders(*n).sl);
        t.row[9] = (D - 1) / (3 * N) * P * SL;
        if (*n % 2 == 1) {
            t.row[10] = (D - 1) / (12 * N) * P * SL;
            t.row[11] = 3 * (D - 1) / (12 * N) * P * SL;
        }
    }
    return t;
}

std::vector<std::string> identity_failures(const CountTable& t) {
    std::vector<std::string> bad;
    const auto& r = t.row;
    if (r[6] && r[7] && *r[6] + *r[7] != *r[5]) bad.push_back("row6 + row7 = row5");
    if (r[10] && r[11] && r[9] && *r[10] + *r[11] != *r[9]) bad.push_back("row10 + row11 = row9");
    const Rational g = *r[2];
    if (*r[5] - *r[3] - *r[4] != 4 * g - 4) bad.push_back("zeros - poles = 4g - 4");
    if (2 - 2 * g != 2 * *r[1] - 2 * *r[5] - *r[8]) bad.push_back("Riemann-Hurwitz");
    return bad;
}

Integer t_count(int d, int n, int eps) {
    if (n % 2 == 0) throw Error(ErrorKind::EvenTorsion, "spin is defined for odd n only");
    if (n < 3 || d < 2 || (eps != 0 && eps != 1))
        throw Error(ErrorKind::InvalidArgument, "t_count needs d >= 2, odd n > 1 and eps in {0, 1}");
    Rational v = Rational(2 * eps + 1) * Rational(d - 1) / Rational(12 * n) * Rational(group_orders(d).psl) *
                 Rational(group_orders(n).sl);
    if (denominator(v) != 1) throw Error(ErrorKind::InvalidArgument, "count is not integral");
    return numerator(v);
}

Rational reduced_total(int N) {
    if (N < 3) throw Error(ErrorKind::InvalidArgument, "reduced_total needs N >= 3");
    Rational total = Rational((N - 2) * (4 * N - 3)) / 12 * Rational(group_orders(N).psl);
    for (int d = 2; d < N; ++d) {
        if (N % d != 0) continue;
        total += Rational((d - 1) * d) / Rational(3 * N) * Rational(group_orders(d).psl) *
                 Rational(group_orders(N / d).sl);
    }
    return total;
}

Rational reduced_total_from_components(int N) {
    if (N < 3) throw Error(ErrorKind::InvalidArgument, "reduced_total needs N >= 3");
    CountTable top = table(N);
    Rational total = *top.row[5] + *top.row[8];
    for (int d = 2; d < N; ++d)
        if (N % d == 0) total += *table(d, N / d).row[9];
    return total;
}

std::string to_text(const CountTable& t) {
    std::ostringstream os;
    os << "d = " << t.d;
    if (t.n) os << ", n = " << *t.n;
    os << "\n";
    for (int i = 1; i <= 11; ++i) {
        if (!t.row[i]) continue;
        std::string name = count_row_name(i);
        os << "  " << (i < 10 ? " " : "") << i << "  " << name << std::string(name.size() < 28 ? 28 - name.size() : 1, ' ')
           << to_string(*t.row[i]) << "\n";
    }
    return os.str();
}

std::string to_json(const CountTable& t) {
    nlohmann::ordered_json j;
    j["d"] = t.d;
    j["n"] = t.n ? nlohmann::ordered_json(*t.n) : nlohmann::ordered_json();
    auto& rows = j["rows"] = nlohmann::ordered_json::object();
    for (int i = 1; i <= 11; ++i)
        if (t.row[i]) rows[std::to_string(i)] = to_string(*t.row[i]);
    return j.dump();
}

}  // namespace squaretile
