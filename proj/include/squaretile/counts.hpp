#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "squaretile/exactnum.hpp"

namespace squaretile {

struct GroupOrders {
    Integer sl;   ///< |SL2(Z/m)|
    Integer psl;  ///< |PSL2(Z/m)|, 6 for m = 2
};

GroupOrders group_orders(int m);

/**
 * @brief Counts attached to the leaf of area d (rows 1-8) and its n-torsion points (rows 9-11).
 *
 * Rows: 1 degree of delta, 2 genus, 3 cusp poles, 4 non-cusp poles, 5 zeros (= |ST(d,0)|),
 * 6/7 zeros of spin 0/1 (odd d), 8 regular vertices (= |ST(d,1)|), 9 |ST(d,n)|,
 * 10/11 surfaces of spin 0/1 (odd n).
 */
struct CountTable {
    int d = 0;
    std::optional<int> n;
    std::array<std::optional<Rational>, 12> row;  ///< index 0 unused
};

const char* count_row_name(int row);

CountTable table(int d, std::optional<int> n = std::nullopt);

/** @brief Names of the internal identities that fail (empty when all hold). */
std::vector<std::string> identity_failures(const CountTable& t);

/** @brief (2 eps + 1) (d - 1) / (12 n) |PSL2(Z/d)| |SL2(Z/n)|; throws EvenTorsion for even n. */
Integer t_count(int d, int n, int eps);

/** @brief The closed formula for reduced N-square tilings of genus 2, evaluated as printed. */
Rational reduced_total(int N);
/** @brief The same total assembled from the component counts |ST(N,0)| + sum over dn = N of |ST(d,n)|. */
Rational reduced_total_from_components(int N);

std::string to_text(const CountTable& t);
std::string to_json(const CountTable& t);

}  // namespace squaretile
