#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "squaretile/cylinder.hpp"
#include "squaretile/origami.hpp"
#include "squaretile/tiling.hpp"

namespace squaretile {

struct OrbitOptions {
    int jobs = 1;                          ///< worker threads for frontier expansion
    std::size_t max_orbit_size = 1000000;  ///< BudgetExceeded beyond this
    int max_squares = 200;                 ///< passed to enumerate
    std::string cache_dir;                 ///< empty: no caching
};

/** @brief An orbit, members sorted; the witness word maps the first member to the last. */
template <class T>
struct Orbit {
    std::vector<T> members;
    SL2Word witness;
};

/**
 * @brief Orbits of the generators S and R on a set of canonical origamis, sorted by least member.
 * Throws InvalidArgument if the set is not closed under the action.
 */
std::vector<Orbit<Origami>> orbit_partition(const std::vector<Origami>& elements, const OrbitOptions& opt = {});

/** @brief Orbits of S and R on primitive n-rational points of a tiling, acting through the leaf. */
std::vector<Orbit<SurfPoint>> point_orbit_partition(const Tiling& t, const std::vector<SurfPoint>& points,
                                                    const OrbitOptions& opt = {});

enum class Verdict { Matches, Violates, OutOfProvenRange };

const char* verdict_name(Verdict v);

struct OrbitSummary {
    std::size_t size = 0;
    std::optional<int> spin;    ///< common spin of the members (odd n > 1)
    std::string least;          ///< JSON of the least member
    std::string witness;        ///< word from the least member to the greatest
    bool operator==(const OrbitSummary&) const = default;
};

struct OrbitReport {
    int d = 0, n = 0;
    std::size_t total = 0;
    std::vector<OrbitSummary> orbits;
    int expected_orbits = 0;
    bool in_proven_range = false;
    bool spin_consistent = true;
    std::optional<bool> covers_squares;  ///< every orbit meets every square of the tiling (checked when feasible)
    Verdict verdict = Verdict::Violates;
    bool operator==(const OrbitReport&) const = default;
};

/** @brief Orbit count predicted for ST(d, n) (n = 0 stands for H(2)). */
int expected_orbit_count(int d, int n);
bool in_proven_range(int d, int n);

/** @brief Enumerates ST(d, n), partitions it and compares with the predicted count; uses the cache if set. */
OrbitReport verify_parity(int d, int n, const OrbitOptions& opt = {});

std::string to_json(const OrbitReport& r);
OrbitReport orbit_report_from_json(const std::string& text);
/** @brief Human-readable multi-line report. */
std::string to_text(const OrbitReport& r);

constexpr int kOrbitCacheFormat = 1;

// --- unipotent and rotation formulas (prime d) ---------------------------------

/** @brief Number of orbits of the eave shear on row b/n of the eave E_k. */
Integer nu(int d, int k, int b, int n);
/** @brief The T with T*d = -1 mod k(d-k), 0 <= T < k(d-k). */
int twist_T(int d, int k);

/** @brief Index of the eave E_k = {(k,1),(d-k,1)} resp. the lighthouse L_k = (1,k,1,d-k) in t.cyls. */
int eave_index(const Tiling& t, int k);
int lighthouse_index(const Tiling& t, int k);

/** @brief (x, y) -> (x + y + T_k d, y) on an eave; equals the action of the word "s" (S^-1). */
SurfPoint eave_shift(const Tiling& t, const SurfPoint& p);
/** @brief The rotation R from the lighthouse L_k onto the eave E_k. */
SurfPoint rotate_lighthouse(const Tiling& t, const SurfPoint& p);

/** @brief Orbits of the eave shear on row b/n of E_k, found by acting through the leaf. */
int shear_orbit_count(const Tiling& t, int k, int b, int n);

}  // namespace squaretile
