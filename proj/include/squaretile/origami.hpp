#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "squaretile/exactnum.hpp"

namespace squaretile {

using Perm = std::vector<int>;

/**
 * @brief A square-tiled surface given by two permutations of its squares.
 *
 * h(i) is the square to the right of square i, v(i) the square above it
 * (mathematical orientation, y pointing up).
 */
struct Origami {
    Perm h;
    Perm v;

    int n_squares() const { return static_cast<int>(h.size()); }
    bool operator==(const Origami&) const = default;
    bool operator<(const Origami& o) const {
        return h != o.h ? h < o.h : v < o.v;
    }
};

struct OrigamiHash {
    std::size_t operator()(const Origami& o) const;
};

enum class Stratum { H11, H2 };

struct TypeSig {
    int degree = 0;
    int torsion = 0;  ///< n; 0 encodes the stratum H(2)
    Stratum stratum = Stratum::H11;
    bool reduced = false;
    bool primitive = false;
    bool operator==(const TypeSig&) const = default;
};

struct SpinValue {
    int epsilon = 0;
    int iwp = 0;
};

/** @brief One fixed point of the hyperelliptic involution, in doubled coordinates of the developed plane. */
struct FixedPoint {
    std::array<std::int64_t, 2> twice_pos;
    enum class Kind { SquareCenter, VerticalEdge, HorizontalEdge, Vertex } kind;
    int square;  ///< a square adjacent to the point
};

struct WeierstrassData {
    std::vector<FixedPoint> points;     ///< always 6
    std::array<int, 4> profile{};       ///< distinguished 2-torsion fiber first
    std::vector<int> involution;        ///< square permutation of the involution
    bool swaps_zeros = false;
};

// --- permutation helpers -------------------------------------------------

Perm perm_inverse(const Perm& p);
Perm perm_compose(const Perm& outer, const Perm& inner);  ///< outer o inner
std::vector<std::vector<int>> perm_cycles(const Perm& p);
bool is_transitive(const Origami& o);
/** @brief Corner-walk permutation: cycles are vertices, a k-cycle is a cone angle 2*pi*k. */
Perm commutator(const Origami& o);
/** @brief Vertex id of the lower-left corner of each square. */
std::vector<int> vertex_of_square(const Origami& o, int* n_vertices = nullptr);
/** @brief Sorted list of cycle lengths > 1 of the commutator. */
std::vector<int> branching_profile(const Origami& o);

/** @brief Developed position of each square's lower-left corner (BFS tree). */
std::vector<std::array<std::int64_t, 2>> develop(const Origami& o);

// --- invariants ----------------------------------------------------------

Lattice2 period_lattice(const Origami& o);
Lattice2 relative_period_lattice(const Origami& o);
TypeSig classify(const Origami& o);  ///< like validate but never throws NotReduced
TypeSig validate(const Origami& o);

Origami canonical(const Origami& o);

// --- SL2(Z) and GL2+ actions ---------------------------------------------

Origami act_letter(Letter l, const Origami& o);  ///< not canonicalized
Origami act_raw(const SL2Word& w, const Origami& o);
Origami act(const SL2Word& w, const Origami& o);

/** @brief Applies an integer matrix with positive determinant m (result has m*N squares). */
Origami apply_matrix(const Mat2& B, const Origami& o);
Origami scale(const Origami& o, int m);
/**
 * @brief Inverse of scale: groups m x m blocks. Requires every cone point to sit at a
 * developed position divisible by m and the periods to lie in mZ^2.
 */
std::optional<Origami> downscale(const Origami& o, int m);

/** @brief Reflection in a horizontal line: (h, v) -> (h, v^-1). */
Origami reflect(const Origami& o);

// --- deformation by moving one zero ----------------------------------------

enum class PushDir { Right, Up, Left, Down };

struct PushResult {
    Origami origami;
    bool merged = false;   ///< the moved zero landed on the other cone point
    int moved_vertex_square = -1;  ///< a square whose lower-left corner is the moved zero afterwards
};

/**
 * @brief Moves the cone point at the lower-left corner of square s by one unit.
 * The cone point must have angle 4*pi.
 */
PushResult push_zero(const Origami& o, int s, PushDir dir);

// --- genus-2 structure ---------------------------------------------------

WeierstrassData weierstrass(const Origami& o);
SpinValue spin(const Origami& o);
/** @brief IWP for any torsion (0 forced for even n); does not throw. */
int integer_weierstrass_count(const Origami& o);

// --- enumeration and the Klein quotient ------------------------------------

struct EnumerateOptions {
    int max_squares = 200;
};

std::vector<Origami> enumerate(int d, int n, const EnumerateOptions& opt = {});

Origami klein_project(const Origami& o);

// --- serialization -------------------------------------------------------

std::string to_json(const Origami& o);
Origami origami_from_json(const std::string& text);

}  // namespace squaretile
