#pragma once

#include <optional>
#include <string>
#include <vector>

#include "squaretile/exactnum.hpp"
#include "squaretile/origami.hpp"

namespace squaretile {

enum class CylKind { Lighthouse, Body, Eave, Unclassified };

const char* cyl_kind_name(CylKind k);

/** @brief A horizontal cylinder of the absolute period leaf of area d. */
struct CylSpec {
    int w1 = 0, s1 = 0, T1 = 0;
    int w2 = 0, s2 = 0, T2 = 0;
    int W = 0;  ///< circumference
    int H = 0;  ///< height
    CylKind kind = CylKind::Unclassified;
    bool operator==(const CylSpec&) const = default;
};

/** @brief Cylinder coordinates (w1, s1, w2, s2, t1, t2, t3, h) of a surface. */
struct CylCoords {
    int w1 = 0, s1 = 0, w2 = 0, s2 = 0;
    Rational t1, t2, t3, h;
    int denom = 1;
    bool operator==(const CylCoords&) const = default;
};

/** @brief A point of a cylinder in Euclidean coordinates: x in [0, W), y in [0, H]. */
struct SurfPoint {
    int cyl = 0;
    Rational x, y;
    int denom = 1;
    bool operator==(const SurfPoint&) const = default;
    bool operator<(const SurfPoint& o) const;
};

std::vector<CylSpec> cylinders(int d);
bool is_prime(int d);

/** @brief Admissibility of cylinder coordinates (positive heights are required unless allow_degenerate). */
bool admissible(const CylCoords& c, bool allow_degenerate = false);

/** @brief Swap of the two narrow cylinders, which describes the same surface. */
CylCoords swap_narrow(const CylCoords& c);

/**
 * @brief The 3-cylinder polygon of c tiled by squares of side 1/m, as an origami with
 * m^2 times the area. Zero heights are allowed and produce the limit surface.
 */
Origami polygon_origami(const CylCoords& c, int m);

/** @brief Reads cylinder coordinates from a generic surface tiled at scale m; throws NonGeneric. */
CylCoords decode_polygon(const Origami& fine, int m);

/** @brief Re-marking matrix: A*M = Z^2 and A*Z^2 = n*M, computed from the lattice nM. */
Mat2 bridge_matrix(const Lattice2& nM, int n);

Origami to_origami(const CylCoords& c);
CylCoords from_origami(const Origami& o);

/** @brief For an element of ST(d,n): its point of the period leaf, tiled at scale n. */
Origami origami_to_fine(const Origami& o, int* n_out = nullptr);
/** @brief Inverse of origami_to_fine. */
Origami fine_to_origami(const Origami& fine, int n);

// --- Euclidean coordinates (prime d and d = 2) ------------------------------

int find_cylinder(const std::vector<CylSpec>& cyls, int w1, int s1, int w2, int s2);
SurfPoint coords_to_point(const std::vector<CylSpec>& cyls, const CylCoords& c);
CylCoords point_to_coords(const std::vector<CylSpec>& cyls, const SurfPoint& p);

/**
 * @brief Locates the point of a surface tiled at scale m (m >= 2 for boundary points).
 * Boundary points are returned as one of their occurrences, not necessarily the canonical one.
 */
SurfPoint locate(const std::vector<CylSpec>& cyls, const Origami& fine, int m);

// --- JSON ------------------------------------------------------------------

std::string to_json(const CylCoords& c);
CylCoords cylcoords_from_json(const std::string& text);
std::string to_json(const CylSpec& c);

}  // namespace squaretile
