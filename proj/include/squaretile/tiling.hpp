#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "squaretile/cylinder.hpp"
#include "squaretile/exactnum.hpp"

namespace squaretile {

/**
 * @brief Sides of a tiling square. Coordinates follow the cylinder pictures:
 * x grows to the right and y grows downward, so Top is the side at the smaller y.
 */
enum class Side : std::uint8_t { Top = 0, Right = 1, Bottom = 2, Left = 3 };

enum class Parity : std::uint8_t { Translation, Rotation };

struct EdgeRef {
    int square = -1;
    Side side = Side::Top;
    bool operator==(const EdgeRef&) const = default;
};

struct Glue {
    EdgeRef partner;
    Parity parity = Parity::Translation;
    bool operator==(const Glue&) const = default;
};

enum class VertexClass : std::uint8_t { Zero, NonCuspPole, CuspPole, Regular };

const char* vertex_class_name(VertexClass c);

struct VertexRecord {
    VertexClass cls = VertexClass::Regular;
    int corner_count = 0;
    int cyl = 0, x = 0, y = 0;  ///< one position of the vertex (least in (cyl, x, y) order)
    bool operator==(const VertexRecord&) const = default;
};

struct Square {
    int cyl = 0, col = 0, row = 0;
    bool operator==(const Square&) const = default;
};

/**
 * @brief The square-tiling of the absolute period leaf of area d.
 *
 * Square corners are numbered 0 = (col,row), 1 = (col+1,row), 2 = (col+1,row+1),
 * 3 = (col,row+1). An edge point at parameter u in [0,1] (along +x for horizontal
 * sides, +y for vertical ones) is glued to the partner point at u (translation) or
 * 1-u (rotation by pi).
 */
struct Tiling {
    int d = 0;
    std::vector<CylSpec> cyls;
    std::vector<int> offset;  ///< first square id of each cylinder
    std::vector<Square> squares;
    std::vector<std::array<Glue, 4>> glue;
    std::vector<VertexRecord> vertices;
    std::vector<std::array<int, 4>> corner_vertex;

    int square_id(int cyl, int col, int row) const;
    const Glue& partner(const EdgeRef& e) const { return glue[e.square][static_cast<int>(e.side)]; }
    bool operator==(const Tiling& o) const {
        return d == o.d && cyls == o.cyls && squares == o.squares && glue == o.glue && vertices == o.vertices &&
               corner_vertex == o.corner_vertex;
    }
};

Tiling build(int d);

struct Census {
    int zeros = 0, noncusp = 0, cusps = 0, regular = 0;
    bool operator==(const Census&) const = default;
};

Census vertex_census(const Tiling& t);
int genus(const Tiling& t);

/** @brief A story: cylinder ids from the eave (first) to the lighthouse (last). */
struct Story {
    int index = 0;  ///< i of the lighthouse (1, i, 1, d - i)
    std::vector<int> cylinders;
};

/** @brief Stories of the pagoda with all structural checks; throws PagodaViolation. */
std::vector<Story> stories(const Tiling& t);

/** @brief Euler characteristic of the union of the given squares with only the gluings among them. */
int sub_complex_euler(const Tiling& t, const std::vector<int>& square_ids, int* components = nullptr);

// --- two-cylinder limits ---------------------------------------------------

struct TwoCylCoords {
    int type = 1;  ///< 1 or 2
    int W1 = 0, H1 = 0, W2 = 0, H2 = 0;
    Rational T1, T2, T3;
    bool operator==(const TwoCylCoords&) const = default;
};

enum class ZipDir { Up, Down };

/** @brief Limit of a generic point moving vertically to the top (Up) or bottom (Down) of its cylinder. */
TwoCylCoords zip(const CylCoords& c, ZipDir dir);

// --- points ------------------------------------------------------------------

/** @brief The other occurrence of a point on a cylinder boundary, if any. */
std::optional<SurfPoint> glued_occurrence(const Tiling& t, const SurfPoint& p);
/** @brief Least occurrence of p in (cyl, x, y) order. */
SurfPoint canonical_owner(const Tiling& t, const SurfPoint& p);
/** @brief Vertex id when p is a vertex of the tiling, else -1. */
int vertex_at(const Tiling& t, const SurfPoint& p);

/** @brief All primitive n-rational points, one per point, sorted. */
std::vector<SurfPoint> rational_points(const Tiling& t, int n);

/** @brief A point of the pillowcase: (a + ib)/n modulo 2Z[i] and sign, normalized. */
struct PillowPoint {
    Integer a, b;
    int denom = 1;
    bool operator==(const PillowPoint&) const = default;
};

struct DeltaImage {
    PillowPoint point;
    std::optional<int> epsilon;  ///< spin for odd n
};

/**
 * @brief Local isometries from squares to the pillowcase: the image of local
 * coordinates (u, v) is (u, v) + offset modulo (2Z)^2 and sign. Since offsets are
 * integral, -((u,v) + o) = -(u,v) + o in the pillowcase, so no sign is needed.
 */
struct DeltaChart {
    std::vector<std::array<int, 2>> offset;  ///< entries in {0, 1}
};

/** @brief Develops the tiling onto the pillowcase; throws ParityConflict on inconsistent gluings. */
DeltaChart delta_chart(const Tiling& t);
DeltaImage delta_image(const Tiling& t, const DeltaChart& chart, const SurfPoint& p);
DeltaImage delta_image(const Tiling& t, const SurfPoint& p);

// --- the graph of eave bottoms -------------------------------------------------

/**
 * @brief Saddle connections on the eave bottoms that start at zeros. Connections
 * running into a cusp pole are kept as edges with a univalent cusp end, so every
 * zero on an eave bottom has degree 3.
 */
struct TrivalentGraph {
    std::vector<int> vertices;                     ///< tiling vertex ids of the zeros on the graph
    std::vector<std::pair<int, int>> edges;        ///< pairs of tiling vertex ids
    std::vector<std::vector<EdgeRef>> edge_sides;  ///< square edges making up each graph edge
    int complement_components = 0;
    int complement_euler = 0;  ///< equals complement_components when every component is a disk

    int degree(int vertex) const;
};

TrivalentGraph trivalent_graph(const Tiling& t);

// --- conversions to and from the origami model ----------------------------------

CylCoords surfpoint_coords(const Tiling& t, const SurfPoint& p);
/** @brief Surface of a primitive n-rational point tiled at scale n (boundary points allowed). */
Origami point_fine_origami(const Tiling& t, const SurfPoint& p);
/** @brief Point of a surface tiled at scale n, as its canonical owner. */
SurfPoint point_of_fine(const Tiling& t, const Origami& fine, int n);
Origami point_to_origami(const Tiling& t, const SurfPoint& p);
SurfPoint origami_to_point(const Tiling& t, const Origami& o);
/** @brief Action of an SL2(Z) word on a point of the leaf. */
SurfPoint act_point(const Tiling& t, const SL2Word& w, const SurfPoint& p);

// --- emission ------------------------------------------------------------------

std::string tiling_to_json(const Tiling& t);
Tiling tiling_from_json(const std::string& text);
std::string tiling_to_svg(const Tiling& t);
/** @brief Writes text to path; throws IoFailure. */
void write_file(const std::string& path, const std::string& text);

std::string to_json(const SurfPoint& p);
SurfPoint surfpoint_from_json(const std::string& text);

}  // namespace squaretile
