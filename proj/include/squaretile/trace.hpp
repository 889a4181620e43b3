#pragma once

#include <optional>
#include <string>
#include <vector>

#include "squaretile/tiling.hpp"

namespace squaretile {

enum class TraceStop { ReachedTarget, HitSingularity, ExhaustedLength };

const char* trace_stop_name(TraceStop s);

/** @brief The segment left square `from` through one of its sides at parameter u in [0, 1]. */
struct Crossing {
    EdgeRef from;
    Rational u;
    bool operator==(const Crossing&) const = default;
};

struct TraceOptions {
    Rational max_length = 1000;          ///< bound on the parameter t of x(t) = x0 + t * (p, q)
    std::optional<SurfPoint> target;     ///< stop when this point is reached
    bool record_crossings = true;
};

/**
 * @brief A straight segment x(t) = start + t * dir in the flat metric of the tiling.
 * Lengths are values of t, so the Euclidean length is t * |dir|. The direction is
 * reversed whenever the segment crosses an edge glued by a rotation.
 */
struct TraceResult {
    TraceStop stop = TraceStop::ExhaustedLength;
    SurfPoint end;                  ///< in the frame of the last square
    int end_vertex = -1;            ///< vertex id when the segment ends at a vertex
    Rational length;
    std::array<int, 2> final_dir{};  ///< direction in the frame of the last square
    std::vector<Crossing> crossings;
};

/**
 * @brief Traces from start in direction (p, q), given in the frame of start's cylinder.
 * Regular vertices are passed straight through. Starting at a cusp pole is allowed (the
 * direction is then taken up to sign); starting at a zero or a non-cusp pole throws
 * StartsAtSingularity.
 */
TraceResult trace(const Tiling& t, const SurfPoint& start, int p, int q, const TraceOptions& opt = {});

struct Witness {
    int source_vertex = -1;
    SurfPoint source;
    int p = 0, q = 0;
    Rational length;
};

/** @brief Primitive directions up to sign with |p|, |q| <= bound, by |p| + |q|, then p, then q. */
std::vector<std::array<int, 2>> search_directions(int bound);

/** @brief Cusp poles of the tiling, as vertex ids. */
std::vector<int> cusp_sources(const Tiling& t);

/**
 * @brief For each target, the first unobstructed segment from a source in search order,
 * or nothing (Unknown) when no direction within the bound works.
 */
std::vector<std::optional<Witness>> illuminate(const Tiling& t, const std::vector<SurfPoint>& targets,
                                               const std::vector<int>& sources, int bound, int jobs = 1);

std::optional<Witness> witness(const Tiling& t, const SurfPoint& target, const std::vector<int>& sources, int bound);

/** @brief Re-traces a witness towards its target. */
TraceResult replay(const Tiling& t, const Witness& w, const SurfPoint& target);

std::string to_json(const TraceResult& r);
std::string to_json(const Witness& w);

}  // namespace squaretile
