#include "squaretile/trace.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

namespace squaretile {

const char* trace_stop_name(TraceStop s) {
    switch (s) {
        case TraceStop::ReachedTarget: return "ReachedTarget";
        case TraceStop::HitSingularity: return "HitSingularity";
        case TraceStop::ExhaustedLength: return "ExhaustedLength";
    }
    return "?";
}

namespace {

using i64 = std::int64_t;

// Positions are local square coordinates scaled by M, where M = L * P * Q with L a common
// denominator of all points involved and P = max(|p|, 1), Q = max(|q|, 1). Between
// crossings the x-coordinate stays a multiple of P and the y-coordinate a multiple of Q,
// so every crossing point is exact. Lengths are counted in units of 1 / (M * P * Q).
struct Cursor {
    int s = 0;
    i64 U = 0, V = 0;
    int dx = 0, dy = 0;
};

struct LocalTarget {
    i64 U, V;  // scaled by L
    int index;
};

struct TargetIndex {
    i64 L = 1;
    std::vector<std::vector<LocalTarget>> by_square;
    std::vector<std::vector<int>> by_vertex;
};

struct Hit {
    int index;
    i64 tau;
};

struct Run {
    TraceStop stop = TraceStop::ExhaustedLength;
    Cursor end;
    int vertex = -1;
    i64 tau = 0;
    std::vector<Crossing> crossings;
    std::vector<Hit> hits;
};

int side_of(Side s) { return static_cast<int>(s); }

bool is_singular(VertexClass c) { return c != VertexClass::Regular; }

class Engine {
public:
    Engine(const Tiling& t, const TargetIndex& targets, int p, int q)
        : t_(t), targets_(targets), P_(std::max(std::abs(p), 1)), Q_(std::max(std::abs(q), 1)) {
        M_ = targets.L * P_ * Q_;
    }

    i64 M() const { return M_; }
    i64 units() const { return M_ * P_ * Q_; }

    /// Moves from c until a singular vertex, the length limit or (if stop_at_hit) a target.
    Run run(Cursor c, i64 limit, bool stop_at_hit, bool record) const {
        Run r;
        bool first = true;
        for (;;) {
            const bool at_x = c.U == 0 || c.U == M_;
            const bool at_y = c.V == 0 || c.V == M_;
            if (at_x && at_y) {
                int k = c.U == 0 ? (c.V == 0 ? 0 : 3) : (c.V == 0 ? 1 : 2);
                int v = t_.corner_vertex[c.s][k];
                if (!first) {
                    for (int idx : targets_.by_vertex[v]) {
                        r.hits.push_back({idx, r.tau});
                        if (stop_at_hit) return finish(r, c, TraceStop::ReachedTarget, v);
                    }
                    if (is_singular(t_.vertices[v].cls)) return finish(r, c, TraceStop::HitSingularity, v);
                }
            }
            first = false;
            // leave through sides we sit on while moving outwards (twice at a regular vertex)
            if (out_x(c)) cross(c, c.U == 0 ? Side::Left : Side::Right, record ? &r.crossings : nullptr);
            if (out_y(c)) cross(c, c.V == 0 ? Side::Top : Side::Bottom, record ? &r.crossings : nullptr);

            // distances to the next vertical and horizontal sides
            const i64 INF = std::numeric_limits<i64>::max();
            i64 ex = c.dx > 0 ? M_ - c.U : c.dx < 0 ? c.U : INF;
            i64 ey = c.dy > 0 ? M_ - c.V : c.dy < 0 ? c.V : INF;
            const i64 ax = std::abs(c.dx), ay = std::abs(c.dy);
            // compare ex / ax with ey / ay
            bool x_first;
            if (ex == INF)
                x_first = false;
            else if (ey == INF)
                x_first = true;
            else
                x_first = static_cast<__int128>(ex) * ay <= static_cast<__int128>(ey) * ax;
            i64 dU, dV;
            if (x_first) {
                dU = ex;
                if (dU % ax != 0) throw std::logic_error("trace: inexact crossing");
                dV = c.dy == 0 ? 0 : dU / ax * ay;
            } else {
                dV = ey;
                if (dV % ay != 0) throw std::logic_error("trace: inexact crossing");
                dU = c.dx == 0 ? 0 : dV / ay * ax;
            }
            const i64 step = c.dx != 0 ? dU * Q_ : dV * P_;
            const i64 U1 = c.U + (c.dx > 0 ? dU : -dU), V1 = c.V + (c.dy > 0 ? dV : -dV);

            for (const LocalTarget& lt : targets_.by_square[c.s]) {
                const i64 f = M_ / targets_.L;
                const i64 TU = lt.U * f, TV = lt.V * f;
                if (TU == c.U && TV == c.V) continue;
                if (TU < std::min(c.U, U1) || TU > std::max(c.U, U1)) continue;
                if (TV < std::min(c.V, V1) || TV > std::max(c.V, V1)) continue;
                if (static_cast<__int128>(TU - c.U) * c.dy != static_cast<__int128>(TV - c.V) * c.dx) continue;
                const i64 part = c.dx != 0 ? std::abs(TU - c.U) * Q_ : std::abs(TV - c.V) * P_;
                r.hits.push_back({lt.index, r.tau + part});
                if (stop_at_hit) {
                    r.tau += part;
                    c.U = TU, c.V = TV;
                    return finish(r, c, TraceStop::ReachedTarget, -1);
                }
            }
            c.U = U1, c.V = V1;
            r.tau += step;
            if (r.tau > limit) return finish(r, c, TraceStop::ExhaustedLength, -1);
        }
    }

private:
    bool out_x(const Cursor& c) const { return (c.dx > 0 && c.U == M_) || (c.dx < 0 && c.U == 0); }
    bool out_y(const Cursor& c) const { return (c.dy > 0 && c.V == M_) || (c.dy < 0 && c.V == 0); }

    void cross(Cursor& c, Side side, std::vector<Crossing>* rec) const {
        const bool horizontal = side == Side::Top || side == Side::Bottom;
        const i64 u = horizontal ? c.U : c.V;
        if (rec) rec->push_back({{c.s, side}, ratio(u, M_)});
        const Glue& g = t_.glue[c.s][side_of(side)];
        const bool flip = g.parity == Parity::Rotation;
        const i64 u2 = flip ? M_ - u : u;
        c.s = g.partner.square;
        switch (g.partner.side) {
            case Side::Top: c.U = u2, c.V = 0; break;
            case Side::Bottom: c.U = u2, c.V = M_; break;
            case Side::Left: c.U = 0, c.V = u2; break;
            case Side::Right: c.U = M_, c.V = u2; break;
        }
        if (flip) c.dx = -c.dx, c.dy = -c.dy;
    }

    Run& finish(Run& r, const Cursor& c, TraceStop stop, int vertex) const {
        r.stop = stop;
        r.end = c;
        r.vertex = vertex;
        return r;
    }

    const Tiling& t_;
    const TargetIndex& targets_;
    i64 P_, Q_, M_ = 1;
};

struct Located {
    int square;
    Rational u, v;  // local coordinates in [0, 1]
};

Located locate_point(const Tiling& t, const SurfPoint& p) {
    if (p.cyl < 0 || p.cyl >= static_cast<int>(t.cyls.size()))
        throw Error(ErrorKind::InvalidArgument, "point outside the tiling");
    const CylSpec& cs = t.cyls[p.cyl];
    if (p.y < 0 || p.y > Rational(cs.H)) throw Error(ErrorKind::InvalidArgument, "point outside its cylinder");
    Rational x = mod(p.x, Integer(cs.W));
    int col = static_cast<int>(to_i64(floor(x)));
    int row = std::min(static_cast<int>(to_i64(floor(p.y))), cs.H - 1);
    return {t.square_id(p.cyl, col, row), x - Rational(col), p.y - Rational(row)};
}

i64 common_denominator(const std::vector<SurfPoint>& pts) {
    Integer L = 1;
    for (const SurfPoint& p : pts) L = lcm(L, lcm(denominator(p.x), denominator(p.y)));
    return to_i64(L);
}

i64 scaled(const Rational& r, i64 L) {
    Rational s = r * Rational(L);
    if (denominator(s) != 1) throw std::logic_error("trace: point off the scaled grid");
    return to_i64(numerator(s));
}

TargetIndex index_targets(const Tiling& t, const std::vector<SurfPoint>& targets, i64 L) {
    TargetIndex ix;
    ix.L = L;
    ix.by_square.assign(t.squares.size(), {});
    ix.by_vertex.assign(t.vertices.size(), {});
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const int idx = static_cast<int>(i);
        int v = vertex_at(t, targets[i]);
        if (v >= 0) {
            ix.by_vertex[v].push_back(idx);
            continue;
        }
        Located loc = locate_point(t, targets[i]);
        i64 U = scaled(loc.u, L), V = scaled(loc.v, L);
        ix.by_square[loc.square].push_back({U, V, idx});
        // the same point seen from the square across the side it lies on
        auto add_across = [&](Side side, i64 u) {
            const Glue& g = t.glue[loc.square][side_of(side)];
            i64 u2 = g.parity == Parity::Rotation ? L - u : u;
            i64 U2 = 0, V2 = 0;
            switch (g.partner.side) {
                case Side::Top: U2 = u2, V2 = 0; break;
                case Side::Bottom: U2 = u2, V2 = L; break;
                case Side::Left: U2 = 0, V2 = u2; break;
                case Side::Right: U2 = L, V2 = u2; break;
            }
            ix.by_square[g.partner.square].push_back({U2, V2, idx});
        };
        if (U == 0) add_across(Side::Left, V);
        if (U == L) add_across(Side::Right, V);
        if (V == 0) add_across(Side::Top, U);
        if (V == L) add_across(Side::Bottom, U);
    }
    return ix;
}

/// Initial cursor for a trace from p in direction (p, q); sign may flip at a cusp.
Cursor start_cursor(const Tiling& t, const SurfPoint& p, int dp, int dq, i64 M) {
    int v = vertex_at(t, p);
    Cursor c;
    c.dx = dp, c.dy = dq;
    if (v < 0) {
        Located loc = locate_point(t, p);
        c.s = loc.square;
        c.U = scaled(loc.u, M);
        c.V = scaled(loc.v, M);
        return c;
    }
    VertexClass cls = t.vertices[v].cls;
    if (cls == VertexClass::Zero || cls == VertexClass::NonCuspPole)
        throw Error(ErrorKind::StartsAtSingularity, std::string("trace starts at a ") + vertex_class_name(cls));
    const CylSpec& cs = t.cyls[p.cyl];
    const int x = static_cast<int>(to_i64(mod(p.x, Integer(cs.W))));
    const int y = static_cast<int>(to_i64(p.y));
    for (int sign : {1, -1}) {
        if (sign < 0 && cls != VertexClass::CuspPole) break;
        const int dx = sign * dp, dy = sign * dq;
        for (int row : {y - 1, y})
            for (int col : {x - 1, x}) {
                if (row < 0 || row >= cs.H) continue;
                const i64 U = col == x ? 0 : M, V = row == y ? 0 : M;
                const bool in_x = U == 0 ? dx >= 0 : dx <= 0;
                const bool in_y = V == 0 ? dy >= 0 : dy <= 0;
                if (in_x && in_y) return {t.square_id(p.cyl, col, row), U, V, dx, dy};
            }
    }
    if (cls == VertexClass::CuspPole) throw std::logic_error("trace: no sector at cusp");
    // a regular vertex on the cylinder boundary, leaving the cylinder: let the run cross over
    const int row = y == 0 ? 0 : cs.H - 1;
    return {t.square_id(p.cyl, x, row), 0, y == 0 ? 0 : M, dp, dq};
}

SurfPoint point_of_cursor(const Tiling& t, const Cursor& c, i64 M) {
    const Square& sq = t.squares[c.s];
    const CylSpec& cs = t.cyls[sq.cyl];
    SurfPoint p;
    p.cyl = sq.cyl;
    p.x = mod(Rational(sq.col) + ratio(c.U, M), Integer(cs.W));
    p.y = Rational(sq.row) + ratio(c.V, M);
    p.denom = static_cast<int>(to_i64(lcm(denominator(p.x), denominator(p.y))));
    return p;
}

void check_direction(int p, int q) {
    if ((p == 0 && q == 0) || std::gcd(std::abs(p), std::abs(q)) != 1)
        throw Error(ErrorKind::InvalidArgument, "direction must be a primitive integer vector");
}

}  // namespace

TraceResult trace(const Tiling& t, const SurfPoint& start, int p, int q, const TraceOptions& opt) {
    check_direction(p, q);
    if (opt.max_length < 0) throw Error(ErrorKind::InvalidArgument, "negative length bound");
    std::vector<SurfPoint> pts{start};
    std::vector<SurfPoint> targets;
    if (opt.target) {
        pts.push_back(*opt.target);
        targets.push_back(*opt.target);
    }
    const i64 L = common_denominator(pts);
    TargetIndex ix = index_targets(t, targets, L);
    Engine eng(t, ix, p, q);
    Cursor c = start_cursor(t, start, p, q, eng.M());
    const i64 limit = to_i64(floor(opt.max_length * Rational(eng.units())));
    Run r = eng.run(c, limit, true, opt.record_crossings);

    TraceResult out;
    out.stop = r.stop;
    out.end = point_of_cursor(t, r.end, eng.M());
    out.end_vertex = r.vertex >= 0 ? r.vertex : vertex_at(t, out.end);
    out.length = ratio(r.tau, eng.units());
    out.final_dir = {r.end.dx, r.end.dy};
    out.crossings = std::move(r.crossings);
    return out;
}

std::vector<std::array<int, 2>> search_directions(int bound) {
    if (bound < 1) throw Error(ErrorKind::InvalidArgument, "direction bound must be positive");
    std::vector<std::array<int, 2>> dirs;
    for (int p = 0; p <= bound; ++p)
        for (int q = -bound; q <= bound; ++q) {
            if (p == 0 && q != 1) continue;
            if (std::gcd(p, std::abs(q)) != 1) continue;
            dirs.push_back({p, q});
        }
    std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
        int na = std::abs(a[0]) + std::abs(a[1]), nb = std::abs(b[0]) + std::abs(b[1]);
        if (na != nb) return na < nb;
        return a < b;
    });
    return dirs;
}

std::vector<int> cusp_sources(const Tiling& t) {
    std::vector<int> out;
    for (std::size_t v = 0; v < t.vertices.size(); ++v)
        if (t.vertices[v].cls == VertexClass::CuspPole) out.push_back(static_cast<int>(v));
    return out;
}

namespace {

SurfPoint vertex_point(const Tiling& t, int v) {
    const VertexRecord& r = t.vertices.at(v);
    return {r.cyl, Rational(r.x), Rational(r.y), 1};
}

}  // namespace

std::vector<std::optional<Witness>> illuminate(const Tiling& t, const std::vector<SurfPoint>& targets,
                                               const std::vector<int>& sources, int bound, int jobs) {
    std::vector<std::optional<Witness>> found(targets.size());
    if (targets.empty()) return found;
    for (int s : sources)
        if (s < 0 || s >= static_cast<int>(t.vertices.size()) || t.vertices[s].cls != VertexClass::CuspPole)
            throw Error(ErrorKind::InvalidArgument, "sources must be cusp poles");
    const i64 L = common_denominator(targets);
    const TargetIndex ix = index_targets(t, targets, L);
    const auto dirs = search_directions(bound);
    const int F = static_cast<int>(t.squares.size());
    jobs = std::max(1, jobs);

    // hits of one direction, in source order
    using DirHits = std::vector<std::vector<Hit>>;
    auto scan = [&](const std::array<int, 2>& d) {
        DirHits out(sources.size());
        Engine eng(t, ix, d[0], d[1]);
        // a ray from a singularity in a rational direction is a saddle connection, of length below 2F
        const i64 limit = (2 * F + 2) * eng.units();
        for (std::size_t i = 0; i < sources.size(); ++i) {
            Cursor c = start_cursor(t, vertex_point(t, sources[i]), d[0], d[1], eng.M());
            out[i] = eng.run(c, limit, false, false).hits;
        }
        return std::make_pair(out, eng.units());
    };

    std::size_t remaining = targets.size();
    const std::size_t batch = static_cast<std::size_t>(jobs) * 4;
    for (std::size_t lo = 0; lo < dirs.size() && remaining > 0; lo += batch) {
        const std::size_t hi = std::min(dirs.size(), lo + batch);
        std::vector<std::pair<DirHits, i64>> res(hi - lo);
        if (jobs == 1) {
            for (std::size_t k = lo; k < hi; ++k) res[k - lo] = scan(dirs[k]);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < jobs; ++w)
                pool.emplace_back([&, w] {
                    for (std::size_t k = lo + w; k < hi; k += jobs) res[k - lo] = scan(dirs[k]);
                });
            for (auto& th : pool) th.join();
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const auto& [hits, units] = res[k - lo];
            for (std::size_t i = 0; i < sources.size(); ++i)
                for (const Hit& h : hits[i]) {
                    if (found[h.index]) continue;
                    found[h.index] = Witness{sources[i], vertex_point(t, sources[i]), dirs[k][0], dirs[k][1],
                                             ratio(h.tau, units)};
                    --remaining;
                }
        }
    }
    return found;
}

std::optional<Witness> witness(const Tiling& t, const SurfPoint& target, const std::vector<int>& sources, int bound) {
    return illuminate(t, {target}, sources, bound, 1).front();
}

TraceResult replay(const Tiling& t, const Witness& w, const SurfPoint& target) {
    TraceOptions opt;
    opt.target = target;
    opt.max_length = w.length + 1;
    return trace(t, w.source, w.p, w.q, opt);
}

std::string to_json(const TraceResult& r) {
    nlohmann::ordered_json j;
    j["stop"] = trace_stop_name(r.stop);
    j["end"] = nlohmann::json::parse(to_json(r.end));
    j["end_vertex"] = r.end_vertex;
    j["length"] = to_string(r.length);
    j["final_dir"] = {r.final_dir[0], r.final_dir[1]};
    auto& cr = j["crossings"] = nlohmann::ordered_json::array();
    static const char* names[4] = {"top", "right", "bottom", "left"};
    for (const Crossing& c : r.crossings)
        cr.push_back({c.from.square, names[side_of(c.from.side)], to_string(c.u)});
    return j.dump();
}

std::string to_json(const Witness& w) {
    nlohmann::ordered_json j;
    j["source_vertex"] = w.source_vertex;
    j["source"] = nlohmann::json::parse(to_json(w.source));
    j["direction"] = {w.p, w.q};
    j["length"] = to_string(w.length);
    return j.dump();
}

}  // namespace squaretile
