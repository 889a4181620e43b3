#include "squaretile/tiling.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace squaretile {

const char* vertex_class_name(VertexClass c) {
    switch (c) {
        case VertexClass::Zero: return "zero";
        case VertexClass::NonCuspPole: return "nonCuspPole";
        case VertexClass::CuspPole: return "cuspPole";
        case VertexClass::Regular: return "regular";
    }
    return "?";
}

int Tiling::square_id(int cyl, int col, int row) const {
    const CylSpec& c = cyls.at(cyl);
    return offset[cyl] + row * c.W + static_cast<int>(mod64(col, c.W));
}

namespace {

constexpr int side_index(Side s) { return static_cast<int>(s); }

// Corner numbers at parameter u = 0 and u = 1 of each side.
constexpr int kEndpoints[4][2] = {{0, 1}, {1, 2}, {3, 2}, {0, 3}};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

bool is_lighthouse(const CylSpec& c) { return c.w1 == 1 && c.w2 == 1; }
bool has_eave_bottom(const CylSpec& c) { return c.s1 == c.s2; }

class Builder {
public:
    explicit Builder(Tiling& t) : t_(t) {
        t_.glue.assign(t_.squares.size(), {});
        set_.assign(t_.squares.size(), {0, 0, 0, 0});
    }

    void join(EdgeRef a, EdgeRef b, Parity p) {
        if (a == b) throw Error(ErrorKind::PagodaViolation, "an edge cannot be glued to itself");
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
            char& flag = set_[x.square][side_index(x.side)];
            Glue g{y, p};
            if (flag && t_.glue[x.square][side_index(x.side)] != g)
                throw Error(ErrorKind::PagodaViolation, "conflicting gluings for square " + std::to_string(x.square));
            flag = 1;
            t_.glue[x.square][side_index(x.side)] = g;
        }
    }

    void check_complete() const {
        for (std::size_t s = 0; s < set_.size(); ++s)
            for (int k = 0; k < 4; ++k)
                if (!set_[s][k])
                    throw Error(ErrorKind::PagodaViolation, "square " + std::to_string(s) + " has an unglued side");
    }

private:
    Tiling& t_;
    std::vector<std::array<char, 4>> set_;
};

// Where the zero-to-zero edge [j, j+1] on the bottom of a non-eave cylinder goes.
std::pair<int, int> within_story_target(const Tiling& t, int cyl, int j) {
    const CylSpec& c = t.cyls[cyl];
    int w1 = c.w1, s1 = c.s1, w2 = c.w2, s2 = c.s2;
    if (s1 < s2) {
        std::swap(w1, w2);
        std::swap(s1, s2);
    }
    int q = j / w2, r = j % w2;
    int target = find_cylinder(t.cyls, w1, s1 - s2, w1 + w2, s2);
    return {target, q * (2 * w1 + w2) + w1 + r};
}

// Partner column of the eave-bottom edge [j, j+1], computed at its midpoint.
std::pair<int, int> between_story_target(const Tiling& t, int cyl, int j) {
    const CylSpec& c = t.cyls[cyl];
    int w1 = std::min(c.w1, c.w2), w2 = std::max(c.w1, c.w2);
    const int d = t.d;
    Rational x = Rational(j) + ratio(1, 2);
    Rational t1 = mod(x, Integer(w1)), t2 = mod(x, Integer(w2)), t3 = mod(x, Integer(w1 + w2));
    Rational w1n = Rational(w1) - t1 + t2, w2n = Rational(w2) + t1 - t2;
    CylCoords nc;
    nc.w1 = static_cast<int>(to_i64(w1n));
    nc.w2 = static_cast<int>(to_i64(w2n));
    nc.s1 = nc.s2 = 1;
    nc.t1 = mod(Rational(w1) - t1, Integer(nc.w1));
    nc.t2 = mod(Rational(w2) - t2, Integer(nc.w2));
    nc.t3 = mod(t3 - t1 - t2, Integer(d));
    nc.h = 1;
    SurfPoint p = coords_to_point(t.cyls, nc);
    return {p.cyl, static_cast<int>(to_i64(floor(p.x)))};
}

}  // namespace

Tiling build(int d) {
    if (d != 2 && !is_prime(d))
        throw Error(ErrorKind::UnsupportedDegree, "tilings are built for d = 2 and prime d only");
    Tiling t;
    t.d = d;
    t.cyls = cylinders(d);
    for (std::size_t c = 0; c < t.cyls.size(); ++c) {
        t.offset.push_back(static_cast<int>(t.squares.size()));
        const CylSpec& cs = t.cyls[c];
        for (int row = 0; row < cs.H; ++row)
            for (int col = 0; col < cs.W; ++col) t.squares.push_back({static_cast<int>(c), col, row});
    }
    Builder b(t);
    for (std::size_t ci = 0; ci < t.cyls.size(); ++ci) {
        const int c = static_cast<int>(ci);
        const CylSpec& cs = t.cyls[ci];
        for (int row = 0; row < cs.H; ++row)
            for (int col = 0; col < cs.W; ++col) {
                int s = t.square_id(c, col, row);
                b.join({s, Side::Right}, {t.square_id(c, col + 1, row), Side::Left}, Parity::Translation);
                if (row + 1 < cs.H)
                    b.join({s, Side::Bottom}, {t.square_id(c, col, row + 1), Side::Top}, Parity::Translation);
            }
        // Top boundary: folds next to the poles.
        if (is_lighthouse(cs)) {
            b.join({t.square_id(c, 0, 0), Side::Top}, {t.square_id(c, 1, 0), Side::Top}, Parity::Rotation);
        } else {
            const int p = cs.w1 + cs.w2, a = std::min(cs.w1, cs.w2), bb = std::max(cs.w1, cs.w2);
            for (int j = 0; j < cs.W; ++j) {
                int u = j % p, pole;
                if (u < a) pole = j - u;
                else if (u >= bb) pole = j - u + p;
                else continue;
                b.join({t.square_id(c, j, 0), Side::Top}, {t.square_id(c, 2 * pole - j - 1, 0), Side::Top},
                       Parity::Rotation);
            }
        }
        // Bottom boundary.
        for (int j = 0; j < cs.W; ++j) {
            EdgeRef e{t.square_id(c, j, cs.H - 1), Side::Bottom};
            if (has_eave_bottom(cs)) {
                auto [oc, ox] = between_story_target(t, c, j);
                b.join(e, {t.square_id(oc, ox, t.cyls[oc].H - 1), Side::Bottom}, Parity::Rotation);
            } else {
                auto [oc, ox] = within_story_target(t, c, j);
                if (ox >= t.cyls[oc].W) throw Error(ErrorKind::PagodaViolation, "within-story gluing out of range");
                b.join(e, {t.square_id(oc, ox, 0), Side::Top}, Parity::Translation);
            }
        }
    }
    b.check_complete();

    // Vertices: classes of square corners.
    const int F = static_cast<int>(t.squares.size());
    UnionFind uf(4 * F);
    for (int s = 0; s < F; ++s)
        for (int k = 0; k < 4; ++k) {
            const Glue& g = t.glue[s][k];
            const int os = g.partner.square, ok = side_index(g.partner.side);
            for (int u = 0; u < 2; ++u) {
                int ou = g.parity == Parity::Translation ? u : 1 - u;
                uf.unite(4 * s + kEndpoints[k][u], 4 * os + kEndpoints[ok][ou]);
            }
        }
    std::map<int, int> id_of_root;
    std::vector<std::vector<std::array<int, 3>>> occurrences;
    t.corner_vertex.assign(F, {});
    for (int s = 0; s < F; ++s)
        for (int k = 0; k < 4; ++k) {
            int r = uf.find(4 * s + k);
            auto [it, fresh] = id_of_root.emplace(r, static_cast<int>(occurrences.size()));
            if (fresh) occurrences.emplace_back();
            t.corner_vertex[s][k] = it->second;
            const Square& sq = t.squares[s];
            const CylSpec& cs = t.cyls[sq.cyl];
            int x = static_cast<int>(mod64(sq.col + (k == 1 || k == 2 ? 1 : 0), cs.W));
            int y = sq.row + (k >= 2 ? 1 : 0);
            occurrences[it->second].push_back({sq.cyl, x, y});
        }
    for (auto& occ : occurrences) {
        std::sort(occ.begin(), occ.end());
        VertexRecord v;
        v.corner_count = static_cast<int>(occ.size());
        v.cyl = occ[0][0];
        v.x = occ[0][1];
        v.y = occ[0][2];
        switch (v.corner_count) {
            case 6: v.cls = VertexClass::Zero; break;
            case 4: v.cls = VertexClass::Regular; break;
            case 2: {
                bool cusp = false, noncusp = false;
                for (auto [c, x, y] : occ) {
                    const CylSpec& cs = t.cyls[c];
                    if (y == 0 && is_lighthouse(cs)) (x == 1 ? cusp : noncusp) = true;
                    if (y == 0 && !is_lighthouse(cs) && x % (cs.w1 + cs.w2) == 0) noncusp = true;
                    if (y == cs.H && has_eave_bottom(cs) && x % (cs.w1 * cs.w2) == 0) cusp = true;
                }
                if (cusp == noncusp) throw Error(ErrorKind::PagodaViolation, "cannot classify a pole");
                v.cls = cusp ? VertexClass::CuspPole : VertexClass::NonCuspPole;
                break;
            }
            default:
                throw Error(ErrorKind::PagodaViolation,
                            "vertex with " + std::to_string(v.corner_count) + " corners");
        }
        t.vertices.push_back(v);
    }
    return t;
}

Census vertex_census(const Tiling& t) {
    Census c;
    for (const auto& v : t.vertices) {
        switch (v.cls) {
            case VertexClass::Zero: ++c.zeros; break;
            case VertexClass::NonCuspPole: ++c.noncusp; break;
            case VertexClass::CuspPole: ++c.cusps; break;
            case VertexClass::Regular: ++c.regular; break;
        }
    }
    return c;
}

int genus(const Tiling& t) {
    // Every edge borders two square sides, so E = 2F and chi = V - F.
    int chi = static_cast<int>(t.vertices.size()) - static_cast<int>(t.squares.size());
    return (2 - chi) / 2;
}

// --- sub-complexes -------------------------------------------------------------

namespace {

struct EdgeKey {
    int square;
    int side;
    bool operator<(const EdgeKey& o) const { return std::tie(square, side) < std::tie(o.square, o.side); }
};

int euler_of(const Tiling& t, const std::vector<int>& ids, const std::set<EdgeKey>& cut, int* components) {
    std::map<int, int> local;
    for (int s : ids) local.emplace(s, static_cast<int>(local.size()));
    const int F = static_cast<int>(local.size());
    UnionFind corners(4 * F), faces(F);
    int sides_single = 0, sides_paired = 0;
    for (auto [s, ls] : local)
        for (int k = 0; k < 4; ++k) {
            const Glue& g = t.glue[s][k];
            auto it = local.find(g.partner.square);
            bool joined = it != local.end() && !cut.count({s, k});
            if (!joined) {
                ++sides_single;
                continue;
            }
            ++sides_paired;
            faces.unite(ls, it->second);
            const int ok = side_index(g.partner.side);
            for (int u = 0; u < 2; ++u) {
                int ou = g.parity == Parity::Translation ? u : 1 - u;
                corners.unite(4 * ls + kEndpoints[k][u], 4 * it->second + kEndpoints[ok][ou]);
            }
        }
    std::set<int> vroots, froots;
    for (int i = 0; i < 4 * F; ++i) vroots.insert(corners.find(i));
    for (int i = 0; i < F; ++i) froots.insert(faces.find(i));
    if (components) *components = static_cast<int>(froots.size());
    const int E = sides_single + sides_paired / 2;
    return static_cast<int>(vroots.size()) - E + F;
}

// Bottom sides of eave cylinders making up saddle connections that start at a zero
// (ending at a zero or at a cusp pole), grouped by connection; the two glued copies
// of a connection are merged.
struct EaveSegments {
    std::vector<std::pair<int, int>> ends;
    std::vector<std::vector<EdgeRef>> sides;
};

EaveSegments eave_zero_segments(const Tiling& t) {
    EaveSegments out;
    std::set<EdgeKey> taken;
    for (std::size_t ci = 0; ci < t.cyls.size(); ++ci) {
        const CylSpec& cs = t.cyls[ci];
        if (!has_eave_bottom(cs)) continue;
        const int c = static_cast<int>(ci), W = cs.W, row = cs.H - 1;
        auto vertex_at_x = [&](int x) { return t.corner_vertex[t.square_id(c, x, row)][3]; };
        auto singular = [&](int x) { return t.vertices[vertex_at_x(x)].cls != VertexClass::Regular; };
        int start = -1;
        for (int x = 0; x < W; ++x)
            if (singular(x)) {
                start = x;
                break;
            }
        if (start < 0) continue;
        for (int i = 0; i < W;) {
            int x0 = (start + i) % W;
            int len = 1;
            while (!singular((x0 + len) % W)) ++len;
            int va = vertex_at_x(x0), vb = vertex_at_x((x0 + len) % W);
            if (t.vertices[va].cls == VertexClass::Zero || t.vertices[vb].cls == VertexClass::Zero) {
                std::vector<EdgeRef> sides;
                for (int j = 0; j < len; ++j) sides.push_back({t.square_id(c, x0 + j, row), Side::Bottom});
                if (!taken.count({sides[0].square, side_index(Side::Bottom)})) {
                    std::vector<EdgeRef> all = sides;
                    for (const EdgeRef& e : sides) {
                        const EdgeRef& p = t.partner(e).partner;
                        all.push_back(p);
                    }
                    for (const EdgeRef& e : all) taken.insert({e.square, side_index(e.side)});
                    out.ends.push_back({std::min(va, vb), std::max(va, vb)});
                    out.sides.push_back(all);
                }
            }
            i += len;
        }
    }
    return out;
}

std::set<EdgeKey> cut_of(const Tiling& t, const EaveSegments& segs) {
    std::set<EdgeKey> cut;
    for (const auto& group : segs.sides)
        for (const EdgeRef& e : group) {
            cut.insert({e.square, side_index(e.side)});
            const EdgeRef& p = t.partner(e).partner;
            cut.insert({p.square, side_index(p.side)});
        }
    return cut;
}

}  // namespace

int sub_complex_euler(const Tiling& t, const std::vector<int>& square_ids, int* components) {
    return euler_of(t, square_ids, {}, components);
}

int TrivalentGraph::degree(int vertex) const {
    int deg = 0;
    for (auto [a, b] : edges) deg += (a == vertex) + (b == vertex);
    return deg;
}

TrivalentGraph trivalent_graph(const Tiling& t) {
    TrivalentGraph g;
    EaveSegments segs = eave_zero_segments(t);
    g.edges = segs.ends;
    g.edge_sides = segs.sides;
    std::set<int> zeros;
    for (auto [a, b] : g.edges)
        for (int v : {a, b})
            if (t.vertices[v].cls == VertexClass::Zero) zeros.insert(v);
    g.vertices.assign(zeros.begin(), zeros.end());
    std::vector<int> all(t.squares.size());
    std::iota(all.begin(), all.end(), 0);
    g.complement_euler = euler_of(t, all, cut_of(t, segs), &g.complement_components);
    return g;
}

std::vector<Story> stories(const Tiling& t) {
    const int nc = static_cast<int>(t.cyls.size());
    std::vector<Story> out;
    if (t.d == 2) return out;  // the single cylinder is its own eave and lighthouse
    auto violation = [](int prop, const std::string& what) {
        return Error(ErrorKind::PagodaViolation, "property " + std::to_string(prop) + ": " + what);
    };
    // Cylinders joined by translations between a bottom and a top.
    UnionFind uf(nc);
    for (std::size_t s = 0; s < t.squares.size(); ++s) {
        const Glue& g = t.glue[s][side_index(Side::Bottom)];
        if (g.parity == Parity::Translation) uf.unite(t.squares[s].cyl, t.squares[g.partner.square].cyl);
    }
    std::map<int, std::vector<int>> groups;
    for (int c = 0; c < nc; ++c) groups[uf.find(c)].push_back(c);
    const std::set<EdgeKey> cut = cut_of(t, eave_zero_segments(t));

    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            if (t.cyls[a].W != t.cyls[b].W) return t.cyls[a].W > t.cyls[b].W;
            return a < b;
        });
        Story st;
        st.cylinders = members;
        const int m = static_cast<int>(members.size());
        for (int i = 0; i + 1 < m; ++i) {
            const CylSpec &lo = t.cyls[members[i]], &up = t.cyls[members[i + 1]];
            if (!(lo.W > up.W)) throw violation(2, "circumferences must strictly decrease upward");
            if (!(lo.H <= up.H)) throw violation(3, "heights must not decrease upward");
            // Euclid step from the upper cylinder to the lower one.
            int w1 = up.w1, s1 = up.s1, w2 = up.w2, s2 = up.s2;
            if (s1 > s2) {
                std::swap(w1, w2);
                std::swap(s1, s2);
            }
            auto expect = std::minmax(std::pair{w1 + w2, s1}, std::pair{w2, s2 - s1});
            auto have = std::minmax(std::pair{lo.w1, lo.s1}, std::pair{lo.w2, lo.s2});
            if (expect != have) throw violation(5, "consecutive cylinders violate the Euclid recurrence");
        }
        const CylSpec& first = t.cyls[members.front()];
        const CylSpec& last = t.cyls[members.back()];
        if (!has_eave_bottom(first)) throw violation(4, "a story must start at an eave");
        if (!is_lighthouse(last)) throw violation(4, "a story must end at a lighthouse");
        for (int i = 1; i + 1 < m; ++i)
            if (is_lighthouse(t.cyls[members[i]]) || has_eave_bottom(t.cyls[members[i]]))
                throw violation(4, "inner cylinders must be body cylinders");
        st.index = std::min(last.s1, last.s2);
        // Adjacency: bottoms go to the next wider cylinder, tops fold or receive from the next narrower one.
        std::vector<int> ids;
        for (int i = 0; i < m; ++i) {
            const int c = members[i];
            const CylSpec& cs = t.cyls[c];
            for (int col = 0; col < cs.W; ++col) {
                const Glue& top = t.glue[t.square_id(c, col, 0)][side_index(Side::Top)];
                int tc = t.squares[top.partner.square].cyl;
                bool ok = (top.parity == Parity::Rotation && tc == c && top.partner.side == Side::Top) ||
                          (top.parity == Parity::Translation && i + 1 < m && tc == members[i + 1] &&
                           top.partner.side == Side::Bottom);
                if (!ok) throw violation(6, "unexpected gluing on the top of a cylinder");
                if (i + 1 == m && top.parity != Parity::Rotation)
                    throw violation(7, "lighthouse tops must fold onto themselves");
                const Glue& bot = t.glue[t.square_id(c, col, cs.H - 1)][side_index(Side::Bottom)];
                int bc = t.squares[bot.partner.square].cyl;
                if (i == 0) {
                    if (bot.parity != Parity::Rotation || bot.partner.side != Side::Bottom ||
                        !has_eave_bottom(t.cyls[bc]))
                        throw violation(8, "eave bottoms must be glued to eave bottoms");
                } else if (bot.parity != Parity::Translation || bc != members[i - 1]) {
                    throw violation(6, "bottom must be glued to the next wider cylinder");
                }
            }
            for (int s = t.offset[c]; s < t.offset[c] + cs.W * cs.H; ++s) ids.push_back(s);
        }
        int comps = 0;
        int chi = euler_of(t, ids, cut, &comps);
        if (chi != 1 || comps != 1) throw violation(1, "story is not a disk");
        out.push_back(st);
    }
    std::sort(out.begin(), out.end(), [](const Story& a, const Story& b) { return a.index < b.index; });
    if (static_cast<int>(out.size()) != (t.d - 1) / 2) throw violation(4, "wrong number of stories");
    return out;
}

// --- zip -----------------------------------------------------------------------

TwoCylCoords zip(const CylCoords& c0, ZipDir dir) {
    if (!admissible(c0, true)) throw Error(ErrorKind::Inadmissible, "cylinder coordinates are not admissible");
    for (const Rational* r : {&c0.t1, &c0.t2, &c0.t3})
        if (denominator(*r) == 1) throw Error(ErrorKind::IntegralTwist, "twists must be non-integral");
    TwoCylCoords z;
    if (dir == ZipDir::Down) {
        if (c0.s1 == c0.s2) throw Error(ErrorKind::EaveBottom, "eave bottoms are glued between stories");
        CylCoords c = c0.s1 > c0.s2 ? c0 : swap_narrow(c0);
        z.type = 2;
        z.W1 = c.w1;
        z.H1 = c.s1 - c.s2;
        z.W2 = c.w1 + c.w2;
        z.H2 = c.s2;
        z.T1 = c.t1;
        z.T2 = c.t2;
        z.T3 = c.t3;
        return z;
    }
    bool swap_needed = c0.w1 != c0.w2 ? c0.w1 > c0.w2 : c0.s1 > c0.s2;
    CylCoords c = swap_needed ? swap_narrow(c0) : c0;
    const Integer w1 = c.w1, w2 = c.w2;
    z.W1 = c.w1;
    z.H1 = c.s1;
    z.W2 = c.w2;
    z.H2 = c.s2;
    if (c.t3 < Rational(w1)) {
        z.type = 1;
        z.T1 = c.t1;
        z.T2 = mod(Rational(w2) - c.t2 + c.t3, w2);
        z.T3 = c.t3;
    } else if (c.t3 < Rational(w2)) {
        z.type = 2;
        z.T1 = c.t1;
        z.T2 = c.t3 - Rational(w1);
        z.T3 = mod(Rational(2) * c.t3 - c.t2 - Rational(w1), w2);
    } else {
        z.type = 1;
        z.T1 = mod(Rational(w1 + w2) + c.t1 - c.t3, w1);
        z.T2 = mod(c.t3 - c.t1 - Rational(w1), w2);
        z.T3 = Rational(w1 + w2) - c.t3;
    }
    return z;
}

// --- points --------------------------------------------------------------------

namespace {

SurfPoint normalized(const Tiling& t, SurfPoint p) {
    const CylSpec& cs = t.cyls.at(p.cyl);
    p.x = mod(p.x, Integer(cs.W));
    if (p.y < 0 || p.y > Rational(cs.H)) throw Error(ErrorKind::InvalidArgument, "point outside its cylinder");
    return p;
}

// Position of the point at parameter u on a side of square s.
SurfPoint point_on_side(const Tiling& t, const EdgeRef& e, const Rational& u, int denom) {
    const Square& sq = t.squares[e.square];
    SurfPoint p;
    p.cyl = sq.cyl;
    p.denom = denom;
    switch (e.side) {
        case Side::Top: p.x = Rational(sq.col) + u; p.y = sq.row; break;
        case Side::Bottom: p.x = Rational(sq.col) + u; p.y = sq.row + 1; break;
        case Side::Left: p.x = sq.col; p.y = Rational(sq.row) + u; break;
        case Side::Right: p.x = sq.col + 1; p.y = Rational(sq.row) + u; break;
    }
    return normalized(t, p);
}

}  // namespace

std::optional<SurfPoint> glued_occurrence(const Tiling& t, const SurfPoint& p0) {
    SurfPoint p = normalized(t, p0);
    const CylSpec& cs = t.cyls[p.cyl];
    if (p.y != 0 && p.y != Rational(cs.H)) return std::nullopt;
    if (denominator(p.x) == 1) return std::nullopt;  // a vertex
    int col = static_cast<int>(to_i64(floor(p.x)));
    Rational u = p.x - Rational(col);
    EdgeRef e = p.y == 0 ? EdgeRef{t.square_id(p.cyl, col, 0), Side::Top}
                         : EdgeRef{t.square_id(p.cyl, col, cs.H - 1), Side::Bottom};
    const Glue& g = t.partner(e);
    Rational ou = g.parity == Parity::Translation ? u : Rational(1) - u;
    return point_on_side(t, g.partner, ou, p.denom);
}

SurfPoint canonical_owner(const Tiling& t, const SurfPoint& p0) {
    SurfPoint p = normalized(t, p0);
    if (auto q = glued_occurrence(t, p); q && *q < p) return *q;
    return p;
}

int vertex_at(const Tiling& t, const SurfPoint& p0) {
    SurfPoint p = normalized(t, p0);
    if (denominator(p.x) != 1 || denominator(p.y) != 1) return -1;
    const CylSpec& cs = t.cyls[p.cyl];
    int x = static_cast<int>(to_i64(p.x)), y = static_cast<int>(to_i64(p.y));
    if (y < cs.H) return t.corner_vertex[t.square_id(p.cyl, x, y)][0];
    return t.corner_vertex[t.square_id(p.cyl, x, cs.H - 1)][3];
}

std::vector<SurfPoint> rational_points(const Tiling& t, int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "rational points need n >= 2");
    std::vector<SurfPoint> out;
    for (std::size_t ci = 0; ci < t.cyls.size(); ++ci) {
        const CylSpec& cs = t.cyls[ci];
        for (int a = 0; a < n * cs.W; ++a)
            for (int b = 0; b <= n * cs.H; ++b) {
                if (std::gcd(std::gcd(a, b), n) != 1) continue;
                SurfPoint p{static_cast<int>(ci), ratio(a, n), ratio(b, n), n};
                if (b == 0 || b == n * cs.H) {
                    if (!(canonical_owner(t, p) == p)) continue;
                }
                out.push_back(p);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- pillowcase development ------------------------------------------------------

namespace {

std::array<Rational, 2> local_on_side(Side s, const Rational& u) {
    switch (s) {
        case Side::Top: return {u, Rational(0)};
        case Side::Right: return {Rational(1), u};
        case Side::Bottom: return {u, Rational(1)};
        case Side::Left: return {Rational(0), u};
    }
    return {};
}

std::array<int, 2> mod2(const std::array<Rational, 2>& v) {
    std::array<int, 2> r{};
    for (int i = 0; i < 2; ++i) {
        if (denominator(v[i]) != 1) throw Error(ErrorKind::ParityConflict, "non-integral development offset");
        r[i] = static_cast<int>(to_i64(mod(numerator(v[i]), Integer(2))));
    }
    return r;
}

DeltaChart develop_from(const Tiling& t, std::array<int, 2> base) {
    const int F = static_cast<int>(t.squares.size());
    DeltaChart ch;
    ch.offset.assign(F, {-1, -1});
    ch.offset[0] = base;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k) {
            const Glue& g = t.glue[s][k];
            const Side side = static_cast<Side>(k);
            auto here = local_on_side(side, Rational(0));
            auto there = local_on_side(g.partner.side, g.parity == Parity::Translation ? Rational(0) : Rational(1));
            std::array<Rational, 2> c;
            for (int i = 0; i < 2; ++i) {
                Rational o = Rational(ch.offset[s][i]);
                c[i] = g.parity == Parity::Translation ? here[i] + o - there[i] : here[i] + o + there[i];
            }
            std::array<int, 2> o2 = mod2(c);
            int os = g.partner.square;
            if (ch.offset[os][0] < 0) {
                ch.offset[os] = o2;
                queue.push_back(os);
            } else if (ch.offset[os] != o2) {
                throw Error(ErrorKind::ParityConflict, "inconsistent development at square " + std::to_string(os));
            }
        }
    }
    return ch;
}

PillowPoint normalize_pillow(Integer a, Integer b, int n) {
    const Integer two_n = 2 * n;
    Integer a1 = mod(a, two_n), b1 = mod(b, two_n);
    Integer a2 = mod(Integer(-a), two_n), b2 = mod(Integer(-b), two_n);
    bool ok1 = b1 <= n, ok2 = b2 <= n;
    PillowPoint p;
    p.denom = n;
    if (ok1 && (!ok2 || a1 <= a2)) {
        p.a = a1;
        p.b = b1;
    } else {
        p.a = a2;
        p.b = b2;
    }
    return p;
}

}  // namespace

DeltaChart delta_chart(const Tiling& t) {
    if (t.d == 2) return develop_from(t, {0, 0});  // the tiling is the pillowcase itself
    // Anchor square 0 with spins of four points of order 3 inside it: exactly one of
    // (a/3, b/3), a, b in {1, 2}, maps to a point with even numerators.
    std::array<int, 2> base{-1, -1};
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            const Square& sq = t.squares[0];
            SurfPoint p{sq.cyl, Rational(sq.col) + ratio(a, 3), Rational(sq.row) + ratio(b, 3), 3};
            if (spin(point_to_origami(t, p)).epsilon == 0) {
                if (base[0] >= 0) throw Error(ErrorKind::ParityConflict, "ambiguous anchor");
                base = {a % 2, b % 2};
            }
        }
    if (base[0] < 0) throw Error(ErrorKind::ParityConflict, "no anchor for the development");
    return develop_from(t, base);
}

DeltaImage delta_image(const Tiling& t, const DeltaChart& chart, const SurfPoint& p0) {
    SurfPoint p = normalized(t, p0);
    const CylSpec& cs = t.cyls[p.cyl];
    int col = static_cast<int>(to_i64(floor(p.x)));
    int row = std::min(static_cast<int>(to_i64(floor(p.y))), cs.H - 1);
    int s = t.square_id(p.cyl, col, row);
    const int n = p.denom;
    Rational u = p.x - Rational(col) + Rational(chart.offset[s][0]);
    Rational v = p.y - Rational(row) + Rational(chart.offset[s][1]);
    Rational an = u * n, bn = v * n;
    if (denominator(an) != 1 || denominator(bn) != 1)
        throw Error(ErrorKind::InvalidArgument, "point is not n-rational for its denominator");
    DeltaImage img;
    img.point = normalize_pillow(numerator(an), numerator(bn), n);
    if (n % 2 == 1) img.epsilon = (img.point.a % 2 == 0 && img.point.b % 2 == 0) ? 0 : 1;
    return img;
}

DeltaImage delta_image(const Tiling& t, const SurfPoint& p) { return delta_image(t, delta_chart(t), p); }

// --- origami model -------------------------------------------------------------

CylCoords surfpoint_coords(const Tiling& t, const SurfPoint& p) { return point_to_coords(t.cyls, normalized(t, p)); }

Origami point_fine_origami(const Tiling& t, const SurfPoint& p) {
    if (vertex_at(t, p) >= 0) throw Error(ErrorKind::NonGeneric, "point is a vertex of the tiling");
    return polygon_origami(surfpoint_coords(t, p), p.denom);
}

SurfPoint point_of_fine(const Tiling& t, const Origami& fine, int n) {
    SurfPoint p = locate(t.cyls, fine, n);
    p.denom = n;
    return canonical_owner(t, p);
}

Origami point_to_origami(const Tiling& t, const SurfPoint& p) {
    return fine_to_origami(point_fine_origami(t, p), p.denom);
}

SurfPoint origami_to_point(const Tiling& t, const Origami& o) {
    int n = 1;
    Origami fine = origami_to_fine(o, &n);
    return point_of_fine(t, fine, n);
}

SurfPoint act_point(const Tiling& t, const SL2Word& w, const SurfPoint& p) {
    return point_of_fine(t, act_raw(w, point_fine_origami(t, p)), p.denom);
}

// --- serialization -----------------------------------------------------------------

namespace {

const char* side_name(Side s) {
    switch (s) {
        case Side::Top: return "top";
        case Side::Right: return "right";
        case Side::Bottom: return "bottom";
        case Side::Left: return "left";
    }
    return "?";
}

Side side_from_name(const std::string& s) {
    for (Side x : {Side::Top, Side::Right, Side::Bottom, Side::Left})
        if (s == side_name(x)) return x;
    throw Error(ErrorKind::InvalidArgument, "unknown side \"" + s + "\"");
}

VertexClass class_from_name(const std::string& s) {
    for (VertexClass c : {VertexClass::Zero, VertexClass::NonCuspPole, VertexClass::CuspPole, VertexClass::Regular})
        if (s == vertex_class_name(c)) return c;
    throw Error(ErrorKind::InvalidArgument, "unknown vertex class \"" + s + "\"");
}

CylKind kind_from_name(const std::string& s) {
    for (CylKind k : {CylKind::Lighthouse, CylKind::Body, CylKind::Eave, CylKind::Unclassified})
        if (s == cyl_kind_name(k)) return k;
    throw Error(ErrorKind::InvalidArgument, "unknown cylinder kind \"" + s + "\"");
}

}  // namespace

std::string tiling_to_json(const Tiling& t) {
    nlohmann::ordered_json j;
    j["d"] = t.d;
    auto& cy = j["cylinders"] = nlohmann::ordered_json::array();
    for (const CylSpec& c : t.cyls) cy.push_back(nlohmann::ordered_json::parse(to_json(c)));
    auto& sq = j["squares"] = nlohmann::ordered_json::array();
    for (const Square& s : t.squares) sq.push_back({s.cyl, s.col, s.row});
    auto& gl = j["gluing"] = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < t.squares.size(); ++s)
        for (int k = 0; k < 4; ++k) {
            const Glue& g = t.glue[s][k];
            std::pair<int, int> here{static_cast<int>(s), k}, there{g.partner.square, side_index(g.partner.side)};
            if (there < here) continue;
            gl.push_back({{static_cast<int>(s), side_name(static_cast<Side>(k))},
                          {g.partner.square, side_name(g.partner.side)},
                          g.parity == Parity::Translation ? "T" : "R"});
        }
    auto& vs = j["vertices"] = nlohmann::ordered_json::array();
    for (const VertexRecord& v : t.vertices) {
        nlohmann::ordered_json jv;
        jv["class"] = vertex_class_name(v.cls);
        jv["corners"] = v.corner_count;
        jv["position"] = {v.cyl, v.x, v.y};
        vs.push_back(jv);
    }
    auto& cv = j["corner_vertex"] = nlohmann::ordered_json::array();
    for (const auto& c : t.corner_vertex) cv.push_back(c);
    return j.dump();
}

Tiling tiling_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        Tiling t;
        t.d = j.at("d").get<int>();
        for (const auto& c : j.at("cylinders")) {
            CylSpec s;
            s.w1 = c.at("w1").get<int>();
            s.s1 = c.at("s1").get<int>();
            s.T1 = c.at("T1").get<int>();
            s.w2 = c.at("w2").get<int>();
            s.s2 = c.at("s2").get<int>();
            s.T2 = c.at("T2").get<int>();
            s.W = c.at("W").get<int>();
            s.H = c.at("H").get<int>();
            s.kind = kind_from_name(c.at("kind").get<std::string>());
            t.cyls.push_back(s);
        }
        for (const auto& s : j.at("squares")) t.squares.push_back({s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<int>()});
        for (std::size_t i = 0; i < t.squares.size(); ++i) {
            const Square& s = t.squares[i];
            if (s.cyl < 0 || s.cyl >= static_cast<int>(t.cyls.size()))
                throw Error(ErrorKind::InvalidArgument, "square refers to an unknown cylinder");
            if (s.col == 0 && s.row == 0) t.offset.push_back(static_cast<int>(i));
        }
        if (t.offset.size() != t.cyls.size()) throw Error(ErrorKind::InvalidArgument, "squares do not match cylinders");
        const int F = static_cast<int>(t.squares.size());
        Builder b(t);
        for (const auto& g : j.at("gluing")) {
            EdgeRef a{g.at(0).at(0).get<int>(), side_from_name(g.at(0).at(1).get<std::string>())};
            EdgeRef c{g.at(1).at(0).get<int>(), side_from_name(g.at(1).at(1).get<std::string>())};
            if (a.square < 0 || a.square >= F || c.square < 0 || c.square >= F)
                throw Error(ErrorKind::InvalidArgument, "gluing refers to an unknown square");
            std::string p = g.at(2).get<std::string>();
            if (p != "T" && p != "R") throw Error(ErrorKind::InvalidArgument, "gluing parity must be T or R");
            b.join(a, c, p == "T" ? Parity::Translation : Parity::Rotation);
        }
        b.check_complete();
        for (const auto& v : j.at("vertices")) {
            VertexRecord r;
            r.cls = class_from_name(v.at("class").get<std::string>());
            r.corner_count = v.at("corners").get<int>();
            r.cyl = v.at("position").at(0).get<int>();
            r.x = v.at("position").at(1).get<int>();
            r.y = v.at("position").at(2).get<int>();
            t.vertices.push_back(r);
        }
        for (const auto& c : j.at("corner_vertex")) t.corner_vertex.push_back(c.get<std::array<int, 4>>());
        if (static_cast<int>(t.corner_vertex.size()) != F)
            throw Error(ErrorKind::InvalidArgument, "corner table does not match squares");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("bad tiling JSON: ") + e.what());
    }
}

std::string tiling_to_svg(const Tiling& t) {
    constexpr int unit = 24, margin = 30, gap = 36;
    int width = 0, height = margin;
    std::vector<int> top_y;
    for (const CylSpec& c : t.cyls) {
        width = std::max(width, c.W * unit);
        top_y.push_back(height);
        height += c.H * unit + gap;
    }
    width += 2 * margin + 160;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
       << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"#f4f4f4\"/>\n";
    for (std::size_t ci = 0; ci < t.cyls.size(); ++ci) {
        const CylSpec& c = t.cyls[ci];
        const int y0 = top_y[ci];
        os << "<g id=\"cyl" << ci << "\">\n";
        for (int row = 0; row < c.H; ++row)
            for (int col = 0; col < c.W; ++col)
                os << "<rect class=\"square\" x=\"" << margin + col * unit << "\" y=\"" << y0 + row * unit << "\" width=\"" << unit
                   << "\" height=\"" << unit << "\" fill=\"#dbe8f5\" stroke=\"#7a8ca0\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << margin + c.W * unit + 10 << "\" y=\"" << y0 + 14
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << cyl_kind_name(c.kind) << " (" << c.w1 << "," << c.s1
           << "," << c.w2 << "," << c.s2 << ")</text>\n";
        for (int y = 0; y <= c.H; ++y)
            for (int x = 0; x <= c.W; ++x) {
                int row = std::min(y, c.H - 1);
                int s = t.square_id(static_cast<int>(ci), x % c.W, row);
                int v = t.corner_vertex[s][y < c.H ? 0 : 3];
                const char* fill = nullptr;
                switch (t.vertices[v].cls) {
                    case VertexClass::Zero: fill = "black"; break;
                    case VertexClass::NonCuspPole: fill = "white"; break;
                    case VertexClass::CuspPole: fill = "red"; break;
                    case VertexClass::Regular: break;
                }
                if (!fill) continue;
                os << "<circle cx=\"" << margin + x * unit << "\" cy=\"" << y0 + y * unit
                   << "\" r=\"4\" stroke=\"black\" stroke-width=\"1\" fill=\"" << fill << "\"/>\n";
            }
        os << "</g>\n";
    }
    // one marker per story, drawn in the left margin beside each of its cylinders
    static const char* colors[] = {"#d9534f", "#5cb85c", "#f0ad4e", "#5bc0de", "#9b59b6", "#34495e"};
    for (const Story& st : stories(t)) {
        const char* color = colors[(st.index - 1) % 6];
        os << "<g class=\"story\" id=\"story" << st.index << "\">\n";
        for (int ci : st.cylinders)
            os << "<rect x=\"" << margin - 14 << "\" y=\"" << top_y[ci] << "\" width=\"6\" height=\""
               << t.cyls[ci].H * unit << "\" fill=\"" << color << "\"/>\n";
        const int first = st.cylinders.front();
        os << "<text x=\"2\" y=\"" << top_y[first] - 4 << "\" font-family=\"sans-serif\" font-size=\"10\">story "
           << st.index << "</text>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    f << text;
    if (!f) throw Error(ErrorKind::IoFailure, "failed writing " + path);
}

std::string to_json(const SurfPoint& p) {
    nlohmann::ordered_json j;
    j["cyl"] = p.cyl;
    j["x"] = to_string(p.x);
    j["y"] = to_string(p.y);
    j["denom"] = p.denom;
    return j.dump();
}

SurfPoint surfpoint_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        SurfPoint p;
        p.cyl = j.at("cyl").get<int>();
        p.x = parse_rational(j.at("x").get<std::string>());
        p.y = parse_rational(j.at("y").get<std::string>());
        p.denom = j.value("denom", static_cast<int>(to_i64(lcm(denominator(p.x), denominator(p.y)))));
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("bad point JSON: ") + e.what());
    }
}

}  // namespace squaretile
