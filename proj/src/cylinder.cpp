#include "squaretile/cylinder.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include <nlohmann/json.hpp>

namespace squaretile {

const char* cyl_kind_name(CylKind k) {
    switch (k) {
        case CylKind::Lighthouse: return "lighthouse";
        case CylKind::Body: return "body";
        case CylKind::Eave: return "eave";
        case CylKind::Unclassified: return "unclassified";
    }
    return "?";
}

bool SurfPoint::operator<(const SurfPoint& o) const {
    if (cyl != o.cyl) return cyl < o.cyl;
    if (x != o.x) return x < o.x;
    return y < o.y;
}

bool is_prime(int d) {
    if (d < 2) return false;
    for (int p = 2; p * p <= d; ++p)
        if (d % p == 0) return false;
    return true;
}

static int ilcm(int a, int b) { return a / std::gcd(a, b) * b; }

static CylSpec make_spec(int w1, int s1, int T1, int w2, int s2, int T2) {
    CylSpec c{w1, s1, T1, w2, s2, T2};
    c.W = ilcm(ilcm(w1, w2), w1 + w2);
    c.H = std::min(s1, s2);
    if (w1 == 1 && w2 == 1) c.kind = CylKind::Lighthouse;
    else if (s1 == 1 && s2 == 1) c.kind = CylKind::Eave;
    else c.kind = CylKind::Body;
    return c;
}

// Ordering convention for prime d: w1 < w2 when s1 = s2 = 1, s1 < s2 otherwise.
static CylSpec ordered_prime(int w1, int s1, int w2, int s2) {
    bool swap_needed = (s1 == 1 && s2 == 1) ? (w1 > w2) : (s1 > s2);
    if (swap_needed) return make_spec(w2, s2, 0, w1, s1, 0);
    return make_spec(w1, s1, 0, w2, s2, 0);
}

std::vector<CylSpec> cylinders(int d) {
    if (d < 2) throw Error(ErrorKind::InvalidArgument, "cylinders needs d >= 2");
    std::vector<CylSpec> out;
    if (d == 2) {
        out.push_back(make_spec(1, 1, 0, 1, 1, 0));
        return out;
    }
    if (is_prime(d)) {
        // Stories: from each lighthouse (1,i,1,d-i) downward by the Euclid step
        // {(w1,s1),(w2,s2)}, s1 < s2  ->  {(w1+w2,s1),(w2,s2-s1)}.
        for (int i = 1; i <= (d - 1) / 2; ++i) {
            int w1 = 1, s1 = i, w2 = 1, s2 = d - i;
            while (true) {
                out.push_back(ordered_prime(w1, s1, w2, s2));
                if (s1 == s2) break;
                if (s1 > s2) {
                    std::swap(w1, w2);
                    std::swap(s1, s2);
                }
                int nw1 = w1 + w2, ns1 = s1, nw2 = w2, ns2 = s2 - s1;
                w1 = nw1; s1 = ns1; w2 = nw2; s2 = ns2;
            }
        }
        return out;
    }
    // Composite d: unordered pairs of triples with twist classes below gcd(w1, w2).
    std::set<std::tuple<int, int, int, int, int, int>> seen;
    for (int w1 = 1; w1 < d; ++w1)
        for (int s1 = 1; s1 * w1 < d; ++s1)
            for (int w2 = 1; w2 <= d; ++w2) {
                int rest = d - s1 * w1;
                if (rest % w2 != 0) continue;
                int s2 = rest / w2;
                if (s2 < 1 || std::gcd(s1, s2) != 1) continue;
                int g = std::gcd(w1, w2);
                for (int T1 = 0; T1 < g; ++T1)
                    for (int T2 = 0; T2 < g; ++T2) {
                        int det = T1 * s2 - T2 * s1;
                        if (std::gcd(std::gcd(std::abs(det), w1), w2) != 1) continue;
                        auto a = std::make_tuple(w1, s1, T1), b = std::make_tuple(w2, s2, T2);
                        if (b < a) std::swap(a, b);
                        auto key = std::tuple_cat(a, b);
                        if (!seen.insert(key).second) continue;
                        auto [x1, y1, z1, x2, y2, z2] = key;
                        CylSpec c = make_spec(x1, y1, z1, x2, y2, z2);
                        c.kind = CylKind::Unclassified;
                        out.push_back(c);
                    }
            }
    std::sort(out.begin(), out.end(), [](const CylSpec& a, const CylSpec& b) {
        return std::tie(a.w1, a.s1, a.T1, a.w2, a.s2, a.T2) < std::tie(b.w1, b.s1, b.T1, b.w2, b.s2, b.T2);
    });
    return out;
}

bool admissible(const CylCoords& c, bool allow_degenerate) {
    if (c.w1 <= 0 || c.w2 <= 0 || c.s1 <= 0 || c.s2 <= 0) return false;
    Rational h1 = Rational(c.s1) - c.h, h2 = Rational(c.s2) - c.h;
    if (allow_degenerate) {
        if (h1 < 0 || h2 < 0 || c.h < 0) return false;
    } else if (h1 <= 0 || h2 <= 0 || c.h <= 0) {
        return false;
    }
    if (c.t1 < 0 || c.t1 >= c.w1 || c.t2 < 0 || c.t2 >= c.w2 || c.t3 < 0 || c.t3 > c.w1 + c.w2) return false;
    Rational a = c.t1 - c.t3, b = c.t2 - c.t3;
    if (denominator(a) != 1 || denominator(b) != 1) return false;
    if (std::gcd(c.s1, c.s2) != 1) return false;
    Integer det = numerator(a) * c.s2 - numerator(b) * c.s1;
    Integer g = gcd(gcd(boost::multiprecision::abs(det), Integer(c.w1)), Integer(c.w2));
    return g == 1;
}

CylCoords swap_narrow(const CylCoords& c) {
    CylCoords r = c;
    std::swap(r.w1, r.w2);
    std::swap(r.s1, r.s2);
    std::swap(r.t1, r.t2);
    return r;
}

// --- polygon model -----------------------------------------------------------
//
// Internally the polygon is laid out with y pointing up: C3 sits above C1 and C2,
// C3's bottom is glued to C1's top on [0, w1) and to C2's top on [w1, w1 + w2), and
// the point x of C3's top goes to C1's or C2's bottom according to u = (x - t3)
// mod (w1 + w2). The public surfaces are the mirror images of these (see reflect),
// which makes the shear S^{-1} act on eaves by (x, y) -> (x + y + T d, y).

namespace {

struct Layout {
    int W[3];
    int R[3];
    int T[3];
    int off[3];
    int id(int c, int col, int row) const { return off[c] + row * W[c] + col; }
};

int scaled_int(const Rational& r, int m, bool twist) {
    Rational s = r * Rational(m);
    if (denominator(s) != 1)
        throw Error(twist ? ErrorKind::NonRationalTwist : ErrorKind::Inadmissible,
                    "coordinate " + to_string(r) + " is not a multiple of 1/" + std::to_string(m));
    return static_cast<int>(to_i64(numerator(s)));
}

}  // namespace

static Origami polygon_math(const CylCoords& c, int m) {
    if (!admissible(c, true)) throw Error(ErrorKind::Inadmissible, "cylinder coordinates are not admissible");
    Layout L{};
    L.W[0] = c.w1 * m;
    L.W[1] = c.w2 * m;
    L.W[2] = (c.w1 + c.w2) * m;
    L.R[0] = scaled_int(Rational(c.s1) - c.h, m, false);
    L.R[1] = scaled_int(Rational(c.s2) - c.h, m, false);
    L.R[2] = scaled_int(c.h, m, false);
    L.T[0] = scaled_int(c.t1, m, true);
    L.T[1] = scaled_int(c.t2, m, true);
    L.T[2] = scaled_int(c.t3, m, true) % L.W[2];
    L.off[0] = 0;
    L.off[1] = L.W[0] * L.R[0];
    L.off[2] = L.off[1] + L.W[1] * L.R[1];
    const int n = L.off[2] + L.W[2] * L.R[2];
    Origami o;
    o.h.resize(n);
    o.v.resize(n);
    // Where does one arrive going up through the top boundary of cylinder c at x?
    auto up = [&](int c0, int x0) {
        int cc = c0, x = x0;
        for (int guard = 0; guard < 8; ++guard) {
            int nc, nx;
            if (cc == 0) {
                nc = 2;
                nx = x;
            } else if (cc == 1) {
                nc = 2;
                nx = L.W[0] + x;
            } else {
                int u = static_cast<int>(mod64(x - L.T[2], L.W[2]));
                if (u < L.W[0]) {
                    nc = 0;
                    nx = static_cast<int>(mod64(u + L.T[0], L.W[0]));
                } else {
                    nc = 1;
                    nx = static_cast<int>(mod64(u - L.W[0] + L.T[1], L.W[1]));
                }
            }
            if (L.R[nc] > 0) return L.id(nc, nx, 0);
            cc = nc;
            x = nx;
        }
        throw Error(ErrorKind::Inadmissible, "degenerate polygon");
    };
    for (int c3 = 0; c3 < 3; ++c3)
        for (int row = 0; row < L.R[c3]; ++row)
            for (int col = 0; col < L.W[c3]; ++col) {
                int s = L.id(c3, col, row);
                o.h[s] = L.id(c3, (col + 1) % L.W[c3], row);
                o.v[s] = row + 1 < L.R[c3] ? L.id(c3, col, row + 1) : up(c3, col);
            }
    return o;
}

Origami polygon_origami(const CylCoords& c, int m) { return reflect(polygon_math(c, m)); }

namespace {

struct CylinderStack {
    int width = 0;
    int height = 0;
    std::vector<int> bottom;  // bottom row, in h order starting anywhere
    std::vector<int> top;
    std::vector<int> cyl_of_square_dummy;
};

}  // namespace

static CylCoords decode_math(const Origami& o, int m) {
    const int n = o.n_squares();
    auto rows = perm_cycles(o.h);
    std::vector<int> row_of(n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int s : rows[r]) row_of[s] = static_cast<int>(r);
    const int nr = static_cast<int>(rows.size());
    // link_up[r]: the row directly above r when the boundary between them is free of cone points.
    std::vector<int> link_up(nr, -1), has_below(nr, 0);
    for (int r = 0; r < nr; ++r) {
        bool ok = true;
        for (int s : rows[r])
            if (o.v[o.h[s]] != o.h[o.v[s]]) {
                ok = false;
                break;
            }
        if (ok) {
            link_up[r] = row_of[o.v[rows[r][0]]];
            has_below[link_up[r]] = 1;
        }
    }
    std::vector<int> cyl_of_row(nr, -1);
    std::vector<CylinderStack> cyls;
    for (int r = 0; r < nr; ++r) {
        if (has_below[r]) continue;
        CylinderStack cs;
        cs.width = static_cast<int>(rows[r].size());
        int cur = r;
        int id = static_cast<int>(cyls.size());
        while (true) {
            cyl_of_row[cur] = id;
            ++cs.height;
            if (link_up[cur] < 0) break;
            cur = link_up[cur];
            if (cyl_of_row[cur] >= 0) throw Error(ErrorKind::NonGeneric, "surface is a single cylinder");
        }
        cs.bottom = rows[r];
        cs.top = rows[cur];
        cyls.push_back(cs);
    }
    for (int r = 0; r < nr; ++r)
        if (cyl_of_row[r] < 0) throw Error(ErrorKind::NonGeneric, "row not attached to a cylinder");
    if (cyls.size() != 3) throw Error(ErrorKind::NonGeneric, "surface does not decompose into three horizontal cylinders");
    int big = 0;
    for (int i = 1; i < 3; ++i)
        if (cyls[i].width > cyls[big].width) big = i;
    int a = (big + 1) % 3, b = (big + 2) % 3;
    if (cyls[a].width + cyls[b].width != cyls[big].width)
        throw Error(ErrorKind::NonGeneric, "cylinder circumferences do not add up");
    Perm vi = perm_inverse(o.v), hi = perm_inverse(o.h);
    auto cyl_of = [&](int s) { return cyl_of_row[row_of[s]]; };

    auto decode_with = [&](int c1, int c2) {
        const CylinderStack &C1 = cyls[c1], &C2 = cyls[c2], &C3 = cyls[big];
        int s0 = -1;
        for (int s : C3.bottom)
            if (cyl_of(vi[s]) == c1 && cyl_of(vi[hi[s]]) == c2) s0 = s;
        if (s0 < 0) throw Error(ErrorKind::NonGeneric, "no origin on the wide cylinder");
        // Columns in C1 and C2 frames: top row column 0 sits under x = 0 resp. x = w1.
        auto walk_down = [&](int s, int k) {
            for (int i = 0; i < k; ++i) s = vi[s];
            return s;
        };
        auto walk_up = [&](int s, int k) {
            for (int i = 0; i < k; ++i) s = o.v[s];
            return s;
        };
        std::map<int, int> col1, col2, col3top;
        int a0 = vi[s0];
        int c1b = walk_down(a0, C1.height - 1);
        for (int i = 0, s = c1b; i < C1.width; ++i, s = o.h[s]) col1[s] = i;
        int s_w1 = s0;
        for (int i = 0; i < C1.width; ++i) s_w1 = o.h[s_w1];
        int b0 = vi[s_w1];
        int c2b = walk_down(b0, C2.height - 1);
        for (int i = 0, s = c2b; i < C2.width; ++i, s = o.h[s]) col2[s] = i;
        int top0 = walk_up(s0, C3.height - 1);
        std::vector<int> top(C3.width);
        for (int i = 0, s = top0; i < C3.width; ++i, s = o.h[s]) top[i] = s;
        int T3 = -1;
        for (int x = 0; x < C3.width; ++x) {
            int prev = top[(x + C3.width - 1) % C3.width];
            if (cyl_of(o.v[top[x]]) == c1 && cyl_of(o.v[prev]) == c2) T3 = x;
        }
        if (T3 < 0) throw Error(ErrorKind::NonGeneric, "no white zero on the wide cylinder");
        int T1 = col1.at(o.v[top[T3]]);
        int T2 = col2.at(o.v[top[(T3 + C1.width) % C3.width]]);
        CylCoords c;
        if (C1.width % m || C2.width % m || (C1.height + C3.height) % m || (C2.height + C3.height) % m)
            throw Error(ErrorKind::Inadmissible, "decoded polygon is not a scale-m tiling of a point");
        c.w1 = C1.width / m;
        c.w2 = C2.width / m;
        c.s1 = (C1.height + C3.height) / m;
        c.s2 = (C2.height + C3.height) / m;
        c.t1 = Rational(T1, m);
        c.t2 = Rational(T2, m);
        c.t3 = Rational(T3, m);
        c.h = Rational(C3.height, m);
        c.denom = m;
        return c;
    };
    CylCoords x = decode_with(a, b), y = decode_with(b, a);
    auto key = [](const CylCoords& c) { return std::make_tuple(c.w1, c.s1, c.w2, c.s2, c.t1, c.t2, c.t3, c.h); };
    return key(y) < key(x) ? y : x;
}

CylCoords decode_polygon(const Origami& fine, int m) { return decode_math(reflect(fine), m); }

// --- bridge between the period leaf and ST(d, n) ------------------------------

static std::array<std::int64_t, 2> first_primitive_vector(const Lattice2& L) {
    for (std::int64_t r = 1;; ++r) {
        for (std::int64_t y = 0; y <= r; ++y)
            for (std::int64_t x = -r; x <= r; ++x) {
                if (std::max(std::abs(x), y) != r) continue;
                if (y == 0 && x <= 0) continue;
                if (std::gcd(std::abs(x), y) != 1) continue;
                if (L.contains(x, y)) return {x, y};
            }
    }
}

Mat2 bridge_matrix(const Lattice2& nM, int n) {
    if (n == 1) return Mat2::identity();
    auto u = first_primitive_vector(nM);
    // f1 with det(f1, u) = 1, reduced along u.
    std::int64_t fx = 0, fy = 0;
    {
        // extended Euclid: fx*u1 - fy*u0 = 1
        std::int64_t a = u[0], b = u[1];
        std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            std::int64_t q = old_r / r;
            std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
            std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
            std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
        }
        // old_s*a + old_t*b = old_r = +-1
        if (old_r < 0) {
            old_s = -old_s;
            old_t = -old_t;
        }
        // want fx*b - fy*a = 1: fx = old_t, fy = -old_s
        fx = old_t;
        fy = -old_s;
        // normalise: f1 + k*u
        if (u[0] != 0) {
            std::int64_t k = -((fx >= 0 ? fx : fx - (std::abs(u[0]) - 1)) / std::abs(u[0]));
            if (u[0] < 0) k = -k;
            fx += k * u[0];
            fy += k * u[1];
        } else {
            std::int64_t k = -((fy >= 0 ? fy : fy - (std::abs(u[1]) - 1)) / std::abs(u[1]));
            if (u[1] < 0) k = -k;
            fx += k * u[0];
            fy += k * u[1];
        }
    }
    // F = [f1, u/n]; A = F * (0 -1; n 0) * F^{-1}, with F^{-1} = (u1, -u0; -n f1y, n f1x).
    Rational F00(fx), F01(Rational(u[0], n)), F10(fy), F11(Rational(u[1], n));
    Rational G00(u[1]), G01(-u[0]), G10(-n * fy), G11(n * fx);
    // F * J = (F01*n, -F00; F11*n, -F10)
    Rational FJ00 = F01 * n, FJ01 = -F00, FJ10 = F11 * n, FJ11 = -F10;
    Rational A00 = FJ00 * G00 + FJ01 * G10, A01 = FJ00 * G01 + FJ01 * G11;
    Rational A10 = FJ10 * G00 + FJ11 * G10, A11 = FJ10 * G01 + FJ11 * G11;
    for (const Rational* e : {&A00, &A01, &A10, &A11})
        if (denominator(*e) != 1) throw Error(ErrorKind::InvalidArgument, "bridge matrix is not integral");
    Mat2 A{{numerator(A00), numerator(A01), numerator(A10), numerator(A11)}};
    if (A.det() != n) throw Error(ErrorKind::InvalidArgument, "bridge matrix has wrong determinant");
    return A;
}

Origami fine_to_origami(const Origami& fine, int n) {
    if (n == 1) return canonical(fine);
    Lattice2 nM = relative_period_lattice(fine);
    Mat2 A = bridge_matrix(nM, n);
    auto down = downscale(apply_matrix(A, fine), n);
    if (!down) throw Error(ErrorKind::InvalidArgument, "re-marked surface does not downscale");
    return canonical(*down);
}

Origami origami_to_fine(const Origami& o, int* n_out) {
    TypeSig t = validate(o);
    if (t.stratum != Stratum::H11) throw Error(ErrorKind::InvalidArgument, "bridge needs a surface in H(1,1)");
    int n = t.torsion;
    if (n_out) *n_out = n;
    if (n == 1) return o;
    Lattice2 nM = period_lattice(o);
    Mat2 A = bridge_matrix(nM, n);
    Mat2 adj{{A.m[3], -A.m[1], -A.m[2], A.m[0]}};
    return apply_matrix(adj, o);
}

static int torsion_of(const CylCoords& c) {
    Integer D = lcm(lcm(denominator(c.t1), denominator(c.t2)), lcm(denominator(c.t3), denominator(c.h)));
    return static_cast<int>(to_i64(D));
}

Origami to_origami(const CylCoords& c) {
    if (!admissible(c, false)) throw Error(ErrorKind::Inadmissible, "cylinder coordinates are not admissible");
    int n = torsion_of(c);
    return fine_to_origami(polygon_origami(c, n), n);
}

CylCoords from_origami(const Origami& o) {
    int n = 1;
    Origami fine = origami_to_fine(o, &n);
    CylCoords c = decode_polygon(fine, n);
    c.denom = n;
    return c;
}

// --- Euclidean coordinates ---------------------------------------------------

int find_cylinder(const std::vector<CylSpec>& cyls, int w1, int s1, int w2, int s2) {
    for (std::size_t i = 0; i < cyls.size(); ++i) {
        const auto& c = cyls[i];
        if ((c.w1 == w1 && c.s1 == s1 && c.w2 == w2 && c.s2 == s2) || (c.w1 == w2 && c.s1 == s2 && c.w2 == w1 && c.s2 == s1))
            return static_cast<int>(i);
    }
    throw Error(ErrorKind::Inadmissible, "no cylinder with these widths and heights");
}

SurfPoint coords_to_point(const std::vector<CylSpec>& cyls, const CylCoords& c) {
    int id = find_cylinder(cyls, c.w1, c.s1, c.w2, c.s2);
    const CylSpec& cs = cyls[id];
    Rational frac = c.t3 - Rational(floor(c.t3));
    Integer a1 = floor(c.t1), a2 = floor(c.t2), a3 = floor(c.t3);
    if (c.t1 - Rational(a1) != frac || c.t2 - Rational(a2) != frac)
        throw Error(ErrorKind::Inadmissible, "twists have different fractional parts");
    int x0 = -1;
    for (int x = 0; x < cs.W; ++x)
        if (mod(Integer(x) - a1, Integer(c.w1)) == 0 && mod(Integer(x) - a2, Integer(c.w2)) == 0 &&
            mod(Integer(x) - a3, Integer(c.w1 + c.w2)) == 0) {
            x0 = x;
            break;
        }
    if (x0 < 0) throw Error(ErrorKind::Inadmissible, "twists have no common Euclidean coordinate");
    SurfPoint p;
    p.cyl = id;
    p.x = Rational(x0) + frac;
    p.y = c.h;
    p.denom = static_cast<int>(to_i64(lcm(denominator(p.x), denominator(p.y))));
    return p;
}

CylCoords point_to_coords(const std::vector<CylSpec>& cyls, const SurfPoint& p) {
    const CylSpec& cs = cyls.at(p.cyl);
    CylCoords c;
    c.w1 = cs.w1;
    c.s1 = cs.s1;
    c.w2 = cs.w2;
    c.s2 = cs.s2;
    c.t1 = mod(p.x, Integer(cs.w1));
    c.t2 = mod(p.x, Integer(cs.w2));
    c.t3 = mod(p.x, Integer(cs.w1 + cs.w2));
    c.h = p.y;
    c.denom = p.denom;
    return c;
}

SurfPoint locate(const std::vector<CylSpec>& cyls, const Origami& fine, int m) {
    try {
        CylCoords c = decode_polygon(fine, m);
        SurfPoint p = coords_to_point(cyls, c);
        p.denom = m;
        return p;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonGeneric) throw;
    }
    if (m < 2) throw Error(ErrorKind::NonGeneric, "cannot locate a vertex of the tiling");
    // Refine, nudge one zero vertically by half a grid step, locate, and step back.
    Origami f2 = scale(fine, 2);
    Perm k = commutator(f2);
    int s = -1;
    for (int i = 0; i < f2.n_squares(); ++i)
        if (k[i] != i && k[k[i]] == i) {
            s = i;
            break;
        }
    if (s < 0) throw Error(ErrorKind::NonGeneric, "no simple zero to move");
    PushResult pr = push_zero(f2, s, PushDir::Up);
    if (pr.merged) throw Error(ErrorKind::NonGeneric, "zero collided while locating");
    CylCoords c = decode_polygon(pr.origami, 2 * m);
    SurfPoint p = coords_to_point(cyls, c);
    const CylSpec& cs = cyls[p.cyl];
    Rational step(1, 2 * m);
    if (p.y == step) p.y = 0;
    else if (p.y == Rational(cs.H) - step) p.y = cs.H;
    else throw Error(ErrorKind::NonGeneric, "nudged point is not next to a cylinder boundary");
    p.denom = m;
    return p;
}

// --- JSON ------------------------------------------------------------------

std::string to_json(const CylCoords& c) {
    nlohmann::ordered_json j;
    j["w1"] = c.w1;
    j["s1"] = c.s1;
    j["w2"] = c.w2;
    j["s2"] = c.s2;
    j["t"] = {to_string(c.t1), to_string(c.t2), to_string(c.t3)};
    j["h"] = to_string(c.h);
    j["denom"] = c.denom;
    return j.dump();
}

CylCoords cylcoords_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        CylCoords c;
        c.w1 = j.at("w1").get<int>();
        c.s1 = j.at("s1").get<int>();
        c.w2 = j.at("w2").get<int>();
        c.s2 = j.at("s2").get<int>();
        auto t = j.at("t");
        if (!t.is_array() || t.size() != 3) throw Error(ErrorKind::InvalidArgument, "\"t\" must hold three rationals");
        c.t1 = parse_rational(t[0].get<std::string>());
        c.t2 = parse_rational(t[1].get<std::string>());
        c.t3 = parse_rational(t[2].get<std::string>());
        c.h = parse_rational(j.at("h").get<std::string>());
        c.denom = j.value("denom", torsion_of(c));
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("bad cylinder-coordinate JSON: ") + e.what());
    }
}

std::string to_json(const CylSpec& c) {
    nlohmann::ordered_json j;
    j["w1"] = c.w1;
    j["s1"] = c.s1;
    j["T1"] = c.T1;
    j["w2"] = c.w2;
    j["s2"] = c.s2;
    j["T2"] = c.T2;
    j["W"] = c.W;
    j["H"] = c.H;
    j["kind"] = cyl_kind_name(c.kind);
    return j.dump();
}

}  // namespace squaretile
