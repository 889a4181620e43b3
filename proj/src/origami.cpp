#include "squaretile/origami.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

namespace squaretile {

std::size_t OrigamiHash::operator()(const Origami& o) const {
    std::size_t x = 1469598103934665603ULL;
    auto mix = [&](int a) {
        x ^= static_cast<std::size_t>(a) + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
    };
    for (int a : o.h) mix(a);
    for (int a : o.v) mix(a);
    return x;
}

Perm perm_inverse(const Perm& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

Perm perm_compose(const Perm& outer, const Perm& inner) {
    Perm r(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
    return r;
}

std::vector<std::vector<int>> perm_cycles(const Perm& p) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        for (int j = static_cast<int>(i); !seen[j]; j = p[j]) {
            seen[j] = 1;
            cyc.push_back(j);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

static void check_perm(const Perm& p, int n, const char* name) {
    if (static_cast<int>(p.size()) != n) throw Error(ErrorKind::InvalidArgument, std::string(name) + " has wrong length");
    std::vector<char> seen(n, 0);
    for (int a : p) {
        if (a < 0 || a >= n || seen[a]) throw Error(ErrorKind::InvalidArgument, std::string(name) + " is not a permutation");
        seen[a] = 1;
    }
}

bool is_transitive(const Origami& o) {
    int n = o.n_squares();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    Perm hi = perm_inverse(o.h), vi = perm_inverse(o.v);
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int t : {o.h[s], o.v[s], hi[s], vi[s]}) {
            if (!seen[t]) {
                seen[t] = 1;
                ++count;
                stack.push_back(t);
            }
        }
    }
    return count == n;
}

Perm commutator(const Origami& o) {
    Perm hi = perm_inverse(o.h), vi = perm_inverse(o.v);
    Perm k(o.h.size());
    for (std::size_t s = 0; s < k.size(); ++s) k[s] = o.v[o.h[vi[hi[s]]]];
    return k;
}

std::vector<int> vertex_of_square(const Origami& o, int* n_vertices) {
    std::vector<int> id(o.h.size(), -1);
    int next = 0;
    for (const auto& cyc : perm_cycles(commutator(o))) {
        for (int s : cyc) id[s] = next;
        ++next;
    }
    if (n_vertices) *n_vertices = next;
    return id;
}

std::vector<int> branching_profile(const Origami& o) {
    std::vector<int> prof;
    for (const auto& cyc : perm_cycles(commutator(o)))
        if (cyc.size() > 1) prof.push_back(static_cast<int>(cyc.size()));
    std::sort(prof.begin(), prof.end());
    return prof;
}

std::vector<std::array<std::int64_t, 2>> develop(const Origami& o) {
    int n = o.n_squares();
    std::vector<std::array<std::int64_t, 2>> D(n, {0, 0});
    std::vector<char> seen(n, 0);
    Perm hi = perm_inverse(o.h), vi = perm_inverse(o.v);
    std::deque<int> q;
    for (int root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        q.push_back(root);
        while (!q.empty()) {
            int s = q.front();
            q.pop_front();
            const std::array<std::pair<int, std::array<std::int64_t, 2>>, 4> nb{{
                {o.h[s], {1, 0}}, {o.v[s], {0, 1}}, {hi[s], {-1, 0}}, {vi[s], {0, -1}}}};
            for (const auto& [t, dlt] : nb) {
                if (seen[t]) continue;
                seen[t] = 1;
                D[t] = {D[s][0] + dlt[0], D[s][1] + dlt[1]};
                q.push_back(t);
            }
        }
    }
    return D;
}

static std::vector<IVec2> period_generators(const Origami& o, const std::vector<std::array<std::int64_t, 2>>& D) {
    std::vector<IVec2> gens;
    for (int s = 0; s < o.n_squares(); ++s) {
        std::int64_t hx = D[s][0] + 1 - D[o.h[s]][0], hy = D[s][1] - D[o.h[s]][1];
        std::int64_t vx = D[s][0] - D[o.v[s]][0], vy = D[s][1] + 1 - D[o.v[s]][1];
        if (hx || hy) gens.push_back({Integer(hx), Integer(hy)});
        if (vx || vy) gens.push_back({Integer(vx), Integer(vy)});
    }
    return gens;
}

Lattice2 period_lattice(const Origami& o) {
    auto D = develop(o);
    return lattice_span(period_generators(o, D));
}

Lattice2 relative_period_lattice(const Origami& o) {
    auto D = develop(o);
    auto gens = period_generators(o, D);
    std::vector<int> cone;
    for (const auto& cyc : perm_cycles(commutator(o)))
        if (cyc.size() > 1) cone.push_back(cyc.front());
    for (std::size_t i = 1; i < cone.size(); ++i)
        gens.push_back({Integer(D[cone[i]][0] - D[cone[0]][0]), Integer(D[cone[i]][1] - D[cone[0]][1])});
    return lattice_span(gens);
}

TypeSig classify(const Origami& o) {
    int n = o.n_squares();
    check_perm(o.h, n, "h");
    check_perm(o.v, n, "v");
    if (!is_transitive(o)) throw Error(ErrorKind::NotConnected, "h and v do not act transitively");
    auto prof = branching_profile(o);
    TypeSig t;
    if (prof == std::vector<int>{2, 2}) t.stratum = Stratum::H11;
    else if (prof == std::vector<int>{3}) t.stratum = Stratum::H2;
    else throw Error(ErrorKind::BadBranching, "commutator cycle type is not (2,2) or (3)");
    Lattice2 per = period_lattice(o);
    Lattice2 rper = relative_period_lattice(o);
    t.primitive = per == Lattice2::identity();
    t.reduced = rper == Lattice2::identity();
    Integer area_per = per.det();
    if (t.stratum == Stratum::H2) {
        t.torsion = 0;
        t.degree = to_i64(Integer(n / area_per));
    } else {
        t.torsion = to_i64(Integer(per.det() / rper.det()));
        t.degree = to_i64(Integer(n / area_per));
    }
    return t;
}

TypeSig validate(const Origami& o) {
    TypeSig t = classify(o);
    if (!t.reduced) throw Error(ErrorKind::NotReduced, "relative periods do not generate Z[i]");
    return t;
}

Origami canonical(const Origami& o) {
    const int n = o.n_squares();
    std::vector<int> best;  // interleaved (h'[0], v'[0], h'[1], ...)
    std::vector<int> cur(2 * n), label(n), order(n);
    for (int b = 0; b < n; ++b) {
        std::fill(label.begin(), label.end(), -1);
        label[b] = 0;
        order[0] = b;
        int assigned = 1;
        bool worse = false, better = best.empty();
        for (int i = 0; i < n; ++i) {
            if (i >= assigned) {  // not transitive from b; cannot happen for valid input
                worse = true;
                break;
            }
            int s = order[i];
            for (int k = 0; k < 2; ++k) {
                int t = k == 0 ? o.h[s] : o.v[s];
                if (label[t] < 0) {
                    label[t] = assigned;
                    order[assigned++] = t;
                }
                int val = label[t];
                cur[2 * i + k] = val;
                if (!better) {
                    int bv = best[2 * i + k];
                    if (val > bv) {
                        worse = true;
                        break;
                    }
                    if (val < bv) better = true;
                }
            }
            if (worse) break;
        }
        if (!worse && better) best = cur;
    }
    Origami r;
    r.h.resize(n);
    r.v.resize(n);
    for (int i = 0; i < n; ++i) {
        r.h[i] = best[2 * i];
        r.v[i] = best[2 * i + 1];
    }
    return r;
}

Origami act_letter(Letter l, const Origami& o) {
    Origami r;
    switch (l) {
        case Letter::S:
            r.h = o.h;
            r.v = perm_compose(o.v, perm_inverse(o.h));
            break;
        case Letter::Sinv:
            r.h = o.h;
            r.v = perm_compose(o.v, o.h);
            break;
        case Letter::R:
            r.h = perm_inverse(o.v);
            r.v = o.h;
            break;
        case Letter::Rinv:
            r.h = o.v;
            r.v = perm_inverse(o.h);
            break;
    }
    return r;
}

Origami act_raw(const SL2Word& w, const Origami& o) {
    Origami r = o;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r = act_letter(*it, r);
    return r;
}

Origami act(const SL2Word& w, const Origami& o) { return canonical(act_raw(w, o)); }

static Origami stretch_x(const Origami& o, int a) {
    int n = o.n_squares();
    Origami r;
    r.h.resize(n * a);
    r.v.resize(n * a);
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < a; ++j) {
            int id = s * a + j;
            r.h[id] = j + 1 < a ? id + 1 : o.h[s] * a;
            r.v[id] = o.v[s] * a + j;
        }
    return r;
}

static Origami stretch_y(const Origami& o, int c) {
    int n = o.n_squares();
    Origami r;
    r.h.resize(n * c);
    r.v.resize(n * c);
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < c; ++j) {
            int id = s * c + j;
            r.v[id] = j + 1 < c ? id + 1 : o.v[s] * c;
            r.h[id] = o.h[s] * c + j;
        }
    return r;
}

Origami apply_matrix(const Mat2& B, const Origami& o) {
    if (B.det() <= 0) throw Error(ErrorKind::InvalidArgument, "matrix must have positive determinant");
    // Row-reduce B = E^{-1} U with E in SL2(Z) and U upper triangular.
    Mat2 U = B, E = Mat2::identity();
    while (U.m[2] != 0) {
        Integer k = floor_div(U.m[0], U.m[2]);
        Mat2 step{{1, -k, 0, 1}};
        U = step * U;
        E = step * E;
        Mat2 sw{{0, 1, -1, 0}};
        U = sw * U;
        E = sw * E;
    }
    if (U.m[0] < 0) {
        Mat2 neg{{-1, 0, 0, -1}};
        U = neg * U;
        E = neg * E;
    }
    int a = static_cast<int>(to_i64(U.m[0]));
    int c = static_cast<int>(to_i64(U.m[3]));
    Integer e = U.m[1];
    Origami r = stretch_x(o, a);
    if (e != 0) {
        Letter l = e > 0 ? Letter::S : Letter::Sinv;
        Integer cnt = boost::multiprecision::abs(e);
        for (Integer i = 0; i < cnt; ++i) r = act_letter(l, r);
    }
    r = stretch_y(r, c);
    // B = E^{-1} U: apply E^{-1}, an element of SL2(Z).
    Mat2 Einv{{E.m[3], -E.m[1], -E.m[2], E.m[0]}};
    return act_raw(word_for_matrix(Einv), r);
}

Origami scale(const Origami& o, int m) { return stretch_y(stretch_x(o, m), m); }

std::optional<Origami> downscale(const Origami& o, int m) {
    if (m == 1) return o;
    const int n = o.n_squares();
    if (n % (m * m) != 0) return std::nullopt;
    auto D = develop(o);
    for (const auto& g : period_generators(o, D))
        if (g[0] % m != 0 || g[1] % m != 0) return std::nullopt;
    auto rm = [m](std::int64_t x) { return mod64(x, m); };
    std::array<std::int64_t, 2> origin{rm(D[0][0]), rm(D[0][1])};
    bool have_cone = false;
    for (const auto& cyc : perm_cycles(commutator(o))) {
        if (cyc.size() < 2) continue;
        std::array<std::int64_t, 2> r{rm(D[cyc[0]][0]), rm(D[cyc[0]][1])};
        if (!have_cone) {
            origin = r;
            have_cone = true;
        } else if (r != origin) {
            return std::nullopt;
        }
    }
    std::vector<int> block_id(n, -1), origins;
    for (int s = 0; s < n; ++s)
        if (rm(D[s][0]) == origin[0] && rm(D[s][1]) == origin[1]) {
            block_id[s] = static_cast<int>(origins.size());
            origins.push_back(s);
        }
    if (static_cast<int>(origins.size()) * m * m != n) return std::nullopt;
    std::vector<int> owner(n, -1);
    for (std::size_t b = 0; b < origins.size(); ++b) {
        int row = origins[b];
        for (int j = 0; j < m; ++j) {
            int s = row;
            for (int i = 0; i < m; ++i) {
                if (owner[s] >= 0) return std::nullopt;
                owner[s] = static_cast<int>(b);
                s = o.h[s];
            }
            row = o.v[row];
        }
    }
    Origami r;
    int k = static_cast<int>(origins.size());
    r.h.resize(k);
    r.v.resize(k);
    for (int b = 0; b < k; ++b) {
        int sh = origins[b], sv = origins[b];
        for (int i = 0; i < m; ++i) {
            sh = o.h[sh];
            sv = o.v[sv];
        }
        if (block_id[sh] < 0 || block_id[sv] < 0) return std::nullopt;
        r.h[b] = block_id[sh];
        r.v[b] = block_id[sv];
    }
    return r;
}

Origami reflect(const Origami& o) { return Origami{o.h, perm_inverse(o.v)}; }

PushResult push_zero(const Origami& o, int s, PushDir dir) {
    Perm k = commutator(o);
    int s1 = s, s2 = k[s];
    if (s2 == s1 || k[s2] != s1) throw Error(ErrorKind::InvalidArgument, "push_zero needs a cone point of angle 4*pi");
    Perm hi = perm_inverse(o.h), vi = perm_inverse(o.v);
    PushResult res;
    res.origami = o;
    Origami& r = res.origami;
    switch (dir) {
        case PushDir::Right: {
            int t1 = vi[s1], t2 = vi[s2];
            r.v[t1] = s2;
            r.v[t2] = s1;
            res.moved_vertex_square = o.h[s1];
            break;
        }
        case PushDir::Up: {
            int t1 = hi[s1], t2 = hi[s2];
            r.h[t1] = s2;
            r.h[t2] = s1;
            res.moved_vertex_square = o.v[s1];
            break;
        }
        case PushDir::Left: {
            int u1 = hi[s1], u2 = hi[s2];
            int t1 = vi[u1], t2 = vi[u2];
            r.v[t1] = u2;
            r.v[t2] = u1;
            res.moved_vertex_square = u1;
            break;
        }
        case PushDir::Down: {
            int u1 = vi[s1], u2 = vi[s2];
            int t1 = hi[u1], t2 = hi[u2];
            r.h[t1] = u2;
            r.h[t2] = u1;
            res.moved_vertex_square = u1;
            break;
        }
    }
    res.merged = branching_profile(r) != branching_profile(o);
    return res;
}

// --- hyperelliptic involution ----------------------------------------------

static std::optional<std::vector<int>> involution_from(const Origami& o, int image0) {
    const int n = o.n_squares();
    Perm hi = perm_inverse(o.h), vi = perm_inverse(o.v);
    std::vector<int> j(n, -1);
    j[0] = image0;
    std::deque<int> q{0};
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        // j(h(s)) = h^{-1}(j(s)), j(v(s)) = v^{-1}(j(s)) and the inverse relations.
        const std::array<std::pair<int, int>, 4> rel{{{o.h[s], hi[j[s]]}, {o.v[s], vi[j[s]]}, {hi[s], o.h[j[s]]}, {vi[s], o.v[j[s]]}}};
        for (auto [t, img] : rel) {
            if (j[t] < 0) {
                j[t] = img;
                q.push_back(t);
            } else if (j[t] != img) {
                return std::nullopt;
            }
        }
    }
    std::vector<char> used(n, 0);
    for (int s = 0; s < n; ++s) {
        if (used[j[s]]) return std::nullopt;
        used[j[s]] = 1;
    }
    return j;
}

WeierstrassData weierstrass(const Origami& o) {
    const int n = o.n_squares();
    int nv = 0;
    auto vid = vertex_of_square(o, &nv);
    auto D = develop(o);
    for (int img = 0; img < n; ++img) {
        auto j = involution_from(o, img);
        if (!j) continue;
        WeierstrassData w;
        w.involution = *j;
        std::vector<char> vfixed(nv, 0);
        for (int s = 0; s < n; ++s) {
            int t = (*j)[s];
            if (t == s) w.points.push_back({{2 * D[s][0] + 1, 2 * D[s][1] + 1}, FixedPoint::Kind::SquareCenter, s});
            if (t == o.h[s]) w.points.push_back({{2 * D[s][0] + 2, 2 * D[s][1] + 1}, FixedPoint::Kind::VerticalEdge, s});
            if (t == o.v[s]) w.points.push_back({{2 * D[s][0] + 1, 2 * D[s][1] + 2}, FixedPoint::Kind::HorizontalEdge, s});
            // lower-left corner of s goes to the upper-right corner of j(s)
            int ur = vid[o.v[o.h[t]]];
            if (ur == vid[s] && !vfixed[vid[s]]) {
                vfixed[vid[s]] = 1;
                w.points.push_back({{2 * D[s][0], 2 * D[s][1]}, FixedPoint::Kind::Vertex, s});
            }
        }
        if (w.points.size() != 6) continue;
        // zeros swapped?
        std::vector<int> cone;
        for (const auto& cyc : perm_cycles(commutator(o)))
            if (cyc.size() > 1) cone.push_back(vid[cyc[0]]);
        w.swaps_zeros = cone.size() == 2 && !vfixed[cone[0]] && !vfixed[cone[1]];
        // Profile over the four fixed points of z -> c - z on C/Per.
        Lattice2 per = lattice_span(period_generators(o, D));
        std::int64_t pa = to_i64(per.a), pb = to_i64(per.b), pc = to_i64(per.c);
        std::int64_t cx = D[0][0] + D[(*j)[0]][0] + 1, cy = D[0][1] + D[(*j)[0]][1] + 1;
        std::array<int, 4> counts{0, 0, 0, 0};
        for (const auto& p : w.points) {
            std::int64_t lx = p.twice_pos[0] - cx, ly = p.twice_pos[1] - cy;
            // (lx, ly) lies in Per; read its coordinates in the HNF basis modulo 2.
            if (ly % pc != 0) throw Error(ErrorKind::InvolutionNotFound, "fixed point off the period lattice");
            std::int64_t k2 = ly / pc;
            std::int64_t rx = lx - k2 * pb;
            if (rx % pa != 0) throw Error(ErrorKind::InvolutionNotFound, "fixed point off the period lattice");
            std::int64_t k1 = rx / pa;
            counts[mod64(k1, 2) * 2 + mod64(k2, 2)] += 1;
        }
        std::array<int, 4> sorted = counts;
        std::sort(sorted.begin(), sorted.end());
        // Put the fiber whose count differs from the other three first.
        if (sorted[0] != sorted[1] && sorted[1] == sorted[3]) w.profile = {sorted[0], sorted[1], sorted[2], sorted[3]};
        else if (sorted[3] != sorted[2] && sorted[0] == sorted[2]) w.profile = {sorted[3], sorted[0], sorted[1], sorted[2]};
        else w.profile = {sorted[3], sorted[2], sorted[1], sorted[0]};
        return w;
    }
    throw Error(ErrorKind::InvolutionNotFound, "no affine involution with six fixed points");
}

int integer_weierstrass_count(const Origami& o) {
    TypeSig t = classify(o);
    if (t.stratum == Stratum::H11 && t.torsion % 2 == 0) return 0;
    int c = 0;
    for (const auto& p : weierstrass(o).points)
        if (p.kind == FixedPoint::Kind::Vertex) ++c;
    return c;
}

SpinValue spin(const Origami& o) {
    TypeSig t = classify(o);
    if (t.stratum == Stratum::H11 && t.torsion % 2 == 0)
        throw Error(ErrorKind::SpinUndefined, "spin is undefined for even torsion");
    SpinValue sv;
    sv.iwp = integer_weierstrass_count(o);
    sv.epsilon = (sv.iwp == 0 || sv.iwp == 3) ? 0 : 1;
    return sv;
}

// --- Klein quotient ------------------------------------------------------

Origami klein_project(const Origami& o) {
    TypeSig t = classify(o);
    if (t.degree != 4 || t.stratum != Stratum::H11) throw Error(ErrorKind::WrongDegree, "klein_project needs a degree-4 surface in H(1,1)");
    const int n = o.n_squares();
    auto D = develop(o);
    Lattice2 per = lattice_span(period_generators(o, D));
    std::int64_t pa = to_i64(per.a), pb = to_i64(per.b), pc = to_i64(per.c);
    // Reduce developed positions modulo Per to find the fibres of X -> C/Per.
    auto reduce = [&](std::int64_t x, std::int64_t y) {
        std::int64_t k2 = y >= 0 ? y / pc : -((-y + pc - 1) / pc);
        y -= k2 * pc;
        x -= k2 * pb;
        x = mod64(x, pa);
        return std::make_pair(x, y);
    };
    std::map<std::pair<std::int64_t, std::int64_t>, int> fiber_index;
    std::vector<std::vector<int>> fibers;
    std::vector<int> fiber_of(n), pos_in_fiber(n);
    for (int s = 0; s < n; ++s) {
        auto key = reduce(D[s][0], D[s][1]);
        auto [it, inserted] = fiber_index.try_emplace(key, static_cast<int>(fibers.size()));
        if (inserted) fibers.emplace_back();
        fiber_of[s] = it->second;
        pos_in_fiber[s] = static_cast<int>(fibers[it->second].size());
        fibers[it->second].push_back(s);
    }
    for (const auto& f : fibers)
        if (f.size() != 4) throw Error(ErrorKind::WrongDegree, "fibres of the degree-4 map do not have 4 squares");
    // The three pair-partitions of {0,1,2,3}, indexed by the partner of 0.
    auto partition_of = [](int a, int b) {  // partition containing the pair {a,b}
        int lo = std::min(a, b), hi2 = std::max(a, b);
        if (lo == 0) return hi2 - 1;
        // complement pair contains 0
        int partner = 6 - lo - hi2;  // {0,1,2,3} minus {lo,hi2} = {0, partner}
        return partner - 1;
    };
    const int m = static_cast<int>(fibers.size());
    Origami r;
    r.h.resize(3 * m);
    r.v.resize(3 * m);
    for (int f = 0; f < m; ++f) {
        for (int p = 0; p < 3; ++p) {
            // pair {0, p+1} and its complement
            int a = fibers[f][0], b = fibers[f][p + 1];
            for (int k = 0; k < 2; ++k) {
                int ta = k == 0 ? o.h[a] : o.v[a];
                int tb = k == 0 ? o.h[b] : o.v[b];
                int g = fiber_of[ta];
                if (fiber_of[tb] != g) throw Error(ErrorKind::WrongDegree, "monodromy does not preserve fibres");
                int img = g * 3 + partition_of(pos_in_fiber[ta], pos_in_fiber[tb]);
                (k == 0 ? r.h : r.v)[f * 3 + p] = img;
            }
        }
    }
    if (!is_transitive(r)) throw Error(ErrorKind::Degenerate, "projected surface is disconnected");
    auto prof = branching_profile(r);
    if (prof != std::vector<int>{2, 2}) throw Error(ErrorKind::Degenerate, "projected surface is not in H(1,1)");
    return canonical(r);
}

// --- JSON ------------------------------------------------------------------

std::string to_json(const Origami& o) {
    nlohmann::json j;
    j["n_squares"] = o.n_squares();
    j["h"] = o.h;
    j["v"] = o.v;
    return j.dump();
}

Origami origami_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("bad origami JSON: ") + e.what());
    }
    Origami o;
    o.h = j.at("h").get<Perm>();
    o.v = j.at("v").get<Perm>();
    int n = j.at("n_squares").get<int>();
    check_perm(o.h, n, "h");
    check_perm(o.v, n, "v");
    return o;
}

}  // namespace squaretile
