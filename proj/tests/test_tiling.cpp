#include <doctest.h>

#include <map>
#include <set>

#include "squaretile/tiling.hpp"

using namespace squaretile;

namespace {

// Independent classification of a vertex: the limit surface of the three-cylinder
// polygon at the vertex's integral coordinates, tiled at scale 1.
VertexClass limit_class(const Tiling& t, int cyl, int x, int y) {
    SurfPoint p{cyl, Rational(x), Rational(y), 1};
    Origami o = polygon_origami(point_to_coords(t.cyls, p), 1);
    if (!is_transitive(o)) return VertexClass::NonCuspPole;
    auto prof = branching_profile(o);
    if (prof.empty()) return VertexClass::CuspPole;
    if (prof == std::vector<int>{3}) return VertexClass::Zero;
    REQUIRE(prof == std::vector<int>{2, 2});
    return VertexClass::Regular;
}

long long psl2(int d) {
    long long sl = 1, m = d;
    sl = m * m * m;
    for (int p = 2; p <= d; ++p)
        if (d % p == 0 && is_prime(p)) sl = sl / (p * p) * (p * p - 1);
    return d == 2 ? 6 : sl / 2;
}

long long sl2(int n) {
    long long sl = 1LL * n * n * n;
    for (int p = 2; p <= n; ++p)
        if (n % p == 0 && is_prime(p)) sl = sl / (p * p) * (p * p - 1);
    return sl;
}

}  // namespace

TEST_CASE("tiling censuses") {
    // (zeros, noncusp, cusp, regular) and genus.
    std::map<int, std::pair<Census, int>> expected{
        {2, {{0, 1, 3, 0}, 0}}, {3, {{3, 3, 4, 0}, 0}}, {5, {{27, 19, 12, 24}, 0}}, {7, {{90, 58, 24, 160}, 3}}};
    for (auto [d, e] : expected) {
        Tiling t = build(d);
        CHECK(vertex_census(t) == e.first);
        CHECK(genus(t) == e.second);
    }
    CHECK(build(2).squares.size() == 2);
    CHECK(build(3).squares.size() == 8);
    CHECK(build(7).squares.size() == 336);
    CHECK_THROWS_AS(build(4), Error);
    try {
        build(9);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedDegree);
    }
}

TEST_CASE("gluing is an involution and vertices have the right corner counts") {
    for (int d : {2, 3, 5, 7}) {
        Tiling t = build(d);
        for (std::size_t s = 0; s < t.squares.size(); ++s)
            for (int k = 0; k < 4; ++k) {
                EdgeRef e{static_cast<int>(s), static_cast<Side>(k)};
                const Glue& g = t.partner(e);
                CHECK(t.partner(g.partner).partner == e);
                CHECK(t.partner(g.partner).parity == g.parity);
            }
        for (const auto& v : t.vertices) {
            int want = v.cls == VertexClass::Zero ? 6 : v.cls == VertexClass::Regular ? 4 : 2;
            CHECK(v.corner_count == want);
        }
    }
}

TEST_CASE("vertex classes agree with limit surfaces") {
    for (int d : {2, 3, 5, 7}) {
        Tiling t = build(d);
        for (std::size_t s = 0; s < t.squares.size(); ++s) {
            const Square& sq = t.squares[s];
            const CylSpec& cs = t.cyls[sq.cyl];
            for (int k = 0; k < 4; ++k) {
                int x = (sq.col + (k == 1 || k == 2)) % cs.W, y = sq.row + (k >= 2);
                VertexClass want = limit_class(t, sq.cyl, x, y);
                CHECK_MESSAGE(t.vertices[t.corner_vertex[s][k]].cls == want, "d=", d, " cyl=", sq.cyl, " x=", x,
                              " y=", y);
            }
        }
    }
}

TEST_CASE("stories and the eave graph") {
    CHECK(stories(build(2)).empty());
    auto s3 = stories(build(3));
    REQUIRE(s3.size() == 1);
    Tiling t3 = build(3);
    REQUIRE(s3[0].cylinders.size() == 2);
    const CylSpec& eave = t3.cyls[s3[0].cylinders[0]];
    const CylSpec& light = t3.cyls[s3[0].cylinders[1]];
    CHECK(std::tie(eave.w1, eave.s1, eave.w2, eave.s2) == std::make_tuple(1, 1, 2, 1));
    CHECK(std::tie(light.w1, light.s1, light.w2, light.s2) == std::make_tuple(1, 1, 1, 2));
    auto s5 = stories(build(5));
    REQUIRE(s5.size() == 2);
    CHECK(s5[0].cylinders.size() == 4);
    CHECK(s5[1].cylinders.size() == 3);
    auto s7 = stories(build(7));
    REQUIRE(s7.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(s7[i].index == i + 1);

    for (int d : {3, 5, 7, 11}) {
        Tiling t = build(d);
        TrivalentGraph g = trivalent_graph(t);
        CHECK(g.complement_components == (d - 1) / 2);
        CHECK(g.complement_euler == g.complement_components);
        CHECK(!g.vertices.empty());
        for (int v : g.vertices) CHECK(g.degree(v) == 3);
        for (auto [a, b] : g.edges) {
            // every edge starts at a zero; the other end is a zero or a cusp pole
            bool za = t.vertices[a].cls == VertexClass::Zero, zb = t.vertices[b].cls == VertexClass::Zero;
            CHECK((za || zb));
            if (!za) CHECK(t.vertices[a].cls == VertexClass::CuspPole);
            if (!zb) CHECK(t.vertices[b].cls == VertexClass::CuspPole);
        }
    }
}

TEST_CASE("sub-complex Euler characteristic") {
    Tiling t = build(5);
    std::vector<int> all(t.squares.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    int comps = 0;
    CHECK(sub_complex_euler(t, all, &comps) == 2 - 2 * genus(t));
    CHECK(comps == 1);
    CHECK(sub_complex_euler(t, {0}) == 1);
}

TEST_CASE("zip of glued points agree") {
    for (int d : {5, 7, 11}) {
        Tiling t = build(d);
        int checked = 0;
        for (std::size_t c = 0; c < t.cyls.size(); ++c) {
            const CylSpec& cs = t.cyls[c];
            if (cs.s1 == cs.s2) continue;
            for (int j = 0; j < cs.W; ++j) {
                SurfPoint p{static_cast<int>(c), Rational(j) + ratio(1, 2), Rational(cs.H), 2};
                auto q = glued_occurrence(t, p);
                REQUIRE(q);
                CHECK(q->y == 0);
                TwoCylCoords down = zip(point_to_coords(t.cyls, p), ZipDir::Down);
                TwoCylCoords up = zip(point_to_coords(t.cyls, *q), ZipDir::Up);
                CHECK(down == up);
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("zip formulas and errors") {
    CylCoords c{2, 1, 3, 2, ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2), 2};
    TwoCylCoords up = zip(c, ZipDir::Up);
    CHECK(up.type == 1);
    CHECK(up.T2 == mod(Rational(3) - c.t2 + c.t3, Integer(3)));
    TwoCylCoords down = zip(c, ZipDir::Down);
    CHECK(down.type == 2);
    CHECK(std::tie(down.W1, down.H1, down.W2, down.H2) == std::make_tuple(3, 1, 5, 1));
    CHECK(down.T1 == c.t2);  // labels follow the taller cylinder
    CylCoords integral{2, 1, 3, 2, Rational(1), Rational(1), Rational(1), ratio(1, 2), 2};
    try {
        zip(integral, ZipDir::Up);
        FAIL("expected IntegralTwist");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IntegralTwist);
    }
    CylCoords eave{2, 1, 3, 1, ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2), 2};
    try {
        zip(eave, ZipDir::Down);
        FAIL("expected EaveBottom");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EaveBottom);
    }
}

TEST_CASE("rational points are counted by the Table") {
    CHECK(rational_points(build(2), 3).size() == 16);
    CHECK(rational_points(build(3), 5).size() == 192);
    CHECK(rational_points(build(2), 2).size() == 6);
    for (int d : {2, 3, 5})
        for (int n = 2; n <= 6; ++n) {
            long long row9 = (d - 1) * psl2(d) * sl2(n) / (3 * n);
            CHECK_MESSAGE(static_cast<long long>(rational_points(build(d), n).size()) == row9, "d=", d, " n=", n);
        }
}

TEST_CASE("points and origamis correspond one to one") {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {5, 2}, {5, 3}, {3, 4}}) {
        Tiling t = build(d);
        auto pts = rational_points(t, n);
        auto st = enumerate(d, n);
        REQUIRE(pts.size() == st.size());
        std::set<Origami> images;
        for (const SurfPoint& p : pts) {
            Origami o = point_to_origami(t, p);
            CHECK(classify(o).torsion == n);
            images.insert(o);
            CHECK(origami_to_point(t, o) == p);
        }
        CHECK(images == std::set<Origami>(st.begin(), st.end()));
    }
}

TEST_CASE("delta image and spin") {
    Tiling t2 = build(2);
    SurfPoint p{0, ratio(2, 5), ratio(2, 5), 5};
    DeltaImage img = delta_image(t2, p);
    REQUIRE(img.epsilon);
    CHECK(*img.epsilon == 0);
    CHECK(img.point == PillowPoint{2, 2, 5});
    SurfPoint q{0, ratio(1, 5), ratio(2, 5), 5};
    CHECK(*delta_image(t2, q).epsilon == 1);
    CHECK(!delta_image(t2, SurfPoint{0, ratio(1, 2), ratio(1, 2), 2}).epsilon);

    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 3}, {3, 5}, {5, 3}, {7, 3}}) {
        Tiling t = build(d);
        DeltaChart chart = delta_chart(t);
        int counts[2] = {0, 0};
        for (const SurfPoint& pt : rational_points(t, n)) {
            int eps = *delta_image(t, chart, pt).epsilon;
            ++counts[eps];
            if (d <= 5) CHECK(spin(point_to_origami(t, pt)).epsilon == eps);
        }
        CHECK(counts[1] == 3 * counts[0]);
    }
}

TEST_CASE("tiling JSON and SVG") {
    for (int d : {2, 3, 5}) {
        Tiling t = build(d);
        CHECK(tiling_from_json(tiling_to_json(t)) == t);
        CHECK(tiling_to_json(t) == tiling_to_json(build(d)));
    }
    std::string svg = tiling_to_svg(build(3));
    auto count = [&](const std::string& needle) {
        std::size_t k = 0, pos = 0;
        while ((pos = svg.find(needle, pos)) != std::string::npos) {
            ++k;
            ++pos;
        }
        return k;
    };
    CHECK(count("class=\"square\"") == 8);
    CHECK(count("class=\"story\"") == 1);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK_THROWS_AS(tiling_from_json("{\"d\": 3}"), Error);
    CHECK_THROWS_AS(write_file("/nonexistent-dir/x.svg", svg), Error);
    SurfPoint p{1, ratio(3, 4), ratio(1, 2), 4};
    CHECK(surfpoint_from_json(to_json(p)) == p);
}
