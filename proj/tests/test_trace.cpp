#include <doctest.h>

#include <numeric>

#include "squaretile/orbits.hpp"
#include "squaretile/trace.hpp"

using namespace squaretile;

namespace {

SurfPoint vertex_point(const Tiling& t, int v) {
    const VertexRecord& r = t.vertices[v];
    return {r.cyl, Rational(r.x), Rational(r.y), 1};
}

int first_vertex(const Tiling& t, VertexClass c) {
    for (std::size_t v = 0; v < t.vertices.size(); ++v)
        if (t.vertices[v].cls == c) return static_cast<int>(v);
    return -1;
}

}  // namespace

TEST_CASE("vertical segments from the cusps of the smallest leaf") {
    Tiling t = build(2);
    auto cusps = cusp_sources(t);
    REQUIRE(cusps.size() == 3);
    for (int c : cusps) {
        TraceResult r = trace(t, vertex_point(t, c), 0, 1);
        CHECK(r.stop == TraceStop::HitSingularity);
        CHECK(r.length == 1);
        REQUIRE(r.end_vertex >= 0);
        CHECK(r.end_vertex != c);
        // one crossing per unit of vertical length at most
        CHECK(r.crossings.size() <= 1);
    }
}

TEST_CASE("segment along an eave bottom ends at a zero") {
    Tiling t = build(3);
    const int E = eave_index(t, 1);
    const int H = t.cyls[E].H;
    SurfPoint cusp{E, Rational(0), Rational(H), 1};
    REQUIRE(t.vertices[vertex_at(t, cusp)].cls == VertexClass::CuspPole);
    TraceResult r = trace(t, cusp, 1, 0);
    CHECK(r.stop == TraceStop::HitSingularity);
    CHECK(r.length == 1);
    CHECK(t.vertices[r.end_vertex].cls == VertexClass::Zero);
}

TEST_CASE("trace preconditions") {
    Tiling t = build(5);
    int zero = first_vertex(t, VertexClass::Zero), pole = first_vertex(t, VertexClass::NonCuspPole);
    for (int v : {zero, pole}) {
        try {
            trace(t, vertex_point(t, v), 1, 1);
            FAIL("expected StartsAtSingularity");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::StartsAtSingularity);
        }
    }
    SurfPoint p{0, Rational(1) / 2, Rational(1) / 3, 6};
    CHECK_THROWS_AS(trace(t, p, 0, 0), Error);
    CHECK_THROWS_AS(trace(t, p, 2, 4), Error);
}

TEST_CASE("segments retrace backwards") {
    for (int d : {3, 5}) {
        Tiling t = build(d);
        auto pts = rational_points(t, 3);
        int checked = 0;
        for (std::size_t i = 0; i < pts.size(); i += 7)
            for (auto dir : {std::array<int, 2>{1, 2}, {3, -1}, {0, 1}, {2, 5}}) {
                TraceOptions opt;
                opt.max_length = 3;
                TraceResult fwd = trace(t, pts[i], dir[0], dir[1], opt);
                if (fwd.stop != TraceStop::ExhaustedLength) continue;
                if (fwd.end_vertex >= 0 && t.vertices[fwd.end_vertex].cls != VertexClass::Regular) continue;
                TraceOptions back;
                back.target = pts[i];
                back.max_length = fwd.length + 1;
                TraceResult bwd = trace(t, fwd.end, -fwd.final_dir[0], -fwd.final_dir[1], back);
                CAPTURE(to_json(pts[i]));
                REQUIRE(bwd.stop == TraceStop::ReachedTarget);
                CHECK(bwd.length <= fwd.length);
                if (bwd.length < fwd.length) {
                    // the forward segment passed its start again: it is periodic with that length
                    TraceOptions loop;
                    loop.target = pts[i];
                    loop.max_length = fwd.length;
                    TraceResult again = trace(t, pts[i], dir[0], dir[1], loop);
                    CHECK(again.stop == TraceStop::ReachedTarget);
                    CHECK(again.length == fwd.length - bwd.length);
                }
                ++checked;
            }
        CHECK(checked > 10);
    }
}

TEST_CASE("crossings are exact rationals on the expected grid") {
    Tiling t = build(5);
    SurfPoint p{0, Rational(1) / 3, Rational(2) / 3, 3};
    TraceOptions opt;
    opt.max_length = 10;
    TraceResult r = trace(t, p, 3, 7, opt);
    REQUIRE(!r.crossings.empty());
    for (const Crossing& c : r.crossings) {
        CHECK(c.u >= 0);
        CHECK(c.u <= 1);
        CHECK((3 * 3 * 7) % denominator(c.u) == 0);
    }
    // splitting the segment at its length bound and continuing gives the same crossings
    TraceOptions shorter;
    shorter.max_length = 4;
    TraceResult head = trace(t, p, 3, 7, shorter);
    REQUIRE(head.crossings.size() <= r.crossings.size());
    for (std::size_t i = 0; i < head.crossings.size(); ++i) CHECK(head.crossings[i] == r.crossings[i]);
}

TEST_CASE("search directions") {
    auto dirs = search_directions(1);
    CHECK(dirs == std::vector<std::array<int, 2>>{{0, 1}, {1, 0}, {1, -1}, {1, 1}});
    for (const auto& d : search_directions(6)) CHECK(std::gcd(d[0], std::abs(d[1])) == 1);
    CHECK_THROWS_AS(search_directions(0), Error);
}

TEST_CASE("witnesses for small leaves replay") {
    for (int d : {2, 3}) {
        Tiling t = build(d);
        auto src = cusp_sources(t);
        for (int n : {2, 3}) {
            auto pts = rational_points(t, n);
            auto ws = illuminate(t, pts, src, 20);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                REQUIRE(ws[i].has_value());
                TraceResult r = replay(t, *ws[i], pts[i]);
                CHECK(r.stop == TraceStop::ReachedTarget);
                CHECK(r.length == ws[i]->length);
                auto single = witness(t, pts[i], src, 20);
                REQUIRE(single.has_value());
                CHECK(single->p == ws[i]->p);
                CHECK(single->q == ws[i]->q);
                CHECK(single->source_vertex == ws[i]->source_vertex);
            }
        }
    }
}

TEST_CASE("illumination does not depend on the number of workers") {
    Tiling t = build(5);
    auto pts = rational_points(t, 2);
    auto src = cusp_sources(t);
    auto a = illuminate(t, pts, src, 20, 1), b = illuminate(t, pts, src, 20, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].has_value() == b[i].has_value());
        if (a[i]) CHECK(to_json(*a[i]) == to_json(*b[i]));
    }
    CHECK_THROWS_AS(illuminate(t, pts, {first_vertex(t, VertexClass::Zero)}, 3), Error);
}
