// Unit tests for triangle complexes, vertex links, flow and saddle connections.

#include "doctest.h"

#include <map>
#include <numeric>

#include "ay/builders.hpp"
#include "ay/surface.hpp"

using namespace ay;

namespace {

const NumberField& Q() { return NumberField::get(1); }
NFElem q(long p, long d = 1) { return NFElem(Q(), Rational(p, d)); }
Point pt(long x, long y) { return make_point(Q(), x, y); }

// Oracle: vertices by union-find over corners, identifying the endpoints of
// glued edges pairwise.  Independent of the link walk in the library.
long count_vertices(const Surface& s) {
    const int n = static_cast<int>(s.size()) * 3;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int t = 0; t < static_cast<int>(s.size()); ++t)
        for (int k = 0; k < 3; ++k) {
            auto p = s.partner({t, k});
            if (!p) continue;
            // Edge k runs v_k -> v_{k+1}; its partner runs the other way.
            parent[find(3 * t + k)] = find(3 * p->tri + (p->edge + 1) % 3);
            parent[find(3 * t + (k + 1) % 3)] = find(3 * p->tri + p->edge);
        }
    long roots = 0;
    for (int i = 0; i < n; ++i) roots += find(i) == i;
    return roots;
}

// Oracle: shoelace area of every triangle.
Rational shoelace(const Surface& s) {
    Rational total = 0;
    for (int t = 0; t < static_cast<int>(s.size()); ++t) {
        Rational twice = 0;
        for (int k = 0; k < 3; ++k) {
            const Point &a = s.vertex(t, k), &b = s.vertex(t, k + 1);
            twice += a.x.rational_value() * b.y.rational_value() - b.x.rational_value() * a.y.rational_value();
        }
        total += twice / 2;
    }
    return total;
}

} // namespace

TEST_CASE("points and vectors") {
    Point a = pt(1, 2), b = pt(4, 6);
    Vec d = b - a;
    CHECK(norm2(d) == q(25));
    CHECK(cross(Vec{q(1), q(0)}, Vec{q(0), q(1)}) == q(1));
    CHECK(dot(d, d) == norm2(d));
    CHECK(a + d == b);
}

TEST_CASE("add_triangle rejects clockwise and degenerate triangles") {
    Surface s(Q());
    CHECK_THROWS_AS(s.add_triangle(pt(0, 0), pt(0, 1), pt(1, 0)), SurfaceError);
    CHECK_THROWS_AS(s.add_triangle(pt(0, 0), pt(1, 1), pt(2, 2)), SurfaceError);
    CHECK(s.add_triangle(pt(0, 0), pt(1, 0), pt(0, 1)) == 0);
}

TEST_CASE("unit torus") {
    Surface s = build_unit_torus(1);
    CHECK(validate(s).ok);
    auto top = euler_genus(s);
    CHECK(top.vertices == 1);
    CHECK(top.vertices == count_vertices(s));
    CHECK(top.edges == 3);
    CHECK(top.faces == 2);
    CHECK(top.genus == 1);
    CHECK(singular_windings(s).empty());
    auto cones = cone_windings(s);
    REQUIRE(cones.size() == 1);
    CHECK(cones[0].closed);
    CHECK(cones[0].winding == 1);
    CHECK(area(s) == q(1));
    CHECK(area(s).rational_value() == shoelace(s));
}

TEST_CASE("a mismatched gluing is invalid") {
    Surface s = build_unit_torus(1);
    // Glue the bottom edge to the diagonal instead of the top.
    auto p = s.partner({0, 0});
    REQUIRE(p);
    s.unglue({0, 0});
    s.unglue({0, 1});
    s.glue({0, 0}, {0, 1});
    auto rep = validate(s);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.issues.empty());
}

TEST_CASE("vertical flow on the torus returns after length 1") {
    Surface s = build_unit_torus(1);
    EdgeRef bottom{-1, -1};
    for (int t = 0; t < 2; ++t)
        for (int k = 0; k < 3; ++k)
            if (s.vertex(t, k) == pt(0, 0) && s.vertex(t, k + 1) == pt(1, 0)) bottom = {t, k};
    REQUIRE(bottom.tri >= 0);
    Section sec = section_from_edges(s, {bottom});
    CHECK(sec.length == q(1));
    TraceOptions opt;
    opt.section = &sec;
    auto [t, p] = sec.locate(q(1, 3));
    auto r = trace(s, t, p, Vec{q(0), q(1)}, opt);
    CHECK(r.kind == TraceKind::returns_to_section);
    CHECK(r.length == q(1));
    REQUIRE(r.section_position);
    CHECK(*r.section_position == q(1, 3));
    // The first return map of a torus is the identity.
    CHECK(first_return_iet(s, sec) == IntervalExchange::identity(q(1)));
    // Slope 1/2 flow: return after two turns, shifted by 1/2.
    auto r2 = trace(s, t, p, Vec{q(1, 2), q(1)}, opt);
    CHECK(r2.kind == TraceKind::returns_to_section);
    CHECK(*r2.section_position == q(5, 6));
}

TEST_CASE("trace stops on a budget") {
    Surface s = build_unit_torus(1);
    TraceOptions opt;
    opt.budget = 10;
    // A closed horizontal leaf avoiding the vertex never ends.
    auto r = trace(s, 0, Point{q(1, 2), q(1, 4)}, Vec{q(1), q(0)}, opt);
    CHECK(r.kind == TraceKind::exceeds_budget);
}

TEST_CASE("trace stops at a given length") {
    Surface s = build_unit_torus(1);
    TraceOptions opt;
    opt.max_length = q(7, 2);
    // Slope 1/3 from (1/2, 1/4): after parameter 7/2 the unfolded point is
    // (1/2 + 7/6, 1/4 + 7/2), i.e. (2/3, 3/4) on the torus.
    auto r = trace(s, 0, Point{q(1, 2), q(1, 4)}, Vec{q(1, 3), q(1)}, opt);
    CHECK(r.kind == TraceKind::reached_length);
    CHECK(r.length == q(7, 2));
    CHECK(r.end == Point{q(2, 3), q(3, 4)});
}

TEST_CASE("saddle connections on the torus") {
    Surface s = build_unit_torus(1);
    auto sc = saddle_connections_up_to(s, q(1));
    std::map<std::string, int> seen;
    for (const auto& c : sc) ++seen[to_string(c.vector)];
    // Length <= 1: (1, 0) and (0, 1), one each.
    CHECK(sc.size() == 2);
    CHECK(seen[to_string(Vec{q(1), q(0)})] == 1);
    CHECK(seen[to_string(Vec{q(0), q(1)})] == 1);
    // Oracle: primitive integer vectors with y > 0 or (y = 0, x > 0) and norm^2 <= 5.
    auto sc5 = saddle_connections_within(s, q(5));
    long expected = 0;
    for (long x = -3; x <= 3; ++x)
        for (long y = 0; y <= 3; ++y)
            if ((y > 0 || x > 0) && x * x + y * y <= 5 && std::gcd(x, y) == 1) ++expected;
    CHECK(static_cast<long>(sc5.size()) == expected);
}

TEST_CASE("section by development and from a corner") {
    Surface s = build_unit_torus(1);
    Section sec = section_by_development(s, 1, Point{q(1, 4), q(1, 3)}, q(1));
    CHECK(sec.length == q(1));
    CHECK(sec.pieces.size() == 3);
    // On the torus every corner of the single vertex: exactly one contains east.
    int east = 0;
    for (int t = 0; t < 2; ++t)
        for (int k = 0; k < 3; ++k) east += corner_contains(s, {t, k}, Vec{q(1), q(0)});
    CHECK(east == 1);
}

TEST_CASE("vertex count agrees with the union-find oracle on staircases") {
    for (int g = 3; g <= 5; ++g) {
        Surface s = build_staircase(g);
        CHECK(count_vertices(s) == euler_genus(s).vertices);
    }
}
