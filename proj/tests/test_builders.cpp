// Unit tests for the surface builders.

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "ay/builders.hpp"
#include "ay/iet.hpp"
#include "ay/surface.hpp"

using namespace ay;

namespace {

// Oracle: alpha_g by floating-point bisection on x^g + ... + x - 1.
double alpha_double(int g) {
    double lo = 0.5, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = (lo + hi) / 2, v = -1, p = 1;
        for (int k = 1; k <= g; ++k) v += (p *= mid);
        (v > 0 ? hi : lo) = mid;
    }
    return lo;
}

// Oracle: staircase area as a sum of rectangles, widths alpha^k and heights
// alpha + ... + alpha^(g-k+1).
NFElem staircase_area(int g) {
    const NumberField& F = NumberField::get(g);
    NFElem a = NFElem::alpha(F), total(F);
    for (int k = 1; k <= g; ++k) {
        NFElem h(F);
        for (int j = 1; j <= g - k + 1; ++j) h += a.pow(j);
        total += a.pow(k) * h;
    }
    return total;
}

bool is_power_of_two(const Rational& r) {
    mpz_class n = r.get_num(), d = r.get_den();
    return n > 0 && (n & (n - 1)) == 0 && (d & (d - 1)) == 0;
}

int class_at(const Surface& s, const Point& p) {
    for (int t = 0; t < static_cast<int>(s.size()); ++t)
        for (int k = 0; k < 3; ++k)
            if (s.vertex(t, k) == p) return s.vertex_data().class_of_corner(t, k);
    return -1;
}

} // namespace

TEST_CASE("genus 1 and 2") {
    Surface t = build_staircase(1);
    CHECK(validate(t).ok);
    CHECK(euler_genus(t).genus == 1);
    CHECK(area(t) == NFElem(t.field(), Rational(1)));

    Surface s = build_staircase(2);
    CHECK(validate(s).ok);
    auto top = euler_genus(s);
    CHECK(top.genus == -1);
    REQUIRE(top.components.size() == 2);
    for (const auto& c : top.components) CHECK(c.genus == 1);
    CHECK(singular_windings(s).empty());
    CHECK(area(s) == staircase_area(2));
    CHECK(first_return_iet(s, section_from_edges(s, staircase_bottom(s))) == build_f_g(2));
}

TEST_CASE("staircase: genus, cone points, area and first return") {
    for (int g = 3; g <= 8; ++g) {
        CAPTURE(g);
        Surface s = build_staircase(g);
        REQUIRE(validate(s).ok);
        CHECK(euler_genus(s).genus == g);
        CHECK(euler_genus(s).euler == 2 - 2 * g);
        CHECK(singular_windings(s) == std::vector<int>{g, g});
        CHECK(area(s) == staircase_area(g));
        Section bottom = section_from_edges(s, staircase_bottom(s));
        CHECK(bottom.length == NFElem(s.field(), Rational(1)));
        CHECK(first_return_iet(s, bottom) == build_f_g(g));
        // Lower slit endpoints are regular points.
        auto sp = staircase_spec(g);
        for (const auto& x : sp.slit_x) {
            int c = class_at(s, Point{x, NFElem(s.field())});
            REQUIRE(c >= 0);
            CHECK(s.vertex_data().classes[c].regular());
        }
    }
}

TEST_CASE("slit lengths") {
    for (int g = 3; g <= 6; ++g) {
        auto len = slit_lengths(g);
        REQUIRE(len.size() == static_cast<std::size_t>(g));
        double a = alpha_double(g);
        for (int i = 1; i <= g; ++i) CHECK(len[i - 1].to_double() == doctest::Approx(std::pow(a, i + 1) / (1 - a)).epsilon(1e-12));
    }
}

TEST_CASE("other slit placements add cone points") {
    for (int g = 4; g <= 6; ++g) {
        CAPTURE(g);
        for (SlitOrder o : {SlitOrder::direct, SlitOrder::shifted}) {
            Surface s = build_staircase(g, o);
            REQUIRE(validate(s).ok);
            auto w = singular_windings(s);
            CHECK(w.size() > 2);
            CHECK(std::count(w.begin(), w.end(), 2) >= 2);
            // The suspension is unchanged.
            CHECK(first_return_iet(s, section_from_edges(s, staircase_bottom(s))) == build_f_g(g));
        }
    }
}

TEST_CASE("triangle presentation") {
    for (int g = 3; g <= 8; ++g) {
        CAPTURE(g);
        Surface s = build_triangulation(g);
        REQUIRE(validate(s).ok);
        auto top = euler_genus(s);
        CHECK(top.faces == 4 * g);
        CHECK(top.vertices == 2);
        CHECK(top.genus == g);
        CHECK(singular_windings(s) == std::vector<int>{g, g});
        CHECK(area(s) == staircase_area(g));
        CHECK(triangulation_labels(g).size() == static_cast<std::size_t>(4 * g));
    }
}

TEST_CASE("triangle vertices against floating point") {
    for (int g : {3, 5, 9}) {
        double a = alpha_double(g);
        auto pts = triangulation_points(g);
        auto near = [&](const std::string& l, double x, double y) {
            CAPTURE(l);
            CHECK(pts.at(l).x.to_double() == doctest::Approx(x).epsilon(1e-12));
            CHECK(pts.at(l).y.to_double() == doctest::Approx(y).epsilon(1e-12));
            CHECK(pts.at(l + "'").y.to_double() == doctest::Approx(-y).epsilon(1e-12));
        };
        auto A = [&](int k) { return std::pow(a, k); };
        near("P0", (1 - A(g)) / 2, A(2) / (1 - a));
        near("Q0", -A(g) / 2, a);
        near("P1", -(A(g - 1) + A(g)) / 2, (a - A(2) + A(3)) / (1 - a));
        near("P" + std::to_string(g), 1 + (a - A(g)) / 2, (3 * a - 1 - A(2)) / (1 - a));
        near("P2", (a - A(2)) / (1 - a), a / (1 - a));
        near("Q1", (2 * a - a - A(2)) / (2 * (1 - a)), (a - A(g + 1)) / (1 - a));
    }
}

TEST_CASE("triangle presentation is a translate of the staircase") {
    for (int g = 3; g <= 6; ++g) {
        CAPTURE(g);
        Surface st = build_staircase(g);
        Surface tr = build_triangulation(g);
        TranslationMap m = find_translation_equivalence(st, tr);
        CAPTURE(m.reason);
        REQUIRE(m.ok);
        Section bottom = section_from_edges(st, staircase_bottom(st));
        Section image = map_section(st, tr, m, bottom);
        CHECK(image.length == bottom.length);
        CHECK(first_return_iet(tr, image) == build_f_g(g));
        TranslationMap back = find_translation_equivalence(tr, st);
        CHECK(back.ok);
    }
    // Not a translate of a staircase with a different slit placement.
    Surface other = build_staircase(4, SlitOrder::direct);
    CHECK_FALSE(find_translation_equivalence(build_triangulation(4), other).ok);
}

TEST_CASE("saddle connections parallel to P_{g-1} Q_{g-1}") {
    for (int g = 3; g <= 7; ++g) {
        CAPTURE(g);
        Surface s = build_triangulation(g);
        auto pts = triangulation_points(g);
        std::string i = std::to_string(g - 1);
        Vec v = pts.at("Q" + i) - pts.at("P" + i);
        auto sc = saddle_connections_within(s, norm2(v));
        int same = 0;
        for (const auto& c : sc) same += c.vector == v || c.vector == -v;
        Vec w = pts.at("Q1") - pts.at("P0");
        if (g == 3) {
            CHECK(same == 2);
            CHECK((w == v || w == -v));
        } else {
            CHECK(same == 1);
        }
    }
}

TEST_CASE("glued edges by label") {
    int g = 4;
    Surface s = build_triangulation(g);
    EdgeRef e = triangulation_edge(g, "Q0", "P0");
    auto p = s.partner(e);
    REQUIRE(p);
    auto labels = triangulation_labels(g);
    const auto& lt = labels[p->tri];
    std::set<std::string> ends{lt[p->edge], lt[(p->edge + 1) % 3]};
    CHECK(ends == std::set<std::string>{"P0'", "Q4'"});
    CHECK_THROWS_AS(triangulation_edge(g, "P0", "P1"), BuildError);
    CHECK_THROWS_AS(build_triangulation(2), BuildError);
}

TEST_CASE("psi and rho checks") {
    for (int g = 3; g <= 8; ++g) {
        CAPTURE(g);
        auto p = verify_psi(g);
        CHECK(p.ok);
        CHECK(p.items.size() == 5);
        auto r = verify_rho(g);
        CHECK(r.ok);
    }
}

TEST_CASE("limit truncations") {
    for (int N = 1; N <= 12; ++N) {
        CAPTURE(N);
        Surface s = build_limit_truncation(N);
        CHECK(validate(s).ok);
        CHECK(area(s).rational_value() == limit_truncation_area(N));
        if (N >= 2) CHECK(euler_genus(s).genus > euler_genus(build_limit_truncation(N - 1)).genus);
    }
    CHECK_THROWS_AS(build_limit_truncation(0), BuildError);
}

TEST_CASE("vertical saddle connections of the limit have length a power of 2") {
    auto scan = limit_vertical_saddles(8, 6);
    CHECK(scan.incomplete == 0);
    CHECK(scan.found.size() >= 60);
    for (const auto& v : scan.found) {
        CAPTURE(v.x);
        CHECK(is_power_of_two(v.length));
    }
    // The edge of the square from (0, 0) to (0, 1/2).
    auto it = std::find_if(scan.found.begin(), scan.found.end(), [](const VerticalSaddle& v) { return v.x == 0; });
    REQUIRE(it != scan.found.end());
    CHECK(it->length == Rational(1, 2));
}

TEST_CASE("limit vertices") {
    using P = std::pair<Rational, Rational>;
    CHECK(limit_vertex("P0") == P{Rational(1, 2), Rational(1, 2)});
    CHECK(limit_vertex("Q0") == P{Rational(0), Rational(1, 2)});
    CHECK(limit_vertex("P2") == P{Rational(1, 2), Rational(1)});
    CHECK(limit_vertex("P3") == P{Rational(3, 4), Rational(1)});
    CHECK(limit_vertex("Q1") == P{Rational(1, 4), Rational(1)});
    CHECK_THROWS_AS(limit_vertex("X1"), BuildError);
    CHECK_THROWS_AS(limit_vertex("P1x"), BuildError);
}

TEST_CASE("vertex convergence") {
    auto rep = vertex_convergence_check(12);
    CHECK(rep.ok);
    CHECK(rep.monotone);
    CHECK(rep.max_by_genus.size() == 10);
    // Oracle for one row: P0 at g = 10 in floating point.
    double a = alpha_double(10);
    double dx = (1 - std::pow(a, 10)) / 2 - 0.5, dy = a * a / (1 - a) - 0.5;
    auto row = std::find_if(rep.rows.begin(), rep.rows.end(), [](const auto& r) { return r.g == 10 && r.label == "P0"; });
    REQUIRE(row != rep.rows.end());
    CHECK(row->distance == doctest::Approx(std::hypot(dx, dy)).epsilon(1e-9));
}
