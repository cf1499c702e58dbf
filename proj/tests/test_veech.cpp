// Unit tests for derivative classification and the genus-2 lattice computation.

#include "doctest.h"

#include "ay/veech.hpp"

#include <array>
#include <random>

using namespace ay;

namespace {

// Oracle: p + q sqrt5 with rational p, q, independent of the field kernel.
struct Q5 {
    Rational p, q;
    Q5 operator+(const Q5& o) const { return {Rational(p + o.p), Rational(q + o.q)}; }
    Q5 operator*(const Q5& o) const { return {Rational(p * o.p + 5 * q * o.q), Rational(p * o.q + q * o.p)}; }
    Q5 inv() const {
        Rational n = p * p - 5 * q * q;
        return {Rational(p / n), Rational(-q / n)};
    }
    bool operator==(const Q5&) const = default;
};
using M = std::array<Q5, 4>;

M mul(const M& x, const M& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

M inv(const M& m) {
    Q5 d = m[0] * m[3] + Q5{-1, 0} * m[1] * m[2];
    Q5 r = d.inv();
    Q5 neg{-1, 0};
    return {m[3] * r, neg * m[1] * r, neg * m[2] * r, m[0] * r};
}

// alpha = (sqrt5 - 1) / 2.
const Q5 A{Rational(-1, 2), Rational(1, 2)};
const Q5 ONE{1, 0};

M oracle_conjugate(long X, long Y, long Z, long W) {
    Q5 negA{Rational(1, 2), Rational(-1, 2)};
    M m1{ONE, negA, A, ONE}, m2{A, Q5{-1, 0}, ONE, A};
    M m{Q5{X, 0}, Q5{Y, 0}, Q5{Z, 0}, Q5{W, 0}};
    return mul(mul(mul(inv(m2), m1), m), mul(inv(m1), m2));
}

bool oracle_integral(const M& m) {
    for (const auto& e : m)
        if (e.q != 0 || e.p.get_den() != 1) return false;
    return true;
}

// Element of Q(sqrt 5) from the field kernel as p + q sqrt5.
Q5 as_q5(const NFElem& x) {
    // c0 + c1 alpha = (c0 - c1/2) + (c1/2) sqrt5
    Rational c0 = x.coeffs().size() > 0 ? x.coeffs()[0] : Rational(0);
    Rational c1 = x.coeffs().size() > 1 ? x.coeffs()[1] : Rational(0);
    return {Rational(c0 - c1 / 2), Rational(c1 / 2)};
}

std::vector<IntMat2> enumerate(int r) {
    std::vector<IntMat2> out;
    for (long X = -r; X <= r; ++X)
        for (long Y = -r; Y <= r; ++Y)
            for (long Z = -r; Z <= r; ++Z)
                for (long W = -r; W <= r; ++W)
                    if (X * W - Y * Z == 1) out.push_back({X, Y, Z, W});
    return out;
}

} // namespace

TEST_CASE("trace classification") {
    const NumberField& Q = NumberField::get(1);
    auto q = [&](long n, long d = 1) { return NFElem(Q, Rational(n, d)); };
    CHECK(trace_classify(Mat2::identity(Q)) == TraceClass::finite_order);
    CHECK(trace_classify(Mat2::diag(q(-1), q(-1))) == TraceClass::finite_order);
    CHECK(trace_classify(Mat2::diag(q(2), q(1, 2))) == TraceClass::pseudo_anosov);
    CHECK(Mat2::diag(q(2), q(1, 2)).trace() == q(5, 2));
    CHECK(trace_classify(Mat2{q(0), q(-1), q(1), q(0)}) == TraceClass::finite_order);
    CHECK(trace_classify(Mat2{q(1), q(1), q(0), q(1)}) == TraceClass::parabolic_cylinder);
    CHECK(trace_classify(Mat2{q(-1), q(1), q(0), q(-1)}) == TraceClass::parabolic_cylinder);
    CHECK(trace_classify(Mat2{q(0), q(1), q(1), q(0)}) == TraceClass::finite_order);
    CHECK_THROWS_AS(trace_classify(Mat2::diag(q(2), q(1))), VeechError);
    for (int g = 2; g <= 12; ++g) {
        CAPTURE(g);
        Mat2 d = psi_derivative(g);
        CHECK(d.det() == NFElem(NumberField::get(g), Rational(1)));
        // (1 - alpha)^2 > 0 rearranges to 1/alpha + alpha > 2.
        NFElem a = NFElem::alpha(g);
        CHECK((a - Rational(1)) * (a - Rational(1)) > NFElem(a.field()));
        CHECK(trace_classify(d) == TraceClass::pseudo_anosov);
    }
}

TEST_CASE("lattice matrices and the index-5 sublattice") {
    NFElem r5 = sqrt5();
    CHECK(r5 * r5 == NFElem(golden_field(), Rational(5)));
    SublatticeReport rep = sublattice_index5();
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CHECK(c.pass);
    }
    CHECK(rep.ok);
    // 2 - alpha = sqrt5 alpha, so alpha / (2 - alpha) = 1 / sqrt5.
    Q5 two_minus_a = Q5{2, 0} + Q5{-1, 0} * A;
    CHECK(two_minus_a == Q5{0, 1} * A);
    CHECK(IntMat2{2, -1, 1, 2}.det() == 5);
}

TEST_CASE("conjugation formula against an independent oracle") {
    CHECK(conjugation_entries({1, 0, 0, 1}) == Mat2::identity(golden_field()));
    CHECK(is_integral(conjugation_entries({1, 5, 0, 1})));
    CHECK_FALSE(is_integral(conjugation_entries({1, 1, 0, 1})));
    CHECK_THROWS_AS(conjugation_entries({2, 0, 0, 1}), VeechError);
    for (const IntMat2& m : enumerate(3)) {
        CAPTURE(m.X);
        CAPTURE(m.Y);
        CAPTURE(m.Z);
        CAPTURE(m.W);
        Mat2 c = conjugation_entries(m);
        M o = oracle_conjugate(m.X, m.Y, m.Z, m.W);
        CHECK(as_q5(c.a) == o[0]);
        CHECK(as_q5(c.b) == o[1]);
        CHECK(as_q5(c.c) == o[2]);
        CHECK(as_q5(c.d) == o[3]);
        CHECK(direct_conjugation(m) == c);
    }
}

TEST_CASE("mod 5 criterion") {
    CHECK(in_intersection({1, 0, 0, 1}));
    CHECK(in_intersection({1, 5, 0, 1}));
    CHECK_FALSE(in_intersection({1, 1, 0, 1}));
    CHECK_THROWS_AS(in_intersection({1, 1, 1, 1}), VeechError);
    long members = 0, total = 0;
    for (const IntMat2& m : enumerate(10)) {
        ++total;
        bool crit = in_intersection(m);
        members += crit;
        if (crit != oracle_integral(oracle_conjugate(m.X, m.Y, m.Z, m.W))) {
            CAPTURE(m.X);
            CAPTURE(m.Y);
            CAPTURE(m.Z);
            CAPTURE(m.W);
            FAIL("criterion and integrality disagree");
        }
        auto mod5 = [](long v) { return ((v % 5) + 5) % 5; };
        if (mod5(m.X) == 1 && mod5(m.W) == 1 && mod5(m.Y) == 0 && mod5(m.Z) == 0) CHECK(crit);
    }
    SweepResult s = sweep(10);
    CHECK(s.candidates == total);
    CHECK(s.members == members);
    CHECK(s.disagreements == 0);
    CHECK(in_intersection({1, 0, 5, 1}));
}

TEST_CASE("criterion set is closed under products and inverses") {
    std::vector<IntMat2> in;
    for (const IntMat2& m : enumerate(10))
        if (in_intersection(m)) in.push_back(m);
    REQUIRE(in.size() > 10);
    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<std::size_t> pick(0, in.size() - 1);
    for (int k = 0; k < 1000; ++k) {
        const IntMat2& a = in[pick(rng)];
        const IntMat2& b = in[pick(rng)];
        CHECK(in_intersection(a * b));
        CHECK(in_intersection(a.inverse()));
    }
}
