/*
   Copyright 2026 The ay-surfaces Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ay/veech.hpp"

#include <sstream>

namespace ay {

Mat2 Mat2::identity(const NumberField& F) {
    return {NFElem(F, Rational(1)), NFElem(F), NFElem(F), NFElem(F, Rational(1))};
}

Mat2 Mat2::diag(const NFElem& x, const NFElem& y) { return {x, NFElem(x.field()), NFElem(x.field()), y}; }

Mat2 Mat2::inverse() const {
    NFElem D = det();
    if (D.is_zero()) throw VeechError("singular matrix");
    NFElem r = D.inverse();
    return {d * r, -b * r, -c * r, a * r};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 operator*(const NFElem& s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

std::string to_string(const Mat2& m) {
    std::ostringstream os;
    os << "[" << m.a << ", " << m.b << "; " << m.c << ", " << m.d << "]";
    return os.str();
}

Mat2 IntMat2::over(const NumberField& F) const {
    return {NFElem(F, Rational(X)), NFElem(F, Rational(Y)), NFElem(F, Rational(Z)), NFElem(F, Rational(W))};
}

IntMat2 IntMat2::operator*(const IntMat2& o) const {
    return {X * o.X + Y * o.Z, X * o.Y + Y * o.W, Z * o.X + W * o.Z, Z * o.Y + W * o.W};
}

IntMat2 IntMat2::inverse() const {
    if (det() != 1) throw VeechError("inverse needs det 1");
    return {W, -Y, -Z, X};
}

std::string to_string(TraceClass c) {
    switch (c) {
    case TraceClass::finite_order: return "finite_order";
    case TraceClass::parabolic_cylinder: return "parabolic_cylinder";
    case TraceClass::pseudo_anosov: return "pseudo_anosov";
    }
    return "?";
}

TraceClass trace_classify(const Mat2& m) {
    const NumberField& F = m.field();
    NFElem one(F, Rational(1));
    if (!(m.det().abs() == one)) throw VeechError("trace_classify: |det| != 1");
    NFElem t = m.trace().abs();
    NFElem two(F, Rational(2));
    if (t < two) return TraceClass::finite_order;
    if (t == two) {
        if (m.b.is_zero() && m.c.is_zero() && m.a == m.d) return TraceClass::finite_order;
        return TraceClass::parabolic_cylinder;
    }
    return TraceClass::pseudo_anosov;
}

const NumberField& golden_field() { return NumberField::get(2); }

NFElem sqrt5() { return NFElem::alpha(golden_field()) * Rational(2) + Rational(1); }

Mat2 lattice_m1() {
    const NumberField& F = golden_field();
    NFElem one(F, Rational(1)), a = NFElem::alpha(F);
    return {one, -a, a, one};
}

Mat2 lattice_m2() {
    const NumberField& F = golden_field();
    NFElem one(F, Rational(1)), a = NFElem::alpha(F);
    return {a, -one, one, a};
}

namespace {

void require_det1(const IntMat2& m) {
    if (m.det() != 1) throw VeechError("matrix must have determinant 1");
}

} // namespace

Mat2 conjugation_entries(const IntMat2& m) {
    require_det1(m);
    const NumberField& F = golden_field();
    const long X = m.X, Y = m.Y, Z = m.Z, W = m.W;
    auto e = [&](long v) { return NFElem(F, Rational(v, 5)); };
    return {e(4 * X + 2 * (Y + Z) + W), e(4 * Y + 2 * (W - X) - Z), e(4 * Z + 2 * (W - X) - Y),
            e(4 * W - 2 * (Y + Z) + X)};
}

Mat2 direct_conjugation(const IntMat2& m) {
    require_det1(m);
    static const Mat2 left = lattice_m2().inverse() * lattice_m1();
    static const Mat2 right = lattice_m1().inverse() * lattice_m2();
    return left * m.over(golden_field()) * right;
}

bool is_integral(const Mat2& m) {
    for (const NFElem* x : {&m.a, &m.b, &m.c, &m.d})
        if (!x->is_rational() || x->rational_value().get_den() != 1) return false;
    return true;
}

bool in_intersection(const IntMat2& m) {
    require_det1(m);
    long r = (m.X + 3 * m.Y + 3 * m.Z + 4 * m.W) % 5;
    return r == 0;
}

SublatticeReport sublattice_index5() {
    SublatticeReport rep;
    auto add = [&](std::string name, bool pass, std::string detail) {
        rep.ok = rep.ok && pass;
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    const NumberField& F = golden_field();
    const Mat2 M1 = lattice_m1(), M2 = lattice_m2();
    const Mat2 A = IntMat2{2, -1, 1, 2}.over(F);
    const NFElem five(F, Rational(5));
    const NFElem r5 = sqrt5();
    add("sqrt5_squared", r5 * r5 == five, "(2 alpha + 1)^2 = 5");
    Mat2 s1 = M1.inverse() * (r5 * M2);
    add("m1_inv_sqrt5_m2", s1 == A, to_string(s1));
    add("det_index", s1.det() == five, "det = " + to_string(s1.det().rational_value()));
    Mat2 s2 = M2.inverse() * (r5 * M1);
    add("m2_inv_sqrt5_m1", s2 == A.transpose(), to_string(s2));
    add("det_index_other", s2.det() == five, "det = " + to_string(s2.det().rational_value()));
    const NFElem a = NFElem::alpha(F);
    const NFElem scal = a / (NFElem(F, Rational(2)) - a);
    add("scalar_is_inv_sqrt5", scal == r5.inverse(), "alpha / (2 - alpha) = 1 / sqrt 5");
    Mat2 p = M1.inverse() * M2;
    add("m1_inv_m2", p == scal * A, to_string(p));
    add("transpose", p == (M2.inverse() * M1).transpose(), "M1^-1 M2 = (M2^-1 M1)^T");
    return rep;
}

SweepResult sweep(int range) {
    SweepResult res;
    res.range = range;
    for (long X = -range; X <= range; ++X)
        for (long Y = -range; Y <= range; ++Y)
            for (long Z = -range; Z <= range; ++Z)
                for (long W = -range; W <= range; ++W) {
                    IntMat2 m{X, Y, Z, W};
                    if (m.det() != 1) continue;
                    ++res.candidates;
                    bool crit = in_intersection(m);
                    Mat2 c = conjugation_entries(m);
                    bool integral = is_integral(c);
                    res.members += crit;
                    if (crit != integral || !(c == direct_conjugation(m))) {
                        ++res.disagreements;
                        if (res.counterexamples.size() < 8) res.counterexamples.push_back(m);
                    }
                }
    return res;
}

Mat2 psi_derivative(int g) {
    NFElem a = NFElem::alpha(g);
    return Mat2::diag(a.inverse(), a);
}

} // namespace ay
