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

#pragma once

#include "ay/numfield.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ay {

class VeechError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 2x2 matrix [a b; c d] over one number field.
struct Mat2 {
    NFElem a, b, c, d;

    static Mat2 identity(const NumberField& F);
    static Mat2 diag(const NFElem& x, const NFElem& y);

    const NumberField& field() const { return a.field(); }
    NFElem det() const { return a * d - b * c; }
    NFElem trace() const { return a + d; }
    Mat2 inverse() const;
    Mat2 transpose() const { return {a, c, b, d}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    friend Mat2 operator*(const NFElem& s, const Mat2& m);
    friend bool operator==(const Mat2& x, const Mat2& y) = default;
};

std::string to_string(const Mat2& m);

struct IntMat2 {
    long X = 1, Y = 0, Z = 0, W = 1;

    long det() const { return X * W - Y * Z; }
    Mat2 over(const NumberField& F) const;
    IntMat2 operator*(const IntMat2& o) const;
    IntMat2 inverse() const;  // det must be 1
    friend bool operator==(const IntMat2&, const IntMat2&) = default;
};

enum class TraceClass { finite_order, parabolic_cylinder, pseudo_anosov };

std::string to_string(TraceClass c);

/// Classification by |trace| for |det| = 1: < 2, = 2 (except +-I, which is
/// finite order), > 2.  Throws VeechError otherwise.
TraceClass trace_classify(const Mat2& m);

/// Q(sqrt 5), the g = 2 field, and sqrt 5 = 2 alpha + 1 in it.
const NumberField& golden_field();
NFElem sqrt5();
/// [1 -alpha; alpha 1] and [alpha -1; 1 alpha] over Q(sqrt 5).
Mat2 lattice_m1();
Mat2 lattice_m2();

/// (1/5) [4X+2(Y+Z)+W, 4Y+2(W-X)-Z; 4Z+2(W-X)-Y, 4W-2(Y+Z)+X].
Mat2 conjugation_entries(const IntMat2& m);
/// M2^-1 M1 m M1^-1 M2 multiplied out in Q(sqrt 5).
Mat2 direct_conjugation(const IntMat2& m);
bool is_integral(const Mat2& m);
/// X + 3Y + 3Z + 4W = 0 mod 5.
bool in_intersection(const IntMat2& m);

struct VeechCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct SublatticeReport {
    bool ok = true;
    std::vector<VeechCheck> checks;
};

SublatticeReport sublattice_index5();

struct SweepResult {
    int range = 0;
    long candidates = 0;
    long members = 0;
    long disagreements = 0;
    std::vector<IntMat2> counterexamples;  // first few
};

/// All det-1 integer matrices with entries in [-range, range]: criterion
/// against integrality of the exact conjugate.
SweepResult sweep(int range);

/// diag(1/alpha_g, alpha_g).
Mat2 psi_derivative(int g);

} // namespace ay
