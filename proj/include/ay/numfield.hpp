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

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ay {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Isolating interval [lo, hi] for the positive root of x^g + ... + x - 1.
struct RootInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
};

/*
 * The number field Q(alpha_g), alpha_g the unique positive root of
 *
 *     m_g(x) = x^g + x^(g-1) + ... + x - 1.
 *
 * m_g is irreducible: alpha_g is the only root inside the unit disk and the
 * constant term is -1, so any factor missing alpha_g would have all roots
 * outside the disk and constant term of absolute value > 1.
 *
 * g = 1 is the degenerate field Q with alpha = 1.
 *
 * Fields are interned: NumberField::get(g) always returns the same object, so
 * elements can compare fields by address.  Root refinements are cached behind a
 * mutex; everything else is immutable.
 */
class NumberField {
public:
    static const NumberField& get(int g);

    int g() const { return g_; }
    int degree() const { return g_; }

    /// Coefficients of m_g, low degree first (length g + 1).
    const std::vector<Rational>& minpoly() const { return minpoly_; }

    /// Interval around alpha of width at most 2^-bits with dyadic endpoints.
    RootInterval root_interval(unsigned bits) const;

    /// Sign of sum c_i alpha^i, decided by interval refinement.
    int sign(std::span<const Rational> coeffs) const;

    /// Rational enclosure [lo, hi] of sum c_i alpha^i at the given precision.
    RootInterval enclose(std::span<const Rational> coeffs, unsigned bits) const;

    NumberField(const NumberField&) = delete;
    NumberField& operator=(const NumberField&) = delete;

private:
    explicit NumberField(int g);

    // Cached bisection state at a given precision.  Endpoints are L / 2^bits
    // and H / 2^bits; lpow[i] = L^i * 2^(bits (g-1-i)) so that integer sums
    // bound 2^(bits (g-1)) * value.
    struct Level {
        unsigned bits;
        Integer L, H;
        std::vector<Integer> lpow, hpow;
    };

    const Level& level(std::size_t index) const;
    int sign_at(const Level& lv, std::span<const Integer> numer) const;

    int g_;
    std::vector<Rational> minpoly_;
    mutable std::mutex mutex_;
    mutable std::vector<std::unique_ptr<Level>> levels_;
};

/// Exact element of Q(alpha_g): sum_{i<g} c_i alpha^i, always reduced.
class NFElem {
public:
    NFElem() : NFElem(NumberField::get(1)) {}
    explicit NFElem(const NumberField& field);
    NFElem(const NumberField& field, const Rational& value);
    NFElem(const NumberField& field, std::vector<Rational> coeffs);

    /// alpha itself.
    static NFElem alpha(const NumberField& field);
    static NFElem alpha(int g) { return alpha(NumberField::get(g)); }
    static NFElem rational(int g, const Rational& q) { return NFElem(NumberField::get(g), q); }

    const NumberField& field() const { return *field_; }
    int g() const { return field_->g(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Constant coefficient; only meaningful when is_rational().
    const Rational& rational_value() const { return coeffs_[0]; }

    int sign() const { return field_->sign(coeffs_); }
    NFElem inverse() const;
    NFElem pow(unsigned k) const;
    NFElem abs() const { return sign() < 0 ? -*this : *this; }

    /// Rational enclosure of the real value.
    RootInterval enclose(unsigned bits = 64) const { return field_->enclose(coeffs_, bits); }
    double to_double() const;

    NFElem& operator+=(const NFElem& o);
    NFElem& operator-=(const NFElem& o);
    NFElem& operator*=(const NFElem& o);
    NFElem& operator/=(const NFElem& o);
    NFElem& operator*=(const Rational& q);

    friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
    friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
    friend NFElem operator*(NFElem a, const NFElem& b) { return a *= b; }
    friend NFElem operator/(NFElem a, const NFElem& b) { return a /= b; }
    friend NFElem operator*(NFElem a, const Rational& q) { return a *= q; }
    friend NFElem operator*(const Rational& q, NFElem a) { return a *= q; }
    friend NFElem operator+(NFElem a, const Rational& q);
    friend NFElem operator-(NFElem a, const Rational& q);
    friend NFElem operator-(const Rational& q, const NFElem& a);
    NFElem operator-() const;

    /// Structural equality (canonical coefficients).
    friend bool operator==(const NFElem& a, const NFElem& b);
    /// Order of the real values.
    friend std::strong_ordering operator<=>(const NFElem& a, const NFElem& b);

    /// Stable textual key, e.g. "[1/2,0,-3]".
    std::string key() const;

private:
    void check_same_field(const NFElem& o) const;
    void reduce();

    const NumberField* field_;
    std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const NFElem& x);

/// Isolating interval for alpha_g of width <= width.  g = 1 gives [1, 1].
RootInterval alpha_root(int g, const Rational& width);

/// Decides 1/2^(g+2) < alpha - 1/2 < 1/2^(g+1) by exact sign tests of m_g at
/// the two rational endpoints.
bool check_half_bound(int g);

enum class ArithOp { add, sub, mul, div };
NFElem nf_arith(const NFElem& a, const NFElem& b, ArithOp op);

inline int nf_sign(const NFElem& a) { return a.sign(); }

/// Sign of the real number whose enclosures are given by two elements of
/// possibly different fields: compares a and b by refining both.  Throws if
/// no decision is reached by max_bits (the values are then presumed equal).
int compare_across_fields(const NFElem& a, const NFElem& b, unsigned max_bits = 4096);

} // namespace ay
