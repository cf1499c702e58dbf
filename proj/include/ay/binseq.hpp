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

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ay {

class BinSeqError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by F_inf_inv on the two points without a preimage.
class NoPreimage : public BinSeqError {
public:
    using BinSeqError::BinSeqError;
};

/*
 * Eventually periodic binary sequence a_0 a_1 a_2 ..., read as the binary
 * expansion sum a_i 2^-(i+1) of a point of [0, 1).  Stored as preperiod and
 * period words over {'0', '1'}.
 *
 * Canonical form: the period is primitive and the preperiod does not end with
 * the last period digit (otherwise it rotates into the period).  Sequences with
 * tail 1111... are not in the space and are rejected.
 */
class BinSeq {
public:
    BinSeq() : BinSeq("", "0") {}
    BinSeq(std::string preperiod, std::string period);

    /// Text form "u(v)", e.g. "11(0)" for 3/4 and "(01)" for 1/3.
    static BinSeq parse(std::string_view text);
    static BinSeq from_rational(const Rational& x);

    const std::string& preperiod() const { return pre_; }
    const std::string& period() const { return per_; }

    int digit(std::size_t i) const;
    BinSeq with_flipped(std::size_t i) const;
    BinSeq prepended(int bit) const;

    bool is_dyadic() const { return per_ == "0"; }
    Rational value() const;
    std::string str() const;

    friend bool operator==(const BinSeq&, const BinSeq&) = default;
    friend auto operator<=>(const BinSeq&, const BinSeq&) = default;

private:
    void canonicalize();

    std::string pre_;
    std::string per_;
};

BinSeq f_inf(const BinSeq& a);
BinSeq f_inf_inv(const BinSeq& a);
/// f_inf^n (negative n uses the inverse).
BinSeq f_inf_pow(BinSeq a, std::int64_t n);

/// Image of the zero sequence under F_inf; the algorithm leaves it undefined.
enum class FZeroConvention { one_third, two_thirds };

BinSeq F_inf(const BinSeq& a, FZeroConvention conv = FZeroConvention::one_third);
/// Throws NoPreimage on (01) and (10).
BinSeq F_inf_inv(const BinSeq& a);

enum class Generator { r, h_prime, h_double_prime, h_inf };
BinSeq apply_generator(const BinSeq& a, Generator which);
std::optional<Generator> parse_generator(std::string_view name);

/// Parity of the number of ones; dyadic input only.
int tm(const BinSeq& a);
/// Largest index carrying a 1 (0 for the zero sequence); dyadic input only.
std::size_t ind(const BinSeq& a);

enum class OrbitBase { zero, half };

struct OrbitClassification {
    OrbitBase base;
    Integer n;
};

/// (base, n) with f_inf^n(base) = a, a dyadic.
OrbitClassification classify_orbit(const BinSeq& a);

struct ConjugacyReport {
    std::size_t samples = 0;
    bool ok = true;
    std::string failed_identity;
    std::optional<BinSeq> counterexample;
};

/// Checks r f r = f^-1, f^2 h' = h' f^-1, f^2 h'' = h'' f, f^2 h_inf = h_inf f.
ConjugacyReport verify_conjugacies(std::size_t sample_count, std::uint64_t seed = 1);

/// True for 1...10000... and 1...1010000... (possibly no leading ones).
bool is_discontinuity(const BinSeq& a);

/// Preperiod length 0..12, period length 1..8, fair digits.
BinSeq random_binseq(std::mt19937_64& rng);
/// Dyadic with at most max_digits significant digits.
BinSeq random_dyadic(std::mt19937_64& rng, std::size_t max_digits = 16);

} // namespace ay
