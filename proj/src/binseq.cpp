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

#include "ay/binseq.hpp"

#include <map>

namespace ay {

namespace {

bool is_word(std::string_view w) { return w.find_first_not_of("01") == std::string_view::npos; }

char flip(char c) { return c == '0' ? '1' : '0'; }

} // namespace

BinSeq::BinSeq(std::string preperiod, std::string period) : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty()) throw BinSeqError("period must be nonempty");
    if (!is_word(pre_) || !is_word(per_)) throw BinSeqError("digits must be 0 or 1");
    canonicalize();
}

void BinSeq::canonicalize() {
    const std::size_t p = per_.size();
    for (std::size_t d = 1; d < p; ++d) {
        if (p % d) continue;
        bool periodic = true;
        for (std::size_t i = d; i < p && periodic; ++i) periodic = per_[i] == per_[i - d];
        if (periodic) {
            per_.resize(d);
            break;
        }
    }
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_.pop_back();
        per_.insert(per_.begin(), per_.back());
        per_.pop_back();
    }
    if (per_ == "1") throw BinSeqError("sequences ending in 111... are excluded");
}

BinSeq BinSeq::parse(std::string_view text) {
    auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')' || text.find('(', open + 1) != std::string_view::npos)
        throw BinSeqError("expected the form u(v)");
    return BinSeq(std::string(text.substr(0, open)), std::string(text.substr(open + 1, text.size() - open - 2)));
}

BinSeq BinSeq::from_rational(const Rational& x) {
    if (x < 0 || x >= 1) throw BinSeqError("value outside [0, 1)");
    Integer num = x.get_num(), den = x.get_den();
    std::map<Integer, std::size_t> seen;
    std::string digits;
    while (!seen.contains(num)) {
        seen.emplace(num, digits.size());
        num *= 2;
        if (num >= den) {
            digits.push_back('1');
            num -= den;
        } else {
            digits.push_back('0');
        }
    }
    std::size_t start = seen[num];
    return BinSeq(digits.substr(0, start), digits.substr(start));
}

int BinSeq::digit(std::size_t i) const {
    if (i < pre_.size()) return pre_[i] - '0';
    return per_[(i - pre_.size()) % per_.size()] - '0';
}

BinSeq BinSeq::with_flipped(std::size_t i) const {
    std::string pre = pre_;
    std::size_t shift = 0;
    while (pre.size() <= i) {
        pre.push_back(per_[shift]);
        shift = (shift + 1) % per_.size();
    }
    pre[i] = flip(pre[i]);
    return BinSeq(std::move(pre), per_.substr(shift) + per_.substr(0, shift));
}

BinSeq BinSeq::prepended(int bit) const { return BinSeq(std::string(1, bit ? '1' : '0') + pre_, per_); }

Rational BinSeq::value() const {
    Integer P(0), Q(0);
    for (char c : pre_) P = 2 * P + (c - '0');
    for (char c : per_) Q = 2 * Q + (c - '0');
    Integer full = (Integer(1) << per_.size()) - 1;
    Rational v = Rational(P) + Rational(Q, full);
    v /= Rational(Integer(1) << pre_.size());
    v.canonicalize();
    return v;
}

std::string BinSeq::str() const { return pre_ + "(" + per_ + ")"; }

// ---------------------------------------------------------------------------

namespace {

std::size_t first_zero(const BinSeq& a) {
    std::size_t limit = a.preperiod().size() + a.period().size();
    for (std::size_t i = 0; i < limit; ++i)
        if (a.digit(i) == 0) return i;
    throw BinSeqError("sequence has no zero digit");
}

} // namespace

BinSeq f_inf(const BinSeq& a) { return a.with_flipped(first_zero(a) + 1).with_flipped(0); }

BinSeq f_inf_inv(const BinSeq& a) {
    BinSeq b = a.with_flipped(0);
    return b.with_flipped(first_zero(b) + 1);
}

BinSeq f_inf_pow(BinSeq a, std::int64_t n) {
    for (; n > 0; --n) a = f_inf(a);
    for (; n < 0; ++n) a = f_inf_inv(a);
    return a;
}

namespace {

BinSeq flip_alternate(const BinSeq& a, std::size_t i) {
    BinSeq b = a;
    for (std::size_t k = i; k >= 1; k -= 2) {
        b = b.with_flipped(k - 1);
        if (k < 2) break;
    }
    return b;
}

} // namespace

BinSeq F_inf(const BinSeq& a, FZeroConvention conv) {
    std::size_t limit = a.preperiod().size() + a.period().size() + 1;
    for (std::size_t i = 1; i <= limit; ++i)
        if (a.digit(i) != a.digit(0)) return flip_alternate(a, i);
    // Constant sequence; only the zero sequence is in the space.
    return conv == FZeroConvention::one_third ? BinSeq("", "01") : BinSeq("", "10");
}

BinSeq F_inf_inv(const BinSeq& a) {
    std::size_t limit = a.preperiod().size() + 2 * a.period().size() + 1;
    for (std::size_t i = 1; i <= limit; ++i)
        if (a.digit(i) == a.digit(i - 1)) return flip_alternate(a, i);
    throw NoPreimage("no preimage under F_inf: " + a.str());
}

BinSeq apply_generator(const BinSeq& a, Generator which) {
    switch (which) {
    case Generator::r: return a.with_flipped(0);
    case Generator::h_prime: return a.prepended(0);
    case Generator::h_double_prime: return a.prepended(1);
    case Generator::h_inf: return a.with_flipped(0).prepended(0);
    }
    throw BinSeqError("unknown generator");
}

std::optional<Generator> parse_generator(std::string_view name) {
    if (name == "r") return Generator::r;
    if (name == "h1" || name == "h'" || name == "h_prime") return Generator::h_prime;
    if (name == "h2" || name == "h''" || name == "h_double_prime") return Generator::h_double_prime;
    if (name == "hinf" || name == "h_inf") return Generator::h_inf;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

int tm(const BinSeq& a) {
    if (!a.is_dyadic()) throw BinSeqError("tm: input is not dyadic");
    int parity = 0;
    for (char c : a.preperiod()) parity ^= c - '0';
    return parity;
}

std::size_t ind(const BinSeq& a) {
    if (!a.is_dyadic()) throw BinSeqError("ind: input is not dyadic");
    return a.preperiod().empty() ? 0 : a.preperiod().size() - 1;
}

OrbitClassification classify_orbit(const BinSeq& a) {
    if (!a.is_dyadic()) throw BinSeqError("classify_orbit: input is not dyadic");
    std::string w = a.preperiod();
    Integer n(0);
    while (w.size() >= 2) {
        const std::size_t m = w.size() - 1;
        // eta_0 ... eta_{m-2} commute past f^e, each doubling the exponent and
        // h' also reversing its sign.
        Integer term(w[m - 1] == '1' ? 1 : -1);
        for (std::size_t i = 0; i + 1 < m; ++i) term *= w[i] == '0' ? -2 : 2;
        n += term;
        w[m - 1] = flip(w[m - 1]);
        w.pop_back();
        while (!w.empty() && w.back() == '0') w.pop_back();
    }
    return {w.empty() ? OrbitBase::zero : OrbitBase::half, n};
}

ConjugacyReport verify_conjugacies(std::size_t sample_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ConjugacyReport rep;
    auto gen = [](Generator g) { return [g](const BinSeq& x) { return apply_generator(x, g); }; };
    auto r = gen(Generator::r), h1 = gen(Generator::h_prime), h2 = gen(Generator::h_double_prime),
         hi = gen(Generator::h_inf);
    auto f2 = [](const BinSeq& x) { return f_inf(f_inf(x)); };
    for (std::size_t s = 0; s < sample_count; ++s) {
        BinSeq a = random_binseq(rng);
        ++rep.samples;
        const char* bad = nullptr;
        if (!(r(f_inf(r(a))) == f_inf_inv(a))) bad = "r f r = f^-1";
        else if (!(f2(h1(a)) == h1(f_inf_inv(a)))) bad = "f^2 h' = h' f^-1";
        else if (!(f2(h2(a)) == h2(f_inf(a)))) bad = "f^2 h'' = h'' f";
        else if (!(f2(hi(a)) == hi(f_inf(a)))) bad = "f^2 h_inf = h_inf f";
        if (bad) {
            rep.ok = false;
            rep.failed_identity = bad;
            rep.counterexample = a;
            break;
        }
    }
    return rep;
}

bool is_discontinuity(const BinSeq& a) {
    if (!a.is_dyadic()) return false;
    const std::string& p = a.preperiod();
    std::size_t k = p.find_first_not_of('1');
    if (k == std::string::npos) return true;
    return p.substr(k) == "01";
}

BinSeq random_binseq(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pre_len(0, 12), per_len(1, 8), bit(0, 1);
    for (;;) {
        std::string pre, per;
        for (int i = pre_len(rng); i > 0; --i) pre.push_back(bit(rng) ? '1' : '0');
        for (int i = per_len(rng); i > 0; --i) per.push_back(bit(rng) ? '1' : '0');
        if (per.find('0') == std::string::npos) continue;
        return BinSeq(std::move(pre), std::move(per));
    }
}

BinSeq random_dyadic(std::mt19937_64& rng, std::size_t max_digits) {
    std::uniform_int_distribution<std::size_t> len(0, max_digits);
    std::uniform_int_distribution<int> bit(0, 1);
    std::string pre;
    for (std::size_t i = len(rng); i > 0; --i) pre.push_back(bit(rng) ? '1' : '0');
    return BinSeq(std::move(pre), "0");
}

} // namespace ay
