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

#include "ay/numfield.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ay {

namespace {

constexpr unsigned kFirstLevelBits = 16;
constexpr std::size_t kMaxLevels = 20; // 16 * 2^19 bits

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Returns (quotient, remainder) of a / b over Q; b must be nonzero.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    for (std::size_t k = a.size(); k-- >= b.size();) {
        if (a[k] == 0) continue;
        Rational f = a[k] / lead;
        std::size_t shift = k - (b.size() - 1);
        q[shift] = f;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Sign of m_g(M / 2^bits) via scaled integer Horner.
int minpoly_sign_at(int g, const Integer& M, unsigned bits) {
    Integer acc = 1;
    for (int i = g - 1; i >= 0; --i) {
        Integer term = (i == 0) ? Integer(-1) : Integer(1);
        Integer scale;
        mpz_mul_2exp(scale.get_mpz_t(), term.get_mpz_t(), bits * static_cast<unsigned>(g - i));
        acc = acc * M + scale;
    }
    return sgn(acc);
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim_ws = [](std::string& t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
    };
    trim_ws(s);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto valid_int = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!valid_int(num, true) || !valid_int(den, false))
        throw std::invalid_argument("malformed rational literal: " + s);
    if (num[0] == '+') num.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in: " + s);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------

const NumberField& NumberField::get(int g) {
    if (g < 1) throw std::invalid_argument("number field index g must be >= 1");
    static std::mutex registry_mutex;
    static std::map<int, std::unique_ptr<NumberField>> registry;
    std::lock_guard lock(registry_mutex);
    auto& slot = registry[g];
    if (!slot) slot.reset(new NumberField(g));
    return *slot;
}

NumberField::NumberField(int g) : g_(g) {
    minpoly_.assign(static_cast<std::size_t>(g) + 1, Rational(1));
    minpoly_[0] = -1;
}

const NumberField::Level& NumberField::level(std::size_t index) const {
    std::lock_guard lock(mutex_);
    if (index >= kMaxLevels) throw std::runtime_error("root refinement limit reached");
    while (levels_.size() <= index) {
        auto lv = std::make_unique<Level>();
        lv->bits = kFirstLevelBits << levels_.size();
        Integer L, H;
        unsigned from_bits = 0;
        if (levels_.empty()) {
            L = 0; // root in [0, 1]
        } else {
            const Level& prev = *levels_.back();
            from_bits = prev.bits;
            L = prev.L;
        }
        // Invariant: m(L/2^b) < 0 <= m((L+1)/2^b).
        for (unsigned b = from_bits + 1; b <= lv->bits; ++b) {
            L <<= 1;
            Integer mid = L + 1;
            if (minpoly_sign_at(g_, mid, b) < 0) L = mid;
        }
        H = L + 1;
        lv->L = L;
        lv->H = H;
        lv->lpow.resize(static_cast<std::size_t>(g_));
        lv->hpow.resize(static_cast<std::size_t>(g_));
        Integer lp = 1, hp = 1;
        for (int i = 0; i < g_; ++i) {
            unsigned shift = lv->bits * static_cast<unsigned>(g_ - 1 - i);
            mpz_mul_2exp(lv->lpow[static_cast<std::size_t>(i)].get_mpz_t(), lp.get_mpz_t(), shift);
            mpz_mul_2exp(lv->hpow[static_cast<std::size_t>(i)].get_mpz_t(), hp.get_mpz_t(), shift);
            lp *= L;
            hp *= H;
        }
        levels_.push_back(std::move(lv));
    }
    return *levels_[index];
}

RootInterval NumberField::root_interval(unsigned bits) const {
    if (g_ == 1) return {Rational(1), Rational(1)};
    std::size_t idx = 0;
    while ((kFirstLevelBits << idx) < bits) ++idx;
    const Level& lv = level(idx);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, lv.bits);
    Rational lo(lv.L, den), hi(lv.H, den);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

namespace {

// Common-denominator integer numerators of a coefficient vector.
std::pair<std::vector<Integer>, Integer> integer_numerators(std::span<const Rational> c) {
    Integer D = 1;
    for (const auto& q : c) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> n;
    n.reserve(c.size());
    for (const auto& q : c) n.emplace_back(q.get_num() * (D / q.get_den()));
    return {n, D};
}

} // namespace

int NumberField::sign_at(const Level& lv, std::span<const Integer> numer) const {
    Integer lower = 0, upper = 0;
    for (std::size_t i = 0; i < numer.size(); ++i) {
        const Integer& n = numer[i];
        if (n == 0) continue;
        if (n > 0) {
            lower += n * lv.lpow[i];
            upper += n * lv.hpow[i];
        } else {
            lower += n * lv.hpow[i];
            upper += n * lv.lpow[i];
        }
    }
    if (lower > 0) return 1;
    if (upper < 0) return -1;
    return 0; // undecided
}

int NumberField::sign(std::span<const Rational> coeffs) const {
    bool all_zero = std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return q == 0; });
    if (all_zero) return 0;
    if (g_ == 1) return sgn(coeffs[0]);
    // Fast path: a single nonzero constant.
    bool constant = std::all_of(coeffs.begin() + 1, coeffs.end(), [](const Rational& q) { return q == 0; });
    if (constant) return sgn(coeffs[0]);
    auto [numer, D] = integer_numerators(coeffs);
    for (std::size_t idx = 0;; ++idx) {
        int s = sign_at(level(idx), numer);
        if (s != 0) return s;
    }
}

RootInterval NumberField::enclose(std::span<const Rational> coeffs, unsigned bits) const {
    if (g_ == 1) return {coeffs[0], coeffs[0]};
    std::size_t idx = 0;
    while ((kFirstLevelBits << idx) < bits) ++idx;
    const Level& lv = level(idx);
    auto [numer, D] = integer_numerators(coeffs);
    Integer lower = 0, upper = 0;
    for (std::size_t i = 0; i < numer.size(); ++i) {
        const Integer& n = numer[i];
        if (n >= 0) {
            lower += n * lv.lpow[i];
            upper += n * lv.hpow[i];
        } else {
            lower += n * lv.hpow[i];
            upper += n * lv.lpow[i];
        }
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, lv.bits * static_cast<unsigned>(g_ - 1));
    Rational lo(lower, scale * D), hi(upper, scale * D);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

// ---------------------------------------------------------------------------

NFElem::NFElem(const NumberField& field)
    : field_(&field), coeffs_(static_cast<std::size_t>(field.g()), Rational(0)) {}

NFElem::NFElem(const NumberField& field, const Rational& value) : NFElem(field) {
    coeffs_[0] = value;
    coeffs_[0].canonicalize();
}

NFElem::NFElem(const NumberField& field, std::vector<Rational> coeffs)
    : field_(&field), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    reduce();
}

NFElem NFElem::alpha(const NumberField& field) {
    if (field.g() == 1) return NFElem(field, Rational(1));
    NFElem a(field);
    a.coeffs_[1] = 1;
    return a;
}

void NFElem::reduce() {
    const int g = field_->g();
    // x^g = 1 - x - ... - x^(g-1)
    for (std::size_t k = coeffs_.size(); k-- > static_cast<std::size_t>(g);) {
        Rational c = coeffs_[k];
        if (c == 0) continue;
        coeffs_[k] = 0;
        std::size_t base = k - static_cast<std::size_t>(g);
        coeffs_[base] += c;
        for (int j = 1; j < g; ++j) coeffs_[base + static_cast<std::size_t>(j)] -= c;
    }
    coeffs_.resize(static_cast<std::size_t>(g), Rational(0));
}

bool NFElem::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

bool NFElem::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return q == 0; });
}

void NFElem::check_same_field(const NFElem& o) const {
    if (field_ != o.field_)
        throw std::invalid_argument("mixing elements of Q(alpha_" + std::to_string(g()) + ") and Q(alpha_" +
                                    std::to_string(o.g()) + ")");
}

NFElem& NFElem::operator+=(const NFElem& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

NFElem& NFElem::operator-=(const NFElem& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

NFElem& NFElem::operator*=(const Rational& q) {
    for (auto& c : coeffs_) c *= q;
    return *this;
}

NFElem& NFElem::operator*=(const NFElem& o) {
    check_same_field(o);
    if (o.is_rational()) return *this *= o.coeffs_[0];
    if (is_rational()) {
        Rational q = coeffs_[0];
        coeffs_ = o.coeffs_;
        return *this *= q;
    }
    std::vector<Rational> prod(coeffs_.size() * 2 - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            if (o.coeffs_[j] == 0) continue;
            prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    coeffs_ = std::move(prod);
    reduce();
    return *this;
}

NFElem NFElem::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(alpha)");
    if (is_rational()) return NFElem(*field_, Rational(1) / coeffs_[0]);
    // Extended Euclid on (m, a): track s with s * a == r (mod m).
    Poly r0 = field_->minpoly(), r1 = coeffs_;
    trim(r1);
    Poly s0, s1{Rational(1)};
    while (r1.size() > 1) {
        auto [q, r] = poly_divmod(r0, r1);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r1 is a nonzero constant since m is irreducible.
    Rational c = r1.at(0);
    for (auto& x : s1) x /= c;
    return NFElem(*field_, s1.empty() ? Poly{Rational(0)} : s1);
}

NFElem& NFElem::operator/=(const NFElem& o) {
    check_same_field(o);
    if (o.is_rational()) {
        if (o.coeffs_[0] == 0) throw std::domain_error("division by zero in Q(alpha)");
        return *this *= Rational(1) / o.coeffs_[0];
    }
    return *this *= o.inverse();
}

NFElem NFElem::pow(unsigned k) const {
    NFElem result(*field_, Rational(1)), base = *this;
    while (k) {
        if (k & 1u) result *= base;
        base *= base;
        k >>= 1u;
    }
    return result;
}

NFElem operator+(NFElem a, const Rational& q) {
    a.coeffs_[0] += q;
    return a;
}

NFElem operator-(NFElem a, const Rational& q) {
    a.coeffs_[0] -= q;
    return a;
}

NFElem operator-(const Rational& q, const NFElem& a) { return -a + q; }

NFElem NFElem::operator-() const {
    NFElem r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

bool operator==(const NFElem& a, const NFElem& b) {
    a.check_same_field(b);
    return a.coeffs_ == b.coeffs_;
}

std::strong_ordering operator<=>(const NFElem& a, const NFElem& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

double NFElem::to_double() const {
    if (is_rational()) return coeffs_[0].get_d();
    auto iv = enclose(64);
    return Rational((iv.lo + iv.hi) / 2).get_d();
}

std::string NFElem::key() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ',';
        s += coeffs_[i].get_str();
    }
    return s + "]";
}

std::ostream& operator<<(std::ostream& os, const NFElem& x) {
    bool first = true;
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
        const Rational& c = x.coeffs()[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rational m = abs(c);
        if (i == 0) os << m;
        else {
            if (m != 1) os << m << "*";
            os << "a";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os;
}

// ---------------------------------------------------------------------------

RootInterval alpha_root(int g, const Rational& width) {
    if (g < 1) throw std::invalid_argument("alpha_root: g must be >= 1");
    if (width <= 0) throw std::invalid_argument("alpha_root: width must be positive");
    const NumberField& f = NumberField::get(g);
    if (g == 1) return f.root_interval(0);
    unsigned bits = 1;
    Rational w(1, 2);
    while (w > width) {
        w /= 2;
        ++bits;
    }
    return f.root_interval(bits);
}

bool check_half_bound(int g) {
    if (g < 2) throw std::invalid_argument("check_half_bound: g must be >= 2");
    // m_g is increasing on x > 0, so alpha > r iff m_g(r) < 0.
    auto m_at = [g](const Rational& x) {
        Rational acc = 0, p = 1;
        for (int i = 1; i <= g; ++i) {
            p *= x;
            acc += p;
        }
        return sgn(acc - 1);
    };
    Integer lo_den, hi_den;
    mpz_ui_pow_ui(lo_den.get_mpz_t(), 2, static_cast<unsigned long>(g + 2));
    mpz_ui_pow_ui(hi_den.get_mpz_t(), 2, static_cast<unsigned long>(g + 1));
    Rational lower = Rational(1, 2) + Rational(Integer(1), lo_den);
    Rational upper = Rational(1, 2) + Rational(Integer(1), hi_den);
    return m_at(lower) < 0 && m_at(upper) > 0;
}

NFElem nf_arith(const NFElem& a, const NFElem& b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    throw std::invalid_argument("nf_arith: unknown op");
}

int compare_across_fields(const NFElem& a, const NFElem& b, unsigned max_bits) {
    if (&a.field() == &b.field()) return (a - b).sign();
    for (unsigned bits = 64; bits <= max_bits; bits *= 2) {
        auto ia = a.enclose(bits), ib = b.enclose(bits);
        if (ia.hi < ib.lo) return -1;
        if (ia.lo > ib.hi) return 1;
    }
    throw std::runtime_error("compare_across_fields: undecided within precision budget");
}

} // namespace ay
