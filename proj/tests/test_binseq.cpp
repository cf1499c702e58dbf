// Unit tests for eventually periodic binary sequences and the infinite exchange.

#include "doctest.h"

#include "ay/binseq.hpp"

#include <map>
#include <set>

using namespace ay;

namespace {

// Oracle: swap the halves of each block [1 - 2^-k, 1 - 2^-(k+1)), then
// rotate by one half, computed on the rational value.
Rational geometric_f(const Rational& x) {
    Rational lo = 0, len(1, 2);
    while (x >= lo + len) {
        lo += len;
        len /= 2;
    }
    Rational half = len / 2;
    Rational y = x < lo + half ? Rational(x + half) : Rational(x - half);
    y += Rational(1, 2);
    if (y >= 1) y -= 1;
    return y;
}

BinSeq bs(const char* text) { return BinSeq::parse(text); }

} // namespace

TEST_CASE("canonical forms and values") {
    CHECK(bs("11(0)").value() == Rational(3, 4));
    CHECK(bs("(01)").value() == Rational(1, 3));
    CHECK(bs("0101(01)") == bs("(01)"));
    CHECK(bs("1(00)") == bs("1(0)"));
    CHECK(bs("10(10)").str() == "(10)");
    CHECK_THROWS_AS(bs("0(1)"), BinSeqError);
    CHECK_THROWS_AS(bs("(11)"), BinSeqError);
    CHECK_THROWS_AS(bs("0()"), BinSeqError);
    CHECK_THROWS_AS(bs("02(0)"), BinSeqError);
    CHECK_THROWS_AS(BinSeq::from_rational(Rational(1)), BinSeqError);
}

TEST_CASE("rational round trip") {
    std::set<Rational> seen;
    const Integer den = (Integer(1) << 20) * ((Integer(1) << 16) - 1);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 2000; ++t) {
        Integer num = Integer(static_cast<unsigned long>(rng() % 1000003)) * den / 1000003;
        Rational x(num, den);
        x.canonicalize();
        BinSeq b = BinSeq::from_rational(x);
        CHECK(b.value() == x);
        CHECK(BinSeq::parse(b.str()) == b);
    }
    for (int d = 1; d <= 40; ++d)
        for (int n = 0; n < d; ++n) {
            Rational x(n, d);
            x.canonicalize();
            CHECK(BinSeq::from_rational(x).value() == x);
        }
}

TEST_CASE("f_inf digit rule matches the geometric map") {
    CHECK(f_inf(bs("(0)")) == bs("11(0)"));
    CHECK(f_inf(bs("1(0)")) == bs("001(0)"));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10000; ++t) {
        BinSeq a = random_binseq(rng);
        BinSeq b = f_inf(a);
        CHECK(b.value() == geometric_f(a.value()));
        CHECK(f_inf_inv(b) == a);
        CHECK(f_inf(f_inf_inv(a)) == a);
    }
}

TEST_CASE("F_inf and its partial inverse") {
    CHECK(F_inf(bs("1(0)")) == bs("(0)"));
    CHECK(F_inf_inv(bs("(0)")) == bs("1(0)"));
    CHECK_THROWS_AS(F_inf_inv(bs("(01)")), NoPreimage);
    CHECK_THROWS_AS(F_inf_inv(bs("(10)")), NoPreimage);

    for (auto conv : {FZeroConvention::one_third, FZeroConvention::two_thirds}) {
        BinSeq zero_image = conv == FZeroConvention::one_third ? bs("(01)") : bs("(10)");
        CHECK(F_inf(bs("(0)"), conv) == zero_image);
        // Exhaustive over short words: injective, and the image misses exactly
        // the other alternating sequence among all those enumerated preimages.
        std::map<BinSeq, BinSeq> image;
        for (std::size_t total = 1; total <= 12; ++total)
            for (std::size_t pl = 0; pl < total; ++pl) {
                std::size_t ql = total - pl;
                for (unsigned long bits = 0; bits < (1ul << total); ++bits) {
                    std::string pre, per;
                    for (std::size_t i = 0; i < total; ++i) (i < pl ? pre : per).push_back((bits >> i) & 1 ? '1' : '0');
                    if (per.find('0') == std::string::npos) continue;
                    BinSeq a(pre, per);
                    if (a.preperiod().size() != pl || a.period().size() != ql) continue;
                    BinSeq b = F_inf(a, conv);
                    auto [it, fresh] = image.emplace(b, a);
                    CHECK((fresh || it->second == a));
                    if (!(a == bs("(0)"))) CHECK(F_inf_inv(b) == a);
                }
            }
        CHECK_FALSE(image.contains(conv == FZeroConvention::one_third ? bs("(10)") : bs("(01)")));
        CHECK(image.contains(zero_image));
    }
}

TEST_CASE("generators") {
    CHECK(apply_generator(BinSeq::from_rational(Rational(1, 4)), Generator::r).value() == Rational(3, 4));
    CHECK(apply_generator(bs("1(0)"), Generator::h_prime).value() == Rational(1, 4));
    CHECK(apply_generator(bs("(0)"), Generator::h_inf) == bs("01(0)"));
    CHECK(apply_generator(bs("(0)"), Generator::h_double_prime).value() == Rational(1, 2));
    CHECK(parse_generator("h''") == Generator::h_double_prime);
    CHECK_FALSE(parse_generator("q").has_value());
}

TEST_CASE("Thue-Morse and index") {
    BinSeq three_quarters = BinSeq::from_rational(Rational(3, 4));
    CHECK(ay::tm(three_quarters) == 0);
    CHECK(ind(three_quarters) == 1);
    CHECK(ay::tm(bs("1(0)")) == 1);
    CHECK(ind(bs("1(0)")) == 0);
    CHECK(ind(bs("(0)")) == 0);
    CHECK_THROWS_AS(ay::tm(bs("(01)")), BinSeqError);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 1000; ++t) {
        BinSeq a = random_dyadic(rng);
        CHECK(ay::tm(f_inf(a)) == ay::tm(a));
    }
}

TEST_CASE("conjugacy identities") {
    // f^2 h' f (0) = h'(0)
    BinSeq z = bs("(0)");
    CHECK(f_inf(f_inf(apply_generator(f_inf(z), Generator::h_prime))) == apply_generator(z, Generator::h_prime));
    BinSeq half = bs("1(0)");
    CHECK(apply_generator(f_inf(apply_generator(half, Generator::r)), Generator::r) == f_inf_inv(half));
    auto rep = verify_conjugacies(10000, 99);
    CHECK(rep.ok);
    CHECK(rep.samples == 10000);
}

TEST_CASE("orbit classification agrees with brute-force iteration") {
    CHECK(classify_orbit(BinSeq::from_rational(Rational(3, 4))).base == OrbitBase::zero);
    CHECK(classify_orbit(BinSeq::from_rational(Rational(3, 4))).n == 1);
    CHECK(classify_orbit(BinSeq::from_rational(Rational(1, 8))).base == OrbitBase::half);
    CHECK(classify_orbit(BinSeq::from_rational(Rational(1, 8))).n == 1);
    CHECK(classify_orbit(bs("(0)")).n == 0);

    const long steps = 1l << 16;
    std::map<BinSeq, std::pair<OrbitBase, long>> visited;
    int duplicates = 0;
    for (OrbitBase base : {OrbitBase::zero, OrbitBase::half}) {
        BinSeq start = base == OrbitBase::zero ? bs("(0)") : bs("1(0)");
        for (int dir : {1, -1}) {
            BinSeq a = start;
            for (long n = 0; n <= steps; ++n) {
                if (ind(a) <= 12) {
                    auto [it, fresh] = visited.emplace(a, std::pair{base, dir * n});
                    if (!fresh && !(n == 0 && it->second.second == 0)) ++duplicates;
                }
                a = dir > 0 ? f_inf(a) : f_inf_inv(a);
            }
        }
    }
    CHECK(duplicates == 0);
    CHECK(visited.size() == (1u << 13));
    for (const auto& [a, where] : visited) {
        auto c = classify_orbit(a);
        CHECK(c.base == where.first);
        CHECK(c.n == where.second);
        if (a.preperiod().size() >= 2) {
            // Table: TM 0 -> orbit of 0, forward iff Ind odd; TM 1 -> orbit of 1/2, forward iff Ind even.
            bool forward = c.n > 0;
            if (ay::tm(a) == 0) CHECK(forward == (ind(a) % 2 == 1));
            else CHECK(forward == (ind(a) % 2 == 0));
        }
    }
}

TEST_CASE("classification of long dyadics") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        BinSeq a = random_dyadic(rng, 14);
        auto c = classify_orbit(a);
        BinSeq base = c.base == OrbitBase::zero ? bs("(0)") : bs("1(0)");
        CHECK(f_inf_pow(base, c.n.get_si()) == a);
    }
    BinSeq big("1" + std::string(80, '0') + "1", "0");
    auto c = classify_orbit(big);
    CHECK(abs(c.n) > Integer(1) << 70);
}

TEST_CASE("discontinuities") {
    CHECK(is_discontinuity(bs("(0)")));
    CHECK(is_discontinuity(bs("11(0)")));
    CHECK(is_discontinuity(bs("1101(0)")));
    CHECK(is_discontinuity(bs("01(0)")));
    CHECK_FALSE(is_discontinuity(bs("(01)")));
    CHECK_FALSE(is_discontinuity(bs("0011(0)")));
    // Forward and backward iterates of each base together.
    for (OrbitBase base : {OrbitBase::zero, OrbitBase::half}) {
        int hits = 0;
        for (int dir : {1, -1}) {
            BinSeq a = base == OrbitBase::zero ? bs("(0)") : bs("1(0)");
            for (int n = 0; n < 1024; ++n) {
                if (is_discontinuity(a) && (n > 0 || dir > 0)) ++hits;
                a = dir > 0 ? f_inf(a) : f_inf_inv(a);
            }
        }
        CHECK(hits >= 10);
    }
}
