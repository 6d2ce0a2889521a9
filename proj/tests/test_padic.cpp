#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ssc/padic.hpp"

using namespace ssc;

TEST(Padic, Valuation) {
    EXPECT_EQ(val_of(PadicApprox::from_integer(3, 3)), 1);
    const auto one = PadicApprox::from_integer(3, 1);
    EXPECT_TRUE((one - one).is_zero());
    EXPECT_EQ(val_of(one - one), PadicApprox::kInfinity);
    // (1+5) - (1+5)^-1 = 6 - 1/6 = 35/6
    const auto six = PadicApprox::from_integer(5, 6, 6);
    EXPECT_EQ(val_of(six - six.inverse()), 1);
}

TEST(Padic, Arithmetic) {
    const auto inv = PadicApprox::from_integer(3, 4, 4).inverse();
    EXPECT_EQ(inv.val(), 0);
    EXPECT_EQ(inv.unit(), 61u);
    const auto four = PadicApprox::from_integer(2, 2) * PadicApprox::from_integer(2, 2);
    EXPECT_EQ(four.val(), 2);
    EXPECT_EQ(four.unit(), 1u);
    const auto x = PadicApprox::from_integer(5, 17, 6);
    EXPECT_TRUE((x - x).is_zero());
}

TEST(Padic, PrecisionPropagation) {
    const auto a = PadicApprox::from_integer(3, 1, 4);     // known mod 3^4
    const auto b = PadicApprox::from_integer(3, 9, 2);     // 9 known mod 3^4
    EXPECT_EQ((a + b).abs_precision(), 4);
    const auto c = PadicApprox::from_integer(3, 2, 5);
    EXPECT_EQ((b * c).rel_precision(), 2);
    EXPECT_EQ(a.inverse().rel_precision(), 4);
    // 1 - 1 known mod 3^4 is zero to absolute precision 4
    EXPECT_EQ((a - a).abs_precision(), 4);
}

TEST(Padic, Errors) {
    try {
        PadicApprox::zero(3).inverse();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InversionOfZero);
        EXPECT_EQ(e.qualified(), "padic.InversionOfZero");
    }
    EXPECT_THROW(PadicApprox::from_parts(3, 0, 1, 0), Error);
    EXPECT_THROW(enumerate_box({0, 40}, 3), Error);
    EXPECT_THROW(QuotientBox(2, 1), Error);
}

TEST(Padic, EnumerateBox) {
    auto digits = [](const std::vector<PadicApprox>& v) {
        std::vector<i64> out;
        for (const auto& x : v) {
            if (x.is_zero()) out.push_back(0);
            else out.push_back(static_cast<i64>(x.unit() * detail::ipow(x.prime(), x.val())));
        }
        return out;
    };
    EXPECT_EQ(digits(enumerate_box({0, 2}, 2)), (std::vector<i64>{0, 1, 2, 3}));
    EXPECT_EQ(digits(enumerate_box({1, 2}, 3)), (std::vector<i64>{0, 3, 6}));
    EXPECT_EQ(digits(enumerate_box({2, 2}, 5)), (std::vector<i64>{0}));
}

TEST(PadicProperty, InverseIsInverse) {
    std::mt19937_64 rng(7);
    for (i64 p : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 200; ++trial) {
            i64 n = static_cast<i64>(rng() % 100000) + 1;
            const int shift = static_cast<int>(rng() % 7) - 3;
            const auto x = PadicApprox::from_integer(p, n, 12, shift);
            const auto one = x * x.inverse();
            EXPECT_EQ(one.val(), 0);
            EXPECT_EQ(one.unit(), 1u);
        }
    }
}

TEST(PadicProperty, Ultrametric) {
    std::mt19937_64 rng(11);
    for (i64 p : {2, 3, 5}) {
        for (int trial = 0; trial < 500; ++trial) {
            const auto x = PadicApprox::from_integer(p, static_cast<i64>(rng() % 5000) + 1, 10, static_cast<int>(rng() % 5));
            const auto y = PadicApprox::from_integer(p, static_cast<i64>(rng() % 5000) + 1, 10, static_cast<int>(rng() % 5));
            const auto s = x + y;
            if (s.is_zero()) continue;
            EXPECT_GE(s.val(), std::min(x.val(), y.val()));
            if (x.val() != y.val()) { EXPECT_EQ(s.val(), std::min(x.val(), y.val())); }
        }
    }
}

TEST(PadicProperty, BoxesAreDistinctResidues) {
    for (i64 p : {2, 3, 5})
        for (int lo = -2; lo <= 2; ++lo)
            for (int w = 0; w <= 3; ++w) {
                const auto v = enumerate_box({lo, lo + w}, p);
                ASSERT_EQ(v.size(), detail::ipow(p, w));
                std::set<std::pair<int, u64>> seen;
                for (const auto& x : v) seen.insert({x.is_zero() ? PadicApprox::kInfinity : x.val(), x.unit()});
                EXPECT_EQ(seen.size(), v.size());
            }
}

TEST(PadicProperty, DigitsAgreeWithIntegers) {
    // x = 1 + 2*3 + 1*9 = 16
    const auto x = PadicApprox::from_integer(3, 16, 5);
    EXPECT_EQ(x.digit(0), 1);
    EXPECT_EQ(x.digit(1), 2);
    EXPECT_EQ(x.digit(2), 1);
    EXPECT_EQ(x.digit(3), 0);
    EXPECT_FALSE(x.digit(5).has_value());
    EXPECT_EQ(x.in_ideal(1), Tri::No);
    EXPECT_EQ(PadicApprox::zero(3, 4).in_ideal(3), Tri::Yes);
    EXPECT_EQ(PadicApprox::zero(3, 4).in_ideal(6), Tri::Unknown);
}
