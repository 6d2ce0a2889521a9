#include <gtest/gtest.h>

#include <random>

#include "ssc/gauss.hpp"

using namespace ssc;

namespace {

GammaSpec gamma(int m, int n, int k, int l, int i, int j, int a, int b, i64 p = 3, i64 c = 1) {
    return {m, n, k, l, i, j, a, b, Level1Char(p, c, 0)};
}

XiSpec xi(int m, int n, int k, int l, int c, i64 p = 3, i64 cx = 1, i64 cy = 1) {
    return {m, n, k, l, c, Level1Char(p, cx, 0), Level1Char(p, cy, 0)};
}

} // namespace

TEST(Gamma, CaseExamples) {
    const i64 q = 3;
    EXPECT_EQ(gamma_closed_value(gamma(1, 2, 1, 2, 1, 2, 1, 0), q).value, q * q * q);
    EXPECT_EQ(gamma_closed_value(gamma(1, 2, 1, 2, 1, 2, 2, 0), q).value, q * q);
    EXPECT_EQ(gamma_closed_value(gamma(0, 2, 0, 2, 0, 2, 0, 0), q).value, 0);  // i = b, m + k >= a
    EXPECT_EQ(gamma_closed_value(gamma(-2, 2, -2, 2, 0, 2, 1, 0), q).value, 0); // i = b, m + k < a
    EXPECT_EQ(gamma_closed_value(gamma(-3, -2, -3, -2, 1, 2, 0, 0), q).value, q * (q + q - 1));
    EXPECT_EQ(gamma_oracle(gamma(1, 2, 1, 2, 1, 2, 1, 0), 3), CycValue::integer(3, 27));
}

TEST(Gamma, Exclusions) {
    const auto s = gamma(-2, 0, -2, 0, -1, 2, 1, 1); // m + k < a, i < b, n + l <= a
    ASSERT_TRUE(s.excluded());
    try {
        gamma_closed(s, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.qualified(), "gauss.ExcludedCase");
    }
    EXPECT_NO_THROW(gamma_oracle(s, 3));
    EXPECT_TRUE(gamma(-2, 2, -2, 2, -1, 0, 1, 1).excluded()); // j <= b
}

TEST(Gamma, TrivialZBox) {
    // all summands are 1 once m + k >= a + 1
    const auto s = gamma(0, 2, 1, 3, 1, 1, 0, 0);
    EXPECT_EQ(gamma_oracle(s, 3), CycValue::integer(3, 81));
    EXPECT_EQ(gamma_closed(s, 3), CycValue::integer(3, 81));
}

TEST(Gamma, BudgetIsEnforced) { EXPECT_THROW(gamma_oracle(gamma(-3, 3, -3, 3, -3, 3, 0, 0), 3), Error); }

TEST(Gamma, GridAtTwo) {
    ProductHistogramCache cache;
    long cells = 0;
    for (int m = -3; m <= 3; ++m)
        for (int n = m; n <= 3; ++n)
            for (int k = -3; k <= 3; ++k)
                for (int l = k; l <= 3; ++l)
                    for (int i = -3; i <= 3; ++i)
                        for (int j = i; j <= 3; ++j)
                            for (int a = -3; a <= 3; ++a)
                                for (int b = -3; b <= 3; ++b) {
                                    const auto s = gamma(m, n, k, l, i, j, a, b, 2);
                                    if (s.excluded()) continue;
                                    ASSERT_EQ(gamma_closed(s, 2), gamma_oracle_fibered(s, 2, cache)) << m << n << k << l << i << j << a << b;
                                    ++cells;
                                }
    EXPECT_EQ(cells, 726985);
}

TEST(Gamma, FiberedMatchesLiteral) {
    ProductHistogramCache cache;
    for (int m = -2; m <= 2; ++m)
        for (int n = m; n <= 2; ++n)
            for (int k = -2; k <= 2; ++k)
                for (int l = k; l <= 2; ++l)
                    for (int i = -2; i <= 2; ++i)
                        for (int j = i; j <= 2; ++j)
                            for (int a = -2; a <= 2; ++a)
                                for (int b = -2; b <= 2; ++b) {
                                    const auto s = gamma(m, n, k, l, i, j, a, b, 2);
                                    ASSERT_EQ(gamma_oracle(s, 2), gamma_oracle_fibered(s, 2, cache));
                                }
    std::mt19937 rng(5);
    for (int trial = 0; trial < 3000; ++trial) {
        auto pick = [&] { return static_cast<int>(rng() % 7) - 3; };
        int m = pick(), n = pick(), k = pick(), l = pick(), i = pick(), j = pick();
        if (m > n) std::swap(m, n);
        if (k > l) std::swap(k, l);
        if (i > j) std::swap(i, j);
        const auto s = gamma(m, n, k, l, i, j, pick(), pick(), 3, 1 + static_cast<i64>(rng() % 2));
        if (s.total_digits() > 11) continue;
        ASSERT_EQ(gamma_oracle(s, 3), gamma_oracle_fibered(s, 3, cache));
    }
}

TEST(GammaProperty, VanishingCases) {
    for (int m = -3; m <= 3; ++m)
        for (int n = m; n <= 3; ++n)
            for (int k = -3; k <= 3; ++k)
                for (int l = k; l <= 3; ++l)
                    for (int i = -3; i <= 3; ++i)
                        for (int j = i + 1; j <= 3; ++j)
                            for (int a = -3; a <= 3; ++a)
                                for (int b = -3; b <= 3; ++b) {
                                    const auto s = gamma(m, n, k, l, i, j, a, b);
                                    if (s.excluded()) continue;
                                    const bool zero_case = i == b || (m + k >= a && i < b && j > b) || (m + k < a && i < b);
                                    if (zero_case) { EXPECT_EQ(gamma_closed_value(s, 3).value, 0); }
                                }
}

TEST(GammaProperty, MultiplierInvariance) {
    ProductHistogramCache cache;
    for (i64 p : {3, 5})
        for (int m = -2; m <= 2; ++m)
            for (int n = m; n <= 2; ++n)
                for (int k = -2; k <= 2; ++k)
                    for (int l = k; l <= 2; ++l)
                        for (int i = -1; i <= 1; ++i)
                            for (int j = i; j <= 2; ++j)
                                for (int a = -1; a <= 1; ++a)
                                    for (int b = -1; b <= 1; ++b) {
                                        const auto s1 = gamma(m, n, k, l, i, j, a, b, p, 1);
                                        if (s1.total_digits() > (p == 3 ? 9 : 8) || s1.excluded()) continue;
                                        const auto v = gamma_oracle_fibered(s1, p, cache);
                                        ASSERT_TRUE(v.is_integer());
                                        for (i64 c = 2; c < p; ++c) ASSERT_EQ(gamma_oracle_fibered(gamma(m, n, k, l, i, j, a, b, p, c), p, cache), v);
                                    }
}

TEST(Xi, CaseExamples) {
    EXPECT_EQ(xi_closed_value(xi(0, 1, 0, 1, 1), 3).value, -1);
    EXPECT_EQ(xi_oracle(xi(0, 1, 0, 1, 1), 3), CycValue::integer(3, -1));
    EXPECT_EQ(xi_oracle(xi(0, 1, 0, 1, 2, 2), 2), CycValue::integer(2, -1));
    // case B with n > 0 and k >= c
    auto b1 = xi_closed_value(xi(0, 1, 0, 2, 0), 3);
    EXPECT_EQ(b1.value, 0);
    EXPECT_EQ(b1.branch, "2'.B");
    // case B, k < c: the D part vanishes
    EXPECT_EQ(one_variable_sum(0, 1, 3) * one_variable_sum(1, 2, 3), 0);
}

TEST(Xi, VacuousConstraintFactors) {
    for (i64 p : {2, 3})
        for (int m = -2; m <= 2; ++m)
            for (int n = m; n <= 2; ++n)
                for (int k = -2; k <= 2; ++k)
                    for (int l = k; l <= 2; ++l) {
                        const auto s = xi(m, n, k, l, -10, p);
                        EXPECT_EQ(xi_oracle(s, p), CycValue::integer(p, one_variable_sum(m, n, p) * one_variable_sum(k, l, p)));
                    }
}

TEST(Xi, GridAtTwoAndThree) {
    for (i64 p : {2, 3})
        for (i64 cx = 1; cx < p; ++cx)
            for (int m = -3; m <= 3; ++m)
                for (int n = m; n <= 3; ++n)
                    for (int k = -3; k <= 3; ++k)
                        for (int l = k; l <= 3; ++l)
                            for (int c = -3; c <= 4; ++c) {
                                const auto s = xi(m, n, k, l, c, p, cx, p - cx);
                                ASSERT_EQ(xi_closed(s, p), xi_oracle(s, p)) << p << ' ' << m << n << k << l << c;
                            }
}
