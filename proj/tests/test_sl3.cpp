#include <gtest/gtest.h>

#include "ssc/sl3.hpp"

using namespace ssc;

namespace {

struct Case {
    i64 p;
    int r, s, t;
    i64 expected;
};

Sl3TorusElt torus_for(const Case& c, int bound, std::size_t which = 0) {
    const auto found = sl3_find_torus(c.p, c.r, c.s, c.t, which + 1);
    if (found.size() <= which) throw std::runtime_error("depths not attained");
    return Sl3TorusElt::from_integers(c.p, found[which].first, found[which].second, c.t + bound + 2);
}

} // namespace

TEST(Sl3Upsilon, ClosedAndCounted) {
    EXPECT_EQ(upsilon(2), 1);
    EXPECT_EQ(upsilon(3), 4);
    EXPECT_EQ(upsilon(5), 16);
    EXPECT_EQ(upsilon(7), 12);
    for (i64 p : {2, 3, 5, 7, 11, 13}) EXPECT_EQ(upsilon_by_enumeration(p), upsilon(p)) << p;
}

TEST(Sl3Closed, Examples) {
    const auto id = sl3_inner_sum_closed({1, 0, 0}, TorusParams::sl3(1, 1, 1), 3, 3);
    EXPECT_EQ(id.value, CycValue::integer(3, 1));
    EXPECT_EQ(id.tag, Tag::F);
    // for t > r the identity falls under J, with the same value
    const auto id2 = sl3_inner_sum_closed({1, 0, 0}, TorusParams::sl3(1, 1, 2), 3, 3);
    EXPECT_EQ(id2.value, CycValue::integer(3, 1));
    EXPECT_EQ(id2.tag, Tag::J);
    EXPECT_EQ(sl3_theta_closed(TorusParams::sl3(1, 1, 1), 3, 3, 4).theta, CycValue::integer(3, 40));
    EXPECT_EQ(sl3_theta_closed(TorusParams::sl3(1, 1, 2), 2, 2, 5).theta, CycValue::integer(2, 23));
    EXPECT_EQ(sl3_theta_closed(TorusParams::sl3(1, 1, 3), 2, 2, 6).theta, CycValue::integer(2, 55));
}

TEST(Sl3Closed, ShellCheck) {
    EXPECT_THROW(sl3_theta_closed(TorusParams::sl3(1, 1, 1), 3, 3, 3), Error);
    // r = 2 needs two more shells than max(r,s,t) + 3
    try {
        sl3_theta_closed(TorusParams::sl3(2, 2, 4), 2, 2, 7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ShellNotVanishing);
    }
    EXPECT_EQ(sl3_theta_closed(TorusParams::sl3(2, 2, 4), 2, 2, default_sl3_bound(TorusParams::sl3(2, 2, 4))).theta, CycValue::integer(2, 967));
}

TEST(Sl3Closed, NoOverlapsOrExcludedConfigurations) {
    for (const auto& tp : {TorusParams::sl3(1, 1, 1), TorusParams::sl3(1, 1, 2), TorusParams::sl3(1, 1, 3), TorusParams::sl3(2, 2, 3)})
        for (i64 q : {2, 3, 5}) {
            const auto res = sl3_theta_closed(tp, q, q, default_sl3_bound(tp));
            EXPECT_TRUE(res.log.empty()) << res.log.front();
        }
}

TEST(Sl3Closed, BoundStability) {
    for (const auto& tp : {TorusParams::sl3(1, 1, 1), TorusParams::sl3(1, 1, 2), TorusParams::sl3(1, 1, 3), TorusParams::sl3(2, 2, 4)})
        for (i64 q : {2, 3, 5, 7}) {
            const int b = default_sl3_bound(tp);
            EXPECT_EQ(sl3_theta_closed(tp, q, q, b).theta, sl3_theta_closed(tp, q, q, b + 2).theta);
        }
}

TEST(Sl3Torus, Attainability) {
    EXPECT_TRUE(sl3_find_torus(2, 1, 1, 1).empty());
    EXPECT_TRUE(sl3_find_torus(3, 1, 1, 2).empty());
    EXPECT_TRUE(sl3_find_torus(3, 1, 1, 3).empty());
    EXPECT_FALSE(sl3_find_torus(2, 1, 1, 2).empty());
    EXPECT_FALSE(sl3_find_torus(3, 1, 1, 1).empty());
    EXPECT_FALSE(sl3_find_torus(5, 1, 1, 2).empty());
}

TEST(Sl3Cosets, Boxes) {
    EXPECT_EQ(sl3_coset_reps({1, 0, 0}, 3).size(), 1u);
    for (const auto& w : {Sl3WeylElt{1, 1, 0}, Sl3WeylElt{2, 0, 1}, Sl3WeylElt{4, -1, 1}}) {
        const auto vars = coset_variables(w.to_monomial());
        u64 expected = 1;
        for (const auto& v : vars) expected *= static_cast<u64>(detail::ipow(2, v.box.width()));
        EXPECT_EQ(sl3_coset_reps(w, 2).size(), expected) << w.to_string();
        EXPECT_TRUE(coset_representatives_distinct(w.to_monomial(), 2, roots_of_unity(2, 3, 8))) << w.to_string();
    }
}

class Sl3Theorem : public ::testing::TestWithParam<Case> {};

TEST_P(Sl3Theorem, ClosedEqualsOraclePerElement) {
    const Case c = GetParam();
    const auto tp = TorusParams::sl3(c.r, c.s, c.t);
    const int bound = default_sl3_bound(tp);
    const auto g = torus_for(c, bound);
    const auto closed = sl3_theta_closed(tp, c.p, c.p, bound);
    EXPECT_EQ(closed.theta, CycValue::integer(c.p, c.expected));
    const auto res = sl3_theta_oracle(g, Sl3CharData::make(c.p), tp, bound);
    EXPECT_EQ(res.theta, closed.theta);
    for (const auto& row : res.rows) EXPECT_EQ(*row.oracle, row.closed.value) << row.w.to_string() << ' ' << row.closed.branch;
}

INSTANTIATE_TEST_SUITE_P(Classes, Sl3Theorem,
                         ::testing::Values(Case{2, 1, 1, 2, 23}, Case{2, 1, 1, 3, 55}, Case{3, 1, 1, 1, 40}, Case{5, 1, 1, 1, 256}));

TEST(Sl3Oracle, CharacterIndependenceAtThree) {
    const Case c{3, 1, 1, 1, 40};
    const auto tp = TorusParams::sl3(1, 1, 1);
    const int bound = default_sl3_bound(tp);
    const auto g = torus_for(c, bound);
    for (const auto& chi : Sl3CharData::all(3)) EXPECT_EQ(sl3_theta_oracle(g, chi, tp, bound).theta, CycValue::integer(3, 40));
}

TEST(Sl3Oracle, UnitTwists) {
    // different (alpha, beta) with the same depths give the same value
    const Case c{2, 1, 1, 2, 23};
    const auto tp = TorusParams::sl3(1, 1, 2);
    const int bound = default_sl3_bound(tp);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(sl3_theta_oracle(torus_for(c, bound, k), Sl3CharData::make(2), tp, bound).theta, CycValue::integer(2, 23));
}

TEST(Sl3Oracle, PrecisionStability) {
    const auto tp = TorusParams::sl3(1, 1, 2);
    const int bound = default_sl3_bound(tp);
    const auto found = sl3_find_torus(2, 1, 1, 2);
    ASSERT_FALSE(found.empty());
    const auto [a, b] = found[0];
    const int n = tp.t + bound + 2;
    const auto x = sl3_theta_oracle(Sl3TorusElt::from_integers(2, a, b, n), Sl3CharData::make(2), tp, bound).theta;
    const auto y = sl3_theta_oracle(Sl3TorusElt::from_integers(2, a, b, n + 1), Sl3CharData::make(2), tp, bound).theta;
    EXPECT_EQ(x, y);
}

TEST(Sl3Oracle, OffComponentVanishes) {
    // residues (2, 3, 6^-1) mod 7 are not all equal up to a cube root of unity
    const auto g = Sl3TorusElt::from_integers(7, 2, 3, 8);
    const auto setup = sl3_setup(g, Sl3CharData::make(7));
    for (const auto& te : enumerate_sl3(TorusParams::sl3(1, 1, 1), 2)) EXPECT_TRUE(inner_sum_oracle(setup, te.w.to_monomial()).value.is_zero()) << te.w.to_string();
}
