#include <gtest/gtest.h>

#include <map>

#include "ssc/weyl.hpp"

using namespace ssc;
using Kind = Sl2WeylElt::Kind;

TEST(WeylSl2, Length) {
    EXPECT_EQ(sl2_length({Kind::Diagonal, 0}), 0);
    EXPECT_EQ(sl2_length({Kind::Antidiagonal, -1}), 1);
    EXPECT_EQ(sl2_length({Kind::Diagonal, 2}), 4);
    EXPECT_EQ(sl2_length_bfs({Kind::Diagonal, 0}), 0);
    EXPECT_EQ(sl2_length_bfs({Kind::Antidiagonal, 0}), 1);
    EXPECT_EQ(sl2_length_bfs({Kind::Antidiagonal, -1}), 1);
    EXPECT_EQ(sl2_length_bfs({Kind::Diagonal, 1}), 2);
    EXPECT_THROW(sl2_length_bfs({Kind::Diagonal, 100}), Error);
}

TEST(WeylSl2, LengthMatchesWordLength) {
    for (int n = -6; n <= 6; ++n)
        for (auto k : {Kind::Diagonal, Kind::Antidiagonal}) EXPECT_EQ(sl2_length({k, n}), sl2_length_bfs({k, n}, 8));
}

TEST(WeylSl2, TwoElementsPerLength) {
    std::map<int, int> count;
    for (const auto& w : enumerate_sl2(13)) ++count[sl2_length(w)];
    EXPECT_EQ(count[0], 1);
    for (int l = 1; l <= 13; ++l) EXPECT_EQ(count[l], 2) << l;
}

TEST(WeylSl3, Length) {
    EXPECT_EQ(sl3_length({1, 0, 0}), 0);
    // n21 = n32 = 1: a = p^-1, b = 1, c = p
    EXPECT_EQ(sl3_length({1, -1, 0}), 4);
    for (const auto& g : sl3_generators()) EXPECT_EQ(sl3_length(Sl3WeylElt::from_monomial(g)), 1);
}

TEST(WeylSl3, LengthMatchesWordLength) {
    const auto ball = bfs_ball<3>(sl3_generators(), 8);
    int checked = 0;
    for (int f = 1; f <= 6; ++f)
        for (int e1 = -8; e1 <= 8; ++e1)
            for (int e2 = -8; e2 <= 8; ++e2) {
                const Sl3WeylElt w{f, e1, e2};
                const int len = sl3_length(w);
                auto it = ball.find(w.to_monomial().key());
                if (len <= 8) {
                    ASSERT_NE(it, ball.end()) << w.to_string();
                    EXPECT_EQ(it->second, len) << w.to_string();
                    ++checked;
                } else {
                    EXPECT_EQ(it, ball.end()) << w.to_string();
                }
            }
    EXPECT_EQ(static_cast<std::size_t>(checked), ball.size());
}

TEST(WeylSl3, ExponentIdentities) {
    for (const auto& te : enumerate_sl3(TorusParams::sl3(1, 1, 3), 6)) {
        const auto n = te.w.n();
        EXPECT_EQ(n.n13, n.n12 + n.n23);
        EXPECT_EQ(n.n12, -n.n21);
        EXPECT_EQ(n.n23, -n.n32);
        EXPECT_EQ(n.n13, -n.n31);
    }
}

TEST(WeylSl3, TruncatedLength) {
    const auto tp = TorusParams::sl3(3, 3, 3);
    // n21 = n32 = 1, n31 = 2
    EXPECT_EQ(sl3_truncated_length({1, -1, 0}, tp), 4);
    // n21 = n32 = 2, n31 = 4 > t = 3
    EXPECT_EQ(sl3_truncated_length({1, -2, 0}, tp), 7);
}

TEST(WeylSl3, TruncatedLengthOfGElements) {
    for (const auto& tp : {TorusParams::sl3(1, 1, 3), TorusParams::sl3(2, 2, 4)}) {
        int clamped = 0;
        for (const auto& te : enumerate_sl3(tp, 8)) {
            if (te.cls.tag != Tag::G) continue;
            const int tl = sl3_truncated_length(te.w, tp);
            EXPECT_LE(tl, sl3_length(te.w)) << te.w.to_string();
            EXPECT_GE(tl, 0);
            if (tl < sl3_length(te.w)) ++clamped;
        }
        EXPECT_GT(clamped, 0);
    }
    // A4(-1,0,1) at (1,1,3): n21 = n32 = 1, n31 = 2, length 3, one digit lost to the clamp
    EXPECT_EQ(sl3_truncated_length({4, -1, 0}, TorusParams::sl3(1, 1, 3)), 2);
}

TEST(WeylSl3, TruncatedEqualsLengthWithoutClamp) {
    const auto tp = TorusParams::sl3(1, 1, 3);
    for (const auto& te : enumerate_sl3(tp, 6)) {
        const auto g = sl3_geometry(te.w);
        if (!g.xi_type() || g.box_w.width() == 0) continue;
        const auto wc = sl3_w_count(g, tp);
        if (wc.weight == g.box_w.width()) { EXPECT_EQ(sl3_truncated_length(te.w, tp), sl3_length(te.w)); }
    }
}

TEST(WeylSl3, Conditions) {
    const auto tp = TorusParams::sl3(1, 1, 2);
    const Sl3WeylElt id{1, 0, 0};
    EXPECT_TRUE(condition(id, tp, Cond::E0));
    EXPECT_FALSE(condition(id, tp, Cond::E2));
    EXPECT_FALSE(condition(id, tp, Cond::E1));
    // family 1 with n21 >= 0, n31 < 0, n32 < 0: a = p^2, b = p^2, c = p^-4
    const Sl3WeylElt x{1, 2, 2};
    ASSERT_GE(x.n().n21, 0);
    ASSERT_LT(x.n().n31, 0);
    ASSERT_LT(x.n().n32, 0);
    EXPECT_TRUE(condition(x, tp, Cond::E2));
    // family 2 with n23 > t - 1
    const Sl3WeylElt y{2, 0, 1};
    ASSERT_GT(y.n().n23, tp.t - 1);
    EXPECT_TRUE(condition(y, tp, Cond::D));
}

TEST(WeylSl3, Enumeration) {
    const auto tp = TorusParams::sl3(1, 1, 1);
    EXPECT_EQ(enumerate_sl3(tp, 0).size(), 6u);
    int fam1 = 0;
    for (const auto& te : enumerate_sl3(tp, 1))
        if (te.w.family == 1) ++fam1;
    // a = p^e1, b = p^e2, c = p^-(e1+e2): only e1 = e2 = 0 keeps every |n_ij| <= 1
    EXPECT_EQ(fam1, 1);
}

TEST(WeylSl3Property, PredicateIdentitiesAndDisjointness) {
    for (const auto& tp : {TorusParams::sl3(1, 1, 1), TorusParams::sl3(1, 1, 2), TorusParams::sl3(1, 1, 3), TorusParams::sl3(2, 2, 5)}) {
        for (const auto& te : enumerate_sl3(tp, tp.t + 5)) {
            const auto& w = te.w;
            EXPECT_EQ(condition(w, tp, Cond::H), !condition(w, tp, Cond::E0));
            EXPECT_EQ(condition(w, tp, Cond::J), condition(w, tp, Cond::E3));
            EXPECT_EQ(condition(w, tp, Cond::E3), condition(w, tp, Cond::E0) && !condition(w, tp, Cond::E2));
            EXPECT_EQ(condition(w, tp, Cond::D), !condition(w, tp, Cond::C));
            EXPECT_LE(te.cls.hits.size(), 1u) << w.to_string();
        }
    }
}

TEST(WeylSl3, TorusParamsValidation) {
    EXPECT_THROW(TorusParams::sl3(1, 2, 3), Error);
    EXPECT_THROW(TorusParams::sl3(2, 2, 1), Error);
    EXPECT_THROW(TorusParams::sl3(0, 0, 0), Error);
    EXPECT_EQ(TorusParams::sl3(1, 1, 1).theorem_case(), 0);
    EXPECT_EQ(TorusParams::sl3(1, 1, 2).theorem_case(), 1);
    EXPECT_EQ(TorusParams::sl3(1, 1, 3).theorem_case(), 2);
}
