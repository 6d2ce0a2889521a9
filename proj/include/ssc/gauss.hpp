#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssc/cyclotomic.hpp"
#include "ssc/errors.hpp"
#include "ssc/padic.hpp"

namespace ssc {

/// sum over x in p^m/p^n, y in p^k/p^l, z in p^i/p^j of
/// chi-dot(p^-a x y + p^-b z), canonical representatives.
struct GammaSpec {
    int m = 0, n = 0, k = 0, l = 0, i = 0, j = 0;
    int a = 0, b = 0;
    Level1Char chi;

    bool valid() const { return m <= n && k <= l && i <= j; }
    /// The two configurations the case analysis leaves out.
    bool excluded() const { return m + k < a && i < b && (n + l <= a || j <= b); }
    int total_digits() const { return (n - m) + (l - k) + (j - i); }
};

/// sum over x in p^m/p^n, y in p^k/p^l with x y in p^c of chi_x(x) chi_y(y).
struct XiSpec {
    int m = 0, n = 0, k = 0, l = 0, c = 0;
    Level1Char chi_x;
    Level1Char chi_y;

    bool valid() const { return m <= n && k <= l; }
    int total_digits() const { return (n - m) + (l - k); }
};

/// A closed-form value together with the branch of the case tree that produced it.
struct GaussEval {
    i64 value = 0;
    std::string branch;
};

namespace detail {

inline void gauss_fail(ErrorCode code, const std::string& what) { throw Error("gauss", code, what); }

inline i64 qpow(i64 q, int e) {
    if (e < 0) gauss_fail(ErrorCode::NonIntegerResult, "negative power of q");
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, q);
    return r;
}

} // namespace detail

/// Sum of chi-dot over the canonical representatives of p^lo/p^hi.
inline i64 one_variable_sum(int lo, int hi, i64 q) {
    if (hi <= 0) return 1;           // only 0 lies in o
    if (lo >= 1) return detail::qpow(q, hi - lo); // chi is trivial on p
    return 0;                         // a full nontrivial character sum over o/p^hi
}

/// Canonical representatives of p^lo/p^hi restricted to valuation >= v are
/// the canonical representatives of this box.
inline std::pair<int, int> restrict_box(int lo, int hi, int v) { return {std::min(std::max(lo, v), hi), hi}; }

/// Two-variable base evaluator: sum over canonical x in p^M/p^N and y in
/// p^k/p^l of chi-dot(x y), by shells of val(x).
inline i64 product_sum(int M, int N, int k, int l, i64 q) {
    i64 total = detail::qpow(q, l - k); // x = 0
    for (int v = M; v < N; ++v) {
        const i64 count = detail::checked_mul(q - 1, detail::qpow(q, N - 1 - v));
        // x = u p^v with u a unit: y -> u y permutes residues without changing chi-dot once l + v >= 1
        const i64 inner = (v + l >= 1) ? one_variable_sum(k + v, l + v, q) : 1;
        total = detail::checked_add(total, detail::checked_mul(count, inner));
    }
    return total;
}

/// Closed evaluation of the Gamma sum by the case tree on (m+k vs a, i vs b).
inline GaussEval gamma_closed_value(const GammaSpec& s, i64 q) {
    if (!s.valid()) detail::gauss_fail(ErrorCode::InvalidArgument, "Gamma spec with an inverted box");
    if (s.excluded()) detail::gauss_fail(ErrorCode::ExcludedCase, "configuration outside the case analysis");
    const i64 base = product_sum(s.m - s.a, s.n - s.a, s.k, s.l, q);
    if (s.i == s.j) return {base, "z-box trivial"}; // only z = 0
    const bool high = s.m + s.k >= s.a;
    if (s.i > s.b) {
        // p^-b z lies in p, so it never changes chi-dot
        const i64 v = detail::checked_mul(detail::qpow(q, s.j - s.i), base);
        if (high) return {v, s.m + s.k > s.a ? "1 (m+k>a)" : "1 (m+k=a)"};
        return {v, "4"};
    }
    if (s.i == s.b) return {0, high ? "2" : "5"};
    if (high) {
        if (s.j > s.b) return {0, "3 (j>b)"};
        return {base, "3 (j<=b)"}; // z is forced to 0
    }
    return {0, "6"};
}

inline CycValue gamma_closed(const GammaSpec& s, i64 q) { return CycValue::integer(s.chi.prime, gamma_closed_value(s, q).value); }

inline constexpr u64 kGaussBudget = 1'000'000;

namespace detail {

inline u64 ipow_u(i64 p, int e) { return ipow(p, e); }

/// Count of representatives and the checked budget.
inline u64 term_count(i64 p, int digits, u64 budget) {
    if (digits < 0) gauss_fail(ErrorCode::InvalidArgument, "negative box width");
    u64 n = 1;
    for (int d = 0; d < digits; ++d) {
        n *= static_cast<u64>(p);
        if (n > budget) gauss_fail(ErrorCode::BoxTooLarge, "term count over budget");
    }
    return n;
}

/// v = p^e1 * P + p^e2 * Z with P, Z integers; returns the exponent of
/// chi-dot(v) for a multiplier c, or -1 if val(v) < 0. Only V mod p^(s+1)
/// matters where s = max(0, -e1, -e2).
struct TwoTermChar {
    i64 p;
    int s;
    u64 mod;   // p^(s+1)
    u64 ps;    // p^s
    u64 f1, f2; // p^(e+s) mod p^(s+1), or 0 when the term vanishes there
    TwoTermChar(i64 p_, int e1, int e2) : p(p_) {
        s = std::max({0, -e1, -e2});
        mod = ipow(p, s + 1);
        ps = ipow(p, s);
        f1 = (e1 + s >= s + 1) ? 0 : ipow(p, e1 + s);
        f2 = (e2 + s >= s + 1) ? 0 : ipow(p, e2 + s);
    }
    int eval(u64 P, u64 Z) const {
        const u64 v = (static_cast<u64>((static_cast<u128>(P % mod) * f1) % mod) + static_cast<u64>((static_cast<u128>(Z % mod) * f2) % mod)) % mod;
        if (v % ps != 0) return -1;
        return static_cast<int>((v / ps) % static_cast<u64>(p));
    }
};

} // namespace detail

/// The literal triple sum over canonical representatives.
inline CycValue gamma_oracle(const GammaSpec& s, i64 p, u64 budget = kGaussBudget) {
    if (!s.valid()) detail::gauss_fail(ErrorCode::InvalidArgument, "Gamma spec with an inverted box");
    if (s.chi.prime != p) detail::gauss_fail(ErrorCode::PrimeMismatch, "character over another prime");
    detail::term_count(p, s.total_digits(), budget);
    const u64 nx = detail::ipow_u(p, s.n - s.m), ny = detail::ipow_u(p, s.l - s.k), nz = detail::ipow_u(p, s.j - s.i);
    // x = X p^m, y = Y p^k, z = Z p^i:  p^-a x y + p^-b z = p^(m+k-a) X Y + p^(i-b) Z
    const detail::TwoTermChar tc(p, s.m + s.k - s.a, s.i - s.b);
    std::vector<i64> counts(static_cast<std::size_t>(p), 0);
    for (u64 X = 0; X < nx; ++X)
        for (u64 Y = 0; Y < ny; ++Y) {
            const u64 P = static_cast<u64>((static_cast<u128>(X % tc.mod) * (Y % tc.mod)) % tc.mod);
            for (u64 Z = 0; Z < nz; ++Z) {
                const int e = tc.eval(P, Z);
                if (e >= 0) ++counts[static_cast<std::size_t>(e)];
            }
        }
    CycAccumulator acc(p);
    for (i64 d = 0; d < p; ++d) acc.add(s.chi.multiplier * d, counts[static_cast<std::size_t>(d)]);
    return acc.value();
}

/// Cache of residue histograms of X*Y for the fibered Gamma oracle.
class ProductHistogramCache {
public:
    /// Histogram of (X*Y mod p^K) over X < p^wx, Y < p^wy.
    const std::vector<i64>& get(i64 p, int wx, int wy, int K) {
        const i64 key = ((static_cast<i64>(p) * 64 + wx) * 64 + wy) * 64 + K;
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const u64 mod = detail::ipow(p, K);
        std::vector<i64> h(mod, 0);
        const u64 nx = detail::ipow(p, wx), ny = detail::ipow(p, wy);
        for (u64 X = 0; X < nx; ++X) {
            const u64 xr = X % mod;
            for (u64 Y = 0; Y < ny; ++Y) ++h[static_cast<u64>((static_cast<u128>(xr) * (Y % mod)) % mod)];
        }
        return cache_.emplace(key, std::move(h)).first->second;
    }

private:
    std::unordered_map<i64, std::vector<i64>> cache_;
};

/// The same triple sum, grouped by the residues that chi-dot can see:
/// the summand depends on X*Y only modulo p^(a+1-m-k) and on Z only
/// modulo p^(b+1-i), so the terms are counted fiber by fiber.
inline CycValue gamma_oracle_fibered(const GammaSpec& s, i64 p, ProductHistogramCache& cache, u64 budget = kGaussBudget) {
    if (!s.valid()) detail::gauss_fail(ErrorCode::InvalidArgument, "Gamma spec with an inverted box");
    if (s.chi.prime != p) detail::gauss_fail(ErrorCode::PrimeMismatch, "character over another prime");
    detail::term_count(p, s.total_digits(), budget);
    const int e1 = s.m + s.k - s.a, e2 = s.i - s.b;
    const detail::TwoTermChar tc(p, e1, e2);
    const int K1 = std::max(0, std::min(1 - e1, tc.s + 1));
    const int K2 = std::max(0, std::min(1 - e2, tc.s + 1));
    const auto& h1 = cache.get(p, s.n - s.m, s.l - s.k, K1);
    // Z residues: Z < p^(j-i), histogram modulo p^K2
    const u64 mod2 = detail::ipow(p, K2);
    std::vector<i64> h2(mod2, 0);
    const u64 nz = detail::ipow(p, s.j - s.i);
    if (nz >= mod2) {
        for (auto& c : h2) c = static_cast<i64>(nz / mod2);
    } else {
        for (u64 Z = 0; Z < nz; ++Z) ++h2[Z];
    }
    // each residue pair contributes count1 * count2 terms of the same value
    std::vector<i64> counts(static_cast<std::size_t>(p), 0);
    // group Z residues by their image in V = p^(e2+s) Z mod p^(s+1)
    std::vector<i64> g2(tc.mod, 0);
    for (u64 r2 = 0; r2 < mod2; ++r2)
        if (h2[r2]) g2[static_cast<u64>((static_cast<u128>(r2) * tc.f2) % tc.mod)] += h2[r2];
    std::vector<i64> g1(tc.mod, 0);
    for (u64 r1 = 0; r1 < h1.size(); ++r1)
        if (h1[r1]) g1[static_cast<u64>((static_cast<u128>(r1) * tc.f1) % tc.mod)] += h1[r1];
    for (u64 u1 = 0; u1 < tc.mod; ++u1) {
        if (!g1[u1]) continue;
        const u64 need = (tc.ps - u1 % tc.ps) % tc.ps; // u2 = need + t p^s
        for (i64 t = 0; t < p; ++t) {
            const u64 u2 = need + static_cast<u64>(t) * tc.ps;
            if (!g2[u2]) continue;
            const u64 v = (u1 + u2) % tc.mod;
            const auto d = static_cast<std::size_t>((v / tc.ps) % static_cast<u64>(p));
            counts[d] = detail::checked_add(counts[d], detail::checked_mul(g1[u1], g2[u2]));
        }
    }
    CycAccumulator acc(p);
    for (i64 d = 0; d < p; ++d) acc.add(s.chi.multiplier * d, counts[static_cast<std::size_t>(d)]);
    return acc.value();
}

// ----------------------------------------------------------------- Xi

/// Shell-by-shell evaluation of the constrained two-variable sum where
/// every nonzero x has val >= mx >= 1 (so chi(x) = 1 on those x).
inline i64 xi_shell_sum(int mx, int n, int k, int l, int c, i64 q) {
    i64 total = one_variable_sum(k, l, q); // x = 0 pairs with every y
    for (int v = mx; v < n; ++v) {
        const i64 count = detail::checked_mul(q - 1, detail::qpow(q, n - 1 - v));
        const auto [lo, hi] = restrict_box(k, l, c - v); // y = 0 or val(y) >= c - v
        total = detail::checked_add(total, detail::checked_mul(count, one_variable_sum(lo, hi, q)));
    }
    return total;
}

/// Closed evaluation of the Xi sum by the case tree.
inline GaussEval xi_closed_value(const XiSpec& s, i64 q) {
    if (!s.valid()) detail::gauss_fail(ErrorCode::InvalidArgument, "Xi spec with an inverted box");
    const int m = s.m, n = s.n, k = s.k, l = s.l, c = s.c;
    if (n + l <= c + 1) {
        // only pairs with x = 0 or y = 0 qualify
        return {one_variable_sum(k, l, q) + one_variable_sum(m, n, q) - 1, "1"};
    }
    const int x0 = 1 - l + c;
    i64 low = 0;
    int mm = m;
    std::string branch = "2";
    if (x0 > m) {
        // x of valuation below 1 - l + c pairs only with y = 0
        low = one_variable_sum(m, n, q) - one_variable_sum(x0, n, q);
        mm = x0;
    } else {
        branch = "2'";
    }
    i64 high = 0;
    if (mm > 0) {
        high = xi_shell_sum(mm, n, k, l, c, q);
        branch += ".A";
    } else if (l > 0) {
        branch += ".B";
        if (n <= 0) {
            high = one_variable_sum(k, l, q); // only x = 0 has chi-dot(x) != 0
        } else if (k >= c) {
            high = detail::checked_mul(one_variable_sum(0, n, q), one_variable_sum(k, l, q));
        } else {
            // D = (sum over o/p^n)(sum over p^c/p^l) = 0, and
            // E = [x in p/p^n, y in p^k/p^l] - [x in p/p^n, y in p^c/p^l]
            const i64 d = detail::checked_mul(one_variable_sum(0, n, q), one_variable_sum(c, l, q));
            const i64 e = xi_shell_sum(1, n, k, l, c, q) - detail::checked_mul(detail::qpow(q, n - 1), one_variable_sum(c, l, q));
            high = d + e;
        }
    } else {
        branch += ".C";
        high = one_variable_sum(mm, n, q); // only y = 0 has chi-dot(y) != 0
    }
    return {low + high, branch};
}

inline CycValue xi_closed(const XiSpec& s, i64 q) { return CycValue::integer(s.chi_x.prime, xi_closed_value(s, q).value); }

/// The literal constrained double sum over canonical representatives.
inline CycValue xi_oracle(const XiSpec& s, i64 p, u64 budget = kGaussBudget) {
    if (!s.valid()) detail::gauss_fail(ErrorCode::InvalidArgument, "Xi spec with an inverted box");
    if (s.chi_x.prime != p || s.chi_y.prime != p) detail::gauss_fail(ErrorCode::PrimeMismatch, "character over another prime");
    detail::term_count(p, s.total_digits(), budget);
    const u64 nx = detail::ipow_u(p, s.n - s.m), ny = detail::ipow_u(p, s.l - s.k);
    // chi-dot(X p^m): exponent or -1; val(X p^m) or a large value for 0
    auto eval = [&](u64 X, int shift, int& val) -> int {
        if (X == 0) {
            val = PadicApprox::kInfinity;
            return 0;
        }
        int v = 0;
        u64 t = X;
        while (t % static_cast<u64>(p) == 0) {
            t /= static_cast<u64>(p);
            ++v;
        }
        val = v + shift;
        if (val < 0) return -1;
        if (val >= 1) return 0;
        return static_cast<int>(t % static_cast<u64>(p));
    };
    std::vector<int> ex(nx), vx(nx), ey(ny), vy(ny);
    for (u64 X = 0; X < nx; ++X) ex[X] = eval(X, s.m, vx[X]);
    for (u64 Y = 0; Y < ny; ++Y) ey[Y] = eval(Y, s.k, vy[Y]);
    CycAccumulator acc(p);
    for (u64 X = 0; X < nx; ++X) {
        if (ex[X] < 0) continue;
        for (u64 Y = 0; Y < ny; ++Y) {
            if (ey[Y] < 0) continue;
            const bool in = X == 0 || Y == 0 || static_cast<i64>(vx[X]) + vy[Y] >= s.c;
            if (!in) continue;
            acc.add(s.chi_x.multiplier * ex[X] + s.chi_y.multiplier * ey[Y]);
        }
    }
    return acc.value();
}

} // namespace ssc
