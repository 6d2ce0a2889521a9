#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ssc/cyclotomic.hpp"
#include "ssc/errors.hpp"
#include "ssc/frobenius.hpp"
#include "ssc/padic.hpp"
#include "ssc/weyl.hpp"

namespace ssc {

using Rational = boost::rational<i64>;

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace detail {

inline void sl2_fail(ErrorCode code, const std::string& what) { throw Error("sl2", code, what); }

inline i64 rpow(i64 q, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, q);
    return r;
}

} // namespace detail

/// (q-1)/2 for odd p, q-1 for p = 2.
inline Rational cq(i64 p, i64 q) {
    if (p == 2) return Rational(q - 1);
    return Rational(q - 1, 2);
}

/// c_q times the sum of q^l(w) over the elements of length below r.
inline Rational sl2_theta_closed(i64 q, i64 p, int r) {
    if (r < 1) detail::sl2_fail(ErrorCode::InvalidArgument, "r must be at least 1");
    i64 sum = 1;
    for (int l = 1; l < r; ++l) sum = detail::checked_add(sum, detail::checked_mul(2, detail::rpow(q, l)));
    return cq(p, q) * sum;
}

/// vol(p^r)^-1 vol(p^(r - l(w))) = q^l(w) when l(w) < r, else 0.
inline Rational sl2_inner_sum_closed(const Sl2WeylElt& w, int r, i64 q) {
    if (r < 1) detail::sl2_fail(ErrorCode::InvalidArgument, "r must be at least 1");
    const int len = sl2_length(w);
    if (len >= r) return Rational(0);
    return Rational(detail::rpow(q, len));
}

/// Value on the ramified discrete series of conductor exponent h at an
/// element with |a - a^-1| = q^-r.
inline Rational sally_shalika_theta(i64 q, int r, int h) {
    if (q % 2 == 0) detail::sl2_fail(ErrorCode::EvenResidue, "formula needs odd residue characteristic");
    if (r < 1 || h < 1) detail::sl2_fail(ErrorCode::InvalidArgument, "r and h must be at least 1");
    return Rational(detail::rpow(q, r)) - Rational(detail::rpow(q, h) * (q + 1), 2 * q);
}

/// diag(a, a^-1) with a a p-adic unit.
struct Sl2TorusElt {
    PadicApprox a;

    /// val(a - a^-1); nullopt when a = a^-1 at this precision.
    std::optional<int> r() const {
        const PadicApprox d = a - a.inverse();
        if (d.is_zero()) return std::nullopt;
        return d.val();
    }
};

struct Sl2CharData {
    Level1Char chi1; // upper-right slot, level 0
    Level1Char chi2; // lower-left slot, level 1

    static Sl2CharData make(i64 p, i64 c1 = 1, i64 c2 = 1) { return {Level1Char(p, c1, 0), Level1Char(p, c2, 1)}; }
};

/// |T(o) / Z(F) T(1 + p)| for SL2.
inline i64 sl2_upsilon(i64 p) { return p == 2 ? 1 : (p - 1) / 2; }

/// Unipotent coordinates of H \ H x H, one vector per coset.
inline std::vector<std::vector<PadicApprox>> sl2_coset_reps(const Sl2WeylElt& w, i64 p, u64 budget = kDefaultEnumerationBudget) {
    return coset_representatives(w.to_monomial(), p, budget);
}

/// The boxes behind sl2_coset_reps, as (row, col, box).
inline std::vector<CosetVar> sl2_coset_variables(const Sl2WeylElt& w) { return coset_variables(w.to_monomial()); }

struct Sl2OracleRow {
    Sl2WeylElt w;
    CycValue value;
    u64 nodes = 0;
};

struct Sl2OracleResult {
    CycValue theta;              // Upsilon times the sum of the rows
    std::vector<Sl2OracleRow> rows;
};

inline OracleSetup<2> sl2_setup(const Sl2TorusElt& g, const Sl2CharData& chi) {
    const i64 p = g.a.prime();
    if (chi.chi1.prime != p || chi.chi2.prime != p) detail::sl2_fail(ErrorCode::PrimeMismatch, "character over another prime");
    OracleSetup<2> s;
    s.p = p;
    s.g = {g.a, g.a.inverse()};
    s.slots = {{0, 1, chi.chi1}, {1, 0, chi.chi2}};
    const int n = g.a.rel_precision();
    s.center = {PadicApprox::from_integer(p, 1, n), PadicApprox::from_integer(p, -1, n)};
    return s;
}

/// Frobenius formula summed over every element of length at most max_len.
inline Sl2OracleResult sl2_theta_oracle(const Sl2TorusElt& g, const Sl2CharData& chi, int max_len,
                                        OracleMode mode = OracleMode::BranchAndBound) {
    const auto setup = sl2_setup(g, chi);
    const i64 p = setup.p;
    Sl2OracleResult res;
    CycValue total(p);
    for (const auto& w : enumerate_sl2(max_len)) {
        auto inner = inner_sum_oracle(setup, w.to_monomial(), mode);
        total = total + inner.value;
        res.rows.push_back({w, inner.value, inner.nodes});
    }
    res.theta = total.scaled(sl2_upsilon(p));
    if (!res.theta.is_integer()) detail::sl2_fail(ErrorCode::NonIntegerResult, "theta is not an integer");
    return res;
}

/// a = 1 + u p^k at relative precision n.
inline Sl2TorusElt sl2_torus(i64 p, i64 a, int n) { return {PadicApprox::from_integer(p, a, n)}; }

/// Smallest integer a = 1 + j p (j >= 1) with val(a - a^-1) = r, if one
/// exists below the search limit.
inline std::optional<i64> sl2_find_torus(i64 p, int r, i64 limit = 4096) {
    for (i64 j = 1; j < limit; ++j) {
        const i64 a = 1 + j * p;
        const auto x = PadicApprox::from_integer(p, a, r + 8);
        const PadicApprox d = x - x.inverse();
        if (!d.is_zero() && d.val() == r) return a;
    }
    return std::nullopt;
}

} // namespace ssc
