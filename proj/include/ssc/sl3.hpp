#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssc/cyclotomic.hpp"
#include "ssc/errors.hpp"
#include "ssc/frobenius.hpp"
#include "ssc/gauss.hpp"
#include "ssc/padic.hpp"
#include "ssc/weyl.hpp"

namespace ssc {

namespace detail {

inline void sl3_fail(ErrorCode code, const std::string& what) { throw Error("sl3", code, what); }

} // namespace detail

// ------------------------------------------------------------------ Upsilon

/// Number of cube roots of unity in a local field with residue field of order q.
inline int mu3_order(i64 q) { return q % 3 == 1 ? 3 : 1; }

/// |T(o) / Z(F) T(1 + p)| for SL3, in closed form.
inline i64 upsilon(i64 q) { return (q - 1) * (q - 1) / mu3_order(q); }

/// The same index counted directly: residue pairs (x, y) of diag(x, y, 1/(xy))
/// up to the residues of the central roots of unity.
inline i64 upsilon_by_enumeration(i64 p, int dim = 3) {
    std::set<i64> central;
    for (const auto& z : roots_of_unity(p, dim, 4)) central.insert(static_cast<i64>(z.residue(1).value()));
    std::set<std::vector<i64>> orbits;
    const int free = dim - 1;
    std::vector<i64> x(static_cast<std::size_t>(free), 1);
    while (true) {
        std::vector<i64> best;
        for (i64 z : central) {
            std::vector<i64> y(x);
            for (auto& e : y) e = e * z % p;
            if (best.empty() || y < best) best = y;
        }
        orbits.insert(best);
        std::size_t k = 0;
        while (k < x.size() && ++x[k] == p) x[k++] = 1;
        if (k == x.size()) break;
    }
    return static_cast<i64>(orbits.size());
}

// ------------------------------------------------------------------ data

struct Sl3CharData {
    Level1Char chi1; // slot (1,2), level 0
    Level1Char chi2; // slot (2,3), level 0
    Level1Char chi3; // slot (3,1), level 1

    static Sl3CharData make(i64 p, i64 c1 = 1, i64 c2 = 1, i64 c3 = 1) {
        return {Level1Char(p, c1, 0), Level1Char(p, c2, 0), Level1Char(p, c3, 1)};
    }
    /// Every multiplier choice, in lexicographic order.
    static std::vector<Sl3CharData> all(i64 p) {
        std::vector<Sl3CharData> out;
        for (i64 a = 1; a < p; ++a)
            for (i64 b = 1; b < p; ++b)
                for (i64 c = 1; c < p; ++c) out.push_back(make(p, a, b, c));
        return out;
    }
};

struct Sl3TorusElt {
    PadicApprox alpha, beta, gamma;

    static Sl3TorusElt from_integers(i64 p, i64 a, i64 b, int n) {
        const auto x = PadicApprox::from_integer(p, a, n);
        const auto y = PadicApprox::from_integer(p, b, n);
        return {x, y, (x * y).inverse()};
    }

    /// (val(alpha-beta), val(beta-gamma), val(alpha-gamma)); nullopt on a repeated eigenvalue.
    std::optional<std::array<int, 3>> depths() const {
        const PadicApprox d[3] = {alpha - beta, beta - gamma, alpha - gamma};
        std::array<int, 3> v{};
        for (int i = 0; i < 3; ++i) {
            if (d[i].is_zero()) return std::nullopt;
            v[static_cast<std::size_t>(i)] = d[i].val();
        }
        return v;
    }
};

/// Integer pairs (a, b) = (1 + i p, 1 + j p) with gamma = (a b)^-1 giving
/// exactly the depths (r, s, t), in search order.
inline std::vector<std::pair<i64, i64>> sl3_find_torus(i64 p, int r, int s, int t, std::size_t want = 1, i64 limit = 200) {
    std::vector<std::pair<i64, i64>> out;
    for (i64 i = 1; i < limit && out.size() < want; ++i)
        for (i64 j = 1; j < limit && out.size() < want; ++j) {
            const auto g = Sl3TorusElt::from_integers(p, 1 + i * p, 1 + j * p, t + 8);
            const auto d = g.depths();
            if (d && (*d)[0] == r && (*d)[1] == s && (*d)[2] == t) out.emplace_back(1 + i * p, 1 + j * p);
        }
    return out;
}

// ------------------------------------------------------------ closed forms

/// The Gamma sum attached to an H-type element by reading its coset geometry.
inline GammaSpec sl3_gamma_spec(const Sl3Geometry& g, const TorusParams& tp, i64 p) {
    const int u = g.order[0], v = g.order[1], w = g.order[2];
    const int suv = tp.sigma(u, v), svw = tp.sigma(v, w), suw = tp.sigma(u, w);
    const auto [m, n] = restrict_box(g.box_y.lo, g.box_y.hi, g.depth_uv - g.delta_uv - suv);
    const auto [k, l] = restrict_box(g.box_z.lo, g.box_z.hi, g.depth_vw - g.delta_vw - svw);
    GammaSpec s;
    s.m = m;
    s.n = n;
    s.k = k;
    s.l = l;
    s.i = g.box_w.lo;
    s.j = g.box_w.hi;
    s.a = g.depth_uw - g.delta_uw - suv;
    s.b = g.depth_uw - g.delta_uw - suw;
    s.chi = Level1Char(p, 1, 0);
    return s;
}

/// The Xi sum attached to a J-type element, with the multiplicity q^weight
/// coming from the free part of the (u,w) coordinate.
struct XiReduction {
    XiSpec spec;
    int weight = 0;
};

inline XiReduction sl3_xi_spec(const Sl3Geometry& g, const TorusParams& tp, i64 p) {
    const int u = g.order[0], v = g.order[1], w = g.order[2];
    const int suv = tp.sigma(u, v), svw = tp.sigma(v, w), suw = tp.sigma(u, w);
    const WCount wc = sl3_w_count(g, tp);
    const int d1 = g.delta_uv + suv - g.depth_uv;
    const int d2 = g.delta_vw + svw - g.depth_vw;
    XiReduction x;
    x.spec.m = g.box_y.lo + d1;
    x.spec.n = g.box_y.hi + d1;
    x.spec.k = g.box_z.lo + d2;
    x.spec.l = g.box_z.hi + d2;
    x.spec.c = wc.level - (suv - suw) + d1 + d2;
    x.spec.chi_x = Level1Char(p, 1, 0);
    x.spec.chi_y = Level1Char(p, 1, 0);
    x.weight = wc.weight;
    return x;
}

struct Sl3InnerClosed {
    CycValue value;
    Tag tag = Tag::None;
    std::string branch;       // which formula produced the value
    bool oracle_fallback = false; // Gamma configuration outside the case analysis
};

/// One summand of the theorem: q^l for F, q^l' for G, Gamma for H, Xi for J, else 0.
inline Sl3InnerClosed sl3_inner_sum_closed(const Sl3WeylElt& w, const TorusParams& tp, i64 q, i64 p) {
    Sl3InnerClosed out;
    const auto cls = classify(w, tp);
    out.tag = cls.tag;
    auto qp = [&](int e) { return CycValue::integer(p, detail::qpow(q, e)); };
    switch (cls.tag) {
    case Tag::F:
        out.value = qp(sl3_length(w));
        out.branch = "q^l";
        return out;
    case Tag::G:
        out.value = qp(sl3_truncated_length(w, tp));
        out.branch = "q^l'";
        return out;
    case Tag::H: {
        const auto g = sl3_geometry(w, GeometryPreference::Gamma);
        if (!g.gamma_type()) detail::sl3_fail(ErrorCode::UnclassifiedElement, "H element without a character on the (u,w) slot: " + w.to_string());
        const auto spec = sl3_gamma_spec(g, tp, p);
        if (spec.excluded()) {
            if (q != p) detail::sl3_fail(ErrorCode::ExcludedCase, "excluded Gamma configuration with symbolic q");
            out.value = gamma_oracle(spec, p);
            out.oracle_fallback = true;
            out.branch = "Gamma excluded -> direct sum";
            return out;
        }
        const auto ev = gamma_closed_value(spec, q);
        out.value = CycValue::integer(p, ev.value);
        out.branch = "Gamma case " + ev.branch;
        return out;
    }
    case Tag::J: {
        const auto g = sl3_geometry(w, GeometryPreference::Xi);
        if (!g.xi_type()) detail::sl3_fail(ErrorCode::UnclassifiedElement, "J element without characters on (u,v) and (v,w): " + w.to_string());
        const auto red = sl3_xi_spec(g, tp, p);
        const auto ev = xi_closed_value(red.spec, q);
        out.value = CycValue::integer(p, detail::checked_mul(detail::qpow(q, red.weight), ev.value));
        out.branch = "Xi case " + ev.branch;
        return out;
    }
    case Tag::None: break;
    }
    out.value = CycValue(p);
    out.branch = "0";
    return out;
}

struct Sl3Row {
    Sl3WeylElt w;
    Classification cls;
    int length = 0;
    std::optional<int> tlength; // set for G elements
    Sl3InnerClosed closed;
    std::optional<CycValue> oracle;
    u64 nodes = 0;
};

struct Sl3ThetaResult {
    CycValue theta;
    std::vector<Sl3Row> rows;
    std::vector<std::string> log; // overlaps, excluded Gamma configurations
};

/// t + 3 for r = 1; larger r needs two more shells per step.
inline int default_sl3_bound(const TorusParams& tp) { return std::max({tp.r, tp.s, tp.t}) + 2 * tp.r + 1; }

namespace detail {

inline bool on_shell(const Sl3WeylElt& w, int bound) { return w.max_abs_n() >= bound - 1; }

inline void note_overlap(const Sl3Row& row, std::vector<std::string>& log) {
    if (row.cls.hits.size() <= 1) return;
    std::string s = "overlap at " + row.w.to_string() + ":";
    for (auto t : row.cls.hits) s += " " + to_string(t);
    log.push_back(s);
}

} // namespace detail

/// Upsilon times the theorem's sum over every element with max |n_ij| <= bound.
inline Sl3ThetaResult sl3_theta_closed(const TorusParams& tp, i64 q, i64 p, int bound) {
    if (bound < std::max({tp.r, tp.s, tp.t}) + 3) detail::sl3_fail(ErrorCode::InvalidArgument, "bound below max(r,s,t) + 3");
    Sl3ThetaResult res;
    CycValue total(p);
    for (const auto& te : enumerate_sl3(tp, bound)) {
        Sl3Row row;
        row.w = te.w;
        row.cls = te.cls;
        row.length = sl3_length(te.w);
        row.closed = sl3_inner_sum_closed(te.w, tp, q, p);
        if (row.cls.tag == Tag::G) row.tlength = sl3_truncated_length(te.w, tp);
        detail::note_overlap(row, res.log);
        if (row.closed.oracle_fallback) res.log.push_back("excluded Gamma configuration at " + te.w.to_string());
        if (detail::on_shell(te.w, bound) && !row.closed.value.is_zero())
            detail::sl3_fail(ErrorCode::ShellNotVanishing, "closed summand nonzero at the enumeration boundary: " + te.w.to_string());
        total = total + row.closed.value;
        res.rows.push_back(std::move(row));
    }
    res.theta = total.scaled(upsilon(q));
    return res;
}

inline OracleSetup<3> sl3_setup(const Sl3TorusElt& g, const Sl3CharData& chi) {
    const i64 p = g.alpha.prime();
    OracleSetup<3> s;
    s.p = p;
    s.g = {g.alpha, g.beta, g.gamma};
    s.slots = {{0, 1, chi.chi1}, {1, 2, chi.chi2}, {2, 0, chi.chi3}};
    for (const auto* c : {&chi.chi1, &chi.chi2, &chi.chi3})
        if (c->prime != p) detail::sl3_fail(ErrorCode::PrimeMismatch, "character over another prime");
    s.center = roots_of_unity(p, 3, g.alpha.rel_precision());
    return s;
}

/// Unipotent coordinates of H \ H x H.
inline std::vector<std::vector<PadicApprox>> sl3_coset_reps(const Sl3WeylElt& w, i64 p, u64 budget = kDefaultEnumerationBudget) {
    return coset_representatives(w.to_monomial(), p, budget);
}

/// Upsilon times the Frobenius sum over every element with max |n_ij| <= bound,
/// with the closed summand recorded next to each oracle value.
inline Sl3ThetaResult sl3_theta_oracle(const Sl3TorusElt& g, const Sl3CharData& chi, const TorusParams& tp, int bound,
                                       OracleMode mode = OracleMode::BranchAndBound) {
    const auto setup = sl3_setup(g, chi);
    const i64 p = setup.p;
    Sl3ThetaResult res;
    CycValue total(p);
    for (const auto& te : enumerate_sl3(tp, bound)) {
        Sl3Row row;
        row.w = te.w;
        row.cls = te.cls;
        row.length = sl3_length(te.w);
        if (row.cls.tag == Tag::G) row.tlength = sl3_truncated_length(te.w, tp);
        row.closed = sl3_inner_sum_closed(te.w, tp, p, p);
        const auto inner = inner_sum_oracle(setup, te.w.to_monomial(), mode);
        row.oracle = inner.value;
        row.nodes = inner.nodes;
        if (detail::on_shell(te.w, bound) && !inner.value.is_zero())
            detail::sl3_fail(ErrorCode::ShellNotVanishing, "oracle summand nonzero at the enumeration boundary: " + te.w.to_string());
        total = total + inner.value;
        res.rows.push_back(std::move(row));
    }
    res.theta = total.scaled(upsilon(p));
    return res;
}

} // namespace ssc
