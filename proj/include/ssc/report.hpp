#pragma once

#include <chrono>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ssc/errors.hpp"
#include "ssc/gauss.hpp"
#include "ssc/sl2.hpp"
#include "ssc/sl3.hpp"

namespace ssc {

using Json = nlohmann::ordered_json;

enum class Mode { Closed, Oracle, Compare };
enum class Format { Json, Csv, Text };

inline std::string to_string(Mode m) {
    switch (m) {
    case Mode::Closed: return "closed";
    case Mode::Oracle: return "oracle";
    case Mode::Compare: return "compare";
    }
    return "?";
}

struct RunConfig {
    Group group = Group::SL2;
    i64 p = 3;
    i64 q = 0; // 0 means q = p
    int r = 1, s = 1, t = 1;
    std::optional<i64> a;        // SL2: a; SL3: alpha (as an integer)
    std::optional<i64> b;        // SL3: beta
    std::vector<i64> chi;        // multipliers; empty means all 1
    Mode mode = Mode::Compare;
    int precision = 0;           // 0: derived from the torus parameters
    int bound = 0;               // SL2 max length / SL3 bound; 0: derived
    u64 budget = 200'000'000;    // oracle node budget

    i64 residue_order() const { return q == 0 ? p : q; }
};

struct ReportRow {
    int family = 0;
    std::vector<int> exponents;
    int length = 0;
    std::optional<int> tlength;
    std::string tag;
    std::string closed;
    std::string value;
};

struct ThetaReport {
    RunConfig config;
    std::optional<std::string> closed;
    std::optional<std::string> oracle;
    std::vector<ReportRow> breakdown;
    std::vector<std::string> log;
    std::string status; // match, mismatch, closed, oracle, unattainable, error
    std::string error;  // module-qualified code when status = error
    bool resource_error = false;
    bool match = false;
    i64 ms = 0;
};

namespace detail {

inline std::string chi_string(const std::vector<i64>& chi) {
    std::string s;
    for (std::size_t i = 0; i < chi.size(); ++i) s += (i ? "," : "") + std::to_string(chi[i]);
    return s;
}

inline i64 chi_at(const RunConfig& c, std::size_t i) { return i < c.chi.size() ? c.chi[i] : 1; }

inline ReportRow row_of(const Sl3Row& r) {
    ReportRow out;
    out.family = r.w.family;
    out.exponents = {r.w.e1, r.w.e2, r.w.e3()};
    out.length = r.length;
    out.tlength = r.tlength;
    out.tag = to_string(r.cls.tag);
    out.closed = r.closed.value.to_string();
    out.value = r.oracle ? r.oracle->to_string() : out.closed;
    return out;
}

inline void run_sl2(const RunConfig& c, ThetaReport& rep) {
    const i64 p = c.p, q = c.residue_order();
    const auto chi = Sl2CharData::make(p, chi_at(c, 0), chi_at(c, 1));
    std::optional<i64> a = c.a;
    int r = c.r;
    bool on_component = true;
    if (a) {
        const auto x = PadicApprox::from_integer(p, *a, 32);
        const i64 res = static_cast<i64>(x.residue(1).value());
        on_component = res == 1 || res == p - 1;
        if (on_component) {
            const auto got = Sl2TorusElt{x}.r();
            if (!got) throw Error("sl2", ErrorCode::InvalidArgument, "a = a^-1: central element");
            r = *got;
        }
    } else if (c.mode != Mode::Closed) {
        a = sl2_find_torus(p, r);
        if (!a) {
            rep.status = "unattainable";
            rep.log.push_back("no a in 1 + p with val(a - a^-1) = " + std::to_string(r));
        }
    }
    const int max_len = c.bound > 0 ? c.bound : (on_component ? r + 2 : 4);
    const Rational closed = on_component ? sl2_theta_closed(q, p, r) : Rational(0);
    if (c.mode != Mode::Oracle) rep.closed = to_string(closed);
    if (c.mode == Mode::Closed || rep.status == "unattainable") {
        for (const auto& w : enumerate_sl2(max_len)) {
            const Rational v = on_component ? sl2_inner_sum_closed(w, r, q) : Rational(0);
            rep.breakdown.push_back({w.kind == Sl2WeylElt::Kind::Diagonal ? 1 : 2, {w.n}, sl2_length(w), std::nullopt,
                                     sl2_length(w) < r ? "F" : "none", to_string(v), to_string(v)});
        }
        if (rep.status.empty()) rep.status = "closed";
        return;
    }
    if (q != p) throw Error("cli", ErrorCode::InvalidArgument, "the oracle needs q = p");
    const int n = c.precision > 0 ? c.precision : r + max_len + 2;
    auto setup_elt = sl2_torus(p, *a, n);
    auto setup = sl2_setup(setup_elt, chi);
    setup.node_budget = c.budget;
    CycValue total(p);
    for (const auto& w : enumerate_sl2(max_len)) {
        const auto inner = inner_sum_oracle(setup, w.to_monomial());
        total = total + inner.value;
        const Rational cv = on_component ? sl2_inner_sum_closed(w, r, q) : Rational(0);
        rep.breakdown.push_back({w.kind == Sl2WeylElt::Kind::Diagonal ? 1 : 2, {w.n}, sl2_length(w), std::nullopt,
                                 sl2_length(w) < r ? "F" : "none", to_string(cv), inner.value.to_string()});
    }
    const CycValue theta = total.scaled(sl2_upsilon(p));
    rep.oracle = theta.to_string();
    rep.log.push_back("a = " + std::to_string(*a) + ", N = " + std::to_string(n) + ", max length = " + std::to_string(max_len));
    if (c.mode == Mode::Oracle) {
        rep.status = "oracle";
        return;
    }
    rep.match = theta.is_integer() && closed.denominator() == 1 && *theta.to_integer() == closed.numerator();
    for (const auto& row : rep.breakdown)
        if (row.closed != row.value) rep.match = false;
    rep.status = rep.match ? "match" : "mismatch";
}

/// Reorders three eigenvalues so that the depths satisfy t >= r = s.
inline std::optional<std::pair<Sl3TorusElt, TorusParams>> normalize_sl3(const Sl3TorusElt& g) {
    std::array<PadicApprox, 3> e{g.alpha, g.beta, g.gamma};
    std::array<int, 3> idx{0, 1, 2};
    do {
        Sl3TorusElt h{e[idx[0]], e[idx[1]], e[idx[2]]};
        const auto d = h.depths();
        if (!d) return std::nullopt;
        if ((*d)[0] >= 1 && (*d)[0] == (*d)[1] && (*d)[2] >= (*d)[0]) return std::make_pair(h, TorusParams::sl3((*d)[0], (*d)[1], (*d)[2]));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return std::nullopt;
}

inline void run_sl3(const RunConfig& c, ThetaReport& rep) {
    const i64 p = c.p, q = c.residue_order();
    const auto chi = Sl3CharData::make(p, chi_at(c, 0), chi_at(c, 1), chi_at(c, 2));
    std::optional<Sl3TorusElt> g;
    std::optional<TorusParams> tp;
    bool on_component = true;
    if (c.a || c.b) {
        if (!c.a || !c.b) throw Error("cli", ErrorCode::InvalidArgument, "SL3 needs both --a and --b");
        const int n0 = c.precision > 0 ? c.precision : 24;
        const auto raw = Sl3TorusElt::from_integers(p, *c.a, *c.b, n0);
        // factor out a central root of unity when the residues agree up to one
        std::optional<PadicApprox> zeta;
        for (const auto& z : roots_of_unity(p, 3, n0)) {
            bool ok = true;
            for (const auto* x : {&raw.alpha, &raw.beta, &raw.gamma})
                if ((*x - z).in_ideal(1) != Tri::Yes) ok = false;
            if (ok) zeta = z;
        }
        on_component = zeta.has_value();
        g = raw;
        if (on_component) {
            // relabeling the eigenvalues is a conjugation, so the oracle may use the reordered element
            auto norm = normalize_sl3(raw);
            if (!norm) throw Error("sl3", ErrorCode::InvalidArgument, "repeated eigenvalue");
            g = norm->first;
            tp = norm->second;
        }
    } else {
        tp = TorusParams::sl3(c.r, c.s, c.t);
        if (c.mode != Mode::Closed) {
            const auto found = sl3_find_torus(p, c.r, c.s, c.t);
            if (found.empty()) {
                rep.status = "unattainable";
                rep.log.push_back("no alpha, beta in 1 + p realize these depths");
            } else {
                const int bound = c.bound > 0 ? c.bound : default_sl3_bound(*tp);
                const int n = c.precision > 0 ? c.precision : c.t + bound + 2;
                g = Sl3TorusElt::from_integers(p, found[0].first, found[0].second, n);
                rep.log.push_back("alpha = " + std::to_string(found[0].first) + ", beta = " + std::to_string(found[0].second));
            }
        }
    }
    const int bound = c.bound > 0 ? c.bound : (tp ? default_sl3_bound(*tp) : 4);
    std::optional<CycValue> closed;
    if (c.mode != Mode::Oracle) {
        if (on_component) {
            auto res = sl3_theta_closed(*tp, q, p, bound);
            closed = res.theta;
            for (auto& l : res.log) rep.log.push_back(l);
            if (c.mode == Mode::Closed || rep.status == "unattainable")
                for (const auto& row : res.rows) rep.breakdown.push_back(row_of(row));
        } else {
            closed = CycValue(p);
        }
        rep.closed = closed->to_string();
    }
    if (c.mode == Mode::Closed || rep.status == "unattainable") {
        if (rep.status.empty()) rep.status = "closed";
        return;
    }
    if (q != p) throw Error("cli", ErrorCode::InvalidArgument, "the oracle needs q = p");
    if (!on_component) {
        // every summand vanishes at the membership test; sum over a fixed small ball
        auto setup = sl3_setup(*g, chi);
        setup.node_budget = c.budget;
        CycValue total(p);
        for (const auto& te : enumerate_sl3(TorusParams::sl3(1, 1, 1), bound)) {
            const auto inner = inner_sum_oracle(setup, te.w.to_monomial());
            total = total + inner.value;
            ReportRow row;
            row.family = te.w.family;
            row.exponents = {te.w.e1, te.w.e2, te.w.e3()};
            row.length = sl3_length(te.w);
            row.tag = "none";
            row.closed = "0";
            row.value = inner.value.to_string();
            rep.breakdown.push_back(row);
        }
        rep.oracle = total.scaled(upsilon(p)).to_string();
    } else {
        const Sl3TorusElt gg = *g;
        auto res = sl3_theta_oracle(gg, chi, *tp, bound);
        rep.oracle = res.theta.to_string();
        for (const auto& row : res.rows) rep.breakdown.push_back(row_of(row));
        for (auto& l : res.log) rep.log.push_back(l);
    }
    if (c.mode == Mode::Oracle) {
        rep.status = "oracle";
        return;
    }
    rep.match = *rep.closed == *rep.oracle;
    for (const auto& row : rep.breakdown)
        if (row.closed != row.value) rep.match = false;
    rep.status = rep.match ? "match" : "mismatch";
}

} // namespace detail

/// One evaluation. Typed errors are caught into the report.
inline ThetaReport run(const RunConfig& c) {
    ThetaReport rep;
    rep.config = c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (c.group == Group::SL2) detail::run_sl2(c, rep);
        else detail::run_sl3(c, rep);
    } catch (const Error& e) {
        rep.status = "error";
        rep.error = e.qualified();
        rep.resource_error = is_resource_error(e.code());
        rep.log.push_back(e.what());
        rep.match = false;
    }
    rep.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ----------------------------------------------------------- serialization

inline Json config_json(const RunConfig& c) {
    Json j;
    j["group"] = c.group == Group::SL2 ? "sl2" : "sl3";
    j["p"] = c.p;
    j["q"] = c.residue_order();
    j["r"] = c.r;
    if (c.group == Group::SL3) {
        j["s"] = c.s;
        j["t"] = c.t;
    }
    j["a"] = c.a ? Json(std::to_string(*c.a)) : Json(nullptr);
    if (c.group == Group::SL3) j["b"] = c.b ? Json(std::to_string(*c.b)) : Json(nullptr);
    j["chi"] = c.chi.empty() ? std::string(c.group == Group::SL2 ? "1,1" : "1,1,1") : detail::chi_string(c.chi);
    j["mode"] = to_string(c.mode);
    j["precision"] = c.precision;
    j["bound"] = c.bound;
    j["budget"] = c.budget;
    return j;
}

inline Json to_json(const ThetaReport& r) {
    Json j;
    j["config"] = config_json(r.config);
    j["closed"] = r.closed ? Json(*r.closed) : Json(nullptr);
    j["oracle"] = r.oracle ? Json(*r.oracle) : Json(nullptr);
    Json rows = Json::array();
    for (const auto& row : r.breakdown) {
        Json x;
        x["family"] = row.family;
        x["exponents"] = row.exponents;
        x["length"] = row.length;
        x["tlength"] = row.tlength ? Json(*row.tlength) : Json(nullptr);
        x["tag"] = row.tag;
        x["value"] = row.value;
        x["closed"] = row.closed;
        rows.push_back(x);
    }
    j["breakdown"] = rows;
    j["match"] = r.match;
    j["status"] = r.status;
    j["error"] = r.error.empty() ? Json(nullptr) : Json(r.error);
    j["log"] = r.log;
    j["ms"] = r.ms;
    return j;
}

inline std::string to_csv(const std::vector<ThetaReport>& reports) {
    std::ostringstream os;
    os << "group,p,r,s,t,chi,family,exponents,length,tlength,tag,closed,value\n";
    for (const auto& r : reports) {
        const auto cfg = config_json(r.config);
        for (const auto& row : r.breakdown) {
            std::string ex;
            for (std::size_t i = 0; i < row.exponents.size(); ++i) ex += (i ? " " : "") + std::to_string(row.exponents[i]);
            os << cfg["group"].get<std::string>() << ',' << r.config.p << ',' << r.config.r << ','
               << (r.config.group == Group::SL3 ? std::to_string(r.config.s) : "") << ','
               << (r.config.group == Group::SL3 ? std::to_string(r.config.t) : "") << ",\"" << cfg["chi"].get<std::string>() << "\","
               << row.family << ',' << ex << ',' << row.length << ',' << (row.tlength ? std::to_string(*row.tlength) : "") << ','
               << row.tag << ',' << row.closed << ',' << row.value << '\n';
        }
    }
    return os.str();
}

inline std::string to_text(const ThetaReport& r) {
    std::ostringstream os;
    const auto cfg = config_json(r.config);
    os << cfg["group"].get<std::string>() << " p=" << r.config.p << " r=" << r.config.r;
    if (r.config.group == Group::SL3) os << " s=" << r.config.s << " t=" << r.config.t;
    os << " chi=" << cfg["chi"].get<std::string>() << " mode=" << to_string(r.config.mode) << ": ";
    os << "closed=" << r.closed.value_or("-") << " oracle=" << r.oracle.value_or("-") << " status=" << r.status;
    if (!r.error.empty()) os << " (" << r.error << ")";
    os << " " << r.ms << "ms\n";
    for (const auto& l : r.log) os << "  " << l << "\n";
    return os.str();
}

struct SweepSummary {
    int runs = 0, matched = 0, mismatched = 0, unattainable = 0, errors = 0, resource_errors = 0;
};

inline SweepSummary summarize(const std::vector<ThetaReport>& reports) {
    SweepSummary s;
    for (const auto& r : reports) {
        ++s.runs;
        if (r.status == "match") ++s.matched;
        else if (r.status == "mismatch") ++s.mismatched;
        else if (r.status == "unattainable") ++s.unattainable;
        else if (r.status == "error") {
            ++s.errors;
            if (r.resource_error) ++s.resource_errors;
        }
    }
    return s;
}

inline Json to_json(const SweepSummary& s) {
    Json j;
    j["runs"] = s.runs;
    j["match"] = s.matched;
    j["mismatch"] = s.mismatched;
    j["unattainable"] = s.unattainable;
    j["errors"] = s.errors;
    return j;
}

/// 0 all compared runs match, 1 a mismatch or a non-resource error, 3 a
/// budget or precision error (usage errors are reported by the caller as 2).
inline int exit_code(const SweepSummary& s) {
    if (s.mismatched > 0 || s.errors > s.resource_errors) return 1;
    if (s.resource_errors > 0) return 3;
    return 0;
}

/// Cartesian sweep in stable order: p, then torus parameters, then characters.
/// A BoxTooLarge error stops the sweep unless skip_oversize is set.
struct SweepRanges {
    std::vector<i64> ps;
    std::vector<int> rs, ss, ts;
    std::vector<std::vector<i64>> chis; // empty: the default character only
};

inline std::vector<ThetaReport> sweep(const RunConfig& base, const SweepRanges& ranges, bool skip_oversize) {
    std::vector<ThetaReport> out;
    const std::vector<std::vector<i64>> chis = ranges.chis.empty() ? std::vector<std::vector<i64>>{base.chi} : ranges.chis;
    const std::vector<int> one_s{base.s}, one_t{base.t};
    const auto& ss = base.group == Group::SL3 ? ranges.ss : one_s;
    const auto& ts = base.group == Group::SL3 ? ranges.ts : one_t;
    for (i64 p : ranges.ps)
        for (int r : ranges.rs)
            for (int s : ss)
                for (int t : ts)
                    for (const auto& chi : chis) {
                        RunConfig c = base;
                        c.p = p;
                        c.r = r;
                        c.s = s;
                        c.t = t;
                        c.chi = chi;
                        if (c.group == Group::SL3 && (s != r || t < r)) continue; // outside the normalized range
                        out.push_back(run(c));
                        if (out.back().error == "oracle.BoxTooLarge" && !skip_oversize) return out;
                    }
    return out;
}

// ------------------------------------------------------------- gauss grid

struct GaussGridResult {
    i64 p = 2;
    int radius = 3;
    u64 gamma_cells = 0, gamma_mismatch = 0, gamma_excluded = 0, gamma_oversize = 0;
    u64 xi_cells = 0, xi_mismatch = 0, xi_oversize = 0;
    std::vector<std::string> examples; // first few mismatches
};

/// Closed versus direct evaluation on every valid tuple with entries in
/// [-R, R] (c in [-R, R+1] for Xi) and at most budget terms.
inline GaussGridResult gauss_grid(i64 p, int R, u64 budget = kGaussBudget, i64 multiplier = 1) {
    GaussGridResult g;
    g.p = p;
    g.radius = R;
    ProductHistogramCache cache;
    const Level1Char chi(p, multiplier, 0);
    for (int m = -R; m <= R; ++m)
        for (int n = m; n <= R; ++n)
            for (int k = -R; k <= R; ++k)
                for (int l = k; l <= R; ++l) {
                    for (int i = -R; i <= R; ++i)
                        for (int j = i; j <= R; ++j)
                            for (int a = -R; a <= R; ++a)
                                for (int b = -R; b <= R; ++b) {
                                    GammaSpec s{m, n, k, l, i, j, a, b, chi};
                                    if (s.excluded()) {
                                        ++g.gamma_excluded;
                                        continue;
                                    }
                                    if (s.total_digits() > 62 || !box_size(QuotientBox{0, s.total_digits()}, p, budget)) {
                                        ++g.gamma_oversize;
                                        continue;
                                    }
                                    ++g.gamma_cells;
                                    if (!(gamma_closed(s, p) == gamma_oracle_fibered(s, p, cache, budget))) {
                                        ++g.gamma_mismatch;
                                        if (g.examples.size() < 5)
                                            g.examples.push_back("Gamma " + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + "," +
                                                                 std::to_string(l) + "," + std::to_string(i) + "," + std::to_string(j) + "," +
                                                                 std::to_string(a) + "," + std::to_string(b));
                                    }
                                }
                    for (int c = -R; c <= R + 1; ++c) {
                        XiSpec s{m, n, k, l, c, chi, chi};
                        if (!box_size(QuotientBox{0, s.total_digits()}, p, budget)) {
                            ++g.xi_oversize;
                            continue;
                        }
                        ++g.xi_cells;
                        if (!(xi_closed(s, p) == xi_oracle(s, p, budget))) {
                            ++g.xi_mismatch;
                            if (g.examples.size() < 5)
                                g.examples.push_back("Xi " + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + "," +
                                                     std::to_string(l) + "," + std::to_string(c));
                        }
                    }
                }
    return g;
}

inline Json to_json(const GaussGridResult& g) {
    Json j;
    j["p"] = g.p;
    j["radius"] = g.radius;
    j["gamma"] = {{"cells", g.gamma_cells}, {"mismatch", g.gamma_mismatch}, {"excluded", g.gamma_excluded}, {"oversize", g.gamma_oversize}};
    j["xi"] = {{"cells", g.xi_cells}, {"mismatch", g.xi_mismatch}, {"oversize", g.xi_oversize}};
    j["mismatch_examples"] = g.examples;
    return j;
}

} // namespace ssc
