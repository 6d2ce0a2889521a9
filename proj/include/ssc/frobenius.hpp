#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ssc/cyclotomic.hpp"
#include "ssc/errors.hpp"
#include "ssc/padic.hpp"
#include "ssc/weyl.hpp"

namespace ssc {

template <int Dim>
using Matrix = std::array<std::array<PadicApprox, Dim>, Dim>;

template <int Dim>
Matrix<Dim> mat_mul(const Matrix<Dim>& a, const Matrix<Dim>& b) {
    Matrix<Dim> r;
    const i64 p = a[0][0].prime();
    for (int i = 0; i < Dim; ++i)
        for (int k = 0; k < Dim; ++k) {
            PadicApprox acc = PadicApprox::zero(p);
            for (int j = 0; j < Dim; ++j) {
                if (a[i][j].is_exact_zero() || b[j][k].is_exact_zero()) continue;
                acc = acc + a[i][j] * b[j][k];
            }
            r[i][k] = acc;
        }
    return r;
}

template <int Dim>
Matrix<Dim> monomial_matrix(const Monomial<Dim>& x, i64 p) {
    Matrix<Dim> m;
    for (auto& row : m)
        for (auto& e : row) e = PadicApprox::zero(p);
    for (int i = 0; i < Dim; ++i) m[i][x.perm[i]] = PadicApprox::from_integer(p, x.signs[i], -1, x.exps[i]);
    return m;
}

template <int Dim>
Matrix<Dim> monomial_inverse_matrix(const Monomial<Dim>& x, i64 p) {
    Matrix<Dim> m;
    for (auto& row : m)
        for (auto& e : row) e = PadicApprox::zero(p);
    for (int i = 0; i < Dim; ++i) m[x.perm[i]][i] = PadicApprox::from_integer(p, x.signs[i], -1, -x.exps[i]);
    return m;
}

/// A character slot of the affine generic character on I_+.
struct CharSlot {
    int row = 0;
    int col = 0;
    Level1Char chi;
};

/// Everything the oracle needs about the group and the character.
template <int Dim>
struct OracleSetup {
    i64 p = 2;
    std::array<PadicApprox, Dim> g{};     // diagonal of the torus element
    std::vector<CharSlot> slots;          // chi on I_+
    std::vector<PadicApprox> center;      // scalars of Z(F) up to 1 + p, as p-adic numbers
    u64 node_budget = 200'000'000;
};

enum class OracleMode { BranchAndBound, Exhaustive };

struct InnerSumResult {
    CycValue value;
    u64 nodes = 0;
    u64 leaves = 0;
};

namespace detail {

inline void oracle_fail(ErrorCode code, const std::string& what) { throw Error("oracle", code, what); }

inline i64 checked_pow(i64 q, int k) {
    i64 r = 1;
    for (int i = 0; i < k; ++i) r = checked_mul(r, q);
    return r;
}

} // namespace detail

/// A coset coordinate: the variable at position (a, b) of the unipotent
/// representative, ranging over canonical representatives of its box.
struct CosetVar {
    int a = 0;
    int b = 0;
    QuotientBox box;
};

/// Unipotent representatives of (H cap x^-1 H x) \ H: one variable per
/// active off-diagonal position, all upper triangular for a suitable order.
template <int Dim>
std::vector<CosetVar> coset_variables(const Monomial<Dim>& x) {
    const auto boxes = coset_boxes(x);
    std::vector<CosetVar> vars;
    for (int a = 0; a < Dim; ++a)
        for (int b = 0; b < Dim; ++b)
            if (a != b && boxes[a][b].hi > boxes[a][b].lo) vars.push_back({a, b, boxes[a][b]});
    return vars;
}

template <int Dim>
Matrix<Dim> unipotent(const std::vector<CosetVar>& vars, const std::vector<PadicApprox>& vals, i64 p) {
    Matrix<Dim> s;
    for (int i = 0; i < Dim; ++i)
        for (int k = 0; k < Dim; ++k) s[i][k] = i == k ? PadicApprox::from_integer(p, 1) : PadicApprox::zero(p);
    for (std::size_t j = 0; j < vars.size(); ++j) s[vars[j].a][vars[j].b] = vals[j];
    return s;
}

/// (I + Y)^-1 = sum_k (-Y)^k for nilpotent Y.
template <int Dim>
Matrix<Dim> unipotent_inverse(const Matrix<Dim>& s) {
    const i64 p = s[0][0].prime();
    Matrix<Dim> negy, result, power;
    for (int i = 0; i < Dim; ++i)
        for (int k = 0; k < Dim; ++k) {
            negy[i][k] = i == k ? PadicApprox::zero(p) : -s[i][k];
            result[i][k] = i == k ? PadicApprox::from_integer(p, 1) : PadicApprox::zero(p);
        }
    power = result;
    for (int step = 1; step < Dim; ++step) {
        power = mat_mul<Dim>(power, negy);
        for (int i = 0; i < Dim; ++i)
            for (int k = 0; k < Dim; ++k) result[i][k] = result[i][k] + power[i][k];
    }
    return result;
}

struct Decision {
    bool undetermined = false;
    bool vanishes = false;
    i64 exponent = 0;
};

/// chi-dot on Z(F) I_+ with trivial central character: find the central
/// scalar zeta with diag in zeta(1 + p), then test the I_+ depths of
/// zeta^-1 M and read the character digits.
template <int Dim>
Decision decide(const OracleSetup<Dim>& setup, const Matrix<Dim>& m) {
    Decision d;
    const PadicApprox* zeta = nullptr;
    bool unknown_center = false;
    for (const auto& z : setup.center) {
        bool all = true, unknown = false;
        for (int i = 0; i < Dim; ++i) {
            const Tri t = (m[i][i] - z).in_ideal(1);
            if (t == Tri::No) all = false;
            if (t == Tri::Unknown) unknown = true;
        }
        if (all && !unknown) {
            zeta = &z;
            break;
        }
        if (all && unknown) unknown_center = true;
    }
    if (!zeta) {
        if (unknown_center) d.undetermined = true;
        else d.vanishes = true;
        return d;
    }
    const PadicApprox zinv = zeta->inverse();
    for (int i = 0; i < Dim; ++i)
        for (int k = 0; k < Dim; ++k) {
            if (i == k) continue;
            const PadicApprox e = m[i][k] * zinv;
            const Tri t = e.in_ideal(iwahori_depth(i, k));
            if (t == Tri::No) {
                d.vanishes = true;
                return d;
            }
            if (t == Tri::Unknown) d.undetermined = true;
        }
    if (d.undetermined) return d;
    for (const auto& slot : setup.slots) {
        const PadicApprox e = m[slot.row][slot.col] * zinv;
        auto digit = e.digit(slot.chi.shift);
        if (!digit) {
            d.undetermined = true;
            return d;
        }
        d.exponent += slot.chi.multiplier * *digit;
    }
    d.exponent %= setup.p;
    return d;
}

template <int Dim>
Matrix<Dim> conjugated(const OracleSetup<Dim>& setup, const Matrix<Dim>& x, const Matrix<Dim>& xinv, const Matrix<Dim>& s) {
    Matrix<Dim> g;
    for (int i = 0; i < Dim; ++i)
        for (int k = 0; k < Dim; ++k) g[i][k] = i == k ? setup.g[i] : PadicApprox::zero(setup.p);
    const auto sinv = unipotent_inverse<Dim>(s);
    return mat_mul<Dim>(mat_mul<Dim>(mat_mul<Dim>(mat_mul<Dim>(x, s), g), sinv), xinv);
}

/// Sum over H \ H x H of chi-dot(y g y^-1), y = x s.
template <int Dim>
InnerSumResult inner_sum_oracle(const OracleSetup<Dim>& setup, const Monomial<Dim>& xm, OracleMode mode = OracleMode::BranchAndBound) {
    const i64 p = setup.p;
    const auto vars = coset_variables(xm);
    const auto x = monomial_matrix(xm, p);
    const auto xinv = monomial_inverse_matrix(xm, p);
    CycAccumulator acc(p);
    InnerSumResult res;
    const std::size_t nv = vars.size();

    // each variable: fixed digits as an integer multiple of p^lo and the
    // first unfixed place
    std::vector<i64> fixed(nv, 0);
    std::vector<int> level(nv);
    for (std::size_t j = 0; j < nv; ++j) level[j] = vars[j].box.lo;

    auto value_of = [&](std::size_t j) {
        const int lo = vars[j].box.lo;
        if (level[j] == vars[j].box.hi) return PadicApprox::from_integer(p, fixed[j], -1, lo);
        if (fixed[j] == 0) return PadicApprox::zero(p, level[j]);
        const PadicApprox known = PadicApprox::from_integer(p, fixed[j], -1, lo);
        return known + PadicApprox::zero(p, level[j]);
    };

    if (mode == OracleMode::Exhaustive) {
        int total_digits = 0;
        for (const auto& v : vars) total_digits += v.box.width();
        u64 count = 1;
        for (int i = 0; i < total_digits; ++i) {
            count *= static_cast<u64>(p);
            if (count > setup.node_budget) detail::oracle_fail(ErrorCode::BoxTooLarge, "exhaustive coset enumeration over budget");
        }
        std::vector<i64> bounds(nv);
        for (std::size_t j = 0; j < nv; ++j) {
            bounds[j] = detail::checked_pow(p, vars[j].box.width());
            level[j] = vars[j].box.hi;
        }
        std::vector<i64> idx(nv, 0);
        for (u64 c = 0; c < count; ++c) {
            std::vector<PadicApprox> vals(nv);
            for (std::size_t j = 0; j < nv; ++j) {
                fixed[j] = idx[j];
                vals[j] = value_of(j);
            }
            const auto m = conjugated<Dim>(setup, x, xinv, unipotent<Dim>(vars, vals, p));
            const Decision d = decide<Dim>(setup, m);
            ++res.nodes;
            if (d.undetermined) detail::oracle_fail(ErrorCode::PrecisionExhausted, "entry undetermined at full coset precision");
            if (!d.vanishes) {
                acc.add(d.exponent);
                ++res.leaves;
            }
            for (std::size_t j = 0; j < nv; ++j) {
                if (++idx[j] < bounds[j]) break;
                idx[j] = 0;
            }
        }
        res.value = acc.value();
        return res;
    }

    // depth-first branch and bound
    struct Frame {
        std::vector<i64> fixed;
        std::vector<int> level;
    };
    std::vector<Frame> stack;
    stack.push_back({fixed, level});
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        fixed = fr.fixed;
        level = fr.level;
        if (++res.nodes > setup.node_budget) detail::oracle_fail(ErrorCode::BoxTooLarge, "branch-and-bound node budget exceeded");
        std::vector<PadicApprox> vals(nv);
        for (std::size_t j = 0; j < nv; ++j) vals[j] = value_of(j);
        const auto m = conjugated<Dim>(setup, x, xinv, unipotent<Dim>(vars, vals, p));
        const Decision d = decide<Dim>(setup, m);
        if (d.vanishes) continue;
        int remaining = 0;
        std::size_t pick = nv;
        for (std::size_t j = 0; j < nv; ++j) {
            remaining += vars[j].box.hi - level[j];
            if (level[j] < vars[j].box.hi && (pick == nv || level[j] < level[pick])) pick = j;
        }
        if (!d.undetermined) {
            acc.add(d.exponent, detail::checked_pow(p, remaining));
            ++res.leaves;
            continue;
        }
        if (pick == nv) detail::oracle_fail(ErrorCode::PrecisionExhausted, "entry undetermined at full coset precision; raise N");
        const i64 step = detail::checked_pow(p, level[pick] - vars[pick].box.lo);
        for (i64 dgt = p - 1; dgt >= 0; --dgt) {
            Frame child{fixed, level};
            child.fixed[pick] += dgt * step;
            child.level[pick] += 1;
            stack.push_back(std::move(child));
        }
    }
    res.value = acc.value();
    return res;
}

/// Representatives of H \ H x H as coordinate vectors (exact canonical
/// digits), for inspection and the injectivity check.
template <int Dim>
std::vector<std::vector<PadicApprox>> coset_representatives(const Monomial<Dim>& xm, i64 p, u64 budget = kDefaultEnumerationBudget) {
    const auto vars = coset_variables(xm);
    std::vector<std::vector<PadicApprox>> per;
    u64 count = 1;
    for (const auto& v : vars) {
        per.push_back(enumerate_box(v.box, p, budget));
        count *= per.back().size();
        if (count > budget) throw Error("oracle", ErrorCode::BoxTooLarge, "coset representative list over budget");
    }
    std::vector<std::vector<PadicApprox>> out;
    std::vector<std::size_t> idx(vars.size(), 0);
    for (u64 c = 0; c < count; ++c) {
        std::vector<PadicApprox> row;
        for (std::size_t j = 0; j < vars.size(); ++j) row.push_back(per[j][idx[j]]);
        out.push_back(std::move(row));
        for (std::size_t j = 0; j < vars.size(); ++j) {
            if (++idx[j] < per[j].size()) break;
            idx[j] = 0;
        }
    }
    return out;
}

/// Is an exactly known matrix in H = Z(F) I_+?
template <int Dim>
bool in_H(const Matrix<Dim>& m, const std::vector<PadicApprox>& center) {
    for (const auto& z : center) {
        bool ok = true;
        for (int i = 0; i < Dim && ok; ++i)
            if ((m[i][i] - z).in_ideal(1) != Tri::Yes) ok = false;
        if (!ok) continue;
        const PadicApprox zinv = z.inverse();
        for (int i = 0; i < Dim && ok; ++i)
            for (int k = 0; k < Dim && ok; ++k)
                if (i != k && (m[i][k] * zinv).in_ideal(iwahori_depth(i, k)) != Tri::Yes) ok = false;
        if (ok) return true;
    }
    return false;
}

/// Distinct representatives s1, s2 must give x s1 s2^-1 x^-1 outside H.
template <int Dim>
bool coset_representatives_distinct(const Monomial<Dim>& xm, i64 p, const std::vector<PadicApprox>& center) {
    const auto vars = coset_variables(xm);
    const auto reps = coset_representatives(xm, p);
    const auto x = monomial_matrix(xm, p);
    const auto xinv = monomial_inverse_matrix(xm, p);
    std::vector<Matrix<Dim>> inverses;
    for (const auto& r : reps) inverses.push_back(unipotent_inverse<Dim>(unipotent<Dim>(vars, r, p)));
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j) {
            if (i == j) continue;
            const auto m = mat_mul<Dim>(mat_mul<Dim>(mat_mul<Dim>(x, unipotent<Dim>(vars, reps[i], p)), inverses[j]), xinv);
            if (in_H<Dim>(m, center)) return false;
        }
    return true;
}

/// Cube (or square) roots of unity of Z_p to relative precision n, found
/// by Hensel lifting from residues.
inline std::vector<PadicApprox> roots_of_unity(i64 p, int order, int n) {
    std::vector<PadicApprox> out;
    for (i64 r = 1; r < p; ++r) {
        i64 pw = 1;
        for (int k = 0; k < order; ++k) pw = pw * r % p;
        if (pw != 1) continue;
        // Newton iteration z <- z - (z^order - 1) / (order z^(order-1)) when order is a unit
        PadicApprox z = PadicApprox::from_integer(p, r, n);
        if (order % p == 0) {
            if (r != 1) continue;
            out.push_back(z);
            continue;
        }
        const PadicApprox one = PadicApprox::from_integer(p, 1, n);
        const PadicApprox ord = PadicApprox::from_integer(p, order, n);
        for (int it = 0; it < 8 * n + 8; ++it) {
            PadicApprox zp = one;
            for (int k = 0; k < order - 1; ++k) zp = zp * z;
            const PadicApprox f = zp * z - one;
            if (f.is_zero()) break;
            z = z - f / (ord * zp);
        }
        out.push_back(z);
    }
    return out;
}

} // namespace ssc
