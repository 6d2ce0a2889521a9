#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssc/errors.hpp"
#include "ssc/padic.hpp"

namespace ssc {

namespace detail {

inline void cyc_fail(ErrorCode code, const std::string& what) { throw Error("cyclotomic", code, what); }

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) cyc_fail(ErrorCode::Overflow, "coefficient overflow");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) cyc_fail(ErrorCode::Overflow, "coefficient overflow");
    return r;
}

} // namespace detail

/// Element of Z[zeta_p] in the basis 1, zeta, ..., zeta^(p-2).
class CycValue {
public:
    CycValue() = default;
    explicit CycValue(i64 p) : p_(p), c_(static_cast<std::size_t>(p - 1), 0) {
        if (p < 2) detail::cyc_fail(ErrorCode::InvalidArgument, "prime must be at least 2");
    }

    static CycValue integer(i64 p, i64 n) {
        CycValue v(p);
        v.c_[0] = n;
        return v;
    }

    /// zeta^k for any integer k.
    static CycValue zeta_pow(i64 p, i64 k) {
        CycValue v(p);
        const i64 e = ((k % p) + p) % p;
        if (e < p - 1) {
            v.c_[static_cast<std::size_t>(e)] = 1;
        } else {
            for (auto& x : v.c_) x = -1;
        }
        return v;
    }

    static CycValue from_coeffs(i64 p, std::vector<i64> coeffs) {
        if (coeffs.size() != static_cast<std::size_t>(p - 1)) detail::cyc_fail(ErrorCode::InvalidArgument, "wrong coefficient count");
        CycValue v(p);
        v.c_ = std::move(coeffs);
        return v;
    }

    i64 prime() const { return p_; }
    const std::vector<i64>& coeffs() const { return c_; }

    bool is_integer() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    std::optional<i64> to_integer() const {
        if (!is_integer()) return std::nullopt;
        return c_.empty() ? 0 : c_[0];
    }

    bool is_zero() const {
        for (auto x : c_)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const CycValue& a, const CycValue& b) = default;

    friend CycValue operator+(const CycValue& a, const CycValue& b) {
        check(a, b);
        CycValue r(a.p_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = detail::checked_add(a.c_[i], b.c_[i]);
        return r;
    }

    friend CycValue operator-(const CycValue& a, const CycValue& b) {
        check(a, b);
        CycValue r(a.p_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = detail::checked_add(a.c_[i], -b.c_[i]);
        return r;
    }

    friend CycValue operator*(const CycValue& a, const CycValue& b) {
        check(a, b);
        const std::size_t p = static_cast<std::size_t>(a.p_);
        std::vector<i64> full(p, 0); // coefficients of zeta^0 .. zeta^(p-1) after folding by zeta^p = 1
        for (std::size_t i = 0; i + 1 < p; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j + 1 < p; ++j) {
                if (b.c_[j] == 0) continue;
                auto& slot = full[(i + j) % p];
                slot = detail::checked_add(slot, detail::checked_mul(a.c_[i], b.c_[j]));
            }
        }
        return fold(a.p_, full);
    }

    CycValue scaled(i64 k) const {
        CycValue r(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = detail::checked_mul(c_[i], k);
        return r;
    }

    /// Reduce sum_k full[k] zeta^k (k < p) to canonical form using
    /// zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)).
    static CycValue fold(i64 p, const std::vector<i64>& full) {
        CycValue r(p);
        const i64 top = full[static_cast<std::size_t>(p - 1)];
        for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(p); ++i) r.c_[i] = detail::checked_add(full[i], -top);
        return r;
    }

    /// Integers print as decimals; anything else as its coefficient vector.
    std::string to_string() const {
        if (auto n = to_integer()) return std::to_string(*n);
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(c_[i]);
        }
        return s + "]";
    }

private:
    static void check(const CycValue& a, const CycValue& b) {
        if (a.p_ != b.p_) detail::cyc_fail(ErrorCode::PrimeMismatch, "operands in different cyclotomic rings");
    }

    i64 p_ = 2;
    std::vector<i64> c_ = std::vector<i64>(1, 0);
};

/// Counts of zeta^k, k in [0, p). Cheap to add into; converts exactly.
class CycAccumulator {
public:
    explicit CycAccumulator(i64 p) : p_(p), n_(static_cast<std::size_t>(p), 0) {}

    void add(i64 exponent, i64 weight = 1) {
        auto& slot = n_[static_cast<std::size_t>(((exponent % p_) + p_) % p_)];
        slot = detail::checked_add(slot, weight);
    }
    void add(const CycAccumulator& o) {
        for (std::size_t i = 0; i < n_.size(); ++i) n_[i] = detail::checked_add(n_[i], o.n_[i]);
    }
    CycValue value() const { return CycValue::fold(p_, n_); }
    const std::vector<i64>& counts() const { return n_; }

private:
    i64 p_;
    std::vector<i64> n_;
};

/// The additive character x -> zeta^(c * res(x / p^shift)) on p^shift,
/// extended by zero off p^shift (the dotted convention).
struct Level1Char {
    i64 prime = 2;
    i64 multiplier = 1;
    int shift = 0;

    Level1Char() = default;
    Level1Char(i64 p, i64 c, int e) : prime(p), multiplier(c), shift(e) {
        if (c < 1 || c >= p) detail::cyc_fail(ErrorCode::InvalidArgument, "multiplier must lie in [1, p-1]");
    }
};

/// Exponent k with chi(x) = zeta^k, or nullopt when chi-dot vanishes.
inline std::optional<i64> char_exponent(const Level1Char& chi, const PadicApprox& x) {
    if (x.prime() != chi.prime) detail::cyc_fail(ErrorCode::PrimeMismatch, "character and argument over different primes");
    switch (x.in_ideal(chi.shift)) {
    case Tri::No: return std::nullopt;
    case Tri::Unknown: detail::cyc_fail(ErrorCode::InsufficientPrecision, "membership undetermined");
    case Tri::Yes: break;
    }
    auto d = x.digit(chi.shift);
    if (!d) detail::cyc_fail(ErrorCode::InsufficientPrecision, "digit at the character level undetermined");
    return (chi.multiplier * *d) % chi.prime;
}

inline CycValue char_eval(const Level1Char& chi, const PadicApprox& x) {
    auto k = char_exponent(chi, x);
    if (!k) return CycValue(chi.prime);
    return CycValue::zeta_pow(chi.prime, *k);
}

/// sum over canonical z in the box of chi-dot(scale * z).
inline CycValue char_sum_over_box(const Level1Char& chi, const PadicApprox& scale, const QuotientBox& box,
                                  u64 budget = kDefaultEnumerationBudget) {
    CycAccumulator acc(chi.prime);
    for (const auto& z : enumerate_box(box, chi.prime, budget)) {
        if (auto k = char_exponent(chi, scale * z)) acc.add(*k);
    }
    return acc.value();
}

} // namespace ssc
