#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssc/errors.hpp"

namespace ssc {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

inline void padic_fail(ErrorCode code, const std::string& what) { throw Error("padic", code, what); }

/// p^k, checked to stay below 2^62 so that sums of two residues fit in u64.
inline u64 ipow(i64 p, int k) {
    if (k < 0) padic_fail(ErrorCode::InvalidArgument, "negative exponent");
    if (p < 128 && k < 64) {
        struct Row {
            u64 v[64] = {};
            bool ready = false;
        };
        static thread_local Row table[128];
        Row& row = table[p];
        if (!row.ready) {
            u64 r = 1;
            for (int i = 0; i < 64; ++i) {
                row.v[i] = r;
                if (r == 0 || r > (u64{1} << 62) / static_cast<u64>(p)) r = 0;
                else r *= static_cast<u64>(p);
            }
            row.ready = true;
        }
        if (row.v[k] == 0) padic_fail(ErrorCode::Overflow, "p^k exceeds 2^62");
        return row.v[k];
    }
    u64 r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > (u64{1} << 62) / static_cast<u64>(p)) padic_fail(ErrorCode::Overflow, "p^k exceeds 2^62");
        r *= static_cast<u64>(p);
    }
    return r;
}

/// Largest k with p^k < 2^62.
inline int max_rel_precision(i64 p) {
    int k = 0;
    u64 r = 1;
    while (r <= ((u64{1} << 62) - 1) / static_cast<u64>(p)) {
        r *= static_cast<u64>(p);
        ++k;
    }
    return k;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }

inline u64 modinv(u64 a, u64 m) {
    // extended Euclid on signed 128-bit values
    __int128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) padic_fail(ErrorCode::InversionOfZero, "residue not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

} // namespace detail

enum class Tri { No, Yes, Unknown };

/// An element of Q_p known modulo a power of p.
///
/// Nonzero values are p^val * unit with unit a p-adic unit known modulo
/// p^rel; the absolute precision is val + rel. Zero carries only an
/// absolute precision (the element is known to lie in p^abs). An exact
/// zero uses kExactZero.
class PadicApprox {
public:
    static constexpr int kInfinity = INT_MAX;
    static constexpr int kExactZero = 1 << 28;

    PadicApprox() = default;

    static PadicApprox zero(i64 p, int abs_precision = kExactZero) {
        check_prime(p);
        PadicApprox z;
        z.p_ = p;
        z.val_ = kInfinity;
        z.unit_ = 0;
        z.prec_ = abs_precision;
        return z;
    }

    /// n * p^shift, known to relative precision `rel` (capped at the
    /// machine limit; the cap is treated as exact for canonical representatives).
    static PadicApprox from_integer(i64 p, i64 n, int rel = -1, int shift = 0) {
        check_prime(p);
        if (n == 0) return zero(p);
        const int cap = detail::max_rel_precision(p);
        if (rel < 0 || rel > cap) rel = cap;
        if (rel < 1) detail::padic_fail(ErrorCode::PrecisionExhausted, "relative precision below 1");
        int v = 0;
        bool neg = n < 0;
        u64 m = neg ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
        while (m % static_cast<u64>(p) == 0) {
            m /= static_cast<u64>(p);
            ++v;
        }
        const u64 mod = detail::ipow(p, rel);
        u64 u = m % mod;
        if (neg) u = (mod - u) % mod;
        return from_parts(p, v + shift, u, rel);
    }

    static PadicApprox from_parts(i64 p, int val, u64 unit, int rel) {
        check_prime(p);
        if (rel < 1) detail::padic_fail(ErrorCode::PrecisionExhausted, "relative precision below 1");
        if (unit % static_cast<u64>(p) == 0) detail::padic_fail(ErrorCode::InvalidArgument, "unit residue divisible by p");
        PadicApprox x;
        x.p_ = p;
        x.val_ = val;
        x.unit_ = unit % detail::ipow(p, rel);
        x.prec_ = rel;
        return x;
    }

    i64 prime() const { return p_; }
    bool is_zero() const { return val_ == kInfinity; }
    bool is_exact_zero() const { return is_zero() && prec_ >= kExactZero; }
    int val() const { return val_; }
    u64 unit() const { return unit_; }
    /// Relative precision (nonzero values only).
    int rel_precision() const { return is_zero() ? 0 : prec_; }
    int abs_precision() const { return is_zero() ? prec_ : val_ + prec_; }

    PadicApprox shifted(int k) const {
        PadicApprox r = *this;
        if (is_zero()) {
            if (!is_exact_zero()) r.prec_ += k;
        } else {
            r.val_ += k;
        }
        return r;
    }

    PadicApprox operator-() const {
        if (is_zero()) return *this;
        const u64 mod = detail::ipow(p_, prec_);
        PadicApprox r = *this;
        r.unit_ = (mod - unit_) % mod;
        return r;
    }

    friend PadicApprox operator+(const PadicApprox& x, const PadicApprox& y) {
        same_prime(x, y);
        if (x.is_exact_zero()) return y;
        if (y.is_exact_zero()) return x;
        const int absp = std::min(x.abs_precision(), y.abs_precision());
        if (x.is_zero() && y.is_zero()) return make_zero(x.p_, absp);
        const int vmin = std::min(x.is_zero() ? kInfinity : x.val_, y.is_zero() ? kInfinity : y.val_);
        if (vmin >= absp) return make_zero(x.p_, absp);
        const int width = absp - vmin;
        const u64 mod = detail::ipow(x.p_, width);
        auto lift = [&](const PadicApprox& z) -> u64 {
            if (z.is_zero() || z.val_ - vmin >= width) return 0;
            return detail::mulmod(z.unit_ % mod, detail::ipow(x.p_, z.val_ - vmin) % mod, mod);
        };
        u64 s = (lift(x) + lift(y)) % mod;
        if (s == 0) return make_zero(x.p_, absp);
        int v = vmin;
        while (s % static_cast<u64>(x.p_) == 0) {
            s /= static_cast<u64>(x.p_);
            ++v;
        }
        return make(x.p_, v, s, absp - v);
    }

    friend PadicApprox operator-(const PadicApprox& x, const PadicApprox& y) { return x + (-y); }

    friend PadicApprox operator*(const PadicApprox& x, const PadicApprox& y) {
        same_prime(x, y);
        if (x.is_exact_zero() || y.is_exact_zero()) return make_zero(x.p_, kExactZero);
        if (x.is_zero() && y.is_zero()) return make_zero(x.p_, x.prec_ + y.prec_);
        if (x.is_zero()) return make_zero(x.p_, x.prec_ + y.val_);
        if (y.is_zero()) return make_zero(x.p_, y.prec_ + x.val_);
        const int rel = std::min(x.prec_, y.prec_);
        const u64 mod = detail::ipow(x.p_, rel);
        return make(x.p_, x.val_ + y.val_, detail::mulmod(x.unit_ % mod, y.unit_ % mod, mod), rel);
    }

    PadicApprox inverse() const {
        if (is_zero()) detail::padic_fail(ErrorCode::InversionOfZero, "inverse of an element indistinguishable from 0");
        const u64 mod = detail::ipow(p_, prec_);
        return make(p_, -val_, detail::modinv(unit_, mod), prec_);
    }

    friend PadicApprox operator/(const PadicApprox& x, const PadicApprox& y) { return x * y.inverse(); }

    /// Digit at p^place of the canonical expansion, if determined.
    std::optional<int> digit(int place) const {
        if (place >= abs_precision()) return std::nullopt;
        if (is_zero() || place < val_) return 0;
        const u64 d = unit_ / detail::ipow(p_, place - val_);
        return static_cast<int>(d % static_cast<u64>(p_));
    }

    /// Is the element in p^c? Nonzero values have a certain valuation.
    Tri in_ideal(int c) const {
        if (!is_zero()) return val_ >= c ? Tri::Yes : Tri::No;
        return prec_ >= c ? Tri::Yes : Tri::Unknown;
    }

    /// Residue of the element modulo p^k as an integer in [0, p^k), for
    /// elements in o known to absolute precision at least k.
    std::optional<u64> residue(int k) const {
        if (k <= 0) return 0;
        if (abs_precision() < k) return std::nullopt;
        if (is_zero() || val_ >= k) return 0;
        if (val_ < 0) detail::padic_fail(ErrorCode::InvalidArgument, "residue of a non-integral element");
        const u64 mod = detail::ipow(p_, k);
        return detail::mulmod(unit_ % mod, detail::ipow(p_, val_), mod);
    }

    /// Agreement modulo p^k for two approximations of the same number.
    static bool agree(const PadicApprox& x, const PadicApprox& y) {
        const PadicApprox d = x - y;
        return d.is_zero();
    }

    std::string to_string() const {
        if (is_zero()) return is_exact_zero() ? "0" : "O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
        return std::to_string(p_) + "^" + std::to_string(val_) + "*" + std::to_string(unit_) + " + O(" + std::to_string(p_) +
               "^" + std::to_string(abs_precision()) + ")";
    }

private:
    static void check_prime(i64 p) {
        if (p < 2) detail::padic_fail(ErrorCode::InvalidArgument, "prime must be at least 2");
        for (i64 d = 2; d * d <= p; ++d)
            if (p % d == 0) detail::padic_fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    }
    static PadicApprox make_zero(i64 p, int abs_precision) {
        PadicApprox z;
        z.p_ = p;
        z.val_ = kInfinity;
        z.unit_ = 0;
        z.prec_ = std::min(abs_precision, kExactZero);
        return z;
    }
    static PadicApprox make(i64 p, int val, u64 unit, int rel) {
        PadicApprox x;
        x.p_ = p;
        x.val_ = val;
        x.unit_ = unit;
        x.prec_ = rel;
        return x;
    }
    static void same_prime(const PadicApprox& x, const PadicApprox& y) {
        if (x.p_ != y.p_) detail::padic_fail(ErrorCode::PrimeMismatch, "operands over different primes");
    }

    i64 p_ = 2;
    int val_ = kInfinity;
    u64 unit_ = 0;
    int prec_ = kExactZero; // rel precision (nonzero) or abs precision (zero)
};

inline int val_of(const PadicApprox& x) { return x.val(); }

/// The finite quotient p^lo / p^hi.
struct QuotientBox {
    int lo = 0;
    int hi = 0;

    QuotientBox() = default;
    QuotientBox(int l, int h) : lo(l), hi(h) {
        if (l > h) throw Error("padic", ErrorCode::InvalidArgument, "box with lo > hi");
    }
    int width() const { return hi - lo; }
    friend bool operator==(const QuotientBox&, const QuotientBox&) = default;
};

inline constexpr u64 kDefaultEnumerationBudget = 10'000'000;

/// Number of elements of the box, or nullopt past the budget.
inline std::optional<u64> box_size(const QuotientBox& b, i64 p, u64 budget = kDefaultEnumerationBudget) {
    u64 n = 1;
    for (int i = 0; i < b.width(); ++i) {
        n *= static_cast<u64>(p);
        if (n > budget) return std::nullopt;
    }
    return n;
}

/// Canonical digit representatives sum d_i p^i (lo <= i < hi) in
/// lexicographic order, i.e. k * p^lo for k = 0, 1, ..., q^(hi-lo) - 1.
inline std::vector<PadicApprox> enumerate_box(const QuotientBox& b, i64 p, u64 budget = kDefaultEnumerationBudget) {
    auto n = box_size(b, p, budget);
    if (!n) throw Error("padic", ErrorCode::BoxTooLarge, "box p^" + std::to_string(b.lo) + "/p^" + std::to_string(b.hi));
    std::vector<PadicApprox> out;
    out.reserve(*n);
    for (u64 k = 0; k < *n; ++k) out.push_back(PadicApprox::from_integer(p, static_cast<i64>(k), -1, b.lo));
    return out;
}

} // namespace ssc
