#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssc/errors.hpp"
#include "ssc/padic.hpp"

namespace ssc {

namespace detail {
inline void weyl_fail(ErrorCode code, const std::string& what) { throw Error("weyl", code, what); }
} // namespace detail

/// Monomial matrix with entry sign_i * p^exp_i at (i, perm[i]).
/// Signs are kept only so the matrix has determinant 1; the affine Weyl
/// group element depends on (perm, exps).
template <int Dim>
struct Monomial {
    std::array<int, Dim> perm{};
    std::array<int, Dim> exps{};
    std::array<int, Dim> signs{};

    static Monomial identity() {
        Monomial m;
        for (int i = 0; i < Dim; ++i) {
            m.perm[i] = i;
            m.exps[i] = 0;
            m.signs[i] = 1;
        }
        return m;
    }

    std::array<int, Dim> inverse_perm() const {
        std::array<int, Dim> inv{};
        for (int i = 0; i < Dim; ++i) inv[perm[i]] = i;
        return inv;
    }

    auto key() const { return std::make_pair(perm, exps); }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.key() == b.key(); }
};

/// X * Y: row i of the product has its entry in column perm_Y(perm_X(i)).
template <int Dim>
Monomial<Dim> compose(const Monomial<Dim>& x, const Monomial<Dim>& y) {
    Monomial<Dim> r;
    for (int i = 0; i < Dim; ++i) {
        r.perm[i] = y.perm[x.perm[i]];
        r.exps[i] = x.exps[i] + y.exps[x.perm[i]];
        r.signs[i] = x.signs[i] * y.signs[x.perm[i]];
    }
    return r;
}

/// Depth of I_+ at an off-diagonal position: o above, p below.
inline int iwahori_depth(int a, int b) { return a > b ? 1 : 0; }

/// Boxes p^lo / p^hi of the coset coordinates at each off-diagonal
/// position (a, b) of H / (H cap x^-1 H x). Diagonal entries are unused.
template <int Dim>
std::array<std::array<QuotientBox, Dim>, Dim> coset_boxes(const Monomial<Dim>& x) {
    const auto inv = x.inverse_perm();
    std::array<std::array<QuotientBox, Dim>, Dim> out{};
    for (int a = 0; a < Dim; ++a)
        for (int b = 0; b < Dim; ++b) {
            if (a == b) continue;
            const int i = inv[a], k = inv[b];
            const int lo = iwahori_depth(a, b);
            const int conj = iwahori_depth(i, k) + x.exps[k] - x.exps[i];
            out[a][b] = QuotientBox(lo, std::max(lo, conj));
        }
    return out;
}

/// Length of x: sum over a < b of |[i > k] + e_k - e_i| with i, k the rows
/// mapped to columns a, b. This is the translation-times-finite formula
/// sum over positive roots of |<lambda, alpha> + [sigma^-1 alpha < 0]|.
template <int Dim>
int monomial_length(const Monomial<Dim>& x) {
    const auto inv = x.inverse_perm();
    int total = 0;
    for (int a = 0; a < Dim; ++a)
        for (int b = a + 1; b < Dim; ++b) {
            const int i = inv[a], k = inv[b];
            total += std::abs(iwahori_depth(i, k) + x.exps[k] - x.exps[i]);
        }
    return total;
}

/// Word lengths of every element reachable with at most max_len
/// generators, by breadth-first search.
template <int Dim>
std::map<std::pair<std::array<int, Dim>, std::array<int, Dim>>, int> bfs_ball(const std::vector<Monomial<Dim>>& gens,
                                                                             int max_len) {
    std::map<std::pair<std::array<int, Dim>, std::array<int, Dim>>, int> dist;
    std::deque<Monomial<Dim>> queue;
    const auto id = Monomial<Dim>::identity();
    dist[id.key()] = 0;
    queue.push_back(id);
    while (!queue.empty()) {
        const auto cur = queue.front();
        queue.pop_front();
        const int d = dist[cur.key()];
        if (d == max_len) continue;
        for (const auto& g : gens) {
            const auto nxt = compose(cur, g);
            if (dist.emplace(nxt.key(), d + 1).second) queue.push_back(nxt);
        }
    }
    return dist;
}

// ---------------------------------------------------------------- SL2

struct Sl2WeylElt {
    enum class Kind { Diagonal, Antidiagonal };
    Kind kind = Kind::Diagonal;
    int n = 0;

    /// diag(b, b^-1) with val b = n, or [[0, c], [-c^-1, 0]] with val c = n.
    Monomial<2> to_monomial() const {
        Monomial<2> m;
        if (kind == Kind::Diagonal) {
            m.perm = {0, 1};
            m.signs = {1, 1};
        } else {
            m.perm = {1, 0};
            m.signs = {1, -1};
        }
        m.exps = {n, -n};
        return m;
    }

    std::string to_string() const { return std::string(kind == Kind::Diagonal ? "diag" : "anti") + "(" + std::to_string(n) + ")"; }
    friend bool operator==(const Sl2WeylElt&, const Sl2WeylElt&) = default;
};

inline int sl2_length(const Sl2WeylElt& w) {
    return w.kind == Sl2WeylElt::Kind::Diagonal ? std::abs(2 * w.n) : std::abs(2 * w.n + 1);
}

inline std::vector<Monomial<2>> sl2_generators() {
    return {Sl2WeylElt{Sl2WeylElt::Kind::Antidiagonal, 0}.to_monomial(), Sl2WeylElt{Sl2WeylElt::Kind::Antidiagonal, -1}.to_monomial()};
}

inline constexpr int kSl2BfsBound = 32;

inline int sl2_length_bfs(const Sl2WeylElt& w, int bound = kSl2BfsBound) {
    if (std::abs(w.n) > bound) detail::weyl_fail(ErrorCode::BoundExceeded, "|n| beyond the BFS bound");
    const auto ball = bfs_ball<2>(sl2_generators(), 2 * bound + 2);
    auto it = ball.find(w.to_monomial().key());
    if (it == ball.end()) detail::weyl_fail(ErrorCode::BoundExceeded, "element not reached by BFS");
    return it->second;
}

/// All SL2 affine Weyl elements of length at most max_len, ordered by
/// length, diagonal first.
inline std::vector<Sl2WeylElt> enumerate_sl2(int max_len) {
    std::vector<Sl2WeylElt> out;
    for (int len = 0; len <= max_len; ++len)
        for (int n = -max_len; n <= max_len; ++n)
            for (auto kind : {Sl2WeylElt::Kind::Diagonal, Sl2WeylElt::Kind::Antidiagonal}) {
                Sl2WeylElt w{kind, n};
                if (sl2_length(w) == len) out.push_back(w);
            }
    return out;
}

// ---------------------------------------------------------------- SL3

/// The n_ij = e_i - e_j of a representative.
struct Sl3Exponents {
    int n12, n21, n23, n32, n13, n31;
};

struct Sl3WeylElt {
    int family = 1; // 1..6
    int e1 = 0;
    int e2 = 0;

    int e3() const { return -e1 - e2; }

    Sl3Exponents n() const {
        const int a = e1, b = e2, c = e3();
        return {a - b, b - a, b - c, c - b, a - c, c - a};
    }

    int max_abs_n() const {
        const auto x = n();
        return std::max({std::abs(x.n12), std::abs(x.n23), std::abs(x.n13)});
    }

    static std::array<int, 3> family_perm(int family) {
        switch (family) {
        case 1: return {0, 1, 2};
        case 2: return {1, 2, 0};
        case 3: return {2, 0, 1};
        case 4: return {0, 2, 1};
        case 5: return {2, 1, 0};
        case 6: return {1, 0, 2};
        }
        detail::weyl_fail(ErrorCode::InvalidArgument, "family must be 1..6");
        return {};
    }

    /// Rows 1..3 carry a, b, c; odd shapes put the sign on row 3.
    Monomial<3> to_monomial() const {
        Monomial<3> m;
        m.perm = family_perm(family);
        m.exps = {e1, e2, e3()};
        m.signs = {1, 1, family >= 4 ? -1 : 1};
        return m;
    }

    static Sl3WeylElt from_monomial(const Monomial<3>& m) {
        for (int f = 1; f <= 6; ++f)
            if (family_perm(f) == m.perm) return {f, m.exps[0], m.exps[1]};
        detail::weyl_fail(ErrorCode::InvalidArgument, "not a permutation shape");
        return {};
    }

    std::string to_string() const {
        return "A" + std::to_string(family) + "(" + std::to_string(e1) + "," + std::to_string(e2) + "," + std::to_string(e3()) + ")";
    }
    friend bool operator==(const Sl3WeylElt&, const Sl3WeylElt&) = default;
};

inline int sl3_length(const Sl3WeylElt& w) { return monomial_length(w.to_monomial()); }

inline std::vector<Monomial<3>> sl3_generators() {
    Monomial<3> s1 = Monomial<3>::identity(), s2 = s1, s0 = s1;
    s1.perm = {1, 0, 2};
    s1.signs = {1, -1, 1};
    s2.perm = {0, 2, 1};
    s2.signs = {1, 1, -1};
    s0.perm = {2, 1, 0};
    s0.exps = {-1, 0, 1};
    s0.signs = {1, 1, -1};
    return {s0, s1, s2};
}

inline constexpr int kSl3BfsBound = 12;

inline int sl3_length_bfs(const Sl3WeylElt& w, int max_len = kSl3BfsBound) {
    const auto ball = bfs_ball<3>(sl3_generators(), max_len);
    auto it = ball.find(w.to_monomial().key());
    if (it == ball.end()) detail::weyl_fail(ErrorCode::BoundExceeded, "element not reached within the BFS bound");
    return it->second;
}

enum class Group { SL2, SL3 };

struct TorusParams {
    Group group = Group::SL2;
    int r = 1;
    int s = 0;
    int t = 0;

    static TorusParams sl2(int r) {
        if (r < 1) detail::weyl_fail(ErrorCode::InvalidArgument, "r must be at least 1");
        return {Group::SL2, r, 0, 0};
    }
    static TorusParams sl3(int r, int s, int t) {
        if (r < 1 || s != r || t < r)
            detail::weyl_fail(ErrorCode::InvalidArgument, "SL3 torus parameters must satisfy t >= r = s >= 1");
        return {Group::SL3, r, s, t};
    }

    /// val(g_a - g_b) for columns a != b.
    int sigma(int a, int b) const {
        const int lo = std::min(a, b), hi = std::max(a, b);
        if (lo == 0 && hi == 1) return r;
        if (lo == 1 && hi == 2) return s;
        return t;
    }

    /// 0 if t = r, 1 if t = r + 1, 2 if t > r + 1.
    int theorem_case() const { return t == r ? 0 : (t == r + 1 ? 1 : 2); }
};

// ------------------------------------------------------- condition calculus

enum class Cond { B, C, D, E0, E1, E2, E3, F0, F1, F2, G0, G1, G2, H, J };

inline std::string to_string(Cond c) {
    static const char* names[] = {"B", "C", "D", "E0", "E1", "E2", "E3", "F0", "F1", "F2", "G0", "G1", "G2", "H", "J"};
    return names[static_cast<int>(c)];
}

namespace detail {

inline bool cond_B(int f, const Sl3Exponents& n, const TorusParams& tp) {
    const int r = tp.r, s = tp.s, t = tp.t;
    switch (f) {
    case 1: return n.n21 < r && -n.n31 < t && n.n32 < s;
    case 2: return n.n13 < r - 1 && n.n21 < s && -n.n23 < t + 1;
    case 3: return -n.n12 < t + 1 && n.n13 < s - 1 && n.n32 < r;
    case 4: return n.n21 < t && -n.n31 < r && -n.n23 < s + 1;
    case 5: return n.n13 < t - 1 && -n.n12 < s + 1 && -n.n23 < r + 1;
    case 6: return -n.n12 < r + 1 && n.n32 < t && -n.n31 < s;
    }
    return false;
}

inline bool cond_C(int f, const Sl3Exponents& n, const TorusParams& tp) {
    const int r = tp.r, s = tp.s, t = tp.t;
    switch (f) {
    case 1: return n.n31 <= t && -n.n32 <= s && -n.n21 <= r;
    case 2: return n.n23 <= t - 1 && -n.n13 <= r + 1 && -n.n21 <= s;
    case 3: return -n.n32 <= r && -n.n13 <= s + 1 && n.n12 <= t - 1;
    case 4: return n.n23 <= s - 1 && -n.n21 <= t && n.n31 <= r;
    case 5: return n.n23 <= r - 1 && n.n12 <= s - 1 && -n.n13 <= t + 1;
    case 6: return n.n31 <= s && n.n12 <= r - 1 && -n.n32 <= t;
    }
    return false;
}

/// The three sign patterns of E^0 for each family, in the order listed.
/// Each pattern gives the required sign (true = nonnegative) of three n's.
struct SignPattern {
    int which[3]; // indices into Sl3Exponents as {n12,n21,n23,n32,n13,n31}
    bool nonneg[3];
};

inline int n_at(const Sl3Exponents& n, int idx) {
    switch (idx) {
    case 0: return n.n12;
    case 1: return n.n21;
    case 2: return n.n23;
    case 3: return n.n32;
    case 4: return n.n13;
    default: return n.n31;
    }
}

enum { N12 = 0, N21 = 1, N23 = 2, N32 = 3, N13 = 4, N31 = 5 };

inline const std::array<SignPattern, 3>& e0_patterns(int f) {
    static const std::array<std::array<SignPattern, 3>, 6> table = {{
        {{{{N21, N31, N32}, {true, true, true}}, {{N21, N31, N32}, {true, false, false}}, {{N21, N31, N32}, {false, false, true}}}},
        {{{{N13, N23, N21}, {true, true, true}}, {{N13, N23, N21}, {false, false, true}}, {{N13, N23, N21}, {true, false, false}}}},
        {{{{N32, N12, N13}, {false, false, true}}, {{N32, N12, N13}, {true, false, false}}, {{N32, N12, N13}, {true, true, true}}}},
        {{{{N31, N21, N23}, {false, true, true}}, {{N31, N21, N23}, {false, false, false}}, {{N31, N21, N23}, {true, true, false}}}},
        {{{{N23, N13, N12}, {true, true, false}}, {{N23, N13, N12}, {false, true, true}}, {{N23, N13, N12}, {false, false, false}}}},
        {{{{N12, N32, N31}, {false, true, true}}, {{N12, N32, N31}, {true, true, false}}, {{N12, N32, N31}, {false, false, false}}}},
    }};
    return table[static_cast<std::size_t>(f - 1)];
}

/// Index of the pattern removed from E^0 to form E^2.
inline int e2_removed(int f) {
    switch (f) {
    case 1: return 0;
    case 2: return 0;
    case 3: return 2;
    case 4: return 1;
    case 5: return 2;
    default: return 2;
    }
}

inline bool matches(const SignPattern& pat, const Sl3Exponents& n) {
    for (int i = 0; i < 3; ++i)
        if ((n_at(n, pat.which[i]) >= 0) != pat.nonneg[i]) return false;
    return true;
}

inline int e0_pattern_index(int f, const Sl3Exponents& n) {
    const auto& pats = e0_patterns(f);
    for (int i = 0; i < 3; ++i)
        if (matches(pats[static_cast<std::size_t>(i)], n)) return i;
    return -1;
}

} // namespace detail

/// Evaluates one of the named conditions for w against its own family.
inline bool condition(const Sl3WeylElt& w, const TorusParams& tp, Cond which) {
    const int f = w.family;
    const auto n = w.n();
    const int pat = detail::e0_pattern_index(f, n);
    const bool e0 = pat >= 0;
    const bool e2 = e0 && pat != detail::e2_removed(f);
    const bool e1 = f <= 3 ? e2 : e0;
    const bool b = detail::cond_B(f, n, tp);
    const bool c = detail::cond_C(f, n, tp);
    switch (which) {
    case Cond::B: return b;
    case Cond::C: return c;
    case Cond::D: return !c;
    case Cond::E0: return e0;
    case Cond::E1: return e1;
    case Cond::E2: return e2;
    case Cond::E3: return e0 && !e2;
    case Cond::F0: return b && c && e0;
    case Cond::F1: return b && c && e1;
    case Cond::F2: return b && c && e2;
    case Cond::G0: return b && !c && e0;
    case Cond::G1: return b && !c && e1;
    case Cond::G2: return b && !c && e2;
    case Cond::H: return !e0;
    case Cond::J: return e0 && !e2;
    }
    return false;
}

/// Which sum of the theorem an element falls in for the case j selected by tp.
enum class Tag { F, G, H, J, None };

inline std::string to_string(Tag t) {
    switch (t) {
    case Tag::F: return "F";
    case Tag::G: return "G";
    case Tag::H: return "H";
    case Tag::J: return "J";
    case Tag::None: return "none";
    }
    return "?";
}

struct Classification {
    Tag tag = Tag::None;
    std::vector<Tag> hits; // every sum the element satisfies; more than one is an overlap
};

inline Classification classify(const Sl3WeylElt& w, const TorusParams& tp) {
    const int j = tp.theorem_case();
    const Cond fj = j == 0 ? Cond::F0 : (j == 1 ? Cond::F1 : Cond::F2);
    const Cond gj = j == 0 ? Cond::G0 : (j == 1 ? Cond::G1 : Cond::G2);
    Classification c;
    if (condition(w, tp, fj)) c.hits.push_back(Tag::F);
    if (condition(w, tp, gj)) c.hits.push_back(Tag::G);
    if (condition(w, tp, Cond::H)) c.hits.push_back(Tag::H);
    const bool j_allowed = j == 2 || (j == 1 && w.family <= 3);
    if (j_allowed && condition(w, tp, Cond::J)) c.hits.push_back(Tag::J);
    if (!c.hits.empty()) c.tag = c.hits.front();
    return c;
}

struct TaggedElt {
    Sl3WeylElt w;
    Classification cls;
};

/// Every element of the six families with max |n_ij| <= bound, ordered by
/// family, then e1, then e2.
inline std::vector<TaggedElt> enumerate_sl3(const TorusParams& tp, int bound) {
    if (bound < 0) detail::weyl_fail(ErrorCode::InvalidArgument, "negative bound");
    std::vector<TaggedElt> out;
    for (int f = 1; f <= 6; ++f)
        for (int e1 = -bound; e1 <= bound; ++e1)
            for (int e2 = -bound; e2 <= bound; ++e2) {
                Sl3WeylElt w{f, e1, e2};
                if (w.max_abs_n() <= bound) out.push_back({w, classify(w, tp)});
            }
    return out;
}

// ---------------------------------------------------------- coset geometry

/// The coset coordinates of an SL3 element in a relabeled order u < v < w
/// of the columns, for which H \ H x H is parametrized by
/// I + y E_uv + z E_vw + w E_uw. After conjugation the entries
///   (u,v): y (g_v - g_u),  (v,w): z (g_w - g_v),  (u,w): y z (g_u - g_v) + w (g_w - g_u)
/// land at matrix positions (row_of[a], row_of[b]) scaled by p^delta.
struct Sl3Geometry {
    std::array<int, 3> order{};     // u, v, w as column indices
    QuotientBox box_y, box_z, box_w; // boxes of y, z, w
    int delta_uv = 0, delta_vw = 0, delta_uw = 0;
    int depth_uv = 0, depth_vw = 0, depth_uw = 0; // I_+ depth at the landing positions
    bool slot_uv = false, slot_vw = false, slot_uw = false; // landing position carries a character
    std::array<std::array<int, 2>, 3> pos{}; // landing positions for uv, vw, uw
    int length = 0;

    bool xi_type() const { return slot_uv && slot_vw; }
    bool gamma_type() const { return slot_uw; }
};

inline bool is_char_slot3(int i, int k) { return (i == 0 && k == 1) || (i == 1 && k == 2) || (i == 2 && k == 0); }

namespace detail {

inline Sl3Geometry geometry_for_order(const Monomial<3>& x, const std::array<std::array<QuotientBox, 3>, 3>& boxes,
                                      const std::array<int, 3>& order) {
    const auto inv = x.inverse_perm();
    Sl3Geometry g;
    g.order = order;
    const int u = order[0], v = order[1], w = order[2];
    g.box_y = boxes[u][v];
    g.box_z = boxes[v][w];
    g.box_w = boxes[u][w];
    auto fill = [&](int a, int b, int& delta, int& depth, bool& slot, std::array<int, 2>& pos) {
        const int i = inv[a], k = inv[b];
        delta = x.exps[i] - x.exps[k];
        depth = iwahori_depth(i, k);
        slot = is_char_slot3(i, k);
        pos = {i, k};
    };
    fill(u, v, g.delta_uv, g.depth_uv, g.slot_uv, g.pos[0]);
    fill(v, w, g.delta_vw, g.depth_vw, g.slot_vw, g.pos[1]);
    fill(u, w, g.delta_uw, g.depth_uw, g.slot_uw, g.pos[2]);
    g.length = g.box_y.width() + g.box_z.width() + g.box_w.width();
    return g;
}

} // namespace detail

enum class GeometryPreference { Gamma, Xi };

/// Picks a column order with every active coordinate above its diagonal.
/// When several orders qualify (an empty box leaves the order of two
/// columns free), one of the preferred type is taken if there is one.
inline Sl3Geometry sl3_geometry(const Sl3WeylElt& elt, GeometryPreference pref = GeometryPreference::Xi) {
    const auto x = elt.to_monomial();
    const auto boxes = coset_boxes(x);
    std::array<int, 3> order{0, 1, 2};
    std::optional<Sl3Geometry> first;
    do {
        bool ok = true;
        for (int ia = 0; ia < 3 && ok; ++ia)
            for (int ib = 0; ib < ia && ok; ++ib) {
                const auto& bx = boxes[order[ia]][order[ib]];
                if (bx.hi > bx.lo) ok = false;
            }
        if (!ok) continue;
        auto g = detail::geometry_for_order(x, boxes, order);
        if (pref == GeometryPreference::Gamma ? g.gamma_type() : g.xi_type()) return g;
        if (!first) first = g;
    } while (std::next_permutation(order.begin(), order.end()));
    if (!first) detail::weyl_fail(ErrorCode::InvalidArgument, "active coset coordinates form a cycle");
    return *first;
}

/// How the w-coordinate is counted for a Xi-type element: w is forced
/// modulo p^T by y z, leaving q^weight free choices when
/// y z p^(sigma_uv - sigma_uw) lies in p^level.
struct WCount {
    int weight = 0;
    int level = 0;
};

inline WCount sl3_w_count(const Sl3Geometry& g, const TorusParams& tp) {
    const int u = g.order[0], w = g.order[2];
    const int T = g.depth_uw - g.delta_uw - tp.sigma(u, w);
    const int lw = g.box_w.lo, hw = g.box_w.hi;
    if (hw == lw) return {0, T};
    if (T <= lw) return {hw - lw, T};
    if (T <= hw) return {hw - T, lw};
    detail::weyl_fail(ErrorCode::InvalidArgument, "w-coordinate box too shallow for its constraint");
    return {};
}

/// The truncated length: the length with the (u,w) coordinate counted only
/// down to the depth its constraint leaves free. It equals the length
/// whenever that clamp is inactive, and for Gamma-type elements.
inline int sl3_truncated_length(const Sl3WeylElt& elt, const TorusParams& tp) {
    const auto g = sl3_geometry(elt);
    if (!g.xi_type()) return g.length;
    return g.box_y.width() + g.box_z.width() + sl3_w_count(g, tp).weight;
}

} // namespace ssc
