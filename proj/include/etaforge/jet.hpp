#ifndef ETAFORGE_JET_HPP
#define ETAFORGE_JET_HPP

#include "etaforge/rational.hpp"

#include <array>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace etaforge {

inline bool coeff_is_zero(const Rat& x) { return is_zero(x); }
inline bool coeff_is_zero(const CRat& x) { return x.zero(); }

// Monomial bookkeeping for truncated power series in NV variables with
// total degree <= MD.  Monomials are indexed in graded-lex order; product
// and derivative index tables are built once.
template <int NV, int MD>
struct MonoTable {
    std::vector<std::array<std::uint8_t, NV>> expo; // index -> exponents
    std::vector<int> degree;                        // index -> total degree
    std::vector<int> rank_of_code;                  // base-(MD+1) code -> index
    std::vector<std::vector<int>> product;          // [i][j] -> index or -1
    std::vector<std::array<int, NV>> deriv_down;    // mono minus e_axis (or -1)

    static const MonoTable& instance() {
        static MonoTable t;
        return t;
    }

    int size() const { return (int)expo.size(); }

    int code(const std::array<std::uint8_t, NV>& e) const {
        int c = 0;
        for (int v = 0; v < NV; ++v) c = c * (MD + 1) + e[v];
        return c;
    }

    int index(const std::array<std::uint8_t, NV>& e) const {
        int c = code(e);
        return c < (int)rank_of_code.size() ? rank_of_code[c] : -1;
    }

private:
    MonoTable() {
        std::array<std::uint8_t, NV> e{};
        gen(e, 0, 0);
        std::stable_sort(expo.begin(), expo.end(), [](const auto& a, const auto& b) {
            int da = std::accumulate(a.begin(), a.end(), 0);
            int db = std::accumulate(b.begin(), b.end(), 0);
            if (da != db) return da < db;
            return a < b;
        });
        int codes = 1;
        for (int v = 0; v < NV; ++v) codes *= (MD + 1);
        rank_of_code.assign(codes, -1);
        degree.resize(expo.size());
        for (int i = 0; i < (int)expo.size(); ++i) {
            degree[i] = std::accumulate(expo[i].begin(), expo[i].end(), 0);
            rank_of_code[code(expo[i])] = i;
        }
        product.assign(expo.size(), std::vector<int>(expo.size(), -1));
        for (int i = 0; i < (int)expo.size(); ++i)
            for (int j = 0; j < (int)expo.size(); ++j) {
                if (degree[i] + degree[j] > MD) continue;
                std::array<std::uint8_t, NV> s;
                for (int v = 0; v < NV; ++v) s[v] = expo[i][v] + expo[j][v];
                product[i][j] = index(s);
            }
        deriv_down.resize(expo.size());
        for (int i = 0; i < (int)expo.size(); ++i)
            for (int v = 0; v < NV; ++v) {
                if (expo[i][v] == 0) { deriv_down[i][v] = -1; continue; }
                auto d = expo[i];
                d[v] -= 1;
                deriv_down[i][v] = index(d);
            }
    }

    void gen(std::array<std::uint8_t, NV>& e, int var, int deg) {
        if (var == NV) { expo.push_back(e); return; }
        for (int k = 0; deg + k <= MD; ++k) {
            e[var] = (std::uint8_t)k;
            gen(e, var + 1, deg + k);
        }
        e[var] = 0;
    }
};

// Truncated Taylor expansion with exact coefficients.  `order` is the
// truncation degree; arithmetic propagates the minimum of operand orders.
template <typename K, int NV, int MD>
class Jet {
public:
    using Table = MonoTable<NV, MD>;
    using Expo = std::array<std::uint8_t, NV>;

    int order = MD;
    std::vector<K> c;

    Jet() : c(Table::instance().size()) {}
    explicit Jet(int ord) : order(std::min(ord, MD)), c(Table::instance().size()) {}

    static Jet constant(K v, int ord = MD) {
        Jet j(ord);
        j.c[0] = std::move(v);
        return j;
    }
    static Jet variable(int axis, int ord = MD) {
        Jet j(ord);
        Expo e{};
        e[axis] = 1;
        j.c[Table::instance().index(e)] = K(1);
        return j;
    }

    const K& at(const Expo& e) const {
        int i = Table::instance().index(e);
        static const K zero{};
        return i < 0 ? zero : c[i];
    }
    K& ref(const Expo& e) {
        int i = Table::instance().index(e);
        if (i < 0) throw std::out_of_range("Jet: exponent beyond table");
        return c[i];
    }

    const K& value_at_origin() const { return c[0]; }

    bool zero() const {
        for (const auto& x : c)
            if (!coeff_is_zero(x)) return false;
        return true;
    }

    // truncate in place to degree <= d
    Jet& truncate(int d) {
        const auto& T = Table::instance();
        order = std::min(order, d);
        for (int i = 0; i < T.size(); ++i)
            if (T.degree[i] > order) c[i] = K{};
        return *this;
    }

    Jet operator-() const {
        Jet r(order);
        for (size_t i = 0; i < c.size(); ++i)
            if (!coeff_is_zero(c[i])) r.c[i] = -c[i];
        return r;
    }
    Jet& operator+=(const Jet& o) {
        order = std::min(order, o.order);
        for (size_t i = 0; i < c.size(); ++i)
            if (!coeff_is_zero(o.c[i])) c[i] += o.c[i];
        return truncate(order);
    }
    Jet& operator-=(const Jet& o) {
        order = std::min(order, o.order);
        for (size_t i = 0; i < c.size(); ++i)
            if (!coeff_is_zero(o.c[i])) c[i] -= o.c[i];
        return truncate(order);
    }
    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        const auto& T = Table::instance();
        Jet r(std::min(a.order, b.order));
        for (int i = 0; i < T.size(); ++i) {
            if (coeff_is_zero(a.c[i])) continue;
            if (T.degree[i] > r.order) continue;
            for (int j = 0; j < T.size(); ++j) {
                if (coeff_is_zero(b.c[j])) continue;
                int k = T.product[i][j];
                if (k < 0 || T.degree[k] > r.order) continue;
                r.c[k] += a.c[i] * b.c[j];
            }
        }
        return r;
    }
    Jet& operator*=(const Jet& o) { *this = *this * o; return *this; }

    Jet scaled(const K& s) const {
        Jet r(order);
        if (coeff_is_zero(s)) return r;
        for (size_t i = 0; i < c.size(); ++i)
            if (!coeff_is_zero(c[i])) r.c[i] = c[i] * s;
        return r;
    }

    // d/dx_axis of the stored polynomial representative; the truncation
    // order is kept (each term just drops one degree).
    Jet derive(int axis) const {
        const auto& T = Table::instance();
        Jet r(order);
        for (int i = 0; i < T.size(); ++i) {
            if (coeff_is_zero(c[i])) continue;
            int j = T.deriv_down[i][axis];
            if (j < 0) continue;
            r.c[j] = c[i] * K((long)T.expo[i][axis]);
        }
        return r;
    }

    bool operator==(const Jet& o) const {
        for (size_t i = 0; i < c.size(); ++i) {
            bool za = coeff_is_zero(c[i]), zb = coeff_is_zero(o.c[i]);
            if (za != zb) return false;
            if (!za && !(c[i] == o.c[i])) return false;
        }
        return true;
    }
};

using Jet3 = Jet<Rat, 3, 4>;
using CJet3 = Jet<CRat, 3, 4>;
using Jet6 = Jet<Rat, 6, 3>;
using CJet6 = Jet<CRat, 6, 3>;

// 1/j for unit-constant jets, by degree recursion.  Rejects constant != 1.
template <typename K, int NV, int MD>
Jet<K, NV, MD> jet_invert_unit(const Jet<K, NV, MD>& a) {
    if (!(a.c[0] == K(1))) throw std::invalid_argument("jet invert: constant term must be 1");
    using J = Jet<K, NV, MD>;
    J u = a;
    u.c[0] = K{};       // a = 1 + u
    J r = J::constant(K(1), a.order);
    J pw = J::constant(K(1), a.order);
    for (int d = 1; d <= a.order; ++d) {
        pw = pw * u;
        if (pw.zero()) break;
        if (d % 2 == 1) r -= pw;
        else r += pw;
    }
    return r;
}

// sqrt for unit-constant jets: s with s*s == a up to truncation.
template <typename K, int NV, int MD>
Jet<K, NV, MD> jet_sqrt_unit(const Jet<K, NV, MD>& a) {
    if (!(a.c[0] == K(1))) throw std::invalid_argument("jet sqrt: constant term must be 1");
    using J = Jet<K, NV, MD>;
    const auto& T = J::Table::instance();
    J s = J::constant(K(1), a.order);
    // degree-by-degree: 2*s0*s_d = a_d - (middle products)
    for (int d = 1; d <= a.order; ++d) {
        J sq = s * s;
        for (int i = 0; i < T.size(); ++i) {
            if (T.degree[i] != d) continue;
            K delta = a.c[i] - sq.c[i];
            if (!coeff_is_zero(delta)) s.c[i] = delta * K(Rat(1, 2));
        }
    }
    return s;
}

// general inverse for jets with nonzero constant term (internal helper)
template <typename K, int NV, int MD>
Jet<K, NV, MD> jet_invert_general(const Jet<K, NV, MD>& a) {
    if (coeff_is_zero(a.c[0])) throw std::invalid_argument("jet invert: zero constant term");
    K c0 = a.c[0];
    K inv;
    if constexpr (std::is_same_v<K, Rat>) inv = Rat(1) / c0;
    else inv = K(1) / c0;
    auto unit = a.scaled(inv);
    return jet_invert_unit(unit).scaled(inv);
}

// integer power (negative allowed via general inverse)
template <typename K, int NV, int MD>
Jet<K, NV, MD> jet_pow(const Jet<K, NV, MD>& a, long n) {
    using J = Jet<K, NV, MD>;
    if (n == 0) return J::constant(K(1), a.order);
    J base = n < 0 ? jet_invert_general(a) : a;
    long e = n < 0 ? -n : n;
    J r = J::constant(K(1), a.order);
    for (long k = 0; k < e; ++k) r = r * base;
    return r;
}

inline CJet3 to_complex(const Jet3& a) {
    CJet3 r(a.order);
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!is_zero(a.c[i])) r.c[i] = CRat(a.c[i]);
    return r;
}

inline CJet6 to_complex6(const Jet6& a) {
    CJet6 r(a.order);
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!is_zero(a.c[i])) r.c[i] = CRat(a.c[i]);
    return r;
}

// embed a 3-variable jet into 6 variables; block 0 -> vars 0..2 ("x"),
// block 1 -> vars 3..5 ("y")
template <typename K>
Jet<K, 6, 3> lift_to_six(const Jet<K, 3, 4>& a, int block) {
    const auto& T3 = MonoTable<3, 4>::instance();
    const auto& T6 = MonoTable<6, 3>::instance();
    Jet<K, 6, 3> r(std::min(a.order, 3));
    for (int i = 0; i < T3.size(); ++i) {
        if (coeff_is_zero(a.c[i])) continue;
        if (T3.degree[i] > 3) continue;
        std::array<std::uint8_t, 6> e{};
        for (int v = 0; v < 3; ++v) e[3 * block + v] = T3.expo[i][v];
        r.c[T6.index(e)] = a.c[i];
    }
    return r;
}

// swap the two variable blocks of a 6-variable jet: f(x,y) -> f(y,x)
template <typename K>
Jet<K, 6, 3> swap_blocks(const Jet<K, 6, 3>& a) {
    const auto& T6 = MonoTable<6, 3>::instance();
    Jet<K, 6, 3> r(a.order);
    for (int i = 0; i < T6.size(); ++i) {
        if (coeff_is_zero(a.c[i])) continue;
        std::array<std::uint8_t, 6> e;
        for (int v = 0; v < 3; ++v) { e[v] = T6.expo[i][3 + v]; e[3 + v] = T6.expo[i][v]; }
        r.c[T6.index(e)] = a.c[i];
    }
    return r;
}

// diagonal restriction y := x of a 6-variable jet
template <typename K>
Jet<K, 3, 4> restrict_diagonal(const Jet<K, 6, 3>& a) {
    const auto& T6 = MonoTable<6, 3>::instance();
    const auto& T3 = MonoTable<3, 4>::instance();
    Jet<K, 3, 4> r(a.order);
    for (int i = 0; i < T6.size(); ++i) {
        if (coeff_is_zero(a.c[i])) continue;
        std::array<std::uint8_t, 3> e;
        for (int v = 0; v < 3; ++v) e[v] = T6.expo[i][v] + T6.expo[i][3 + v];
        r.c[T3.index(e)] += a.c[i];
    }
    return r;
}

// f(x,y) with y := 0, first block renamed to a 3-variable jet
template <typename K>
Jet<K, 3, 4> restrict_second_to_zero(const Jet<K, 6, 3>& a) {
    const auto& T6 = MonoTable<6, 3>::instance();
    const auto& T3 = MonoTable<3, 4>::instance();
    Jet<K, 3, 4> r(a.order);
    for (int i = 0; i < T6.size(); ++i) {
        if (coeff_is_zero(a.c[i])) continue;
        bool pure = true;
        for (int v = 3; v < 6; ++v) pure = pure && T6.expo[i][v] == 0;
        if (!pure) continue;
        std::array<std::uint8_t, 3> e = {T6.expo[i][0], T6.expo[i][1], T6.expo[i][2]};
        r.c[T3.index(e)] = a.c[i];
    }
    return r;
}

} // namespace etaforge

#endif
