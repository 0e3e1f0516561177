#include "etaforge/diffop.hpp"

namespace etaforge {

namespace {

bool mat_zero(const Tensor<Jet3>& m) {
    for (int i = 0; i < 9; ++i)
        if (!m.flat(i).zero()) return false;
    return true;
}

// all t <= k componentwise, with multinomial weight C(k, t)
void for_each_sub_multiindex(const MIdx& k, const std::function<void(const MIdx&, long)>& fn) {
    static const long binom[5][5] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
    for (std::uint8_t a = 0; a <= k[0]; ++a)
        for (std::uint8_t b = 0; b <= k[1]; ++b)
            for (std::uint8_t c = 0; c <= k[2]; ++c) {
                long w = binom[k[0]][a] * binom[k[1]][b] * binom[k[2]][c];
                fn(MIdx{a, b, c}, w);
            }
}

Jet3 multi_derive(const Jet3& f, const MIdx& k) {
    Jet3 r = f;
    for (int v = 0; v < 3; ++v)
        for (int n = 0; n < k[v]; ++n) r = r.derive(v);
    return r;
}

} // namespace

DiffOpJet DiffOpJet::identity() {
    DiffOpJet op;
    Tensor<Jet3> m(2);
    for (int a = 0; a < 3; ++a) m(a, a) = Jet3::constant(Rat(1));
    op.coef[{0, 0, 0}] = m;
    return op;
}

DiffOpJet DiffOpJet::mult(const Tensor<Jet3>& m) {
    DiffOpJet op;
    op.coef[{0, 0, 0}] = m;
    return op;
}

DiffOpJet DiffOpJet::mult_scalar(const Jet3& f) {
    Tensor<Jet3> m(2);
    for (int a = 0; a < 3; ++a) m(a, a) = f;
    return mult(m);
}

DiffOpJet DiffOpJet::deriv(int axis) {
    DiffOpJet op;
    op.order = 1;
    Tensor<Jet3> m(2);
    for (int a = 0; a < 3; ++a) m(a, a) = Jet3::constant(Rat(1));
    MIdx k{0, 0, 0};
    k[axis] = 1;
    op.coef[k] = m;
    return op;
}

void DiffOpJet::add_term(const MIdx& k, const Tensor<Jet3>& m) {
    auto it = coef.find(k);
    if (it == coef.end()) coef[k] = m;
    else it->second = it->second + m;
    order = std::max(order, midx_total(k));
}

void DiffOpJet::prune() {
    for (auto it = coef.begin(); it != coef.end();)
        it = mat_zero(it->second) ? coef.erase(it) : std::next(it);
    order = 0;
    for (const auto& [k, m] : coef) order = std::max(order, midx_total(k));
}

DiffOpJet compose(const DiffOpJet& A, const DiffOpJet& B) {
    DiffOpJet out;
    for (const auto& [ka, ma] : A.coef)
        for (const auto& [kb, mb] : B.coef) {
            // d^ka (mb d^kb) = sum_{t<=ka} C(ka,t) (d^{ka-t} mb) d^{t+kb}
            for_each_sub_multiindex(ka, [&](const MIdx& t, long w) {
                MIdx rest{(std::uint8_t)(ka[0] - t[0]), (std::uint8_t)(ka[1] - t[1]), (std::uint8_t)(ka[2] - t[2])};
                Tensor<Jet3> prod(2);
                bool any = false;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) {
                        Jet3 s;
                        for (int g = 0; g < 3; ++g) {
                            if (ma(a, g).zero() || mb(g, b).zero()) continue;
                            Jet3 d = multi_derive(mb(g, b), rest);
                            if (d.zero()) continue;
                            s += ma(a, g) * d;
                        }
                        if (!s.zero()) {
                            prod(a, b) = w == 1 ? s : s.scaled(Rat(w));
                            any = true;
                        }
                    }
                if (any) {
                    MIdx kk{(std::uint8_t)(t[0] + kb[0]), (std::uint8_t)(t[1] + kb[1]), (std::uint8_t)(t[2] + kb[2])};
                    out.add_term(kk, prod);
                }
            });
        }
    out.prune();
    return out;
}

LeftSymbol left_symbol(const DiffOpJet& op) {
    LeftSymbol s;
    s.order = op.order;
    s.grade.resize(op.order + 1);
    for (const auto& [k, m] : op.coef) {
        int d = midx_total(k);
        CRat ik = inv_i_pow(-d); // i^{|k|}
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (m(a, b).zero()) continue;
                CJet3 c = to_complex(m(a, b));
                CJet3 scaled(c.order);
                for (size_t i = 0; i < c.c.size(); ++i)
                    if (!c.c[i].zero()) scaled.c[i] = c.c[i] * ik;
                s.grade[d][a * 3 + b].push_back(PolyTerm{std::move(scaled), k});
            }
    }
    return s;
}

std::array<Jet3, 3> apply_diffop(const DiffOpJet& op, const std::array<Jet3, 3>& u) {
    std::array<Jet3, 3> out;
    for (const auto& [k, m] : op.coef) {
        std::array<Jet3, 3> du;
        for (int b = 0; b < 3; ++b) du[b] = multi_derive(u[b], k);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (m(a, b).zero() || du[b].zero()) continue;
                out[a] += m(a, b) * du[b];
            }
    }
    return out;
}

std::map<MIdx, TensorC> freeze_at_origin(const DiffOpJet& op) {
    std::map<MIdx, TensorC> out;
    for (const auto& [k, m] : op.coef) {
        TensorC c(2);
        bool any = false;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                c(a, b) = m(a, b).value_at_origin();
                any = any || !is_zero(c(a, b));
            }
        if (any) out[k] = c;
    }
    return out;
}

Rat matrix_trace_differential(const DiffOpJet& op, const TransportJet& Z, const Jet3& f) {
    // need coefficient jets and Z to y-degree >= op.order
    if (op.order > 3) throw std::invalid_argument("matrix_trace_differential: order > 3 unsupported");
    auto frozen = freeze_at_origin(op);
    const auto& T3 = MonoTable<3, 4>::instance();
    Rat out(0);
    for (const auto& [k, m] : frozen) {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (is_zero(m(a, b))) continue;
                Jet3 zf = Z.from_y_to_origin(b, a) * f; // Z_b{}^a(y,0) f(y)
                // d^k at y = 0 is k! times the coefficient
                std::array<std::uint8_t, 3> e = k;
                int idx = T3.index(e);
                if (idx < 0) continue;
                Rat fac(1);
                for (int v = 0; v < 3; ++v) fac *= factorial_rat(k[v]);
                out += m(a, b) * zf.c[idx] * fac;
            }
    }
    return out;
}

} // namespace etaforge
