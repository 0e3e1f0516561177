#include "etaforge/hodge.hpp"

#include <functional>
#include <sstream>

namespace etaforge {

namespace {

// scalar differential operator in coefficients-left form
using SOp = std::map<MIdx, Jet3>;

void sop_add(SOp& a, const MIdx& k, const Jet3& f) {
    if (f.zero()) return;
    auto it = a.find(k);
    if (it == a.end()) a[k] = f;
    else it->second += f;
}

SOp sop_mult(const Jet3& f) { return {{MIdx{0, 0, 0}, f}}; }

SOp sop_deriv(int axis) {
    MIdx k{0, 0, 0};
    k[axis] = 1;
    return {{k, Jet3::constant(Rat(1))}};
}

Jet3 multi_derive(const Jet3& f, const MIdx& k) {
    Jet3 r = f;
    for (int v = 0; v < 3; ++v)
        for (int n = 0; n < k[v]; ++n) r = r.derive(v);
    return r;
}

SOp sop_compose(const SOp& A, const SOp& B) {
    static const long binom[5][5] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
    SOp out;
    for (const auto& [ka, fa] : A)
        for (const auto& [kb, fb] : B)
            for (std::uint8_t a = 0; a <= ka[0]; ++a)
                for (std::uint8_t b = 0; b <= ka[1]; ++b)
                    for (std::uint8_t c = 0; c <= ka[2]; ++c) {
                        long w = binom[ka[0]][a] * binom[ka[1]][b] * binom[ka[2]][c];
                        MIdx rest{(std::uint8_t)(ka[0] - a), (std::uint8_t)(ka[1] - b), (std::uint8_t)(ka[2] - c)};
                        Jet3 d = multi_derive(fb, rest);
                        if (d.zero()) continue;
                        Jet3 term = fa * d;
                        if (w != 1) term = term.scaled(Rat(w));
                        sop_add(out, MIdx{(std::uint8_t)(a + kb[0]), (std::uint8_t)(b + kb[1]), (std::uint8_t)(c + kb[2])}, term);
                    }
    return out;
}

SOp sop_chain(std::initializer_list<SOp> factors) {
    SOp acc = {{MIdx{0, 0, 0}, Jet3::constant(Rat(1))}};
    for (const auto& f : factors) acc = sop_compose(acc, f);
    return acc;
}

} // namespace

DiffOpJet curl_operator(const GeomContext& ctx) {
    DiffOpJet op;
    op.order = 1;
    for (int g = 0; g < 3; ++g) {
        Tensor<Jet3> m(2);
        bool any = false;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (ctx.E_mixed(a, b, g).zero()) continue;
                m(a, b) = -ctx.E_mixed(a, b, g);
                any = true;
            }
        if (any) {
            MIdx k{0, 0, 0};
            k[g] = 1;
            op.coef[k] = m;
        }
    }
    return op;
}

HodgeParts hodge_laplacian(const GeomContext& ctx) {
    HodgeParts parts;

    // (d delta)_a{}^b = -d_a rho^{-1} d_g g^{gb} rho     (acting to the right)
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            SOp entry;
            for (int g = 0; g < 3; ++g) {
                SOp word = sop_chain({sop_deriv(a), sop_mult(ctx.rho_inv), sop_deriv(g), sop_mult(ctx.ginv(g, b) * ctx.rho)});
                for (auto& [k, f] : word) sop_add(entry, k, f);
            }
            for (auto& [k, f] : entry) {
                Tensor<Jet3> m(2);
                m(a, b) = -f;
                parts.d_delta.add_term(k, m);
            }
        }
    parts.d_delta.prune();

    // (delta d)_a{}^b = g_{an} rho^{-1} d_m (g^{mb} g^{ng} - g^{mg} g^{nb}) rho d_g
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            SOp entry;
            for (int n = 0; n < 3; ++n)
                for (int m = 0; m < 3; ++m)
                    for (int g = 0; g < 3; ++g) {
                        Jet3 mid = (ctx.ginv(m, b) * ctx.ginv(n, g) - ctx.ginv(m, g) * ctx.ginv(n, b)) * ctx.rho;
                        if (mid.zero()) continue;
                        SOp word = sop_chain({sop_mult(ctx.g(a, n) * ctx.rho_inv), sop_deriv(m), sop_mult(mid), sop_deriv(g)});
                        for (auto& [k, f] : word) sop_add(entry, k, f);
                    }
            for (auto& [k, f] : entry) {
                Tensor<Jet3> mm(2);
                mm(a, b) = f;
                parts.delta_d.add_term(k, mm);
            }
        }
    parts.delta_d.prune();

    parts.minus_hodge = parts.d_delta;
    for (const auto& [k, m] : parts.delta_d.coef) parts.minus_hodge.add_term(k, m);
    parts.minus_hodge.prune();
    return parts;
}

HodgeSymbolTensors hodge_symbol_tensors(const CurvatureData& c) {
    HodgeSymbolTensors t;
    const TensorC& Ric = c.ric0;
    const TensorC& R = c.riem0;
    const TensorC& dRic = c.dric0;
    const TensorC& dR = c.driem0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            t.a0(a, b) = Ric(a, b);
            for (int n = 0; n < 3; ++n)
                t.b0(a, b, n) = -dRic(b, a, n) / 6 + dRic(a, b, n) / 2 + dRic(n, a, b) / 2;
            for (int g = 0; g < 3; ++g)
                for (int m = 0; m < 3; ++m) {
                    t.a1(a, b, g, m) = Rat(kronecker(a, b)) * Ric(g, m)
                                     - (R(g, m, b, a) + R(b, g, a, m)) * Rat(2) / 3;
                    for (int n = 0; n < 3; ++n)
                        t.b1(a, b, g, m, n) = Rat(kronecker(a, b)) * (dRic(m, g, n) / 2 - dRic(g, m, n) / 12)
                                            - (dR(a, g, m, b, n) - dR(m, g, a, b, n) * 3 + dR(n, g, m, b, a) * 5) / 6;
                }
        }
    return t;
}

namespace {

std::string coeff_witness(const char* tag, int a, int b, int extra1, int extra2, const CRat& got, const CRat& want) {
    std::ostringstream os;
    os << tag << "[" << a << "][" << b << "]";
    if (extra1 >= 0) os << "[" << extra1 << "]";
    if (extra2 >= 0) os << "[" << extra2 << "]";
    os << " got " << got.str() << " want " << want.str();
    return os.str();
}

} // namespace

std::vector<CheckReport> verify_hodge_symbol(const GeomContext& ctx, const HodgeSymbolTensors& t) {
    std::vector<CheckReport> out;
    auto parts = hodge_laplacian(ctx);
    LeftSymbol sym = left_symbol(parts.minus_hodge);

    const auto& T3 = MonoTable<3, 4>::instance();
    CheckReport rep_h2{"hodge-symbol-leading", true, ""};
    // grade 2 must be ||xi||^2 Id exactly
    for (int a = 0; a < 3 && rep_h2.pass; ++a)
        for (int b = 0; b < 3 && rep_h2.pass; ++b) {
            // assemble coefficient of xi_m xi_n
            std::array<CJet3, 9> q{};
            for (const auto& term : sym.grade[2][a * 3 + b]) {
                // mono has |k| = 2
                int m = -1, n = -1;
                for (int v = 0; v < 3; ++v)
                    for (int r = 0; r < (int)term.mono[v]; ++r) (m < 0 ? m : n) = v;
                CJet3& slot = q[m * 3 + n];
                slot += term.coef;
            }
            for (int m = 0; m < 3 && rep_h2.pass; ++m)
                for (int n = m; n < 3 && rep_h2.pass; ++n) {
                    CJet3 got = q[m * 3 + n]; // xi_m xi_n coefficient, m <= n
                    CJet3 want = to_complex(a == b ? (m == n ? ctx.ginv(m, n) : (ctx.ginv(m, n) + ctx.ginv(n, m)))
                                                   : TensorJ(2)(0, 0));
                    if (!(got == want)) {
                        rep_h2.pass = false;
                        rep_h2.witness = coeff_witness("h2", a, b, m, n, got.value_at_origin(), want.value_at_origin());
                    }
                }
        }
    out.push_back(rep_h2);

    CheckReport rep_h1{"hodge-symbol-h1", true, ""};
    CRat I = CRat::I();
    for (int a = 0; a < 3 && rep_h1.pass; ++a)
        for (int b = 0; b < 3 && rep_h1.pass; ++b) {
            std::array<CJet3, 3> cg{}; // coefficient jet of xi_g
            for (const auto& term : sym.grade[1][a * 3 + b]) {
                int g = term.mono[0] ? 0 : term.mono[1] ? 1 : 2;
                cg[g] += term.coef;
            }
            for (int g = 0; g < 3 && rep_h1.pass; ++g) {
                // constant term must vanish
                if (!cg[g].value_at_origin().zero()) {
                    rep_h1.pass = false;
                    rep_h1.witness = coeff_witness("h1-const", a, b, g, -1, cg[g].value_at_origin(), CRat());
                    break;
                }
                for (int m = 0; m < 3; ++m) {
                    std::array<std::uint8_t, 3> e{};
                    e[m] = 1;
                    CRat got = cg[g].at(e);
                    CRat want = I * CRat(t.a1(a, b, g, m));
                    if (!(got == want)) {
                        rep_h1.pass = false;
                        rep_h1.witness = coeff_witness("a1", a, b, g, m, got, want);
                        break;
                    }
                }
                for (int m = 0; m < 3 && rep_h1.pass; ++m)
                    for (int n = m; n < 3; ++n) {
                        std::array<std::uint8_t, 3> e{};
                        e[m] += 1;
                        e[n] += 1;
                        CRat got = cg[g].at(e);
                        Rat sym_b1 = m == n ? t.b1(a, b, g, m, n) : t.b1(a, b, g, m, n) + t.b1(a, b, g, n, m);
                        CRat want = I * CRat(sym_b1);
                        if (!(got == want)) {
                            rep_h1.pass = false;
                            rep_h1.witness = coeff_witness("b1", a, b, g, m * 10 + n, got, want);
                            break;
                        }
                    }
            }
        }
    out.push_back(rep_h1);

    CheckReport rep_h0{"hodge-symbol-h0", true, ""};
    for (int a = 0; a < 3 && rep_h0.pass; ++a)
        for (int b = 0; b < 3 && rep_h0.pass; ++b) {
            CJet3 c0{};
            for (const auto& term : sym.grade[0][a * 3 + b]) c0 += term.coef;
            CRat got = c0.value_at_origin();
            CRat want = CRat(t.a0(a, b));
            if (!(got == want)) {
                rep_h0.pass = false;
                rep_h0.witness = coeff_witness("a0", a, b, -1, -1, got, want);
                break;
            }
            for (int n = 0; n < 3; ++n) {
                std::array<std::uint8_t, 3> e{};
                e[n] = 1;
                CRat g1 = c0.at(e);
                CRat w1 = CRat(t.b0(a, b, n));
                if (!(g1 == w1)) {
                    rep_h0.pass = false;
                    rep_h0.witness = coeff_witness("b0", a, b, n, -1, g1, w1);
                    break;
                }
            }
        }
    out.push_back(rep_h0);
    (void)T3;
    return out;
}

std::vector<CheckReport> verify_hodge_symbol_appendix(const CurvatureData& c) {
    auto ctx = make_context(c, Gauge::general);
    return verify_hodge_symbol(*ctx, hodge_symbol_tensors(c));
}

std::vector<CheckReport> verify_trace_props(const CurvatureData& c) {
    std::vector<CheckReport> out;
    auto ctx = make_context(c, Gauge::general);
    TransportJet Z = transport_double_jet(*ctx);

    DiffOpJet curl = curl_operator(*ctx);
    DiffOpJet curl3 = compose(curl, compose(curl, curl));
    HodgeParts hodge = hodge_laplacian(*ctx);
    DiffOpJet hodge_neg; // the nonpositive Hodge Laplacian itself
    for (const auto& [k, m] : hodge.minus_hodge.coef) {
        Tensor<Jet3> neg(2);
        for (int i = 0; i < 9; ++i) neg.flat(i) = -m.flat(i);
        hodge_neg.add_term(k, neg);
    }
    hodge_neg.prune();

    const auto& T3 = MonoTable<3, 4>::instance();
    CheckReport rc{"trace-curl", true, ""}, rc3{"trace-curl-cubed", true, ""}, rh{"trace-hodge-laplacian", true, ""};
    for (int i = 0; i < T3.size(); ++i) {
        if (T3.degree[i] > 3) continue;
        Jet3 f(3);
        f.c[i] = Rat(1);
        Rat tc = matrix_trace_differential(curl, Z, f);
        if (!is_zero(tc) && rc.pass) {
            rc.pass = false;
            rc.witness = "monomial #" + std::to_string(i) + " -> " + rat_to_string(tc);
        }
        Rat tc3 = matrix_trace_differential(curl3, Z, f);
        if (!is_zero(tc3) && rc3.pass) {
            rc3.pass = false;
            rc3.witness = "monomial #" + std::to_string(i) + " -> " + rat_to_string(tc3);
        }
        Rat th = matrix_trace_differential(hodge_neg, Z, f);
        Rat want = Rat(3) * laplace_beltrami(*ctx, f).value_at_origin() - ctx->sc.value_at_origin() * f.value_at_origin();
        if (!(th == want) && rh.pass) {
            rh.pass = false;
            rh.witness = "monomial #" + std::to_string(i) + " got " + rat_to_string(th) + " want " + rat_to_string(want);
        }
    }
    out.push_back(rc);
    out.push_back(rc3);
    out.push_back(rh);

    // frozen R(0) for curl^3:
    //   [eps^{brt} Ric_{ar} - (1/3) eps_a{}^{br} Ric_r{}^t + (1/3) eps_a{}^{tr} Ric_r{}^b] d_t
    //   + eps_a{}^{br} d_r (d^{st} d_s d_t)
    {
        CheckReport rep{"trace-curl-cubed-frozen-op", true, ""};
        std::map<MIdx, TensorC> want;
        auto add = [&](const MIdx& k, int a, int b, const Rat& v) {
            if (is_zero(v)) return;
            auto it = want.find(k);
            if (it == want.end()) {
                TensorC m(2);
                m(a, b) = v;
                want[k] = m;
            } else it->second(a, b) += v;
        };
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int t = 0; t < 3; ++t) {
                    Rat v(0);
                    for (int r = 0; r < 3; ++r) {
                        v += Rat(eps3(b, r, t)) * c.ric0(a, r);
                        v -= Rat(eps3(a, b, r)) * c.ric0(r, t) / 3;
                        v += Rat(eps3(a, t, r)) * c.ric0(r, b) / 3;
                    }
                    MIdx k{0, 0, 0};
                    k[t] = 1;
                    add(k, a, b, v);
                }
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int r = 0; r < 3; ++r) {
                    int s = eps3(a, b, r);
                    if (s == 0) continue;
                    for (int d = 0; d < 3; ++d) {
                        MIdx k{0, 0, 0};
                        k[r] += 1;
                        k[d] += 2;
                        add(k, a, b, Rat(s));
                    }
                }
        auto got = freeze_at_origin(curl3);
        for (auto it = want.begin(); it != want.end();) {
            bool zero = true;
            for (int i = 0; i < 9; ++i) zero = zero && is_zero(it->second.flat(i));
            it = zero ? want.erase(it) : std::next(it);
        }
        if (!(got.size() == want.size())) {
            rep.pass = false;
            rep.witness = "term-count mismatch: got " + std::to_string(got.size()) + " want " + std::to_string(want.size());
        } else {
            for (const auto& [k, m] : want) {
                auto it = got.find(k);
                if (it == got.end() || !(it->second == m)) {
                    rep.pass = false;
                    rep.witness = "multi-index (" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ")";
                    break;
                }
            }
        }
        out.push_back(rep);
    }

    // frozen R(0) for the Hodge Laplacian: d_a{}^b Lap_flat - (2/3) Ric_a{}^b
    {
        CheckReport rep{"trace-hodge-frozen-op", true, ""};
        auto got = freeze_at_origin(hodge_neg);
        std::map<MIdx, TensorC> want;
        for (int d = 0; d < 3; ++d) {
            MIdx k{0, 0, 0};
            k[d] = 2;
            TensorC m(2);
            for (int a = 0; a < 3; ++a) m(a, a) = Rat(1);
            want[k] = m;
        }
        {
            TensorC m(2);
            bool any = false;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    m(a, b) = -c.ric0(a, b) * 2 / 3;
                    any = any || !is_zero(m(a, b));
                }
            if (any) want[MIdx{0, 0, 0}] = m;
        }
        if (got.size() != want.size()) {
            rep.pass = false;
            rep.witness = "term-count mismatch: got " + std::to_string(got.size()) + " want " + std::to_string(want.size());
        } else {
            for (const auto& [k, m] : want) {
                auto it = got.find(k);
                if (it == got.end() || !(it->second == m)) {
                    rep.pass = false;
                    rep.witness = "multi-index (" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ")";
                    break;
                }
            }
        }
        out.push_back(rep);
    }

    return out;
}

} // namespace etaforge
