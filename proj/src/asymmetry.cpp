#include "etaforge/asymmetry.hpp"

#include <functional>

namespace etaforge {

PowerSymbol assemble_t(const PowerSymbol& q) {
    const GeomContext& ctx = *q.ctx;
    PowerSymbol t;
    t.ctx = q.ctx;
    t.matrix = true;
    t.lead_deg = q.lead_deg + 1;
    t.comp.resize(q.comp.size());
    CRat I = CRat::I();
    for (int j = 0; j < (int)q.comp.size(); ++j) {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                TermList acc;
                for (int m = 0; m < 3; ++m)
                    for (int g = 0; g < 3; ++g) {
                        const Jet3& E = ctx.E_mixed(a, m, g);
                        if (E.zero()) continue;
                        CJet3 Ec = to_complex(E);
                        // i xi_m q_g{}^b from the same grade
                        {
                            const TermList& src = q.comp[j][g * 3 + b];
                            for (const auto& term : src) {
                                CJet3 c = term.coef * Ec;
                                if (c.zero()) continue;
                                CJet3 ci(c.order);
                                for (size_t i = 0; i < c.c.size(); ++i)
                                    if (!c.c[i].zero()) ci.c[i] = c.c[i] * I;
                                Mono3 mm = term.mono;
                                mm[m] += 1;
                                acc.push_back(STerm{std::move(ci), mm, term.e});
                            }
                        }
                        // d_{x^m} q_g{}^b from one grade up
                        if (j >= 1) {
                            TermList dq = deriv_x(q.comp[j - 1][g * 3 + b], m, ctx);
                            TermList prod = mul_jet(dq, Ec);
                            acc.insert(acc.end(), prod.begin(), prod.end());
                        }
                    }
                collect_terms(acc);
                t.comp[j][a * 3 + b] = std::move(acc);
            }
    }
    return t;
}

std::vector<CTermList> trace_at_centre(const PowerSymbol& t, const TransportJet& Z, int depth) {
    if (depth > 3) throw std::invalid_argument("trace_at_centre: depth > 3 (transport jet order limit)");
    std::vector<CTermList> out(depth + 1);

    // pure-y derivative values of Z_b{}^a(y,x) at (0,0) are the only
    // transport data that survive y := x followed by x := 0
    for (int jt = 0; jt < (int)t.comp.size() && jt <= depth; ++jt) {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                CTermList base = centre_terms(t.comp[jt][a * 3 + b]);
                if (base.empty()) continue;
                Jet6 zsw = Z.swapped(b, a);
                std::function<void(int, int, const CTermList&, const Jet6&)> walk =
                    [&](int k, int jout, const CTermList& cur, const Jet6& zcur) {
                        if (jout > depth) return;
                        {
                            Rat zval = zcur.value_at_origin();
                            if (!is_zero(zval)) {
                                CRat factor = inv_i_pow(k) * CRat(Rat(1) / factorial_rat(k)) * CRat(zval);
                                CTermList scaled = scale_clist(cur, factor);
                                out[jout].insert(out[jout].end(), scaled.begin(), scaled.end());
                            }
                        }
                        if (jout == depth) return;
                        for (int g = 0; g < 3; ++g) {
                            Jet6 dz = zcur.derive(g); // block 0 = the y slot of Z(y,x)
                            if (dz.zero()) continue;
                            CTermList dxi = deriv_xi_centre(cur, g);
                            if (dxi.empty()) continue;
                            walk(k + 1, jout + 1, dxi, dz);
                        }
                    };
                walk(0, jt, base, zsw);
            }
    }
    for (auto& lst : out) collect_cterms(lst);
    return out;
}

AsymmetryResult asymmetry_components(std::shared_ptr<const GeomContext> ctx, const TransportJet& Z, const Rat& s,
                                     const ResolventSymbol* shared_resolvent) {
    AsymmetryResult res;
    res.s = s;

    ResolventSymbol local;
    const ResolventSymbol* r = shared_resolvent;
    if (!r) {
        HodgeSymbolParts h = hodge_symbol_parts(*ctx);
        local = resolvent_recursion(ctx, h, 3);
        r = &local;
    }
    PowerSymbol q = power_symbols(*r, s, 3);
    PowerSymbol t = assemble_t(q);

    res.total = trace_at_centre(t, Z, 3);
    res.diag.resize(4);
    for (int j = 0; j <= 3; ++j) {
        CTermList d;
        for (int a = 0; a < 3; ++a) {
            CTermList e = centre_terms(t.comp[j][a * 3 + a]);
            d.insert(d.end(), e.begin(), e.end());
        }
        collect_cterms(d);
        res.diag[j] = std::move(d);
    }
    res.pt.resize(4);
    for (int j = 0; j <= 3; ++j) res.pt[j] = add_clists(res.total[j], scale_clist(res.diag[j], CRat(Rat(-1))));
    res.formula = principal_formula_terms(ctx->data, s);
    return res;
}

CTermList principal_formula_terms(const CurvatureData& c, const Rat& s) {
    CTermList out;
    Rat pref = -(s + 1) * (s + 3) / 6;
    if (is_zero(pref)) return out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int g = 0; g < 3; ++g) {
                int e = eps3(a, b, g);
                if (e == 0) continue;
                for (int r = 0; r < 3; ++r) {
                    Rat v = c.dric0(a, b, r) * e * pref;
                    if (is_zero(v)) continue;
                    Mono3 m{0, 0, 0};
                    m[g] += 1;
                    m[r] += 1;
                    out.push_back(CTerm{CRat(v), m, -s - 5});
                }
            }
    collect_cterms(out);
    return out;
}

namespace {

// first x-derivatives of h0 and second x-derivatives of h1 at the origin
struct HDerivs {
    // h0d1[a][b][r] = d_r h0_a{}^b (0)
    std::array<CRat, 27> h0d1{};
    // h1d2[a][b][g][r][s] = d_r d_s (xi_g coefficient of h1_a{}^b) (0)
    std::array<CRat, 243> h1d2{};

    CRat& d1(int a, int b, int r) { return h0d1[(a * 3 + b) * 3 + r]; }
    const CRat& d1(int a, int b, int r) const { return h0d1[(a * 3 + b) * 3 + r]; }
    CRat& d2(int a, int b, int g, int r, int s) { return h1d2[(((a * 3 + b) * 3 + g) * 3 + r) * 3 + s]; }
    const CRat& d2(int a, int b, int g, int r, int s) const { return h1d2[(((a * 3 + b) * 3 + g) * 3 + r) * 3 + s]; }
};

HDerivs hodge_derivs_at_origin(const HodgeSymbolParts& h) {
    HDerivs out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            for (const auto& term : h.h0[a * 3 + b])
                for (int r = 0; r < 3; ++r) {
                    CRat v = term.coef.derive(r).value_at_origin();
                    if (!v.zero()) out.d1(a, b, r) += v;
                }
            for (const auto& term : h.h1[a * 3 + b]) {
                int g = term.mono[0] ? 0 : term.mono[1] ? 1 : 2;
                for (int r = 0; r < 3; ++r)
                    for (int s = 0; s < 3; ++s) {
                        CRat v = term.coef.derive(r).derive(s).value_at_origin();
                        if (!v.zero()) out.d2(a, b, g, r, s) += v;
                    }
            }
        }
    return out;
}

CTermList contraction_rhs(const CurvatureData& c, const Rat& scale) {
    // scale * eps^{abg} dRic(a,b,r) xi_g xi_r
    CTermList out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int g = 0; g < 3; ++g) {
                int e = eps3(a, b, g);
                if (e == 0) continue;
                for (int r = 0; r < 3; ++r) {
                    Rat v = c.dric0(a, b, r) * e * scale;
                    if (is_zero(v)) continue;
                    Mono3 m{0, 0, 0};
                    m[g] += 1;
                    m[r] += 1;
                    out.push_back(CTerm{CRat(v), m, Rat(0)});
                }
            }
    collect_cterms(out);
    return out;
}

} // namespace

std::vector<CheckReport> verify_theorem_principal(const AsymmetryResult& res, const GeomContext& ctx, int trials,
                                                  std::uint64_t seed) {
    std::vector<CheckReport> out;
    const char* names[3] = {"asymmetry-component-leading-vanishes", "asymmetry-component-sub1-vanishes",
                            "asymmetry-component-sub2-vanishes"};
    for (int j = 0; j <= 2; ++j) {
        CheckReport rep{names[j], true, ""};
        if (!equal_centre_lists(res.total[j], CTermList{}, trials, seed + j)) {
            rep.pass = false;
            rep.witness = canonical_string(res.total[j]);
        }
        out.push_back(rep);
    }
    {
        CheckReport rep{"asymmetry-principal-formula", true, ""};
        if (!equal_centre_lists(res.total[3], res.formula, trials, seed + 3)) {
            rep.pass = false;
            rep.witness = "computed:\n" + canonical_string(res.total[3]) + "formula:\n" + canonical_string(res.formula);
        }
        out.push_back(rep);
    }

    HodgeSymbolParts h = hodge_symbol_parts(ctx);
    HDerivs d = hodge_derivs_at_origin(h);
    CRat I = CRat::I();

    // -i eps_a{}^{mg} xi_m d^{rs} (h1_g{}^a)_{x^r x^s} |_0 = -(8/3) eps^{abg} dRic_ab{}^r xi_g xi_r
    {
        CheckReport rep{"asymmetry-h1-contraction", true, ""};
        CTermList lhs;
        for (int a = 0; a < 3; ++a)
            for (int m = 0; m < 3; ++m)
                for (int g = 0; g < 3; ++g) {
                    int e = eps3(a, m, g);
                    if (e == 0) continue;
                    for (int gg = 0; gg < 3; ++gg)
                        for (int r = 0; r < 3; ++r) {
                            CRat v = d.d2(g, a, gg, r, r) * CRat(Rat(e)) * (-I);
                            if (v.zero()) continue;
                            Mono3 mm{0, 0, 0};
                            mm[m] += 1;
                            mm[gg] += 1;
                            lhs.push_back(CTerm{v, mm, Rat(0)});
                        }
                }
        collect_cterms(lhs);
        CTermList rhs = contraction_rhs(ctx.data, Rat(-8, 3));
        if (!equal_centre_lists(lhs, rhs, trials, seed + 10)) {
            rep.pass = false;
            rep.witness = "lhs:\n" + canonical_string(lhs) + "rhs:\n" + canonical_string(rhs);
        }
        out.push_back(rep);
    }
    // 2 eps_a{}^{mg} xi_m xi^r (h0_g{}^a)_{x^r} |_0 = (4/3) eps^{abg} dRic_ab{}^r xi_g xi_r
    {
        CheckReport rep{"asymmetry-h0-contraction", true, ""};
        CTermList lhs;
        for (int a = 0; a < 3; ++a)
            for (int m = 0; m < 3; ++m)
                for (int g = 0; g < 3; ++g) {
                    int e = eps3(a, m, g);
                    if (e == 0) continue;
                    for (int r = 0; r < 3; ++r) {
                        CRat v = d.d1(g, a, r) * CRat(Rat(2 * e));
                        if (v.zero()) continue;
                        Mono3 mm{0, 0, 0};
                        mm[m] += 1;
                        mm[r] += 1;
                        lhs.push_back(CTerm{v, mm, Rat(0)});
                    }
                }
        collect_cterms(lhs);
        CTermList rhs = contraction_rhs(ctx.data, Rat(4, 3));
        if (!equal_centre_lists(lhs, rhs, trials, seed + 11)) {
            rep.pass = false;
            rep.witness = "lhs:\n" + canonical_string(lhs) + "rhs:\n" + canonical_string(rhs);
        }
        out.push_back(rep);
    }
    // first-Bianchi cancellation: (i/12) eps_a{}^{mg} xi_m xi^r xi^s (h1_g{}^a)_{x^r x^s} |_0 = 0
    {
        CheckReport rep{"asymmetry-bianchi-cancellation-quartic", true, ""};
        CTermList lhs;
        for (int a = 0; a < 3; ++a)
            for (int m = 0; m < 3; ++m)
                for (int g = 0; g < 3; ++g) {
                    int e = eps3(a, m, g);
                    if (e == 0) continue;
                    for (int gg = 0; gg < 3; ++gg)
                        for (int r = 0; r < 3; ++r)
                            for (int s = 0; s < 3; ++s) {
                                CRat v = d.d2(g, a, gg, r, s) * CRat(Rat(e, 12)) * I;
                                if (v.zero()) continue;
                                Mono3 mm{0, 0, 0};
                                mm[m] += 1;
                                mm[gg] += 1;
                                mm[r] += 1;
                                mm[s] += 1;
                                lhs.push_back(CTerm{v, mm, Rat(0)});
                            }
                }
        collect_cterms(lhs);
        if (!equal_centre_lists(lhs, CTermList{}, trials, seed + 12)) {
            rep.pass = false;
            rep.witness = canonical_string(lhs);
        }
        out.push_back(rep);
    }
    // first-Bianchi cancellation: -(i/4) eps_a{}^{mg} xi^r (h1_g{}^a)_{x^r x^m} |_0 = 0
    {
        CheckReport rep{"asymmetry-bianchi-cancellation-quadratic", true, ""};
        CTermList lhs;
        for (int a = 0; a < 3; ++a)
            for (int m = 0; m < 3; ++m)
                for (int g = 0; g < 3; ++g) {
                    int e = eps3(a, m, g);
                    if (e == 0) continue;
                    for (int gg = 0; gg < 3; ++gg)
                        for (int r = 0; r < 3; ++r) {
                            CRat v = d.d2(g, a, gg, r, m) * CRat(Rat(-e, 4)) * I;
                            if (v.zero()) continue;
                            Mono3 mm{0, 0, 0};
                            mm[gg] += 1;
                            mm[r] += 1;
                            lhs.push_back(CTerm{v, mm, Rat(0)});
                        }
                }
        collect_cterms(lhs);
        if (!equal_centre_lists(lhs, CTermList{}, trials, seed + 13)) {
            rep.pass = false;
            rep.witness = canonical_string(lhs);
        }
        out.push_back(rep);
    }
    // assembly: total grade 3 = ((s+1)(s+3)/8)|xi|^{-s-5} eps_a{}^{mg}
    //   [2 xi_m xi^r (h0_g{}^a)_{x^r} - i xi_m d^{rs}(h1_g{}^a)_{x^r x^s}]
    {
        CheckReport rep{"asymmetry-assembly-identity", true, ""};
        const Rat& s = res.s;
        Rat pref = (s + 1) * (s + 3) / 8;
        CTermList rhs;
        for (int a = 0; a < 3; ++a)
            for (int m = 0; m < 3; ++m)
                for (int g = 0; g < 3; ++g) {
                    int e = eps3(a, m, g);
                    if (e == 0) continue;
                    for (int r = 0; r < 3; ++r) {
                        CRat v = d.d1(g, a, r) * CRat(Rat(2 * e) * pref);
                        if (!v.zero()) {
                            Mono3 mm{0, 0, 0};
                            mm[m] += 1;
                            mm[r] += 1;
                            rhs.push_back(CTerm{v, mm, -s - 5});
                        }
                    }
                    for (int gg = 0; gg < 3; ++gg)
                        for (int r = 0; r < 3; ++r) {
                            CRat v = d.d2(g, a, gg, r, r) * CRat(Rat(e) * pref) * (-I);
                            if (!v.zero()) {
                                Mono3 mm{0, 0, 0};
                                mm[m] += 1;
                                mm[gg] += 1;
                                rhs.push_back(CTerm{v, mm, -s - 5});
                            }
                        }
                }
        collect_cterms(rhs);
        if (!equal_centre_lists(res.total[3], rhs, trials, seed + 14)) {
            rep.pass = false;
            rep.witness = "computed:\n" + canonical_string(res.total[3]) + "assembled:\n" + canonical_string(rhs);
        }
        out.push_back(rep);
    }
    return out;
}

std::vector<CheckReport> lemma_b_checks(std::shared_ptr<const GeomContext> ctx, const TransportJet& Z, const Rat& s) {
    std::vector<CheckReport> out;
    AsymmetryResult res = asymmetry_components(ctx, Z, s);

    {
        CheckReport rep{"transport-part-vanishes-at-centre", true, ""};
        for (int j = 0; j <= 3 && rep.pass; ++j)
            if (!equal_centre_lists(res.pt[j], CTermList{}, 6, 31 + j)) {
                rep.pass = false;
                rep.witness = "grade " + std::to_string(j) + ":\n" + canonical_string(res.pt[j]);
            }
        out.push_back(rep);
    }

    // leading symbol of t at the centre: t_{-s} = -i eps_a{}^{kg} xi_g |xi|^{-s-1}
    auto t_lead = [&](int a, int k) {
        CTermList lst;
        for (int g = 0; g < 3; ++g) {
            int e = eps3(a, k, g);
            if (e == 0) continue;
            Mono3 m{0, 0, 0};
            m[g] += 1;
            lst.push_back(CTerm{CRat(Rat(0), Rat(-e)), m, -s - 1});
        }
        return lst;
    };

    // grade-2 transport part: (1/6) Riem^a{}_{mkn}(0) d2/dxi_m dxi_n t_{-s,a}{}^k
    {
        CheckReport rep{"transport-part-grade2-closed-form", true, ""};
        CTermList expect;
        for (int a = 0; a < 3; ++a)
            for (int k = 0; k < 3; ++k) {
                CTermList lead = t_lead(a, k);
                for (int m = 0; m < 3; ++m)
                    for (int n = 0; n < 3; ++n) {
                        const Rat& riem = ctx->data.riem0(a, m, k, n);
                        if (is_zero(riem)) continue;
                        CTermList dd = deriv_xi_centre(deriv_xi_centre(lead, m), n);
                        CTermList scaled = scale_clist(dd, CRat(riem / 6));
                        expect.insert(expect.end(), scaled.begin(), scaled.end());
                    }
            }
        collect_cterms(expect);
        if (!equal_centre_lists(res.pt[2], expect, 6, 41)) {
            rep.pass = false;
            rep.witness = "pt:\n" + canonical_string(res.pt[2]) + "closed form:\n" + canonical_string(expect);
        }
        if (rep.pass && !equal_centre_lists(expect, CTermList{}, 6, 42)) {
            rep.pass = false;
            rep.witness = "closed form itself fails to vanish:\n" + canonical_string(expect);
        }
        out.push_back(rep);
    }

    // grade-3 transport part: -(i/6) d^2 Gamma^a{}_{sk} / dx^m dx^n (0)
    //   * d^3 t_{-s,a}{}^k / dxi_s dxi_m dxi_n
    {
        CheckReport rep{"transport-part-grade3-closed-form", true, ""};
        CTermList expect;
        CRat mi6 = CRat(Rat(0), Rat(-1, 6));
        for (int a = 0; a < 3; ++a)
            for (int k = 0; k < 3; ++k) {
                CTermList lead = t_lead(a, k);
                for (int sx = 0; sx < 3; ++sx)
                    for (int m = 0; m < 3; ++m)
                        for (int n = 0; n < 3; ++n) {
                            Rat d2g = ctx->gamma(a, sx, k).derive(m).derive(n).value_at_origin();
                            if (is_zero(d2g)) continue;
                            CTermList d3 = deriv_xi_centre(deriv_xi_centre(deriv_xi_centre(lead, sx), m), n);
                            CTermList scaled = scale_clist(d3, mi6 * CRat(d2g));
                            expect.insert(expect.end(), scaled.begin(), scaled.end());
                        }
            }
        collect_cterms(expect);
        if (!equal_centre_lists(res.pt[3], expect, 6, 43)) {
            rep.pass = false;
            rep.witness = "pt:\n" + canonical_string(res.pt[3]) + "closed form:\n" + canonical_string(expect);
        }
        if (rep.pass && !equal_centre_lists(expect, CTermList{}, 6, 44)) {
            rep.pass = false;
            rep.witness = "closed form itself fails to vanish:\n" + canonical_string(expect);
        }
        out.push_back(rep);
    }

    // symmetrised d^2 Gamma at the origin equals (1/2) nabla Riem, both sides
    // fully symmetrised over (s, m, n)
    {
        CheckReport rep{"symmetrised-christoffel-second-derivative", true, ""};
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (int a = 0; a < 3 && rep.pass; ++a)
            for (int k = 0; k < 3 && rep.pass; ++k)
                for (int sx = 0; sx < 3 && rep.pass; ++sx)
                    for (int m = 0; m < 3 && rep.pass; ++m)
                        for (int n = 0; n < 3; ++n) {
                            int idx[3] = {sx, m, n};
                            Rat lhs(0), rhs(0);
                            for (const auto& p : perms) {
                                int i0 = idx[p[0]], i1 = idx[p[1]], i2 = idx[p[2]];
                                lhs += ctx->gamma(a, i0, k).derive(i1).derive(i2).value_at_origin();
                                rhs += ctx->data.driem0(i2, a, i0, i1, k) / 2;
                            }
                            if (!(lhs == rhs)) {
                                rep.pass = false;
                                rep.witness = "indices (" + std::to_string(a) + "," + std::to_string(sx) + "," +
                                              std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) +
                                              ") lhs " + rat_to_string(lhs) + " rhs " + rat_to_string(rhs);
                                break;
                            }
                        }
        out.push_back(rep);
    }
    return out;
}

CheckReport tilde_cancellation_check(const AsymmetryResult& res, int trials, std::uint64_t seed) {
    CheckReport rep{"tilde-asymmetry-principal-cancellation", true, ""};
    const Rat& s = res.s;
    if (!(cmp(s, Rat(-3)) > 0 && cmp(s, Rat(2)) < 0))
        throw std::invalid_argument("tilde cancellation valid for s in (-3, 2) only");
    // (A)_prin + ((s+1)(s+3)/(6 c(s))) * c(s) * pattern: the normalisation
    // cancels symbolically, leaving the negated principal-symbol formula
    CTermList correction = scale_clist(res.formula, CRat(Rat(-1)));
    CTermList sum = add_clists(res.total[3], correction);
    if (!equal_centre_lists(sum, CTermList{}, trials, seed)) {
        rep.pass = false;
        rep.witness = canonical_string(sum);
    }
    return rep;
}

std::vector<CheckReport> special_s_checks(const CurvatureData& c) {
    std::vector<CheckReport> out;
    {
        CheckReport rep{"principal-formula-vanishes-at-minus-one-and-minus-three", true, ""};
        for (long sv : {-1L, -3L}) {
            CTermList f = principal_formula_terms(c, Rat(sv));
            if (!f.empty()) {
                rep.pass = false;
                rep.witness = "s = " + std::to_string(sv) + ":\n" + canonical_string(f);
            }
        }
        out.push_back(rep);
    }
    {
        CheckReport rep{"principal-formula-s0-coefficient", true, ""};
        Rat pref = -(Rat(0) + 1) * (Rat(0) + 3) / 6;
        if (!(pref == Rat(-1, 2))) {
            rep.pass = false;
            rep.witness = "prefactor at s = 0 is " + rat_to_string(pref);
        }
        // and the full term list matches the order -3 pattern with -1/2
        CTermList f = principal_formula_terms(c, Rat(0));
        CTermList want;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int g = 0; g < 3; ++g) {
                    int e = eps3(a, b, g);
                    if (e == 0) continue;
                    for (int r = 0; r < 3; ++r) {
                        Rat v = c.dric0(a, b, r) * e * Rat(-1, 2);
                        if (is_zero(v)) continue;
                        Mono3 m{0, 0, 0};
                        m[g] += 1;
                        m[r] += 1;
                        want.push_back(CTerm{CRat(v), m, Rat(-5)});
                    }
                }
        collect_cterms(want);
        if (rep.pass && !equal_centre_lists(f, want, 6, 77)) {
            rep.pass = false;
            rep.witness = "formula at s = 0 disagrees with the order -3 pattern";
        }
        out.push_back(rep);
    }
    return out;
}

} // namespace etaforge
