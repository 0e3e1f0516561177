#include "etaforge/geometry.hpp"

namespace etaforge {

TensorJ metric_from_curvature(const CurvatureData& c, Gauge gauge) {
    if (gauge == Gauge::curvature_free_origin && !c.riem0.zero())
        throw std::invalid_argument("metric_from_curvature: curvature_free_origin requires Riem(0) = 0");

    TensorJ g(2);
    std::array<Jet3, 3> x = {Jet3::variable(0), Jet3::variable(1), Jet3::variable(2)};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Jet3 e = Jet3::constant(Rat(kronecker(a, b)));
            if (gauge == Gauge::flat) { g(a, b) = e; continue; }
            if (gauge == Gauge::general) {
                for (int m = 0; m < 3; ++m)
                    for (int n = 0; n < 3; ++n) {
                        const Rat& r = c.riem0(a, m, b, n);
                        if (!is_zero(r)) e -= (x[m] * x[n]).scaled(r / 3);
                    }
            }
            for (int s = 0; s < 3; ++s)
                for (int m = 0; m < 3; ++m)
                    for (int n = 0; n < 3; ++n) {
                        const Rat& r = c.driem0(s, a, m, b, n);
                        if (!is_zero(r)) e -= (x[s] * x[m] * x[n]).scaled(r / 6);
                    }
            g(a, b) = e;
        }
    return g;
}

namespace {

Jet3 det3(const TensorJ& g) {
    Jet3 d;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                int s = eps3(a, b, c);
                if (s == 0) continue;
                Jet3 t = g(0, a) * g(1, b) * g(2, c);
                if (s > 0) d += t;
                else d -= t;
            }
    return d;
}

TensorJ invert_metric(const TensorJ& g, const Jet3& det) {
    // adjugate / det
    TensorJ inv(2);
    Jet3 det_inv = jet_invert_unit(det);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            int a1 = (a + 1) % 3, a2 = (a + 2) % 3;
            int b1 = (b + 1) % 3, b2 = (b + 2) % 3;
            Jet3 cof = g(a1, b1) * g(a2, b2) - g(a1, b2) * g(a2, b1);
            inv(b, a) = cof * det_inv;
        }
    return inv;
}

} // namespace

GeomContext curvature_chain(const TensorJ& g) {
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (!(g(a, b) == g(b, a))) throw std::invalid_argument("curvature_chain: g not symmetric");
            Rat v0 = g(a, b).value_at_origin();
            if (!(v0 == Rat(kronecker(a, b)))) throw std::invalid_argument("curvature_chain: g(0) != identity");
        }

    GeomContext ctx;
    ctx.g = g;
    Jet3 det = det3(g);
    ctx.ginv = invert_metric(g, det);
    ctx.rho = jet_sqrt_unit(det);
    ctx.rho_inv = jet_invert_unit(ctx.rho);

    // Gamma^a_{bc} = (1/2) g^{ad} (d_b g_{dc} + d_c g_{db} - d_d g_{bc})
    TensorJ dg(3); // [d][b][c] = d_d g_{bc}
    for (int d = 0; d < 3; ++d)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                dg(d, b, c) = g(b, c).derive(d);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                Jet3 s;
                for (int d = 0; d < 3; ++d) {
                    Jet3 inner = dg(b, d, c) + dg(c, d, b) - dg(d, b, c);
                    if (!inner.zero()) s += ctx.ginv(a, d) * inner;
                }
                ctx.gamma(a, b, c) = s.scaled(rat(1, 2));
            }

    // Riem^k_{lmn} = d_m Gamma^k_{nl} - d_n Gamma^k_{ml}
    //              + Gamma^k_{me} Gamma^e_{nl} - Gamma^k_{ne} Gamma^e_{ml}
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n) {
                    Jet3 r = ctx.gamma(k, n, l).derive(m) - ctx.gamma(k, m, l).derive(n);
                    for (int e = 0; e < 3; ++e)
                        r += ctx.gamma(k, m, e) * ctx.gamma(e, n, l) - ctx.gamma(k, n, e) * ctx.gamma(e, m, l);
                    ctx.riem(k, l, m, n) = r;
                }
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n) {
                    Jet3 r;
                    for (int e = 0; e < 3; ++e) r += g(k, e) * ctx.riem(e, l, m, n);
                    ctx.riem_low(k, l, m, n) = r;
                }
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
            Jet3 r;
            for (int a = 0; a < 3; ++a) r += ctx.riem(a, m, a, n);
            ctx.ric(m, n) = r;
        }
    {
        Jet3 s;
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n) s += ctx.ginv(m, n) * ctx.ric(m, n);
        ctx.sc = s;
    }

    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                int s = eps3(a, b, c);
                ctx.E_low(a, b, c) = s == 0 ? Jet3() : ctx.rho.scaled(Rat(s));
            }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                Jet3 m, u;
                for (int bp = 0; bp < 3; ++bp)
                    for (int cp = 0; cp < 3; ++cp) {
                        if (eps3(a, bp, cp) == 0) continue;
                        m += ctx.E_low(a, bp, cp) * ctx.ginv(bp, b) * ctx.ginv(cp, c);
                    }
                ctx.E_mixed(a, b, c) = m;
                for (int ap = 0; ap < 3; ++ap) u += ctx.ginv(a, ap) * ctx.E_mixed(ap, b, c);
                ctx.E_up(a, b, c) = u;
            }
    return ctx;
}

std::shared_ptr<const GeomContext> make_context(const CurvatureData& c, Gauge gauge) {
    GeomContext ctx = curvature_chain(metric_from_curvature(c, gauge));
    ctx.gauge = gauge;
    ctx.data = c;
    return std::make_shared<const GeomContext>(std::move(ctx));
}

std::shared_ptr<const GeomContext> make_flat_context() {
    CurvatureData c; // zero tensors
    return make_context(c, Gauge::flat);
}

Jet3 laplace_beltrami(const GeomContext& ctx, const Jet3& f) {
    Jet3 out;
    for (int m = 0; m < 3; ++m) {
        Jet3 inner;
        for (int n = 0; n < 3; ++n) inner += ctx.ginv(m, n) * ctx.rho * f.derive(n);
        out += inner.derive(m);
    }
    return ctx.rho_inv * out;
}

} // namespace etaforge
