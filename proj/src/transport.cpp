#include "etaforge/transport.hpp"

namespace etaforge {

namespace {

// polynomial in the curve parameter t with 6-variable jet coefficients
using TPoly = std::vector<Jet6>;

TPoly tp_zero() { return {}; }

void tp_trim(TPoly& p) {
    while (!p.empty() && p.back().zero()) p.pop_back();
}

TPoly tp_add(const TPoly& a, const TPoly& b) {
    TPoly r(std::max(a.size(), b.size()));
    for (size_t k = 0; k < r.size(); ++k) {
        if (k < a.size()) r[k] += a[k];
        if (k < b.size()) r[k] += b[k];
    }
    tp_trim(r);
    return r;
}

TPoly tp_sub(const TPoly& a, const TPoly& b) {
    TPoly r(std::max(a.size(), b.size()));
    for (size_t k = 0; k < r.size(); ++k) {
        if (k < a.size()) r[k] += a[k];
        if (k < b.size()) r[k] -= b[k];
    }
    tp_trim(r);
    return r;
}

TPoly tp_mul(const TPoly& a, const TPoly& b) {
    if (a.empty() || b.empty()) return {};
    TPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    tp_trim(r);
    return r;
}

// definite integral from 0 to t
TPoly tp_integrate(const TPoly& p) {
    TPoly r(p.size() + 1);
    for (size_t k = 0; k < p.size(); ++k) r[k + 1] = p[k].scaled(Rat(1, (long)(k + 1)));
    tp_trim(r);
    return r;
}

Jet6 tp_eval1(const TPoly& p) {
    Jet6 s;
    for (const auto& c : p) s += c;
    return s;
}

TPoly tp_derive_t(const TPoly& p) {
    if (p.size() <= 1) return {};
    TPoly r(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) r[k - 1] = p[k].scaled(Rat((long)k));
    tp_trim(r);
    return r;
}

// substitute three TPoly arguments into a 3-variable jet
TPoly subst_jet3(const Jet3& f, const std::array<TPoly, 3>& arg) {
    const auto& T3 = MonoTable<3, 4>::instance();
    // powers of each argument, cached
    std::array<std::vector<TPoly>, 3> pw;
    for (int v = 0; v < 3; ++v) pw[v].push_back(TPoly{Jet6::constant(Rat(1))});
    auto power = [&](int v, int e) -> const TPoly& {
        while ((int)pw[v].size() <= e) pw[v].push_back(tp_mul(pw[v].back(), arg[v]));
        return pw[v][e];
    };
    TPoly out;
    for (int i = 0; i < T3.size(); ++i) {
        if (is_zero(f.c[i])) continue;
        TPoly term{Jet6::constant(f.c[i])};
        for (int v = 0; v < 3; ++v)
            if (T3.expo[i][v] > 0) term = tp_mul(term, power(v, T3.expo[i][v]));
        out = tp_add(out, term);
    }
    return out;
}

} // namespace

TransportJet transport_double_jet(const GeomContext& ctx) {
    // preconditions: normal coordinates
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (!(ctx.g(a, b).value_at_origin() == Rat(kronecker(a, b))))
                throw std::invalid_argument("transport_double_jet: metric not normal at origin");
            for (int c = 0; c < 3; ++c)
                if (!is_zero(ctx.gamma(a, b, c).value_at_origin()))
                    throw std::invalid_argument("transport_double_jet: Gamma(0) != 0");
        }

    // gamma(t) = x + t(y-x) + c(t), with c from the two-point boundary
    // problem gamma'' = -Gamma(gamma) gamma' gamma', c(0) = c(1) = 0.
    std::array<TPoly, 3> path;
    for (int a = 0; a < 3; ++a) {
        Jet6 xa = Jet6::variable(a);
        Jet6 ya = Jet6::variable(3 + a);
        path[a] = TPoly{xa, ya - xa};
    }
    const std::array<TPoly, 3> chord = path;

    for (int iter = 0; iter < 3; ++iter) {
        std::array<TPoly, 3> vel;
        for (int a = 0; a < 3; ++a) vel[a] = tp_derive_t(path[a]);
        std::array<TPoly, 3> next;
        bool changed = false;
        for (int a = 0; a < 3; ++a) {
            TPoly F; // Gamma^a_{bc}(gamma) gamma'^b gamma'^c
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) {
                    if (ctx.gamma(a, b, c).zero()) continue;
                    F = tp_add(F, tp_mul(subst_jet3(ctx.gamma(a, b, c), path), tp_mul(vel[b], vel[c])));
                }
            TPoly G = tp_integrate(tp_integrate(F)); // G(t), G(0)=G'(0)=0
            Jet6 G1 = tp_eval1(G);
            // c(t) = -G(t) + t*G(1)
            TPoly corr = tp_sub(TPoly{Jet6(), G1}, G);
            next[a] = tp_add(chord[a], corr);
            if (!(tp_eval1(tp_sub(next[a], path[a])).zero())) changed = true;
        }
        path = next;
        if (!changed) break;
    }

    // transport ODE dZ_a{}^b/dt = -Gamma^b_{gc}(gamma) gamma'^g Z_a{}^c,
    // fixed point of Z = I - int_0^t Gamma(gamma) gamma' Z
    std::array<TPoly, 3> vel;
    for (int a = 0; a < 3; ++a) vel[a] = tp_derive_t(path[a]);
    std::array<std::array<TPoly, 3>, 3> cg; // [b][c] = Gamma^b_{gc}(gamma) gamma'^g
    for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
            TPoly s;
            for (int g = 0; g < 3; ++g) {
                if (ctx.gamma(b, g, c).zero()) continue;
                s = tp_add(s, tp_mul(subst_jet3(ctx.gamma(b, g, c), path), vel[g]));
            }
            cg[b][c] = s;
        }

    std::array<std::array<TPoly, 3>, 3> Z; // [a][b] = Z_a{}^b(x, gamma(t))
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            Z[a][b] = TPoly{Jet6::constant(Rat(kronecker(a, b)))};
    for (int iter = 0; iter < 4; ++iter) {
        std::array<std::array<TPoly, 3>, 3> next;
        bool changed = false;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                TPoly s;
                for (int c = 0; c < 3; ++c) s = tp_add(s, tp_mul(cg[b][c], Z[a][c]));
                next[a][b] = tp_sub(TPoly{Jet6::constant(Rat(kronecker(a, b)))}, tp_integrate(s));
                if (!(tp_eval1(tp_sub(next[a][b], Z[a][b])).zero())) changed = true;
            }
        Z = next;
        if (!changed) break;
    }

    TransportJet out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            out.at(a, b) = tp_eval1(Z[a][b]);
    return out;
}

std::optional<std::string> transport_check_identity_on_diagonal(const TransportJet& Z) {
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Jet3 d = restrict_diagonal(Z.at(a, b));
            Jet3 want = Jet3::constant(Rat(kronecker(a, b)), d.order);
            if (!(d == want)) return "Z(x,x) != identity at entry " + std::to_string(a) + "," + std::to_string(b);
        }
    return std::nullopt;
}

std::optional<std::string> transport_check_metric_compatibility(const GeomContext& ctx, const TransportJet& Z) {
    // g_{ab}(y) Z_m{}^a(x,y) Z_n{}^b(x,y) == g_{mn}(x) up to truncation
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
            Jet6 lhs;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    if (ctx.g(a, b).zero()) continue;
                    lhs += lift_to_six(ctx.g(a, b), 1) * Z.at(m, a) * Z.at(n, b);
                }
            Jet6 rhs = lift_to_six(ctx.g(m, n), 0);
            if (!(lhs == rhs)) return "metric compatibility fails at " + std::to_string(m) + "," + std::to_string(n);
        }
    return std::nullopt;
}

std::optional<std::string> transport_check_index_swap(const GeomContext& ctx, const TransportJet& Z) {
    // Z_b{}^a(y,x) == Z^a{}_b(x,y) = g^{ac}(x) Z_c{}^d(x,y) g_{db}(y)
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Jet6 lhs = Z.swapped(b, a);
            Jet6 rhs;
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    rhs += lift_to_six(ctx.ginv(a, c), 0) * Z.at(c, d) * lift_to_six(ctx.g(d, b), 1);
            if (!(lhs == rhs)) return "index swap identity fails at " + std::to_string(a) + "," + std::to_string(b);
        }
    return std::nullopt;
}

std::optional<std::string> transport_check_origin_expansion(const GeomContext& ctx, const TransportJet& Z) {
    std::array<Jet3, 3> y = {Jet3::variable(0), Jet3::variable(1), Jet3::variable(2)};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            // Z^a{}_b(0,y): raise first index with g(0) = d, lower second with g(y)
            Jet6 mixed;
            for (int d = 0; d < 3; ++d) mixed += Z.at(a, d) * lift_to_six(ctx.g(d, b), 1);
            Jet3 lhs = [&] { // x := 0, rename y-block
                Jet6 s = swap_blocks(mixed);
                return restrict_second_to_zero(s);
            }();

            Jet3 rhs = Jet3::constant(Rat(kronecker(a, b)), 3);
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n) {
                    const Rat& r = ctx.data.riem0(a, m, b, n); // first index up == down at origin
                    if (!is_zero(r)) rhs -= (y[m] * y[n]).scaled(r / 6);
                }
            for (int m = 0; m < 3; ++m)
                for (int n = 0; n < 3; ++n)
                    for (int r = 0; r < 3; ++r) {
                        Rat d2 = ctx.gamma(a, m, b).derive(n).derive(r).value_at_origin();
                        if (!is_zero(d2)) rhs += (y[m] * y[n] * y[r]).scaled(d2 / 6);
                    }
            lhs.truncate(3);
            rhs.truncate(3);
            if (!(lhs == rhs)) return "origin expansion mismatch at " + std::to_string(a) + "," + std::to_string(b);
        }
    return std::nullopt;
}

} // namespace etaforge
