#ifndef ETAFORGE_POWER_SYMBOL_HPP
#define ETAFORGE_POWER_SYMBOL_HPP

#include "etaforge/diffop.hpp"
#include "etaforge/hodge.hpp"

#include <memory>
#include <random>

namespace etaforge {

using Mono3 = std::array<std::uint8_t, 3>;

// one symbol term: coef(x) * xi^mono * ||xi||^e  with the x-dependent norm
// ||xi||^2 = g^{mn}(x) xi_m xi_n and a rational exponent e
struct STerm {
    CJet3 coef;
    Mono3 mono{0, 0, 0};
    Rat e{0};
};
using TermList = std::vector<STerm>;

// graded polyhomogeneous symbol: comp[j] is homogeneous of degree lead_deg - j
struct PowerSymbol {
    std::shared_ptr<const GeomContext> ctx;
    bool matrix = true;
    Rat lead_deg{0};
    std::vector<std::array<TermList, 9>> comp;

    int depth() const { return (int)comp.size() - 1; }
    TermList& scalar(int j) { return comp[j][0]; }
    const TermList& scalar(int j) const { return comp[j][0]; }
};

void collect_terms(TermList& terms);
TermList add_lists(const TermList& a, const TermList& b);
TermList scale_list(const TermList& a, const CRat& s);
TermList deriv_xi(const TermList& a, int gamma, const GeomContext& ctx);
TermList deriv_x(const TermList& a, int mu, const GeomContext& ctx);
TermList mul_jet(const TermList& a, const CJet3& f);
TermList mul_list(const TermList& a, const TermList& b, const GeomContext& ctx);

// basic builders
PowerSymbol identity_symbol(std::shared_ptr<const GeomContext> ctx, int depth);
PowerSymbol norm_power_symbol(std::shared_ptr<const GeomContext> ctx, const Rat& e, int depth, bool matrix);
PowerSymbol curl_full_symbol(std::shared_ptr<const GeomContext> ctx);
PowerSymbol from_left_symbol(std::shared_ptr<const GeomContext> ctx, const LeftSymbol& ls);

// sigma_{AB} ~ sum_k 1/(i^k k!) dxi^k a dx^k b, truncated to `depth` graded
// components
PowerSymbol compose(const PowerSymbol& a, const PowerSymbol& b, int depth);

// amplitudes: coefficients are double jets in (x, y); the norm power is
// based at x
struct ATerm {
    CJet6 coef;
    Mono3 mono{0, 0, 0};
    Rat e{0};
};
struct Amplitude {
    std::shared_ptr<const GeomContext> ctx;
    bool matrix = true;
    Rat lead_deg{0};
    std::vector<std::array<std::vector<ATerm>, 9>> comp;
};

// S_left ~ sum S_{-k}, S_{-k} = (1/k!) (-i d^2/dy dxi)^k then y := x
PowerSymbol amplitude_to_symbol(const Amplitude& amp, int depth);

// matrix trace of a matrix symbol against the transport map:
// S_left[ q_a{}^b(x,xi) Z_b{}^a(y,x) ]
PowerSymbol matrix_trace_pseudo(const PowerSymbol& q, const TransportJet& Z, int depth);

// generalised Poisson bracket with covariant Gamma corrections; inputs are
// single-grade matrix symbols.  `scalar_pair` is set when both arguments
// were scalar (the Gamma terms cancel and a plain bracket is returned).
PowerSymbol poisson_bracket(const PowerSymbol& a, const PowerSymbol& b, bool* scalar_pair = nullptr);

// ----- exact equality oracles -------------------------------------------

// term with the coefficient jet evaluated at the centre
struct CTerm {
    CRat coef;
    Mono3 mono{0, 0, 0};
    Rat e{0};
};
using CTermList = std::vector<CTerm>;

void collect_cterms(CTermList& terms);
CTermList centre_terms(const TermList& a);
CTermList deriv_xi_centre(const CTermList& a, int gamma);
CTermList add_clists(const CTermList& a, const CTermList& b);
CTermList scale_clist(const CTermList& a, const CRat& s);

// random rational covector with small entries, nonzero
std::array<Rat, 3> random_xi(std::mt19937_64& rng);

// value * |xi|^{-e0}; requires every exponent to satisfy e == e0 (mod 2)
CRat eval_centre(const CTermList& a, const std::array<Rat, 3>& xi, const Rat& e0);

// exact equality of two centre-evaluated symbol components on `trials`
// random rational xi; throws when the exponent classes are incongruent
bool equal_centre_lists(const CTermList& a, const CTermList& b, int trials, std::uint64_t seed);

bool equal_at_centre(const PowerSymbol& a, const PowerSymbol& b, int grade, int trials, std::uint64_t seed);

// equality as jets in x near the centre (used where statements hold as
// symbols, not just at one point)
bool equal_as_jets(const PowerSymbol& a, const PowerSymbol& b, int grade, int trials, std::uint64_t seed);
bool zero_as_jets(const PowerSymbol& a, int grade, int trials, std::uint64_t seed);

// canonical printable form (sorted by grade, monomial, exponent)
std::string canonical_string(const PowerSymbol& s);
std::string canonical_string(const CTermList& terms);

// formal adjoint with respect to the 1-form inner product, to `depth`
// graded corrections; scalar version uses the rho-weighted L2 product
PowerSymbol form_adjoint(const PowerSymbol& a, int depth);
PowerSymbol scalar_adjoint(const PowerSymbol& a, int depth);

} // namespace etaforge

#endif
