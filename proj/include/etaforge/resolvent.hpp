#ifndef ETAFORGE_RESOLVENT_HPP
#define ETAFORGE_RESOLVENT_HPP

#include "etaforge/power_symbol.hpp"

namespace etaforge {

// one resolvent term: coef(x) * xi^mono * (||xi||^2 - lambda)^{-n}
struct RTerm {
    CJet3 coef;
    Mono3 mono{0, 0, 0};
    int n = 1;
};
using RTermList = std::vector<RTerm>;

// graded parametrix of (-HodgeLaplacian - lambda)^{-1}: comp[j] is the
// quasi-homogeneous component of degree -2-j under (xi,lambda) scaling
struct ResolventSymbol {
    std::shared_ptr<const GeomContext> ctx;
    std::vector<std::array<RTermList, 9>> comp;

    int depth() const { return (int)comp.size() - 1; }
};

void collect_rterms(RTermList& terms);
RTermList deriv_xi_r(const RTermList& a, int gamma, const GeomContext& ctx);
RTermList deriv_x_r(const RTermList& a, int mu, const GeomContext& ctx);

// xi-polynomial matrix parts of the operator symbol (grades 2, 1, 0)
struct HodgeSymbolParts {
    std::array<PolyTermList, 9> h2; // == ||xi||^2 Id, kept in monomial form
    std::array<PolyTermList, 9> h1;
    std::array<PolyTermList, 9> h0;
};
HodgeSymbolParts hodge_symbol_parts(const GeomContext& ctx);

// r_{-2} = (||xi||^2 - lambda)^{-1} Id; deeper components forced by
// compose(r, h - lambda) = Id, depth <= 3
ResolventSymbol resolvent_recursion(std::shared_ptr<const GeomContext> ctx, const HodgeSymbolParts& h, int depth);

// the full graded product compose(r, h - lambda); grade 0 must be the
// identity and grades 1..depth must be empty after collection
std::vector<std::array<RTermList, 9>> resolvent_defect(const ResolventSymbol& r, const HodgeSymbolParts& h);

// C_n(s): keyhole-contour residue values; n >= 1
Rat residue_coefficient(int n, const Rat& s);

// term-wise map (||xi||^2-lambda)^{-n} -> C_n(s) ||xi||^{-s-2n+1} applied to
// the resolvent components, yielding the symbol of (-Hodge)^{-(s+1)/2}
PowerSymbol power_symbols(const ResolventSymbol& r, const Rat& s, int depth);

// exact jet evaluation of an RTermList at rational (xi, lambda)
CJet3 eval_rterms_as_jet(const RTermList& a, const GeomContext& ctx, const std::array<Rat, 3>& xi, const Rat& lambda);

// displayed-formula cross-checks for r_{-3..-5} and q_{-s-2..-s-4} plus the
// recursion identity and quasi-homogeneity bookkeeping
std::vector<CheckReport> verify_resolvent_formulas(std::shared_ptr<const GeomContext> ctx, const Rat& s);

// q_{-s-2}(0,xi) = 0, the bracket {{curl_prin, ||xi||^{-s-1} I}} = 0, and
// the absence of a subleading curl symbol
std::vector<CheckReport> vanishing_checks(std::shared_ptr<const GeomContext> ctx, const Rat& s);

// grading bookkeeping: every term of comp[j] is homogeneous of degree
// lead_deg - j
std::optional<std::string> check_grading(const PowerSymbol& s);
std::optional<std::string> check_quasi_homogeneity(const ResolventSymbol& r);

} // namespace etaforge

#endif
