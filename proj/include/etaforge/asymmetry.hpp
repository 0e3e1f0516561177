#ifndef ETAFORGE_ASYMMETRY_HPP
#define ETAFORGE_ASYMMETRY_HPP

#include "etaforge/resolvent.hpp"

namespace etaforge {

// t_a{}^b = E_a{}^{mg} (i xi_m q_g{}^b + d_{x^m} q_g{}^b): the symbol of
// curl composed with the complex power of the (sign-flipped) Hodge Laplacian
PowerSymbol assemble_t(const PowerSymbol& q);

// scalar matrix-trace symbol components at the centre, grades 0..depth
std::vector<CTermList> trace_at_centre(const PowerSymbol& t, const TransportJet& Z, int depth);

struct AsymmetryResult {
    Rat s;
    std::vector<CTermList> total; // scalar symbol components at x = 0
    std::vector<CTermList> diag;  // plain trace of t, no transport corrections
    std::vector<CTermList> pt;    // total - diag
    CTermList formula;            // closed-form principal symbol
};

AsymmetryResult asymmetry_components(std::shared_ptr<const GeomContext> ctx, const TransportJet& Z, const Rat& s,
                                     const ResolventSymbol* shared_resolvent = nullptr);

// -((s+1)(s+3)/6) |xi|^{-s-5} E^{abg} dRic_{ab}{}^r xi_g xi_r at the origin
CTermList principal_formula_terms(const CurvatureData& c, const Rat& s);

// order statements and the principal-symbol formula, plus the two
// displayed contractions, the two first-Bianchi cancellations, and the
// assembly identity (curvature-free gauge)
std::vector<CheckReport> verify_theorem_principal(const AsymmetryResult& res, const GeomContext& ctx, int trials,
                                                  std::uint64_t seed);

// transport-part components of the scalar symbol vanish at the centre; the
// two closed-form expressions for grades 2 and 3, and the symmetrised
// Christoffel second-derivative identity (general gauge)
std::vector<CheckReport> lemma_b_checks(std::shared_ptr<const GeomContext> ctx, const TransportJet& Z, const Rat& s);

// principal-symbol cancellation of the corrected operator: the computed
// principal symbol plus ((s+1)(s+3)/6) * reference pattern must vanish, the
// reference normalisation carried symbolically
CheckReport tilde_cancellation_check(const AsymmetryResult& res, int trials, std::uint64_t seed);

// formula-route checks at s = -1, -3 (vanishing) and s = 0 (coefficient -1/2)
std::vector<CheckReport> special_s_checks(const CurvatureData& c);

} // namespace etaforge

#endif
