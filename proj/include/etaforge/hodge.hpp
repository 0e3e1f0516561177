#ifndef ETAFORGE_HODGE_HPP
#define ETAFORGE_HODGE_HPP

#include "etaforge/diffop.hpp"

namespace etaforge {

// curl on 1-forms: first order, full symbol -i E_a{}^{bg}(x) xi_g
DiffOpJet curl_operator(const GeomContext& ctx);

// the two halves of the (sign-flipped) Hodge Laplacian on 1-forms, assembled
// from their coordinate formulas independently and then summed:
//   returns  -HodgeLaplacian = d delta + delta d   (elliptic, positive)
struct HodgeParts {
    DiffOpJet d_delta;
    DiffOpJet delta_d;
    DiffOpJet minus_hodge; // d_delta + delta_d
};
HodgeParts hodge_laplacian(const GeomContext& ctx);

// tensors of the normal-coordinate expansion of the symbol of -Hodge:
//   h1 = i (a1_a{}^{bg}{}_m + b1_a{}^{bg}{}_{mn} x^n) xi_g x^m + O(|x|^3 |xi|)
//   h0 = a0_a{}^b + b0_a{}^b{}_n x^n + O(|x|^2)
struct HodgeSymbolTensors {
    TensorC a0{2}; // [a][b]
    TensorC a1{4}; // [a][b][g][m]
    TensorC b1{5}; // [a][b][g][m][n]
    TensorC b0{3}; // [a][b][n]
};
HodgeSymbolTensors hodge_symbol_tensors(const CurvatureData& c);

struct CheckReport {
    std::string name;
    bool pass = true;
    std::string witness; // first differing coefficient, when failing
};

// coefficient-wise comparison of the extracted h1/h0 against the tensor
// formulas; tensors are passed in so tests can corrupt them deliberately
std::vector<CheckReport> verify_hodge_symbol(const GeomContext& ctx, const HodgeSymbolTensors& tensors);
std::vector<CheckReport> verify_hodge_symbol_appendix(const CurvatureData& c);

// trace propositions: tr curl = 0, tr curl^3 = 0,
// tr HodgeLaplacian f = 3 (Lap f)(0) - Sc(0) f(0), plus the frozen-operator
// comparisons for curl^3 and the Hodge Laplacian.
std::vector<CheckReport> verify_trace_props(const CurvatureData& c);

} // namespace etaforge

#endif
