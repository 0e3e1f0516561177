#ifndef ETAFORGE_DIFFOP_HPP
#define ETAFORGE_DIFFOP_HPP

#include "etaforge/transport.hpp"

#include <map>

namespace etaforge {

using MIdx = std::array<std::uint8_t, 3>; // derivative multi-index

inline int midx_total(const MIdx& k) { return k[0] + k[1] + k[2]; }

// Matrix differential operator on 1-forms in coefficients-left normal form:
//   Q_a{}^b = sum_{|k| <= m} [q^k]_a{}^b(x) d^k
// Coefficient matrices are jet-valued; map is keyed by the multi-index.
struct DiffOpJet {
    int order = 0;
    std::map<MIdx, Tensor<Jet3>> coef; // rank-2 jet tensors

    static DiffOpJet identity();
    static DiffOpJet mult(const Tensor<Jet3>& m);          // multiplication by matrix
    static DiffOpJet mult_scalar(const Jet3& f);           // f * Id
    static DiffOpJet deriv(int axis);                      // d_axis * Id

    void add_term(const MIdx& k, const Tensor<Jet3>& m);
    void prune();
};

// operator composition A after B, renormalised coefficients-left
DiffOpJet compose(const DiffOpJet& A, const DiffOpJet& B);

// left symbol: for each xi-degree d, the list of (xi multi-index, i^{|k|} coef)
struct PolyTerm {
    CJet3 coef;
    MIdx mono;
};
using PolyTermList = std::vector<PolyTerm>;

struct LeftSymbol {
    int order = 0;
    // grade[d] = xi-homogeneous part of degree d, matrix of term lists
    std::vector<std::array<PolyTermList, 9>> grade;
};

LeftSymbol left_symbol(const DiffOpJet& op);

// apply the operator to a 1-form with jet components (column vector u_b)
std::array<Jet3, 3> apply_diffop(const DiffOpJet& op, const std::array<Jet3, 3>& u);

// [R_a{}^b(0) Z_b{}^a(y,0) f(y)]|_{y=0}: exact matrix trace of a differential
// operator against the parallel transport map, evaluated at the centre.
Rat matrix_trace_differential(const DiffOpJet& op, const TransportJet& Z, const Jet3& f);

// constant-coefficient operator R(0): coefficients evaluated at the origin
std::map<MIdx, TensorC> freeze_at_origin(const DiffOpJet& op);

} // namespace etaforge

#endif
