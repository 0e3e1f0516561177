#include "etaforge/jet_ops.hpp"

namespace etaforge {

Jet3 jet_arithmetic(const Jet3& a, const Jet3& b, JetOp kind) {
    switch (kind) {
        case JetOp::add: return a + b;
        case JetOp::mul: return a * b;
        case JetOp::derive0: return a.derive(0);
        case JetOp::derive1: return a.derive(1);
        case JetOp::derive2: return a.derive(2);
        case JetOp::invert: return jet_invert_unit(a);
        case JetOp::sqrt: return jet_sqrt_unit(a);
    }
    throw std::logic_error("jet_arithmetic: bad op");
}

} // namespace etaforge
