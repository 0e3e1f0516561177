#ifndef ETAFORGE_JET_OPS_HPP
#define ETAFORGE_JET_OPS_HPP

#include "etaforge/jet.hpp"

namespace etaforge {

enum class JetOp { add, mul, derive0, derive1, derive2, invert, sqrt };

// single-entry arithmetic used by the CLI-facing layers; library code calls
// the member operations directly
Jet3 jet_arithmetic(const Jet3& a, const Jet3& b, JetOp kind);

} // namespace etaforge

#endif
