#ifndef ETAFORGE_TRANSPORT_HPP
#define ETAFORGE_TRANSPORT_HPP

#include "etaforge/geometry.hpp"

#include <array>
#include <optional>

namespace etaforge {

// Two-point parallel transport map Z_a{}^b(x,y): a vector u^a at x goes to
// u^a Z_a{}^b(x,y) at y, transported along the connecting geodesic.  Stored
// as jets in the six variables (x, y), total degree <= 3.
struct TransportJet {
    std::array<Jet6, 9> z; // [a*3+b] = Z_a{}^b(x,y)

    const Jet6& at(int a, int b) const { return z[a * 3 + b]; }
    Jet6& at(int a, int b) { return z[a * 3 + b]; }

    // Z_b{}^a(y,x) as a jet in (x,y) -- the combination entering matrix traces
    Jet6 swapped(int b, int a) const { return swap_blocks(at(b, a)); }

    // Z_b{}^a(y,0) as a jet in y
    Jet3 from_y_to_origin(int b, int a) const { return restrict_second_to_zero(at(b, a)); }
};

// Solves the geodesic boundary problem and the transport ODE order by order
// in the jets of (x, y).  Requires a normal-coordinate metric.
TransportJet transport_double_jet(const GeomContext& ctx);

// invariant checks (exact, jet level); nullopt = pass
std::optional<std::string> transport_check_identity_on_diagonal(const TransportJet& Z);
std::optional<std::string> transport_check_metric_compatibility(const GeomContext& ctx, const TransportJet& Z);
std::optional<std::string> transport_check_index_swap(const GeomContext& ctx, const TransportJet& Z);

// coefficient-wise comparison of Z^a{}_b(0,y) against
//   d - (1/6) Riem^a{}_{mbn}(0) y^m y^n + (1/6) (d^2 Gamma^a{}_{mb} / dy^n dy^r)(0) y^m y^n y^r
std::optional<std::string> transport_check_origin_expansion(const GeomContext& ctx, const TransportJet& Z);

} // namespace etaforge

#endif
