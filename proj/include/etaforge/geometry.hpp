#ifndef ETAFORGE_GEOMETRY_HPP
#define ETAFORGE_GEOMETRY_HPP

#include "etaforge/curvature.hpp"

#include <memory>

namespace etaforge {

enum class Gauge { general, curvature_free_origin, flat };

// g_{ab} in geodesic normal coordinates as an exact degree-3 polynomial:
//   general:               d - (1/3) Riem_{ambn} x^m x^n - (1/6) dRiem_{s,ambn} x^s x^m x^n
//   curvature_free_origin: d - (1/6) dRiem_{s,ambn} x^s x^m x^n   (requires Riem(0) = 0)
TensorJ metric_from_curvature(const CurvatureData& c, Gauge gauge);

// Everything the symbol pipeline needs, derived from one metric jet.
struct GeomContext {
    Gauge gauge = Gauge::flat;
    CurvatureData data;

    TensorJ g{2};        // g_{ab}
    TensorJ ginv{2};     // g^{ab}
    Jet3 rho;            // sqrt(det g)
    Jet3 rho_inv;
    TensorJ gamma{3};    // Gamma^a_{bc}, slot order [a][b][c]
    TensorJ riem{4};     // Riem^k_{lmn}, first slot up
    TensorJ riem_low{4}; // Riem_{klmn}
    TensorJ ric{2};      // Ric_{mn}
    Jet3 sc;             // scalar curvature
    TensorJ E_low{3};    // E_{abc} = rho * eps_{abc}
    TensorJ E_mixed{3};  // E_a{}^{bc}
    TensorJ E_up{3};     // E^{abc}
};

// Christoffels, curvature, density and the antisymmetric tensor from a
// normal-coordinate metric jet (g symmetric, g(0) = d).
GeomContext curvature_chain(const TensorJ& g);

std::shared_ptr<const GeomContext> make_context(const CurvatureData& c, Gauge gauge);
std::shared_ptr<const GeomContext> make_flat_context();

// Laplace-Beltrami of a scalar jet
Jet3 laplace_beltrami(const GeomContext& ctx, const Jet3& f);

} // namespace etaforge

#endif
