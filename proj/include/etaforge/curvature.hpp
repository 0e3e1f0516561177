#ifndef ETAFORGE_CURVATURE_HPP
#define ETAFORGE_CURVATURE_HPP

#include "etaforge/tensor.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace etaforge {

// Curvature at the base point: Ric, Sc, nabla Ric as free data; Riem and
// nabla Riem rebuilt through the dimension-3 identity so that all algebraic
// symmetries and the first Bianchi identity hold by construction.
struct CurvatureData {
    TensorC ric0{2};   // Ric_{ab}(0)
    Rat sc0{0};        // Sc(0)
    TensorC riem0{4};  // Riem_{abcd}(0)
    TensorC dric0{3};  // [s][b][c] = (nabla_s Ric_{bc})(0), symmetric in (b,c)
    TensorC driem0{5}; // [s][a][b][c][d] = (nabla_s Riem_{abcd})(0)
    bool bianchi2 = false;
    std::uint64_t seed = 0;
};

// R_{abcd} = d_{ac}Ric_{bd} + d_{bd}Ric_{ac} - d_{ad}Ric_{bc} - d_{bc}Ric_{ad}
//            - (Sc/2)(d_{ac}d_{bd} - d_{ad}d_{bc})
TensorC riemann_from_ricci_3d(const TensorC& ric, const Rat& sc);

// slotwise derivative of the identity above; dsc[s] = trace of dric in (b,c)
TensorC driemann_from_dricci_3d(const TensorC& dric);

struct RandomCurvatureOptions {
    std::uint64_t seed = 1;
    bool bianchi2 = true;
    bool zero_ricci = false; // Ric(0) = 0, so Riem(0) = 0 as well
};

CurvatureData random_curvature(const RandomCurvatureOptions& opt);

// All declared symmetries, first Bianchi, and (when the flag is set) the
// contracted second Bianchi identity.  Returns an error message on failure.
std::optional<std::string> validate_curvature(const CurvatureData& c);

std::string curvature_to_json(const CurvatureData& c);
CurvatureData curvature_from_json(const std::string& text);

} // namespace etaforge

#endif
