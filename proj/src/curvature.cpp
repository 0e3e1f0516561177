#include "etaforge/curvature.hpp"

#include <json.hpp>

#include <random>

namespace etaforge {

TensorC riemann_from_ricci_3d(const TensorC& ric, const Rat& sc) {
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (!(ric(a, b) == ric(b, a)))
                throw std::invalid_argument("riemann_from_ricci_3d: Ric must be symmetric");
    {
        Rat tr(0);
        for (int a = 0; a < 3; ++a) tr += ric(a, a);
        if (!(tr == sc)) throw std::invalid_argument("riemann_from_ricci_3d: Sc must equal tr Ric");
    }
    TensorC R(4);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    Rat v = Rat(kronecker(a, c)) * ric(b, d) + Rat(kronecker(b, d)) * ric(a, c)
                          - Rat(kronecker(a, d)) * ric(b, c) - Rat(kronecker(b, c)) * ric(a, d)
                          - sc / 2 * Rat(kronecker(a, c) * kronecker(b, d) - kronecker(a, d) * kronecker(b, c));
                    R(a, b, c, d) = v;
                }
    return R;
}

TensorC driemann_from_dricci_3d(const TensorC& dric) {
    TensorC dR(5);
    for (int s = 0; s < 3; ++s) {
        Rat dsc(0);
        for (int m = 0; m < 3; ++m) dsc += dric(s, m, m);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    for (int d = 0; d < 3; ++d) {
                        Rat v = Rat(kronecker(a, c)) * dric(s, b, d) + Rat(kronecker(b, d)) * dric(s, a, c)
                              - Rat(kronecker(a, d)) * dric(s, b, c) - Rat(kronecker(b, c)) * dric(s, a, d)
                              - dsc / 2 * Rat(kronecker(a, c) * kronecker(b, d) - kronecker(a, d) * kronecker(b, c));
                        dR(s, a, b, c, d) = v;
                    }
    }
    return dR;
}

namespace {

Rat small_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 3);
    return rat(num(rng), den(rng));
}

void rebuild_derived(CurvatureData& c) {
    c.sc0 = Rat(0);
    for (int a = 0; a < 3; ++a) c.sc0 += c.ric0(a, a);
    c.riem0 = riemann_from_ricci_3d(c.ric0, c.sc0);
    c.driem0 = driemann_from_dricci_3d(c.dric0);
}

} // namespace

CurvatureData random_curvature(const RandomCurvatureOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    CurvatureData c;
    c.seed = opt.seed;
    c.bianchi2 = opt.bianchi2;

    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            Rat v = opt.zero_ricci ? Rat(0) : small_rat(rng);
            c.ric0(a, b) = v;
            c.ric0(b, a) = v;
        }

    for (int s = 0; s < 3; ++s)
        for (int b = 0; b < 3; ++b)
            for (int g = b; g < 3; ++g) {
                Rat v = small_rat(rng);
                c.dric0(s, b, g) = v;
                c.dric0(s, g, b) = v;
            }

    if (opt.bianchi2) {
        // contracted second Bianchi: div_n := nabla_s Ric_{sn} must equal
        // (1/2) nabla_n Sc.  Fix the defect with the trace correction
        // dric += d_{sb} w_g + d_{sg} w_b, solving the 3-vector system
        // defect - 3 w = 0.
        Rat defect[3];
        for (int n = 0; n < 3; ++n) {
            Rat div(0), tr(0);
            for (int s = 0; s < 3; ++s) div += c.dric0(s, s, n);
            for (int m = 0; m < 3; ++m) tr += c.dric0(n, m, m);
            defect[n] = tr / 2 - div;
        }
        for (int n = 0; n < 3; ++n) {
            Rat w = defect[n] / 3;
            for (int s = 0; s < 3; ++s)
                for (int b = 0; b < 3; ++b)
                    for (int g = 0; g < 3; ++g)
                        c.dric0(s, b, g) += Rat(kronecker(s, b)) * (g == n ? w : Rat(0))
                                          + Rat(kronecker(s, g)) * (b == n ? w : Rat(0));
        }
    }

    rebuild_derived(c);
    return c;
}

std::optional<std::string> validate_curvature(const CurvatureData& c) {
    const TensorC& R = c.riem0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (!(c.ric0(a, b) == c.ric0(b, a))) return "Ric not symmetric";
            for (int cc = 0; cc < 3; ++cc) {
                if (!(c.dric0(a, b, cc) == c.dric0(a, cc, b))) return "nabla Ric not symmetric in last slots";
                for (int d = 0; d < 3; ++d) {
                    if (!(R(a, b, cc, d) == -R(b, a, cc, d))) return "Riem not antisymmetric in (1,2)";
                    if (!(R(a, b, cc, d) == -R(a, b, d, cc))) return "Riem not antisymmetric in (3,4)";
                    if (!(R(a, b, cc, d) == R(cc, d, a, b))) return "Riem not pair symmetric";
                    Rat bianchi1 = R(a, b, cc, d) + R(a, cc, d, b) + R(a, d, b, cc);
                    if (!is_zero(bianchi1)) return "first Bianchi identity fails";
                    for (int s = 0; s < 3; ++s) {
                        const TensorC& D = c.driem0;
                        if (!(D(s, a, b, cc, d) == -D(s, b, a, cc, d))) return "nabla Riem antisymmetry (1,2) fails";
                        if (!(D(s, a, b, cc, d) == -D(s, a, b, d, cc))) return "nabla Riem antisymmetry (3,4) fails";
                        if (!(D(s, a, b, cc, d) == D(s, cc, d, a, b))) return "nabla Riem pair symmetry fails";
                        Rat b1 = D(s, a, b, cc, d) + D(s, a, cc, d, b) + D(s, a, d, b, cc);
                        if (!is_zero(b1)) return "first Bianchi for nabla Riem fails";
                    }
                }
            }
        }
    // Riem contracts back to Ric
    for (int b = 0; b < 3; ++b)
        for (int d = 0; d < 3; ++d) {
            Rat s(0);
            for (int a = 0; a < 3; ++a) s += R(a, b, a, d);
            if (!(s == c.ric0(b, d))) return "Riem does not contract to Ric";
        }
    if (c.bianchi2) {
        for (int n = 0; n < 3; ++n) {
            Rat div(0), tr(0);
            for (int s = 0; s < 3; ++s) div += c.dric0(s, s, n);
            for (int m = 0; m < 3; ++m) tr += c.dric0(n, m, m);
            if (!(div == tr / 2)) return "contracted second Bianchi identity fails";
        }
    }
    return std::nullopt;
}

std::string curvature_to_json(const CurvatureData& c) {
    nlohmann::ordered_json j;
    auto dric = nlohmann::ordered_json::array();
    for (int s = 0; s < 3; ++s) {
        auto plane = nlohmann::ordered_json::array();
        for (int b = 0; b < 3; ++b) {
            auto row = nlohmann::ordered_json::array();
            for (int g = 0; g < 3; ++g) row.push_back(rat_to_string(c.dric0(s, b, g)));
            plane.push_back(row);
        }
        dric.push_back(plane);
    }
    auto ric = nlohmann::ordered_json::array();
    for (int a = 0; a < 3; ++a) {
        auto row = nlohmann::ordered_json::array();
        for (int b = 0; b < 3; ++b) row.push_back(rat_to_string(c.ric0(a, b)));
        ric.push_back(row);
    }
    j["dric0"] = dric;
    j["ric0"] = ric;
    j["bianchi2"] = c.bianchi2;
    j["seed"] = c.seed;
    return j.dump(2);
}

CurvatureData curvature_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    CurvatureData c;
    for (int s = 0; s < 3; ++s)
        for (int b = 0; b < 3; ++b)
            for (int g = 0; g < 3; ++g)
                c.dric0(s, b, g) = rat_from_string(j.at("dric0").at(s).at(b).at(g).get<std::string>());
    if (j.contains("ric0"))
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                c.ric0(a, b) = rat_from_string(j.at("ric0").at(a).at(b).get<std::string>());
    c.bianchi2 = j.value("bianchi2", false);
    c.seed = j.value("seed", (std::uint64_t)0);
    rebuild_derived(c);
    if (auto err = validate_curvature(c)) throw std::invalid_argument("curvature_from_json: " + *err);
    return c;
}

} // namespace etaforge
