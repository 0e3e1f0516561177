#ifndef ETAFORGE_QUADRATURE_HPP
#define ETAFORGE_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace etaforge {

// smooth radial cutoff: 1 on [0, r1], 0 on [r2, inf), monotone between
struct CutoffFn {
    enum class Recipe { quintic_hermite, smooth_exp };

    double r1 = 0.5;
    double r2 = 1.0;
    Recipe recipe = Recipe::smooth_exp;

    double operator()(double r) const;
};

// 16-point Gauss-Legendre on [a, b]
double gauss16(const std::function<double(double)>& f, double a, double b);

// Abel-regularised oscillatory integrals over [0, inf): the integrand is cut
// into half-period cells and the alternating cell series is summed by Euler
// transformation.  int_0^inf y^t sin(y xi) dy, t > -2
double osc_power_sin(double t, double xi);
// int_0^inf y^t (sin(y xi) - y xi cos(y xi)) dy, t > -4
double osc_power_sin_minus_ycos(double t, double xi);

// Euler transform of an eventually-alternating series; terms[0..] are the
// raw terms (signs included)
double euler_sum(const std::vector<double>& terms);

// numeric keyhole-contour value of (i/2pi) oint lambda^{-(s+1)/2}
// (1 - lambda)^{-n} dlambda at ||xi|| = 1; real part returned, imaginary
// part asserted small by the caller
double contour_residue_numeric(int n, double s);

// compactly supported radial integral
// int_0^r2 (r^2 sin(l r)/l + 3 r cos(l r)/l^2 - 3 sin(l r)/l^3) r^{s-1} chi(r) dr
double fourier_radial_integral(double s, double lambda, const CutoffFn& chi);

} // namespace etaforge

#endif
