#pragma once

#include <span>
#include <vector>

#include "bayesbd/geometry.hpp"

namespace bayesbd {

/// Eigenvalues of the squared exponential periodic kernel G_a on the circle,
/// truncated to the first L = 2J+1 Fourier modes:
///   v_1 = e^{-2a^2} I_0(2a^2),  v_{2j} = v_{2j+1} = e^{-2a^2} I_j(2a^2).
struct EigenSpectrum {
    double a = 1.0;
    std::vector<double> v;  // length 2J+1

    int L() const { return static_cast<int>(v.size()); }
    int J() const { return (L() - 1) / 2; }
};

/// Boundary curve written in the truncated Fourier basis:
///   gamma(omega) = mu + sum_k z_k psi_k(omega / 2pi).
struct BoundaryCoefficients {
    double mu = 0.0;
    std::vector<double> z;  // length 2J+1

    int L() const { return static_cast<int>(z.size()); }
    int J() const { return (L() - 1) / 2; }
};

/// Exponentially scaled modified Bessel function of the first kind,
/// e^{-x} I_n(x). Stable for x up to at least 1e4.
double bessel_i_scaled(int order, double x);

/// e^{-x} I_n(x) for all orders n = 0..max_order in one pass.
std::vector<double> bessel_i_scaled_upto(int max_order, double x);

EigenSpectrum eigenvalues(double a, int J);

/// Orthonormal Fourier basis on [0,1]:
///   psi_1 = 1, psi_{2j} = sqrt(2) cos(2 pi j t), psi_{2j+1} = sqrt(2) sin(2 pi j t).
/// Writes 2J+1 values into `out`.
void basis(double t, int J, std::span<double> out);
std::vector<double> basis(double t, int J);

/// G_a(t1, t2) = exp{-4 a^2 sin^2(pi t1 - pi t2)}.
double kernel_value(double a, double t1, double t2);

/// gamma(omega); may be nonpositive for extreme coefficients, in which case
/// samplers must treat the state as having zero probability.
double boundary_eval(const BoundaryCoefficients& c, double omega);

/// Wrap coefficients as a RadialBoundary (caller must ensure positivity).
RadialBoundary coefficient_boundary(const BoundaryCoefficients& c);

}  // namespace bayesbd
