#include "bayesbd/kernel.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace bayesbd {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

// Below this argument the power series converges in a few dozen terms and
// nothing can overflow; above it the backward recurrence takes over.
constexpr double kSeriesCutoff = 15.0;

// e^{-x} I_n(x) by the ascending series, long double accumulation. All terms
// are positive, so there is no cancellation.
double scaled_series(int order, double x) {
    const long double half = static_cast<long double>(x) / 2.0L;
    long double term = 1.0L;
    for (int k = 1; k <= order; ++k) term *= half / k;  // (x/2)^n / n!
    long double sum = term;
    const long double q = half * half;
    for (int m = 1; m <= 200; ++m) {
        term *= q / (static_cast<long double>(m) * (m + order));
        sum += term;
        if (term < sum * 1e-20L) break;
    }
    return static_cast<double>(sum * std::exp(-static_cast<long double>(x)));
}

// Miller backward recurrence, normalized by e^x = I_0 + 2 sum_{k>=1} I_k.
// Returns e^{-x} I_n(x) for n = 0..max_order; valid for x > 0.
std::vector<double> scaled_miller(int max_order, double x) {
    // Start far enough above both the requested order and the turning point
    // k ~ x that seed contamination has died off.
    const double m = std::max(static_cast<double>(max_order), x);
    const int start = static_cast<int>(m + 40.0 + 3.0 * std::sqrt(m)) | 1;

    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    double bip = 0.0;   // unnormalized I_{k+1}
    double bi = 1e-30;  // unnormalized I_k
    double norm = 0.0;  // accumulates I_0 + 2 sum I_k
    for (int k = start; k >= 1; --k) {
        const double bim = bip + (2.0 * k / x) * bi;
        bip = bi;
        bi = bim;
        if (bi > 1e200) {  // renormalize to avoid overflow
            bi *= 1e-200;
            bip *= 1e-200;
            norm *= 1e-200;
            for (double& o : out) o *= 1e-200;
        }
        if (k - 1 <= max_order) out[static_cast<std::size_t>(k - 1)] = bi;
        norm += 2.0 * bip;
    }
    norm += bi;  // unnormalized I_0
    for (double& o : out) o /= norm;
    return out;
}

}  // namespace

std::vector<double> bessel_i_scaled_upto(int max_order, double x) {
    if (max_order < 0) throw std::invalid_argument("bessel_i_scaled: order must be >= 0");
    if (x < 0.0) throw std::invalid_argument("bessel_i_scaled: x must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;  // I_0(0) = 1, I_n(0) = 0
        return out;
    }
    if (x <= kSeriesCutoff) {
        for (int n = 0; n <= max_order; ++n) out[static_cast<std::size_t>(n)] = scaled_series(n, x);
        return out;
    }
    return scaled_miller(max_order, x);
}

double bessel_i_scaled(int order, double x) {
    return bessel_i_scaled_upto(order, x).back();
}

EigenSpectrum eigenvalues(double a, int J) {
    if (a <= 0.0) throw std::invalid_argument("eigenvalues: a must be positive");
    if (J < 1) throw std::invalid_argument("eigenvalues: J must be >= 1");
    const auto s = bessel_i_scaled_upto(J, 2.0 * a * a);
    EigenSpectrum spec;
    spec.a = a;
    spec.v.resize(static_cast<std::size_t>(2 * J + 1));
    spec.v[0] = s[0];
    for (int j = 1; j <= J; ++j) {
        spec.v[static_cast<std::size_t>(2 * j - 1)] = s[static_cast<std::size_t>(j)];
        spec.v[static_cast<std::size_t>(2 * j)] = s[static_cast<std::size_t>(j)];
    }
    return spec;
}

void basis(double t, int J, std::span<double> out) {
    const double tr = t - std::floor(t);
    out[0] = 1.0;
    const double ang = kTwoPi * tr;
    for (int j = 1; j <= J; ++j) {
        out[static_cast<std::size_t>(2 * j - 1)] = kSqrt2 * std::cos(j * ang);
        out[static_cast<std::size_t>(2 * j)] = kSqrt2 * std::sin(j * ang);
    }
}

std::vector<double> basis(double t, int J) {
    std::vector<double> out(static_cast<std::size_t>(2 * J + 1));
    basis(t, J, out);
    return out;
}

double kernel_value(double a, double t1, double t2) {
    const double s = std::sin((t1 - t2) * kTwoPi / 2.0);
    return std::exp(-4.0 * a * a * s * s);
}

double boundary_eval(const BoundaryCoefficients& c, double omega) {
    const int J = c.J();
    double acc = c.mu + c.z[0];
    const double t = omega / kTwoPi;
    const double ang = kTwoPi * (t - std::floor(t));
    for (int j = 1; j <= J; ++j) {
        acc += kSqrt2 * (c.z[static_cast<std::size_t>(2 * j - 1)] * std::cos(j * ang) +
                         c.z[static_cast<std::size_t>(2 * j)] * std::sin(j * ang));
    }
    return acc;
}

RadialBoundary coefficient_boundary(const BoundaryCoefficients& c) {
    auto copy = std::make_shared<BoundaryCoefficients>(c);
    return RadialBoundary([copy](double omega) { return boundary_eval(*copy, omega); });
}

}  // namespace bayesbd
