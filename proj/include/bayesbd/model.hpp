#pragma once

#include <cstdint>
#include <vector>

#include "bayesbd/geometry.hpp"
#include "bayesbd/kernel.hpp"

namespace bayesbd {

enum class Family { binary, gaussian };

/// Number of equally spaced angles used for boundary output grids and for
/// the positivity check inside the conditional densities.
inline constexpr int kGridSize = 200;

/// Angle of grid cell g: 2*pi*g / kGridSize.
double grid_angle(int g);

/// Pixel intensities with polar coordinates about a reference point.
/// An empty mask means every pixel is included.
struct PolarObservation {
    std::vector<double> intensity;
    std::vector<double> theta;
    std::vector<double> r;
    ReferencePoint center;
    std::vector<std::uint8_t> mask;  // empty, or one flag per pixel (1 = include)

    std::size_t size() const { return intensity.size(); }
    bool included(std::size_t i) const { return mask.empty() || mask[i] != 0; }
    std::size_t included_count() const;

    /// Throws if sequence lengths disagree, the observation is empty, or the
    /// mask excludes everything.
    void validate() const;

    /// Rebuild polar coordinates about a new reference point (pixel positions
    /// are reconstructed from the current polar representation).
    void recenter(const ReferencePoint& new_center);
};

/// Region counts for binary images: n1/N1 = pixels/successes inside the
/// boundary, n2/N2 outside. Masked-out pixels are excluded.
struct BinaryStats {
    long long n1 = 0, N1 = 0, n2 = 0, N2 = 0;
};

/// Region-wise count, sum and sum of squares for Gaussian images.
struct GaussianStats {
    long long n1 = 0, n2 = 0;
    double sum1 = 0.0, sumsq1 = 0.0, sum2 = 0.0, sumsq2 = 0.0;
};

BinaryStats partition_stats_binary(const PolarObservation& obs, const BoundaryCoefficients& c);
GaussianStats partition_stats_gaussian(const PolarObservation& obs, const BoundaryCoefficients& c);

/// Log conditional posterior density of the coefficient vector (up to a
/// z-independent constant). Returns -infinity when the boundary is
/// nonpositive anywhere on the kGridSize-point check grid.
double log_cond_z_binary(const BinaryStats& stats, double pi1, double pi2,
                         const BoundaryCoefficients& c, const EigenSpectrum& spectrum,
                         double tau);
double log_cond_z_gaussian(const GaussianStats& stats, double mu1, double sigma1, double mu2,
                           double sigma2, const BoundaryCoefficients& c,
                           const EigenSpectrum& spectrum, double tau);

/// Profile-likelihood initializer: searches 50 candidate circle radii and
/// returns the best one together with the nuisance MLEs at that radius.
/// nuisance = {pi1, pi2} for binary, {mu1, sd1, mu2, sd2} for gaussian.
struct MleInit {
    double radius = 0.0;
    std::vector<double> nuisance;
    bool degenerate = false;  // all intensities identical; radius is mid-grid
};

MleInit mle_init(const PolarObservation& obs, Family family);

/// Closed-form nuisance MLEs for a fixed circle radius.
std::vector<double> nuisance_mle_at_radius(const PolarObservation& obs, Family family,
                                           double radius);

}  // namespace bayesbd
