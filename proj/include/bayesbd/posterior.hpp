#pragma once

#include <cstdint>
#include <vector>

#include "bayesbd/sampler.hpp"

namespace bayesbd {

/// Posterior mean boundary with a uniform credible band on the output grid.
struct PosteriorSummary {
    std::vector<double> theta;
    std::vector<double> estimate;
    std::vector<double> lower;
    std::vector<double> upper;
    double L0 = 0.0;
    double level = 0.95;
    ChainDiagnostics diag;
};

/// Type-7 (linear interpolation) empirical quantile of the given values.
double quantile_type7(std::vector<double> values, double p);

/// Posterior mean, pointwise sd, and the uniform band
/// [mean - L0 * sd, mean + L0 * sd], where L0 is the level-quantile of the
/// sup-normalized deviations u_t = max_g |gamma_t(g) - mean(g)| / sd(g).
/// Requires at least two kept sweeps.
PosteriorSummary summarize(const ChainOutput& chain, double level = 0.95);

enum class BandEdge { outer, mean, inner };

/// Pixel-inside flags against the selected band curve, with the curve
/// linearly interpolated (periodically) between grid angles.
std::vector<std::uint8_t> membership_export(const PosteriorSummary& summary,
                                            const PolarObservation& obs, BandEdge edge);

}  // namespace bayesbd
