#pragma once

#include <utility>
#include <vector>

#include "bayesbd/model.hpp"
#include "bayesbd/rng.hpp"

namespace bayesbd {

/// Pixel-location designs: 'D' equally-spaced grid (cell centers),
/// 'U' completely uniformly random, 'J' jittered (one uniform draw per cell).
enum class Design { deterministic_grid, uniform_random, jittered };

struct DesignSpec {
    Design kind = Design::jittered;
    int m = 100;  // m x m pixels over the unit square
};

std::vector<std::pair<double, double>> sample_locations(const DesignSpec& design, Rng& rng);

/// Binary image: Y_i ~ Bernoulli(pi_in) inside the boundary, Bernoulli(pi_out)
/// outside.
PolarObservation gen_binary(int m, double pi_in, double pi_out, Design design,
                            const RadialBoundary& boundary, const ReferencePoint& center,
                            Rng& rng);

/// Gaussian-noised image: Y_i ~ N(mu_in, sd_in) inside, N(mu_out, sd_out)
/// outside.
PolarObservation gen_gaussian(int m, double mu_in, double mu_out, double sd_in, double sd_out,
                              Design design, const RadialBoundary& boundary,
                              const ReferencePoint& center, Rng& rng);

}  // namespace bayesbd
