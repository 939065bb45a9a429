#pragma once

#include "bayesbd/geometry.hpp"

namespace bayesbd {

/// Area of the symmetric difference between the two star-shaped regions
/// (shared reference point): (1/2) * integral |g1^2 - g2^2| d omega.
double lebesgue_error(const RadialBoundary& g1, const RadialBoundary& g2);

/// 1 - DSC, where DSC = 2 |A n B| / (|A| + |B|).
double dsm_error(const RadialBoundary& g1, const RadialBoundary& g2);

/// Symmetric Hausdorff distance between the boundary curves, sampled at 2000
/// angles each.
double hausdorff_error(const RadialBoundary& g1, const RadialBoundary& g2);

}  // namespace bayesbd
