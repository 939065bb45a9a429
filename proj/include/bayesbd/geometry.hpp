#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace bayesbd {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Polar coordinates about a reference point: r >= 0, theta in [0, 2*pi).
struct PolarPoint {
    double r = 0.0;
    double theta = 0.0;
};

/// Known interior point of the region, in image coordinates ([0,1]^2).
struct ReferencePoint {
    double x = 0.5;
    double y = 0.5;
};

/// Reduce an angle into [0, 2*pi).
double normalize_angle(double theta);

/// Closed boundary of a star-shaped region, represented as a strictly
/// positive radial function of the angle about the reference point.
class RadialBoundary {
  public:
    using Fn = std::function<double(double)>;

    explicit RadialBoundary(Fn fn) : fn_(std::move(fn)) {}

    /// Radius at angle omega (normalized mod 2*pi before evaluation).
    double operator()(double omega) const { return fn_(normalize_angle(omega)); }

  private:
    Fn fn_;
};

PolarPoint rect_to_polar(double x, double y, const ReferencePoint& center);

std::vector<PolarPoint> rect_to_polar(const std::vector<std::pair<double, double>>& points,
                                      const ReferencePoint& center);

/// Circle of the given radius about the reference point.
RadialBoundary circle_boundary(double radius);

/// Ellipse with semi-axes a/b, rotated by `rotation` radians, its center
/// displaced from the reference point by (dx, dy). The radius at each angle
/// is the positive root of the ray-conic quadratic. Throws if the reference
/// point does not lie strictly inside the ellipse.
RadialBoundary ellipse_boundary(double semi_axis_a, double semi_axis_b, double rotation,
                                double dx, double dy);

/// Equilateral triangle with centroid at the reference point, one vertex at
/// angle pi/2, and vertex-to-opposite-side distance `height`.
RadialBoundary triangle_boundary(double height);

/// Periodic linear interpolation through sampled (theta, radius) pairs.
/// Angles must be strictly increasing within [0, 2*pi); radii positive.
RadialBoundary sampled_boundary(std::vector<double> theta, std::vector<double> radius);

/// Strict containment: boundary points count as outside.
bool inside(const RadialBoundary& boundary, const PolarPoint& p);

}  // namespace bayesbd
