#include "bayesbd/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace bayesbd {

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;  // fmod can round up to 2*pi for tiny negatives
    return t;
}

PolarPoint rect_to_polar(double x, double y, const ReferencePoint& center) {
    const double dx = x - center.x;
    const double dy = y - center.y;
    const double r = std::hypot(dx, dy);
    if (r == 0.0) return {0.0, 0.0};  // point at the center: theta = 0 by convention
    return {r, normalize_angle(std::atan2(dy, dx))};
}

std::vector<PolarPoint> rect_to_polar(const std::vector<std::pair<double, double>>& points,
                                      const ReferencePoint& center) {
    std::vector<PolarPoint> out;
    out.reserve(points.size());
    for (const auto& [x, y] : points) out.push_back(rect_to_polar(x, y, center));
    return out;
}

RadialBoundary circle_boundary(double radius) {
    if (radius <= 0.0) throw std::invalid_argument("circle_boundary: radius must be positive");
    return RadialBoundary([radius](double) { return radius; });
}

RadialBoundary ellipse_boundary(double semi_axis_a, double semi_axis_b, double rotation,
                                double dx, double dy) {
    if (semi_axis_a <= 0.0 || semi_axis_b <= 0.0)
        throw std::invalid_argument("ellipse_boundary: semi-axes must be positive");

    const double ux = std::cos(rotation), uy = std::sin(rotation);   // major axis direction
    const double vx = -uy, vy = ux;                                  // minor axis direction
    const double ia2 = 1.0 / (semi_axis_a * semi_axis_a);
    const double ib2 = 1.0 / (semi_axis_b * semi_axis_b);

    // The constant coefficient of the ray-conic quadratic does not depend on
    // the ray direction; C >= 0 means the reference point is on or outside
    // the ellipse and the star-shape assumption fails.
    const double cu = dx * ux + dy * uy;
    const double cv = dx * vx + dy * vy;
    const double C = cu * cu * ia2 + cv * cv * ib2 - 1.0;
    if (C >= 0.0)
        throw std::invalid_argument(
            "ellipse_boundary: reference point lies on or outside the ellipse");

    return RadialBoundary([=](double omega) {
        const double ex = std::cos(omega), ey = std::sin(omega);
        const double du = ex * ux + ey * uy;
        const double dv = ex * vx + ey * vy;
        const double A = du * du * ia2 + dv * dv * ib2;
        const double B = -2.0 * (cu * du * ia2 + cv * dv * ib2);
        // C < 0 guarantees one positive and one negative root.
        const double disc = B * B - 4.0 * A * C;
        return (-B + std::sqrt(disc)) / (2.0 * A);
    });
}

RadialBoundary triangle_boundary(double height) {
    if (height <= 0.0) throw std::invalid_argument("triangle_boundary: height must be positive");
    const double d = height / 3.0;  // centroid-to-edge distance
    // Edge-normal angles for vertices at pi/2, 7*pi/6, 11*pi/6.
    constexpr std::array<double, 3> kEdge = {4.71238898038468986, 0.52359877559829887,
                                             2.61799387799149436};
    return RadialBoundary([d, kEdge](double omega) {
        // Nearest edge normal is always within pi/3, so the cosine stays
        // bounded away from zero.
        double nearest = kTwoPi;
        for (double e : kEdge) {
            double diff = std::fabs(normalize_angle(omega - e));
            if (diff > kTwoPi / 2.0) diff = kTwoPi - diff;
            nearest = std::min(nearest, diff);
        }
        return d / std::cos(nearest);
    });
}

RadialBoundary sampled_boundary(std::vector<double> theta, std::vector<double> radius) {
    if (theta.size() != radius.size() || theta.size() < 2)
        throw std::invalid_argument("sampled_boundary: need >= 2 matching samples");
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (theta[i] < 0.0 || theta[i] >= kTwoPi)
            throw std::invalid_argument("sampled_boundary: angles must lie in [0, 2*pi)");
        if (i > 0 && theta[i] <= theta[i - 1])
            throw std::invalid_argument("sampled_boundary: angles must be strictly increasing");
        if (radius[i] <= 0.0)
            throw std::invalid_argument("sampled_boundary: radii must be positive");
    }
    auto th = std::make_shared<std::vector<double>>(std::move(theta));
    auto ra = std::make_shared<std::vector<double>>(std::move(radius));
    return RadialBoundary([th, ra](double omega) {
        const auto& t = *th;
        const auto& r = *ra;
        const std::size_t n = t.size();
        // index of the last sample with angle <= omega, wrapping periodically
        auto it = std::upper_bound(t.begin(), t.end(), omega);
        std::size_t hi = static_cast<std::size_t>(it - t.begin());
        std::size_t lo = (hi == 0) ? n - 1 : hi - 1;
        hi = (hi == n) ? 0 : hi;
        double span = t[hi] - t[lo];
        double off = omega - t[lo];
        if (span <= 0.0) span += kTwoPi;
        if (off < 0.0) off += kTwoPi;
        const double f = off / span;
        return r[lo] * (1.0 - f) + r[hi] * f;
    });
}

bool inside(const RadialBoundary& boundary, const PolarPoint& p) {
    return p.r < boundary(p.theta);
}

}  // namespace bayesbd
