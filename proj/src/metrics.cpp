#include "bayesbd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace bayesbd {

namespace {

constexpr int kAreaPoints = 10000;
constexpr int kHausdorffPoints = 2000;

// Composite trapezoid of f over one period, exploiting f(0) = f(2*pi).
template <class F>
double trapezoid_period(F&& f) {
    const double h = kTwoPi / kAreaPoints;
    double acc = 0.0;
    double prev = f(0.0);
    const double first = prev;
    for (int i = 1; i < kAreaPoints; ++i) {
        const double cur = f(h * i);
        acc += 0.5 * (prev + cur);
        prev = cur;
    }
    acc += 0.5 * (prev + first);
    return acc * h;
}

}  // namespace

double lebesgue_error(const RadialBoundary& g1, const RadialBoundary& g2) {
    return 0.5 * trapezoid_period([&](double w) {
        const double a = g1(w), b = g2(w);
        return std::fabs(a * a - b * b);
    });
}

double dsm_error(const RadialBoundary& g1, const RadialBoundary& g2) {
    double area1 = 0.0, area2 = 0.0, inter = 0.0;
    const double h = kTwoPi / kAreaPoints;
    double p1 = 0, p2 = 0, pi = 0;
    auto eval = [&](double w, double* t1, double* t2, double* ti) {
        const double a = g1(w), b = g2(w);
        const double m = std::min(a, b);
        *t1 = a * a;
        *t2 = b * b;
        *ti = m * m;
    };
    eval(0.0, &p1, &p2, &pi);
    const double f1 = p1, f2 = p2, fi = pi;
    for (int i = 1; i < kAreaPoints; ++i) {
        double c1, c2, ci;
        eval(h * i, &c1, &c2, &ci);
        area1 += 0.5 * (p1 + c1);
        area2 += 0.5 * (p2 + c2);
        inter += 0.5 * (pi + ci);
        p1 = c1;
        p2 = c2;
        pi = ci;
    }
    area1 += 0.5 * (p1 + f1);
    area2 += 0.5 * (p2 + f2);
    inter += 0.5 * (pi + fi);
    // The common factor h/2 cancels in the ratio.
    return 1.0 - 2.0 * inter / (area1 + area2);
}

double hausdorff_error(const RadialBoundary& g1, const RadialBoundary& g2) {
    auto sample = [](const RadialBoundary& g) {
        std::vector<std::pair<double, double>> pts(kHausdorffPoints);
        for (int i = 0; i < kHausdorffPoints; ++i) {
            const double w = kTwoPi * i / kHausdorffPoints;
            const double r = g(w);
            pts[static_cast<std::size_t>(i)] = {r * std::cos(w), r * std::sin(w)};
        }
        return pts;
    };
    const auto a = sample(g1);
    const auto b = sample(g2);
    auto directed = [](const auto& from, const auto& to) {
        double worst = 0.0;
        for (const auto& [px, py] : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& [qx, qy] : to) {
                const double dx = px - qx, dy = py - qy;
                best = std::min(best, dx * dx + dy * dy);
            }
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace bayesbd
