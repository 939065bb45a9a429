#include "bayesbd/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bayesbd {

double quantile_type7(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile_type7: empty input");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile_type7: p must be in [0,1]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double f = h - static_cast<double>(lo);
    return values[lo] * (1.0 - f) + values[hi] * f;
}

PosteriorSummary summarize(const ChainOutput& chain, double level) {
    const std::size_t nrun = chain.boundaries.size();
    if (nrun < 2) throw std::invalid_argument("summarize: need at least 2 kept sweeps");
    if (level <= 0.0 || level >= 1.0)
        throw std::invalid_argument("summarize: level must be in (0,1)");
    const std::size_t g_count = chain.theta.size();
    for (const auto& row : chain.boundaries)
        if (row.size() != g_count) throw std::invalid_argument("summarize: ragged chain rows");

    constexpr double kSdFloor = 1e-8;

    PosteriorSummary out;
    out.theta = chain.theta;
    out.level = level;
    out.diag = chain.diag;
    out.estimate.assign(g_count, 0.0);
    std::vector<double> sd(g_count, 0.0);

    for (const auto& row : chain.boundaries)
        for (std::size_t g = 0; g < g_count; ++g) out.estimate[g] += row[g];
    for (std::size_t g = 0; g < g_count; ++g) out.estimate[g] /= static_cast<double>(nrun);

    for (const auto& row : chain.boundaries)
        for (std::size_t g = 0; g < g_count; ++g) {
            const double d = row[g] - out.estimate[g];
            sd[g] += d * d;
        }
    for (std::size_t g = 0; g < g_count; ++g)
        sd[g] = std::sqrt(sd[g] / static_cast<double>(nrun - 1));

    std::vector<double> u;
    u.reserve(nrun);
    for (const auto& row : chain.boundaries) {
        double m = 0.0;
        for (std::size_t g = 0; g < g_count; ++g)
            m = std::max(m, std::fabs(row[g] - out.estimate[g]) / std::max(sd[g], kSdFloor));
        u.push_back(m);
    }
    out.L0 = quantile_type7(std::move(u), level);

    out.lower.resize(g_count);
    out.upper.resize(g_count);
    for (std::size_t g = 0; g < g_count; ++g) {
        out.upper[g] = out.estimate[g] + out.L0 * sd[g];
        // Keep the band radii strictly positive even for very wide bands.
        out.lower[g] = std::max(out.estimate[g] - out.L0 * sd[g], 1e-9);
    }
    return out;
}

namespace {

double interp_curve(const std::vector<double>& curve, double theta) {
    const std::size_t g_count = curve.size();
    const double pos = normalize_angle(theta) / kTwoPi * static_cast<double>(g_count);
    const std::size_t lo = std::min(static_cast<std::size_t>(pos), g_count - 1);
    const std::size_t hi = (lo + 1) % g_count;
    const double f = pos - static_cast<double>(lo);
    return curve[lo] * (1.0 - f) + curve[hi] * f;
}

}  // namespace

std::vector<std::uint8_t> membership_export(const PosteriorSummary& summary,
                                            const PolarObservation& obs, BandEdge edge) {
    const std::vector<double>& curve = edge == BandEdge::outer   ? summary.upper
                                       : edge == BandEdge::inner ? summary.lower
                                                                 : summary.estimate;
    std::vector<std::uint8_t> out(obs.size(), 0);
    for (std::size_t i = 0; i < obs.size(); ++i)
        out[i] = obs.r[i] < interp_curve(curve, obs.theta[i]) ? 1 : 0;
    return out;
}

}  // namespace bayesbd
