#include "bayesbd/simulate.hpp"

#include <stdexcept>

namespace bayesbd {

std::vector<std::pair<double, double>> sample_locations(const DesignSpec& design, Rng& rng) {
    if (design.m < 2) throw std::invalid_argument("sample_locations: m must be >= 2");
    const int m = design.m;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(m) * m);
    switch (design.kind) {
        case Design::deterministic_grid:
            for (int ix = 0; ix < m; ++ix)
                for (int iy = 0; iy < m; ++iy)
                    pts.emplace_back((ix + 0.5) / m, (iy + 0.5) / m);
            break;
        case Design::jittered:
            for (int ix = 0; ix < m; ++ix)
                for (int iy = 0; iy < m; ++iy) {
                    const double x = (ix + rng.uniform()) / m;
                    const double y = (iy + rng.uniform()) / m;
                    pts.emplace_back(x, y);
                }
            break;
        case Design::uniform_random:
            for (int i = 0; i < m * m; ++i) {
                const double x = rng.uniform();
                const double y = rng.uniform();
                pts.emplace_back(x, y);
            }
            break;
    }
    return pts;
}

namespace {

PolarObservation make_observation(int m, Design design, const RadialBoundary& boundary,
                                  const ReferencePoint& center, Rng& rng,
                                  std::vector<std::uint8_t>* inside_flags) {
    const auto locations = sample_locations(DesignSpec{design, m}, rng);
    PolarObservation obs;
    obs.center = center;
    obs.theta.reserve(locations.size());
    obs.r.reserve(locations.size());
    inside_flags->reserve(locations.size());
    for (const auto& [x, y] : locations) {
        const PolarPoint p = rect_to_polar(x, y, center);
        obs.theta.push_back(p.theta);
        obs.r.push_back(p.r);
        inside_flags->push_back(inside(boundary, p) ? 1 : 0);
    }
    return obs;
}

}  // namespace

PolarObservation gen_binary(int m, double pi_in, double pi_out, Design design,
                            const RadialBoundary& boundary, const ReferencePoint& center,
                            Rng& rng) {
    // The closed interval is allowed so noiseless indicator images can be
    // generated with pi_in = 1, pi_out = 0.
    if (pi_in < 0.0 || pi_in > 1.0 || pi_out < 0.0 || pi_out > 1.0)
        throw std::invalid_argument("gen_binary: success probabilities must lie in [0,1]");
    std::vector<std::uint8_t> in;
    PolarObservation obs = make_observation(m, design, boundary, center, rng, &in);
    obs.intensity.reserve(in.size());
    for (const auto flag : in) {
        const double p = flag ? pi_in : pi_out;
        obs.intensity.push_back(rng.uniform() < p ? 1.0 : 0.0);
    }
    return obs;
}

PolarObservation gen_gaussian(int m, double mu_in, double mu_out, double sd_in, double sd_out,
                              Design design, const RadialBoundary& boundary,
                              const ReferencePoint& center, Rng& rng) {
    if (sd_in <= 0.0 || sd_out <= 0.0)
        throw std::invalid_argument("gen_gaussian: standard deviations must be positive");
    std::vector<std::uint8_t> in;
    PolarObservation obs = make_observation(m, design, boundary, center, rng, &in);
    obs.intensity.reserve(in.size());
    for (const auto flag : in) {
        obs.intensity.push_back(flag ? rng.normal(mu_in, sd_in) : rng.normal(mu_out, sd_out));
    }
    return obs;
}

}  // namespace bayesbd
