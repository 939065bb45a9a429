#include "bayesbd/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace bayesbd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int env_thread_count() {
    const char* s = std::getenv("BAYESBD_THREADS");
    if (!s) return 1;
    const int t = std::atoi(s);
    return t > 1 ? t : 1;
}

// Boundary radius at a pixel angle, reusing the previous evaluation when the
// angle repeats (consecutive duplicates are common on grid designs).
double boundary_at(const BoundaryCoefficients& c, double theta, double* last_theta,
                   double* last_value) {
    if (theta == *last_theta) return *last_value;
    *last_theta = theta;
    *last_value = boundary_eval(c, theta);
    return *last_value;
}

bool boundary_positive_on_grid(const BoundaryCoefficients& c) {
    for (int g = 0; g < kGridSize; ++g)
        if (boundary_eval(c, grid_angle(g)) <= 0.0) return false;
    return true;
}

double quadratic_form(const std::vector<double>& z, const EigenSpectrum& spectrum) {
    double q = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) q += z[k] * z[k] / spectrum.v[k];
    return q;
}

}  // namespace

double grid_angle(int g) { return kTwoPi * g / kGridSize; }

std::size_t PolarObservation::included_count() const {
    if (mask.empty()) return size();
    std::size_t n = 0;
    for (auto m : mask) n += (m != 0);
    return n;
}

void PolarObservation::validate() const {
    const std::size_t n = intensity.size();
    if (n == 0) throw std::invalid_argument("observation: empty");
    if (theta.size() != n || r.size() != n)
        throw std::invalid_argument("observation: sequence lengths disagree");
    if (!mask.empty() && mask.size() != n)
        throw std::invalid_argument("observation: mask length disagrees");
    if (included_count() == 0) throw std::invalid_argument("observation: mask excludes all pixels");
    for (std::size_t i = 0; i < n; ++i)
        if (r[i] < 0.0) throw std::invalid_argument("observation: negative radius");
}

void PolarObservation::recenter(const ReferencePoint& new_center) {
    for (std::size_t i = 0; i < size(); ++i) {
        const double x = center.x + r[i] * std::cos(theta[i]);
        const double y = center.y + r[i] * std::sin(theta[i]);
        const PolarPoint p = rect_to_polar(x, y, new_center);
        r[i] = p.r;
        theta[i] = p.theta;
    }
    center = new_center;
}

BinaryStats partition_stats_binary(const PolarObservation& obs, const BoundaryCoefficients& c) {
    obs.validate();
    const std::size_t n = obs.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (obs.intensity[i] != 0.0 && obs.intensity[i] != 1.0)
            throw std::invalid_argument("partition_stats_binary: pixel " + std::to_string(i) +
                                        " has non-binary intensity " +
                                        std::to_string(obs.intensity[i]));
    }
    const int threads = env_thread_count();
    std::vector<BinaryStats> partial(static_cast<std::size_t>(threads));
    auto work = [&](std::size_t lo, std::size_t hi, BinaryStats& st) {
        double last_theta = std::numeric_limits<double>::quiet_NaN(), last_value = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            if (!obs.included(i)) continue;
            const double g = boundary_at(c, obs.theta[i], &last_theta, &last_value);
            const bool in = obs.r[i] < g;
            const long long y = obs.intensity[i] != 0.0 ? 1 : 0;
            if (in) {
                st.n1 += 1;
                st.N1 += y;
            } else {
                st.n2 += 1;
                st.N2 += y;
            }
        }
    };
    if (threads == 1) {
        work(0, n, partial[0]);
        return partial[0];
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = std::min(n, static_cast<std::size_t>(t) * chunk);
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back(work, lo, hi, std::ref(partial[static_cast<std::size_t>(t)]));
    }
    for (auto& th : pool) th.join();
    BinaryStats out;
    for (const auto& p : partial) {  // merged in chunk order
        out.n1 += p.n1;
        out.N1 += p.N1;
        out.n2 += p.n2;
        out.N2 += p.N2;
    }
    return out;
}

GaussianStats partition_stats_gaussian(const PolarObservation& obs,
                                       const BoundaryCoefficients& c) {
    obs.validate();
    const std::size_t n = obs.size();
    const int threads = env_thread_count();
    std::vector<GaussianStats> partial(static_cast<std::size_t>(threads));
    auto work = [&](std::size_t lo, std::size_t hi, GaussianStats& st) {
        double last_theta = std::numeric_limits<double>::quiet_NaN(), last_value = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            if (!obs.included(i)) continue;
            const double g = boundary_at(c, obs.theta[i], &last_theta, &last_value);
            const double y = obs.intensity[i];
            if (obs.r[i] < g) {
                st.n1 += 1;
                st.sum1 += y;
                st.sumsq1 += y * y;
            } else {
                st.n2 += 1;
                st.sum2 += y;
                st.sumsq2 += y * y;
            }
        }
    };
    if (threads == 1) {
        work(0, n, partial[0]);
        return partial[0];
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = std::min(n, static_cast<std::size_t>(t) * chunk);
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back(work, lo, hi, std::ref(partial[static_cast<std::size_t>(t)]));
    }
    for (auto& th : pool) th.join();
    GaussianStats out;
    for (const auto& p : partial) {
        out.n1 += p.n1;
        out.sum1 += p.sum1;
        out.sumsq1 += p.sumsq1;
        out.n2 += p.n2;
        out.sum2 += p.sum2;
        out.sumsq2 += p.sumsq2;
    }
    return out;
}

double log_cond_z_binary(const BinaryStats& stats, double pi1, double pi2,
                         const BoundaryCoefficients& c, const EigenSpectrum& spectrum,
                         double tau) {
    if (pi1 <= 0.0 || pi1 >= 1.0 || pi2 <= 0.0 || pi2 >= 1.0)
        throw std::invalid_argument("log_cond_z_binary: pi1, pi2 must lie in (0,1)");
    if (!boundary_positive_on_grid(c)) return kNegInf;
    const double lik = static_cast<double>(stats.N1) *
                           std::log(pi1 * (1.0 - pi2) / (pi2 * (1.0 - pi1))) +
                       static_cast<double>(stats.n1) * std::log((1.0 - pi1) / (1.0 - pi2));
    return lik - 0.5 * tau * quadratic_form(c.z, spectrum);
}

double log_cond_z_gaussian(const GaussianStats& stats, double mu1, double sigma1, double mu2,
                           double sigma2, const BoundaryCoefficients& c,
                           const EigenSpectrum& spectrum, double tau) {
    if (sigma1 <= 0.0 || sigma2 <= 0.0)
        throw std::invalid_argument("log_cond_z_gaussian: sigmas must be positive");
    if (!boundary_positive_on_grid(c)) return kNegInf;
    const double n1 = static_cast<double>(stats.n1);
    const double n2 = static_cast<double>(stats.n2);
    const double ss1 = stats.sumsq1 - 2.0 * mu1 * stats.sum1 + n1 * mu1 * mu1;
    const double ss2 = stats.sumsq2 - 2.0 * mu2 * stats.sum2 + n2 * mu2 * mu2;
    const double lik = -n1 * (std::log(sigma1) - std::log(sigma2)) -
                       ss1 / (2.0 * sigma1 * sigma1) - ss2 / (2.0 * sigma2 * sigma2);
    return lik - 0.5 * tau * quadratic_form(c.z, spectrum);
}

std::vector<double> nuisance_mle_at_radius(const PolarObservation& obs, Family family,
                                           double radius) {
    BoundaryCoefficients c;
    c.mu = radius;
    c.z.assign(3, 0.0);
    if (family == Family::binary) {
        const auto st = partition_stats_binary(obs, c);
        const double p1 = st.n1 > 0 ? static_cast<double>(st.N1) / st.n1 : 0.5;
        const double p2 = st.n2 > 0 ? static_cast<double>(st.N2) / st.n2 : 0.5;
        return {p1, p2};
    }
    const auto st = partition_stats_gaussian(obs, c);
    auto region = [](long long n, double sum, double sumsq) {
        if (n == 0) return std::pair<double, double>{0.0, 1.0};
        const double mean = sum / n;
        const double var = std::max(sumsq / n - mean * mean, 0.0);
        return std::pair<double, double>{mean, std::sqrt(var)};
    };
    const auto [m1, s1] = region(st.n1, st.sum1, st.sumsq1);
    const auto [m2, s2] = region(st.n2, st.sum2, st.sumsq2);
    return {m1, s1, m2, s2};
}

MleInit mle_init(const PolarObservation& obs, Family family) {
    obs.validate();
    double max_r = 0.0;
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (!obs.included(i)) continue;
        max_r = std::max(max_r, obs.r[i]);
        y_min = std::min(y_min, obs.intensity[i]);
        y_max = std::max(y_max, obs.intensity[i]);
    }
    constexpr int kCandidates = 50;
    const double lo = 0.05;
    const double hi = std::max(0.95 * max_r, lo + 0.01);

    MleInit out;
    if (y_min == y_max) {
        out.degenerate = true;
        out.radius = 0.5 * (lo + hi);
        out.nuisance = nuisance_mle_at_radius(obs, family, out.radius);
        return out;
    }

    double best_ll = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kCandidates; ++i) {
        const double radius = lo + (hi - lo) * i / (kCandidates - 1);
        BoundaryCoefficients c;
        c.mu = radius;
        c.z.assign(3, 0.0);
        double ll;
        if (family == Family::binary) {
            const auto st = partition_stats_binary(obs, c);
            auto term = [](long long n, long long N) {
                if (n == 0) return 0.0;
                const double p = static_cast<double>(N) / n;
                double t = 0.0;
                if (N > 0) t += N * std::log(p);
                if (n - N > 0) t += (n - N) * std::log(1.0 - p);
                return t;
            };
            ll = term(st.n1, st.N1) + term(st.n2, st.N2);
        } else {
            const auto st = partition_stats_gaussian(obs, c);
            auto term = [](long long n, double sum, double sumsq) {
                if (n == 0) return 0.0;
                const double mean = sum / n;
                const double var = std::max(sumsq / n - mean * mean, 1e-12);
                return -0.5 * n * std::log(var);
            };
            ll = term(st.n1, st.sum1, st.sumsq1) + term(st.n2, st.sum2, st.sumsq2);
        }
        if (ll > best_ll) {
            best_ll = ll;
            out.radius = radius;
        }
    }
    out.nuisance = nuisance_mle_at_radius(obs, family, out.radius);
    return out;
}

}  // namespace bayesbd
