#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bayesbd/model.hpp"
#include "bayesbd/rng.hpp"

namespace bayesbd {

enum class SamplerKind { mh, slice };

/// Known inequality between the inside and outside nuisance parameters.
enum class Ordering { inside_higher, outside_higher, none };

struct Hyper {
    double alpha_a = 2.0;
    double beta_a = 1.0;
    double alpha_tau = 500.0;
    double beta_tau = 1.0;
    double alpha1 = 0.0;  // Beta prior for binary success probabilities
    double beta1 = 0.0;
    double mu0 = std::numeric_limits<double>::quiet_NaN();  // NaN: use mean intensity
    double sigma0 = 1e3;
    double alpha2 = 1e-2;  // Gamma prior for Gaussian precisions
    double beta2 = 1e-2;
};

struct FitConfig {
    int nrun = 4000;
    int nburn = 1000;
    int J = 10;
    SamplerKind sampler = SamplerKind::slice;
    Ordering ordering = Ordering::none;     // binary probabilities / gaussian means
    Ordering ordering_sd = Ordering::none;  // gaussian standard deviations
    Hyper hyper;
    std::uint64_t seed = 0;
    std::optional<double> inimean;
    bool output_all = false;
    /// Approximation for speed comparisons: freeze the boundary cache and
    /// region statistics at their sweep-start values during the coefficient
    /// sweep instead of refreshing them after every accepted move.
    bool frozen_sweep_stats = false;

    void validate() const;  // throws std::invalid_argument
};

struct ChainDiagnostics {
    double accept_rate = 1.0;      // accepted coefficient moves / attempted
    double unique_fraction = 1.0;  // kept sweeps in which any coefficient moved
    long long slice_shrink_failures = 0;
    long long nuisance_fallbacks = 0;
    bool mle_degenerate = false;
};

/// One MCMC state of (z, a, tau, nuisance).
struct ChainState {
    std::vector<double> z;
    double a = 1.0;
    double tau = 500.0;
    std::vector<double> nuisance;  // {pi1, pi2} or {mu1, sigma1, mu2, sigma2}
};

struct ChainOutput {
    std::vector<double> theta;                    // kGridSize grid angles
    std::vector<std::vector<double>> boundaries;  // nrun rows of kGridSize radii
    double mu = 0.0;                              // constant prior mean in use
    ChainDiagnostics diag;
    // Populated only when FitConfig::output_all is set.
    std::vector<std::vector<double>> z_trace;
    std::vector<double> a_trace;
    std::vector<double> tau_trace;
    std::vector<std::vector<double>> nuisance_trace;
};

/// One stepping-out + shrinkage slice update (Neal 2003) leaving exp(logf)
/// invariant. Returns x0 (and bumps *shrink_failures) if 1000 contractions
/// fail to find an acceptable point. logf(x0) must be finite.
double slice_univariate(const std::function<double(double)>& logf, double x0, double width,
                        int max_steps, Rng& rng, long long* shrink_failures = nullptr);
/// Variant with logf(x0) already known.
double slice_univariate(const std::function<double(double)>& logf, double x0, double gx0,
                        double width, int max_steps, Rng& rng,
                        long long* shrink_failures = nullptr);

/// Symmetric Gaussian random-walk Metropolis-Hastings update.
std::pair<double, bool> mh_univariate(const std::function<double(double)>& logf, double x0,
                                      double proposal_sd, Rng& rng);
std::pair<double, bool> mh_univariate(const std::function<double(double)>& logf, double x0,
                                      double gx0, double proposal_sd, Rng& rng);

/// Gamma(alpha_tau + L/2, beta_tau + z' Sigma_a^{-1} z / 2) draw.
double sample_tau(std::span<const double> z, const EigenSpectrum& spectrum, const Hyper& hyper,
                  Rng& rng);

/// Ordered independent Beta draw for (pi1, pi2). Zero posterior parameters
/// (possible with the improper default alpha1 = beta1 = 0) fall back to a
/// Jeffreys-corrected Beta and bump *fallbacks.
std::pair<double, double> sample_nuisance_binary(const BinaryStats& stats, const Hyper& hyper,
                                                 Ordering ordering, Rng& rng,
                                                 long long* fallbacks = nullptr);

/// Conjugate normal/inverse-gamma draw of (mu1, sigma1, mu2, sigma2) with
/// optional ordering of means (swaps region labels) and of sds.
std::array<double, 4> sample_nuisance_gaussian(const GaussianStats& stats, const Hyper& hyper,
                                               Ordering ordering_mean, Ordering ordering_sd,
                                               Rng& rng, long long* fallbacks = nullptr);

/// One slice update of the kernel rescaling parameter on its conditional
/// log-density given (z, tau).
double sample_a(std::span<const double> z, double tau, const Hyper& hyper, Rng& rng,
                double current_a, long long* shrink_failures = nullptr);

/// Full Gibbs samplers for binary and Gaussian-noised images.
ChainOutput gibbs_binary(const PolarObservation& obs, const FitConfig& cfg);
ChainOutput gibbs_gaussian(const PolarObservation& obs, const FitConfig& cfg);

}  // namespace bayesbd
