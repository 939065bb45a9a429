#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bayesbd/sampler.hpp"

namespace bayesbd {

/// Entry point behind the command-line tool; `args` excludes the program
/// name. Returns the process exit code (0 iff all requested outputs were
/// written).
int run_cli(const std::vector<std::string>& args);

/// Timing rows and least-squares line for the bench subcommand.
struct BenchResult {
    std::vector<int> sizes;       // grid sides m (pixel counts are m^2)
    std::vector<double> seconds;  // wall time of one fixed-iteration fit
    double slope = 0.0;           // seconds per pixel
    double intercept = 0.0;
    double r2 = 0.0;  // of the linear fit seconds ~ pixels; NaN for < 2 sizes
};

BenchResult run_bench(Family family, SamplerKind sampler, int iters,
                      const std::vector<int>& sizes, std::uint64_t seed);

}  // namespace bayesbd
