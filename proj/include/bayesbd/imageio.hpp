#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bayesbd/model.hpp"
#include "bayesbd/posterior.hpp"

namespace bayesbd {

/// Decode a PNG or JPG image (8-bit grayscale/RGB) into a PolarObservation:
/// grayscale by luminance, pixel centers mapped to [0,1]^2 with row 0 at the
/// top (y near 1), intensities rescaled affinely to [0,10]. If
/// binarize_threshold is given the rescaled values are thresholded to {0,1}.
PolarObservation load_image(const std::string& path, const ReferencePoint& center,
                            std::optional<double> binarize_threshold = std::nullopt);

/// Metadata block shared by the observation file format.
struct ObsMeta {
    std::string command;  // invocation echo, may be empty
    std::string family;   // "binary", "gaussian", or empty
    int m = 0;            // generating grid size, 0 when unknown
};

void write_observation(const PolarObservation& obs, const ObsMeta& meta,
                       const std::string& path);
PolarObservation read_observation(const std::string& path, ObsMeta* meta = nullptr);

/// Metadata echoed into fit files.
struct FitMeta {
    std::string command;
    std::string family;
    std::string sampler;
    std::uint64_t seed = 0;
    int nrun = 0;
    int nburn = 0;
    int J = 0;
    ReferencePoint center;
};

void write_fit(const PosteriorSummary& summary, std::span<const std::uint8_t> membership,
               const FitMeta& meta, const std::string& path);

struct FitFile {
    PosteriorSummary summary;
    std::vector<std::uint8_t> membership;
    FitMeta meta;
};
FitFile read_fit(const std::string& path);

void write_curve(const std::vector<double>& theta, const std::vector<double>& radius,
                 const ReferencePoint& center, const std::string& path);

struct CurveFile {
    std::vector<double> theta;
    std::vector<double> radius;
    ReferencePoint center;
};
CurveFile read_curve(const std::string& path);

void write_mask(std::span<const std::uint8_t> mask, const std::string& path);
std::vector<std::uint8_t> read_mask(const std::string& path);

enum class PlotMode { data_only, bands_only, overlay };

/// Scalable-vector plot of the observation and/or the posterior summary:
/// pixels as intensity-colored squares, the estimate and both band edges as
/// closed paths. `summary` may be null only in data_only mode.
void render_svg(const PolarObservation& obs, const PosteriorSummary* summary, PlotMode mode,
                const std::string& path);

}  // namespace bayesbd
