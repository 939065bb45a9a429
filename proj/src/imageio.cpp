#include "bayesbd/imageio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <jpeglib.h>
#include <png.h>

namespace bayesbd {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    std::string tail = s.substr(s.size() - suffix.size());
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return tail == suffix;
}

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> gray;  // row-major, luminance in [0,255]
};

GrayImage decode_png(const std::string& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw std::runtime_error("load_image: cannot decode PNG '" + path +
                                 "': " + image.message);
    image.format = PNG_FORMAT_RGB;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw std::runtime_error("load_image: cannot decode PNG '" + path + "': " + msg);
    }
    GrayImage out;
    out.width = static_cast<int>(image.width);
    out.height = static_cast<int>(image.height);
    out.gray.resize(static_cast<std::size_t>(out.width) * out.height);
    for (std::size_t p = 0; p < out.gray.size(); ++p) {
        const double r = buffer[3 * p + 0];
        const double g = buffer[3 * p + 1];
        const double b = buffer[3 * p + 2];
        out.gray[p] = 0.2126 * r + 0.7152 * g + 0.0722 * b;
    }
    return out;
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

GrayImage decode_jpeg(const std::string& path) {
    std::FILE* file = std::fopen(path.c_str(), "rb");
    if (!file) throw std::runtime_error("load_image: cannot open '" + path + "'");

    jpeg_decompress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit;

    GrayImage out;
    std::vector<unsigned char> row;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_decompress(&cinfo);
        std::fclose(file);
        throw std::runtime_error("load_image: cannot decode JPEG '" + path +
                                 "': " + jerr.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, file);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    out.width = static_cast<int>(cinfo.output_width);
    out.height = static_cast<int>(cinfo.output_height);
    out.gray.resize(static_cast<std::size_t>(out.width) * out.height);
    row.resize(static_cast<std::size_t>(out.width) * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        unsigned char* rows[1] = {row.data()};
        const auto y = cinfo.output_scanline;
        jpeg_read_scanlines(&cinfo, rows, 1);
        for (int x = 0; x < out.width; ++x) {
            const double r = row[3 * static_cast<std::size_t>(x) + 0];
            const double g = row[3 * static_cast<std::size_t>(x) + 1];
            const double b = row[3 * static_cast<std::size_t>(x) + 2];
            out.gray[static_cast<std::size_t>(y) * out.width + x] =
                0.2126 * r + 0.7152 * g + 0.0722 * b;
        }
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    std::fclose(file);
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream outf(path);
    if (!outf) throw std::runtime_error("cannot write '" + path + "'");
    return outf;
}

void expect_header(std::istream& in, const std::string& magic, const std::string& path) {
    std::string line;
    if (!std::getline(in, line) || line != magic)
        throw std::runtime_error("'" + path + "': expected header '" + magic + "'");
}

// Reads "key value..." lines up to and including the given terminator key.
// Calls handle(key, rest-of-line) for every other line.
template <class Handler>
void read_keys_until(std::istream& in, const std::string& terminator, const std::string& path,
                     Handler&& handle) {
    std::string line;
    while (std::getline(in, line)) {
        if (line == terminator) return;
        const auto sp = line.find(' ');
        const std::string key = line.substr(0, sp);
        const std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
        handle(key, rest);
    }
    throw std::runtime_error("'" + path + "': missing '" + terminator + "' section");
}

}  // namespace

PolarObservation load_image(const std::string& path, const ReferencePoint& center,
                            std::optional<double> binarize_threshold) {
    GrayImage img;
    if (ends_with(path, ".png"))
        img = decode_png(path);
    else if (ends_with(path, ".jpg") || ends_with(path, ".jpeg"))
        img = decode_jpeg(path);
    else
        throw std::runtime_error("load_image: '" + path + "' is not a .png or .jpg file");

    const auto [mn_it, mx_it] = std::minmax_element(img.gray.begin(), img.gray.end());
    const double mn = *mn_it, mx = *mx_it;
    if (mx == mn)
        throw std::runtime_error("load_image: '" + path + "' has zero dynamic range");

    PolarObservation obs;
    obs.center = center;
    obs.intensity.reserve(img.gray.size());
    obs.theta.reserve(img.gray.size());
    obs.r.reserve(img.gray.size());
    for (int row = 0; row < img.height; ++row) {
        const double y = 1.0 - (row + 0.5) / img.height;  // row 0 is the top of the image
        for (int col = 0; col < img.width; ++col) {
            const double x = (col + 0.5) / img.width;
            double v = 10.0 * (img.gray[static_cast<std::size_t>(row) * img.width + col] - mn) /
                       (mx - mn);
            if (binarize_threshold) v = v >= *binarize_threshold ? 1.0 : 0.0;
            const PolarPoint p = rect_to_polar(x, y, center);
            obs.intensity.push_back(v);
            obs.theta.push_back(p.theta);
            obs.r.push_back(p.r);
        }
    }
    return obs;
}

void write_observation(const PolarObservation& obs, const ObsMeta& meta,
                       const std::string& path) {
    obs.validate();
    auto out = open_output(path);
    out << "bayesbd-obs v1\n";
    if (!meta.command.empty()) out << "command " << meta.command << "\n";
    if (!meta.family.empty()) out << "family " << meta.family << "\n";
    if (meta.m > 0) out << "m " << meta.m << "\n";
    out << "center " << fmt(obs.center.x) << " " << fmt(obs.center.y) << "\n";
    out << "n " << obs.size() << "\n";
    out << "columns theta r intensity" << (obs.mask.empty() ? "" : " mask") << "\n";
    out << "data\n";
    for (std::size_t i = 0; i < obs.size(); ++i) {
        out << fmt(obs.theta[i]) << " " << fmt(obs.r[i]) << " " << fmt(obs.intensity[i]);
        if (!obs.mask.empty()) out << " " << static_cast<int>(obs.mask[i]);
        out << "\n";
    }
    out << "end\n";
    if (!out) throw std::runtime_error("write_observation: failed writing '" + path + "'");
}

PolarObservation read_observation(const std::string& path, ObsMeta* meta) {
    auto in = open_input(path);
    expect_header(in, "bayesbd-obs v1", path);
    PolarObservation obs;
    std::size_t n = 0;
    bool has_mask = false;
    read_keys_until(in, "data", path, [&](const std::string& key, const std::string& rest) {
        std::istringstream ss(rest);
        if (key == "center") {
            ss >> obs.center.x >> obs.center.y;
        } else if (key == "n") {
            ss >> n;
        } else if (key == "columns") {
            has_mask = rest.find("mask") != std::string::npos;
        } else if (key == "family" && meta) {
            meta->family = rest;
        } else if (key == "m" && meta) {
            ss >> meta->m;
        } else if (key == "command" && meta) {
            meta->command = rest;
        }
    });
    obs.intensity.resize(n);
    obs.theta.resize(n);
    obs.r.resize(n);
    if (has_mask) obs.mask.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(in >> obs.theta[i] >> obs.r[i] >> obs.intensity[i]))
            throw std::runtime_error("'" + path + "': truncated data section");
        if (has_mask) {
            int m = 0;
            if (!(in >> m)) throw std::runtime_error("'" + path + "': truncated mask column");
            obs.mask[i] = m != 0;
        }
    }
    obs.validate();
    return obs;
}

void write_fit(const PosteriorSummary& summary, std::span<const std::uint8_t> membership,
               const FitMeta& meta, const std::string& path) {
    auto out = open_output(path);
    out << "bayesbd-fit v1\n";
    if (!meta.command.empty()) out << "command " << meta.command << "\n";
    if (!meta.family.empty()) out << "family " << meta.family << "\n";
    if (!meta.sampler.empty()) out << "sampler " << meta.sampler << "\n";
    out << "seed " << meta.seed << "\n";
    out << "nrun " << meta.nrun << "\n";
    out << "nburn " << meta.nburn << "\n";
    out << "J " << meta.J << "\n";
    out << "center " << fmt(meta.center.x) << " " << fmt(meta.center.y) << "\n";
    out << "level " << fmt(summary.level) << "\n";
    out << "L0 " << fmt(summary.L0) << "\n";
    out << "accept_rate " << fmt(summary.diag.accept_rate) << "\n";
    out << "unique_fraction " << fmt(summary.diag.unique_fraction) << "\n";
    out << "grid " << summary.theta.size() << "\n";
    out << "columns theta estimate lower upper\n";
    out << "curve\n";
    for (std::size_t g = 0; g < summary.theta.size(); ++g) {
        out << fmt(summary.theta[g]) << " " << fmt(summary.estimate[g]) << " "
            << fmt(summary.lower[g]) << " " << fmt(summary.upper[g]) << "\n";
    }
    out << "membership " << membership.size() << "\n";
    for (std::size_t i = 0; i < membership.size(); ++i)
        out << static_cast<int>(membership[i])
            << ((i + 1) % 40 == 0 || i + 1 == membership.size() ? "\n" : " ");
    out << "end\n";
    if (!out) throw std::runtime_error("write_fit: failed writing '" + path + "'");
}

FitFile read_fit(const std::string& path) {
    auto in = open_input(path);
    expect_header(in, "bayesbd-fit v1", path);
    FitFile fit;
    std::size_t grid = 0;
    read_keys_until(in, "curve", path, [&](const std::string& key, const std::string& rest) {
        std::istringstream ss(rest);
        if (key == "command")
            fit.meta.command = rest;
        else if (key == "family")
            fit.meta.family = rest;
        else if (key == "sampler")
            fit.meta.sampler = rest;
        else if (key == "seed")
            ss >> fit.meta.seed;
        else if (key == "nrun")
            ss >> fit.meta.nrun;
        else if (key == "nburn")
            ss >> fit.meta.nburn;
        else if (key == "J")
            ss >> fit.meta.J;
        else if (key == "center")
            ss >> fit.meta.center.x >> fit.meta.center.y;
        else if (key == "level")
            ss >> fit.summary.level;
        else if (key == "L0")
            ss >> fit.summary.L0;
        else if (key == "accept_rate")
            ss >> fit.summary.diag.accept_rate;
        else if (key == "unique_fraction")
            ss >> fit.summary.diag.unique_fraction;
        else if (key == "grid")
            ss >> grid;
    });
    if (grid == 0) throw std::runtime_error("'" + path + "': missing grid size");
    fit.summary.theta.resize(grid);
    fit.summary.estimate.resize(grid);
    fit.summary.lower.resize(grid);
    fit.summary.upper.resize(grid);
    for (std::size_t g = 0; g < grid; ++g) {
        if (!(in >> fit.summary.theta[g] >> fit.summary.estimate[g] >> fit.summary.lower[g] >>
              fit.summary.upper[g]))
            throw std::runtime_error("'" + path + "': truncated curve section");
    }
    std::string key;
    std::size_t n = 0;
    if (!(in >> key >> n) || key != "membership")
        throw std::runtime_error("'" + path + "': missing membership section");
    fit.membership.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int v = 0;
        if (!(in >> v)) throw std::runtime_error("'" + path + "': truncated membership");
        fit.membership[i] = v != 0;
    }
    return fit;
}

void write_curve(const std::vector<double>& theta, const std::vector<double>& radius,
                 const ReferencePoint& center, const std::string& path) {
    if (theta.size() != radius.size())
        throw std::invalid_argument("write_curve: theta and radius lengths disagree");
    auto out = open_output(path);
    out << "bayesbd-curve v1\n";
    out << "center " << fmt(center.x) << " " << fmt(center.y) << "\n";
    out << "grid " << theta.size() << "\n";
    out << "columns theta radius\n";
    out << "curve\n";
    for (std::size_t g = 0; g < theta.size(); ++g)
        out << fmt(theta[g]) << " " << fmt(radius[g]) << "\n";
    out << "end\n";
    if (!out) throw std::runtime_error("write_curve: failed writing '" + path + "'");
}

CurveFile read_curve(const std::string& path) {
    auto in = open_input(path);
    expect_header(in, "bayesbd-curve v1", path);
    CurveFile curve;
    std::size_t grid = 0;
    read_keys_until(in, "curve", path, [&](const std::string& key, const std::string& rest) {
        std::istringstream ss(rest);
        if (key == "center")
            ss >> curve.center.x >> curve.center.y;
        else if (key == "grid")
            ss >> grid;
    });
    curve.theta.resize(grid);
    curve.radius.resize(grid);
    for (std::size_t g = 0; g < grid; ++g)
        if (!(in >> curve.theta[g] >> curve.radius[g]))
            throw std::runtime_error("'" + path + "': truncated curve section");
    return curve;
}

void write_mask(std::span<const std::uint8_t> mask, const std::string& path) {
    auto out = open_output(path);
    out << "bayesbd-mask v1\n";
    out << "n " << mask.size() << "\n";
    out << "data\n";
    for (std::size_t i = 0; i < mask.size(); ++i)
        out << static_cast<int>(mask[i])
            << ((i + 1) % 40 == 0 || i + 1 == mask.size() ? "\n" : " ");
    out << "end\n";
    if (!out) throw std::runtime_error("write_mask: failed writing '" + path + "'");
}

std::vector<std::uint8_t> read_mask(const std::string& path) {
    auto in = open_input(path);
    expect_header(in, "bayesbd-mask v1", path);
    std::size_t n = 0;
    read_keys_until(in, "data", path, [&](const std::string& key, const std::string& rest) {
        if (key == "n") std::istringstream(rest) >> n;
    });
    std::vector<std::uint8_t> mask(n);
    for (std::size_t i = 0; i < n; ++i) {
        int v = 0;
        if (!(in >> v)) throw std::runtime_error("'" + path + "': truncated mask data");
        mask[i] = v != 0;
    }
    return mask;
}

namespace {

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// Closed path through the curve points (image coordinates -> SVG pixels).
std::string closed_path(const std::vector<double>& theta, const std::vector<double>& radius,
                        const ReferencePoint& center, double scale) {
    std::string d;
    for (std::size_t g = 0; g < theta.size(); ++g) {
        const double x = center.x + radius[g] * std::cos(theta[g]);
        const double y = center.y + radius[g] * std::sin(theta[g]);
        d += (g == 0 ? "M" : " L");
        d += svg_num(x * scale) + "," + svg_num((1.0 - y) * scale);
    }
    d += " Z";
    return d;
}

}  // namespace

void render_svg(const PolarObservation& obs, const PosteriorSummary* summary, PlotMode mode,
                const std::string& path) {
    if (mode != PlotMode::data_only && summary == nullptr)
        throw std::invalid_argument("render_svg: mode requires a posterior summary");

    constexpr double kScale = 600.0;
    auto out = open_output(path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
           "viewBox=\"0 0 600 600\">\n";
    out << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";

    if (mode != PlotMode::bands_only) {
        double mn = std::numeric_limits<double>::infinity();
        double mx = -std::numeric_limits<double>::infinity();
        for (double v : obs.intensity) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        const double span = mx > mn ? mx - mn : 1.0;
        // Pixel mark size from the observation density.
        const double side =
            kScale / std::max(8.0, std::sqrt(static_cast<double>(obs.size())));
        out << "<g shape-rendering=\"crispEdges\">\n";
        for (std::size_t i = 0; i < obs.size(); ++i) {
            const double x = obs.center.x + obs.r[i] * std::cos(obs.theta[i]);
            const double y = obs.center.y + obs.r[i] * std::sin(obs.theta[i]);
            const int shade = static_cast<int>(255.0 * (obs.intensity[i] - mn) / span);
            out << "<rect x=\"" << svg_num(x * kScale - side / 2) << "\" y=\""
                << svg_num((1.0 - y) * kScale - side / 2) << "\" width=\"" << svg_num(side)
                << "\" height=\"" << svg_num(side) << "\" fill=\"rgb(" << shade << "," << shade
                << "," << shade << ")\"/>\n";
        }
        out << "</g>\n";
    }

    if (mode != PlotMode::data_only) {
        const ReferencePoint& c = obs.center;
        out << "<path d=\"" << closed_path(summary->theta, summary->estimate, c, kScale)
            << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
        out << "<path d=\"" << closed_path(summary->theta, summary->lower, c, kScale)
            << "\" fill=\"none\" stroke=\"red\" stroke-width=\"1\" "
               "stroke-dasharray=\"6,4\"/>\n";
        out << "<path d=\"" << closed_path(summary->theta, summary->upper, c, kScale)
            << "\" fill=\"none\" stroke=\"red\" stroke-width=\"1\" "
               "stroke-dasharray=\"6,4\"/>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("render_svg: failed writing '" + path + "'");
}

}  // namespace bayesbd
