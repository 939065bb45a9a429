#include "bayesbd/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bayesbd/imageio.hpp"
#include "bayesbd/metrics.hpp"
#include "bayesbd/posterior.hpp"
#include "bayesbd/simulate.hpp"

namespace bayesbd {

namespace {

bool is_image_path(const std::string& path) {
    auto lower = path;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lower.ends_with(".png") || lower.ends_with(".jpg") || lower.ends_with(".jpeg");
}

std::string join_args(const std::vector<std::string>& args) {
    std::string out = "bayesbd";
    for (const auto& a : args) {
        out += " ";
        out += a;
    }
    return out;
}

ReferencePoint to_center(const std::vector<double>& xy) {
    return ReferencePoint{xy.at(0), xy.at(1)};
}

Ordering parse_ordering(const std::string& s) {
    if (s == "I") return Ordering::inside_higher;
    if (s == "O") return Ordering::outside_higher;
    if (s == "N") return Ordering::none;
    throw CLI::ValidationError("--ordering", "must be one of I, O, N");
}

Design parse_design(const std::string& s) {
    if (s == "D") return Design::deterministic_grid;
    if (s == "U") return Design::uniform_random;
    if (s == "J") return Design::jittered;
    throw CLI::ValidationError("--design", "must be one of D, U, J");
}

std::map<std::string, double> parse_kv(const std::string& spec) {
    std::map<std::string, double> kv;
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("expected key=value, got '" + item + "'");
        kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return kv;
}

double kv_get(const std::map<std::string, double>& kv, const std::string& key,
              std::optional<double> fallback = std::nullopt) {
    const auto it = kv.find(key);
    if (it != kv.end()) return it->second;
    if (fallback) return *fallback;
    throw std::runtime_error("missing parameter '" + key + "' in truth spec");
}

/// Truth specs: "circle:radius=0.3", "ellipse:a=0.35,b=0.25,rot=1.05,dx=0.1,dy=0.1"
/// (rot_deg accepted in place of rot), "triangle:height=0.5", or a path to a
/// bayesbd-curve file (center must then match `expected_center`).
RadialBoundary parse_truth(const std::string& spec, const ReferencePoint& expected_center) {
    const auto colon = spec.find(':');
    const std::string kind = colon == std::string::npos ? "" : spec.substr(0, colon);
    if (kind == "circle" || kind == "ellipse" || kind == "triangle") {
        const auto kv = parse_kv(spec.substr(colon + 1));
        if (kind == "circle") return circle_boundary(kv_get(kv, "radius"));
        if (kind == "triangle") return triangle_boundary(kv_get(kv, "height"));
        double rot = kv_get(kv, "rot", 0.0);
        if (kv.count("rot_deg")) rot = kv.at("rot_deg") * kTwoPi / 360.0;
        return ellipse_boundary(kv_get(kv, "a"), kv_get(kv, "b"), rot, kv_get(kv, "dx", 0.0),
                                kv_get(kv, "dy", 0.0));
    }
    const CurveFile curve = read_curve(spec);
    if (std::fabs(curve.center.x - expected_center.x) > 1e-9 ||
        std::fabs(curve.center.y - expected_center.y) > 1e-9)
        throw std::runtime_error("truth curve center (" + std::to_string(curve.center.x) + "," +
                                 std::to_string(curve.center.y) +
                                 ") does not match the fit's reference point");
    return sampled_boundary(curve.theta, curve.radius);
}

struct FitFlags {
    std::string input;
    std::string family;
    std::vector<double> center;
    double inimean = std::numeric_limits<double>::quiet_NaN();  // NaN: not given
    int nrun = 4000;
    int nburn = 1000;
    int J = 10;
    std::string ordering = "N";
    std::string ordering_sd = "N";
    std::string sampler = "slice";
    std::string mask_path;
    double binarize = std::numeric_limits<double>::quiet_NaN();  // NaN: not given
    double level = 0.95;
    std::string edge = "outer";
    std::uint64_t seed = 0;
    bool output_all = false;
};

void add_fit_flags(CLI::App* cmd, FitFlags* f, bool with_input_and_center) {
    if (with_input_and_center) {
        cmd->add_option("--input", f->input, "observation file or .png/.jpg image")
            ->required();
        cmd->add_option("--center", f->center,
                        "reference point x,y (required for images, overrides the "
                        "observation file's center otherwise)")
            ->delimiter(',')
            ->expected(2);
    }
    cmd->add_option("--family", f->family, "binary or gaussian")
        ->required()
        ->check(CLI::IsMember({"binary", "gaussian"}));
    cmd->add_option("--inimean", f->inimean,
                    "initial boundary radius (default: maximum likelihood)");
    cmd->add_option("--nrun", f->nrun, "kept MCMC sweeps")->capture_default_str();
    cmd->add_option("--nburn", f->nburn, "burn-in sweeps")->capture_default_str();
    cmd->add_option("--J", f->J, "number of cosine/sine pairs (2J+1 basis functions)")
        ->capture_default_str();
    cmd->add_option("--ordering", f->ordering,
                    "I/O/N: which region has the higher success probability (binary) "
                    "or mean (gaussian)")
        ->check(CLI::IsMember({"I", "O", "N"}));
    cmd->add_option("--ordering-sd", f->ordering_sd,
                    "I/O/N ordering of the gaussian standard deviations")
        ->check(CLI::IsMember({"I", "O", "N"}));
    cmd->add_option("--sampler", f->sampler, "mh or slice")
        ->check(CLI::IsMember({"mh", "slice"}))
        ->capture_default_str();
    cmd->add_option("--mask", f->mask_path, "bayesbd-mask file restricting the fit");
    cmd->add_option("--binarize", f->binarize,
                    "threshold applied to [0,10]-scaled image intensities");
    cmd->add_option("--level", f->level, "credible band level")->capture_default_str();
    cmd->add_option("--edge", f->edge, "band edge used for the membership table")
        ->check(CLI::IsMember({"outer", "mean", "inner"}))
        ->capture_default_str();
    cmd->add_option("--seed", f->seed, "RNG seed")->capture_default_str();
    cmd->add_flag("--output-all", f->output_all,
                  "also write parameter traces to <out>.trace");
}

PolarObservation load_input(const FitFlags& f, ObsMeta* meta) {
    if (is_image_path(f.input)) {
        if (f.center.empty())
            throw std::runtime_error("--center is required when fitting an image file");
        std::optional<double> thr;
        if (!std::isnan(f.binarize)) thr = f.binarize;
        return load_image(f.input, to_center(f.center), thr);
    }
    PolarObservation obs = read_observation(f.input, meta);
    if (!f.center.empty()) obs.recenter(to_center(f.center));
    return obs;
}

FitConfig make_config(const FitFlags& f) {
    FitConfig cfg;
    cfg.nrun = f.nrun;
    cfg.nburn = f.nburn;
    cfg.J = f.J;
    cfg.sampler = f.sampler == "mh" ? SamplerKind::mh : SamplerKind::slice;
    cfg.ordering = parse_ordering(f.ordering);
    cfg.ordering_sd = parse_ordering(f.ordering_sd);
    cfg.seed = f.seed;
    if (!std::isnan(f.inimean)) cfg.inimean = f.inimean;
    cfg.output_all = f.output_all;
    return cfg;
}

BandEdge parse_edge(const std::string& s) {
    if (s == "outer") return BandEdge::outer;
    if (s == "inner") return BandEdge::inner;
    return BandEdge::mean;
}

void apply_mask_file(PolarObservation* obs, const std::string& path) {
    if (path.empty()) return;
    const auto mask = read_mask(path);
    if (mask.size() != obs->size())
        throw std::runtime_error("mask length " + std::to_string(mask.size()) +
                                 " does not match observation size " +
                                 std::to_string(obs->size()));
    if (obs->mask.empty()) {
        obs->mask = mask;
    } else {
        for (std::size_t i = 0; i < mask.size(); ++i) obs->mask[i] &= mask[i];
    }
}

void write_trace(const ChainOutput& chain, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    const std::size_t L = chain.z_trace.empty() ? 0 : chain.z_trace[0].size();
    out << "bayesbd-trace v1\n";
    out << "nrun " << chain.z_trace.size() << "\n";
    out << "L " << L << "\n";
    out << "nuisance " << (chain.nuisance_trace.empty() ? 0 : chain.nuisance_trace[0].size())
        << "\n";
    out << "columns z*L a tau nuisance*\n";
    out << "data\n";
    for (std::size_t t = 0; t < chain.z_trace.size(); ++t) {
        for (const double z : chain.z_trace[t]) out << fmt(z) << " ";
        out << fmt(chain.a_trace[t]) << " " << fmt(chain.tau_trace[t]);
        for (const double v : chain.nuisance_trace[t]) out << " " << fmt(v);
        out << "\n";
    }
    out << "end\n";
}

// ----------------------------------------------------------------- simulate

int cmd_simulate(const std::string& echo, const std::string& family, int m,
                 const std::string& boundary_kind, const std::map<std::string, double>& shape,
                 const std::string& design, const std::vector<double>& center, double pi_in,
                 double pi_out, double mu_in, double mu_out, double sd_in, double sd_out,
                 std::uint64_t seed, const std::string& out_path, const std::string& svg_path) {
    RadialBoundary boundary = [&] {
        if (boundary_kind == "circle") return circle_boundary(kv_get(shape, "radius", 0.3));
        if (boundary_kind == "triangle")
            return triangle_boundary(kv_get(shape, "height", 0.5));
        double rot = kv_get(shape, "rot", 0.0);
        if (shape.count("rot_deg")) rot = shape.at("rot_deg") * kTwoPi / 360.0;
        return ellipse_boundary(kv_get(shape, "a", 0.35), kv_get(shape, "b", 0.25), rot,
                                kv_get(shape, "dx", 0.0), kv_get(shape, "dy", 0.0));
    }();

    Rng rng(seed);
    const ReferencePoint c = to_center(center);
    PolarObservation obs;
    if (family == "binary") {
        obs = gen_binary(m, pi_in, pi_out, parse_design(design), boundary, c, rng);
    } else {
        obs = gen_gaussian(m, mu_in, mu_out, sd_in, sd_out, parse_design(design), boundary, c,
                           rng);
    }
    ObsMeta meta;
    meta.command = echo;
    meta.family = family;
    meta.m = m;
    write_observation(obs, meta, out_path);
    if (!svg_path.empty()) render_svg(obs, nullptr, PlotMode::data_only, svg_path);
    return 0;
}

// ---------------------------------------------------------------------- fit

int cmd_fit(const std::string& echo, const FitFlags& flags, const std::string& out_path,
            const std::string& svg_path, const std::string& svg_mode) {
    if (flags.nrun < 2) throw CLI::ValidationError("--nrun", "must be >= 2");
    ObsMeta in_meta;
    PolarObservation obs = load_input(flags, &in_meta);
    apply_mask_file(&obs, flags.mask_path);

    FitConfig cfg = make_config(flags);
    const ChainOutput chain =
        flags.family == "binary" ? gibbs_binary(obs, cfg) : gibbs_gaussian(obs, cfg);
    const PosteriorSummary summary = summarize(chain, flags.level);
    const auto membership = membership_export(summary, obs, parse_edge(flags.edge));

    FitMeta meta;
    meta.command = echo;
    meta.family = flags.family;
    meta.sampler = flags.sampler;
    meta.seed = flags.seed;
    meta.nrun = flags.nrun;
    meta.nburn = flags.nburn;
    meta.J = flags.J;
    meta.center = obs.center;
    write_fit(summary, membership, meta, out_path);
    if (flags.output_all) write_trace(chain, out_path + ".trace");
    if (!svg_path.empty()) {
        const PlotMode mode = svg_mode == "data"    ? PlotMode::data_only
                              : svg_mode == "bands" ? PlotMode::bands_only
                                                    : PlotMode::overlay;
        render_svg(obs, mode == PlotMode::data_only ? nullptr : &summary, mode, svg_path);
    }
    return 0;
}

// ------------------------------------------------------------------ metrics

int cmd_metrics(const std::string& fit_path, const std::string& truth_spec) {
    const FitFile fit = read_fit(fit_path);
    const RadialBoundary estimate = sampled_boundary(fit.summary.theta, fit.summary.estimate);
    const RadialBoundary truth = parse_truth(truth_spec, fit.meta.center);
    std::printf("lebesgue_error %.6f\n", lebesgue_error(estimate, truth));
    std::printf("dsm_error %.6f\n", dsm_error(estimate, truth));
    std::printf("hausdorff_error %.6f\n", hausdorff_error(estimate, truth));
    return 0;
}

// -------------------------------------------------------------------- bench

int cmd_bench(const std::string& family, const std::string& sampler, int iters,
              const std::vector<int>& sizes, std::uint64_t seed) {
    const BenchResult res =
        run_bench(family == "binary" ? Family::binary : Family::gaussian,
                  sampler == "mh" ? SamplerKind::mh : SamplerKind::slice, iters, sizes, seed);
    std::printf("%8s %10s %12s\n", "m", "pixels", "seconds");
    for (std::size_t i = 0; i < res.sizes.size(); ++i)
        std::printf("%8d %10d %12.3f\n", res.sizes[i], res.sizes[i] * res.sizes[i],
                    res.seconds[i]);
    if (res.sizes.size() >= 2) {
        std::printf("linear fit: seconds = %.3e * pixels + %.3e (R^2 = %.4f)\n", res.slope,
                    res.intercept, res.r2);
    }
    return 0;
}

// ----------------------------------------------------------------- multifit

int cmd_multifit(const std::string& echo, const FitFlags& flags, int stages,
                 const std::vector<double>& centers, const std::string& out_prefix) {
    if (stages < 2) throw CLI::ValidationError("--stages", "must be >= 2");
    if (centers.size() != static_cast<std::size_t>(2 * stages))
        throw CLI::ValidationError("--centers",
                                   "need exactly one x,y pair per stage (" +
                                       std::to_string(2 * stages) + " numbers)");
    constexpr std::size_t kMinPixels = 100;

    FitFlags stage_flags = flags;
    stage_flags.center = {centers[0], centers[1]};
    ObsMeta in_meta;
    PolarObservation obs = load_input(stage_flags, &in_meta);
    apply_mask_file(&obs, flags.mask_path);
    if (obs.mask.empty()) obs.mask.assign(obs.size(), 1);

    for (int stage = 0; stage < stages; ++stage) {
        obs.recenter(ReferencePoint{centers[2 * static_cast<std::size_t>(stage)],
                                    centers[2 * static_cast<std::size_t>(stage) + 1]});
        std::size_t retained = 0;
        for (const auto m : obs.mask) retained += (m != 0);
        if (retained < kMinPixels) {
            std::fprintf(stderr,
                         "multifit: stage %d mask retains %zu pixels (< %zu); stopping with "
                         "results of %d completed stage(s)\n",
                         stage + 1, retained, kMinPixels, stage);
            return 1;
        }

        FitConfig cfg = make_config(flags);
        cfg.seed = flags.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(stage));
        const ChainOutput chain =
            flags.family == "binary" ? gibbs_binary(obs, cfg) : gibbs_gaussian(obs, cfg);
        const PosteriorSummary summary = summarize(chain, flags.level);
        const auto membership = membership_export(summary, obs, BandEdge::outer);

        FitMeta meta;
        meta.command = echo;
        meta.family = flags.family;
        meta.sampler = flags.sampler;
        meta.seed = cfg.seed;
        meta.nrun = flags.nrun;
        meta.nburn = flags.nburn;
        meta.J = flags.J;
        meta.center = obs.center;
        write_fit(summary, membership, meta,
                  out_prefix + ".stage" + std::to_string(stage + 1) + ".fit");

        for (std::size_t i = 0; i < obs.size(); ++i) obs.mask[i] &= membership[i];
    }
    return 0;
}

}  // namespace

BenchResult run_bench(Family family, SamplerKind sampler, int iters,
                      const std::vector<int>& sizes, std::uint64_t seed) {
    if (iters < 2) throw std::invalid_argument("bench: iters must be >= 2");
    BenchResult res;
    const RadialBoundary boundary = triangle_boundary(0.5);
    const ReferencePoint center{0.5, 0.5};
    for (const int m : sizes) {
        Rng rng(seed);
        PolarObservation obs =
            family == Family::binary
                ? gen_binary(m, 0.5, 0.2, Design::jittered, boundary, center, rng)
                : gen_gaussian(m, 1.0, -1.0, 1.0, 1.0, Design::jittered, boundary, center, rng);
        FitConfig cfg;
        cfg.nrun = iters;
        cfg.nburn = 0;
        cfg.sampler = sampler;
        cfg.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        const ChainOutput chain =
            family == Family::binary ? gibbs_binary(obs, cfg) : gibbs_gaussian(obs, cfg);
        const auto t1 = std::chrono::steady_clock::now();
        (void)chain;
        res.sizes.push_back(m);
        res.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    if (res.sizes.size() >= 2) {
        // Least squares of seconds on pixel count.
        const std::size_t k = res.sizes.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const double x = static_cast<double>(res.sizes[i]) * res.sizes[i];
            sx += x;
            sy += res.seconds[i];
            sxx += x * x;
            sxy += x * res.seconds[i];
        }
        const double n = static_cast<double>(k);
        res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        res.intercept = (sy - res.slope * sx) / n;
        double ss_res = 0, ss_tot = 0;
        const double mean_y = sy / n;
        for (std::size_t i = 0; i < k; ++i) {
            const double x = static_cast<double>(res.sizes[i]) * res.sizes[i];
            const double fitv = res.slope * x + res.intercept;
            ss_res += (res.seconds[i] - fitv) * (res.seconds[i] - fitv);
            ss_tot += (res.seconds[i] - mean_y) * (res.seconds[i] - mean_y);
        }
        res.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    } else {
        res.r2 = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Bayesian boundary detection for noisy images"};
    app.require_subcommand(1);
    const std::string echo = join_args(args);

    // --- simulate
    auto* sim = app.add_subcommand("simulate", "generate a synthetic observation");
    std::string sim_family, sim_boundary = "ellipse", sim_design = "J", sim_shape;
    int sim_m = 100;
    std::vector<double> sim_center{0.5, 0.5};
    double pi_in = -1, pi_out = -1, mu_in = 0, mu_out = 0, sd_in = 0, sd_out = 0;
    std::uint64_t sim_seed = 0;
    std::string sim_out, sim_svg;
    sim->add_option("--family", sim_family, "binary or gaussian")
        ->required()
        ->check(CLI::IsMember({"binary", "gaussian"}));
    sim->add_option("--m", sim_m, "generate m x m pixels")->capture_default_str();
    sim->add_option("--boundary", sim_boundary, "ellipse, triangle, or circle")
        ->check(CLI::IsMember({"ellipse", "triangle", "circle"}))
        ->capture_default_str();
    sim->add_option("--shape", sim_shape,
                    "shape parameters, e.g. a=0.35,b=0.25,rot=1.0472,dx=0.1,dy=0.1 "
                    "(rot_deg accepted), height=0.5, radius=0.3");
    sim->add_option("--design", sim_design, "D (grid), U (uniform), J (jittered)")
        ->check(CLI::IsMember({"D", "U", "J"}))
        ->capture_default_str();
    sim->add_option("--center", sim_center, "reference point x,y")
        ->delimiter(',')
        ->expected(2);
    sim->add_option("--pi-in", pi_in, "success probability inside (binary)");
    sim->add_option("--pi-out", pi_out, "success probability outside (binary)");
    sim->add_option("--mu-in", mu_in, "mean inside (gaussian)");
    sim->add_option("--mu-out", mu_out, "mean outside (gaussian)");
    sim->add_option("--sd-in", sd_in, "sd inside (gaussian)");
    sim->add_option("--sd-out", sd_out, "sd outside (gaussian)");
    sim->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
    sim->add_option("--out", sim_out, "output observation file")->required();
    sim->add_option("--svg", sim_svg, "also render the data to this SVG file");

    // --- fit
    auto* fitc = app.add_subcommand("fit", "sample the posterior boundary of an image");
    FitFlags fit_flags;
    std::string fit_out, fit_svg, fit_svg_mode = "overlay";
    add_fit_flags(fitc, &fit_flags, true);
    fitc->add_option("--out", fit_out, "output fit file")->required();
    fitc->add_option("--svg", fit_svg, "also render to this SVG file");
    fitc->add_option("--svg-mode", fit_svg_mode, "data, bands, or overlay")
        ->check(CLI::IsMember({"data", "bands", "overlay"}))
        ->capture_default_str();

    // --- metrics
    auto* met = app.add_subcommand("metrics", "compare a fit against a reference boundary");
    std::string met_fit, met_truth;
    met->add_option("--fit", met_fit, "fit file")->required();
    met->add_option("--truth", met_truth,
                    "named shape (circle:radius=..., ellipse:a=...,b=...,"
                    "rot=...,dx=...,dy=..., triangle:height=...) or a bayesbd-curve file")
        ->required();

    // --- bench
    auto* ben = app.add_subcommand("bench", "time fixed-iteration fits across image sizes");
    std::string ben_family, ben_sampler = "mh";
    std::vector<int> ben_sizes{40, 60, 80, 100};
    int ben_iters = 500;
    std::uint64_t ben_seed = 0;
    ben->add_option("--family", ben_family, "binary or gaussian")
        ->required()
        ->check(CLI::IsMember({"binary", "gaussian"}));
    ben->add_option("--sampler", ben_sampler, "mh or slice")
        ->check(CLI::IsMember({"mh", "slice"}))
        ->capture_default_str();
    ben->add_option("--sizes", ben_sizes, "comma-separated grid sides m")->delimiter(',');
    ben->add_option("--iters", ben_iters, "MCMC sweeps per fit")->capture_default_str();
    ben->add_option("--seed", ben_seed, "RNG seed")->capture_default_str();

    // --- multifit
    auto* multi = app.add_subcommand("multifit", "iterative nested fits for multiple regions");
    FitFlags multi_flags;
    int multi_stages = 2;
    std::vector<double> multi_centers;
    std::string multi_prefix;
    add_fit_flags(multi, &multi_flags, false);
    multi->add_option("--input", multi_flags.input, "observation file or .png/.jpg image")
        ->required();
    multi->add_option("--stages", multi_stages, "number of nested fits")->capture_default_str();
    multi->add_option("--centers", multi_centers,
                      "comma-separated reference points, one x,y pair per stage")
        ->delimiter(',')
        ->required();
    multi->add_option("--out-prefix", multi_prefix, "fit files <prefix>.stageK.fit")
        ->required();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("bayesbd");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sim->parsed()) {
            if (sim_family == "binary" && (pi_in < 0 || pi_out < 0))
                throw std::runtime_error("simulate: --pi-in and --pi-out are required for "
                                         "--family binary");
            if (sim_family == "gaussian" && (sd_in <= 0 || sd_out <= 0))
                throw std::runtime_error("simulate: --mu-in/--mu-out/--sd-in/--sd-out are "
                                         "required for --family gaussian");
            const auto shape = sim_shape.empty() ? std::map<std::string, double>{}
                                                 : parse_kv(sim_shape);
            return cmd_simulate(echo, sim_family, sim_m, sim_boundary, shape, sim_design,
                                sim_center, pi_in, pi_out, mu_in, mu_out, sd_in, sd_out,
                                sim_seed, sim_out, sim_svg);
        }
        if (fitc->parsed()) return cmd_fit(echo, fit_flags, fit_out, fit_svg, fit_svg_mode);
        if (met->parsed()) return cmd_metrics(met_fit, met_truth);
        if (ben->parsed()) return cmd_bench(ben_family, ben_sampler, ben_iters, ben_sizes,
                                            ben_seed);
        if (multi->parsed())
            return cmd_multifit(echo, multi_flags, multi_stages, multi_centers, multi_prefix);
    } catch (const std::exception& e) {
        std::cerr << "bayesbd: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace bayesbd
