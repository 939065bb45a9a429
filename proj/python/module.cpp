#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bayesbd/cli.hpp"
#include "bayesbd/imageio.hpp"
#include "bayesbd/kernel.hpp"
#include "bayesbd/metrics.hpp"
#include "bayesbd/posterior.hpp"
#include "bayesbd/simulate.hpp"

namespace py = pybind11;
using namespace bayesbd;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> to_array2d(const std::vector<std::vector<double>>& rows) {
    const py::ssize_t r = static_cast<py::ssize_t>(rows.size());
    const py::ssize_t c = r > 0 ? static_cast<py::ssize_t>(rows[0].size()) : 0;
    py::array_t<double> out({r, c});
    auto buf = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < r; ++i)
        for (py::ssize_t j = 0; j < c; ++j)
            buf(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return out;
}

Design parse_design_py(const std::string& s) {
    if (s == "D") return Design::deterministic_grid;
    if (s == "U") return Design::uniform_random;
    if (s == "J") return Design::jittered;
    throw py::value_error("design must be one of 'D', 'U', 'J'");
}

Ordering parse_ordering_py(const std::string& s) {
    if (s == "I") return Ordering::inside_higher;
    if (s == "O") return Ordering::outside_higher;
    if (s == "N") return Ordering::none;
    throw py::value_error("ordering must be one of 'I', 'O', 'N'");
}

FitConfig config_from_kwargs(int nrun, int nburn, int J, const std::string& sampler,
                             const std::string& ordering, const std::string& ordering_sd,
                             std::uint64_t seed, std::optional<double> inimean,
                             bool output_all) {
    FitConfig cfg;
    cfg.nrun = nrun;
    cfg.nburn = nburn;
    cfg.J = J;
    if (sampler == "mh")
        cfg.sampler = SamplerKind::mh;
    else if (sampler == "slice")
        cfg.sampler = SamplerKind::slice;
    else
        throw py::value_error("sampler must be 'mh' or 'slice'");
    cfg.ordering = parse_ordering_py(ordering);
    cfg.ordering_sd = parse_ordering_py(ordering_sd);
    cfg.seed = seed;
    cfg.inimean = inimean;
    cfg.output_all = output_all;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bayesian boundary detection for noisy images";

    py::class_<ReferencePoint>(m, "ReferencePoint")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &ReferencePoint::x)
        .def_readwrite("y", &ReferencePoint::y)
        .def("__repr__", [](const ReferencePoint& p) {
            return "ReferencePoint(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
        });

    py::class_<RadialBoundary>(m, "RadialBoundary")
        .def("__call__", [](const RadialBoundary& b, double omega) { return b(omega); })
        .def("__call__", [](const RadialBoundary& b, py::array_t<double> omega) {
            auto in = omega.unchecked<1>();
            py::array_t<double> out(in.shape(0));
            auto o = out.mutable_unchecked<1>();
            for (py::ssize_t i = 0; i < in.shape(0); ++i) o(i) = b(in(i));
            return out;
        });

    m.def("circle_boundary", &circle_boundary, py::arg("radius"));
    m.def("ellipse_boundary", &ellipse_boundary, py::arg("semi_axis_a"), py::arg("semi_axis_b"),
          py::arg("rotation") = 0.0, py::arg("dx") = 0.0, py::arg("dy") = 0.0);
    m.def("triangle_boundary", &triangle_boundary, py::arg("height"));
    m.def("sampled_boundary", &sampled_boundary, py::arg("theta"), py::arg("radius"));

    py::class_<PolarObservation>(m, "PolarObservation")
        .def(py::init<>())
        .def_property_readonly("intensity",
                               [](const PolarObservation& o) { return to_array(o.intensity); })
        .def_property_readonly("theta",
                               [](const PolarObservation& o) { return to_array(o.theta); })
        .def_property_readonly("r", [](const PolarObservation& o) { return to_array(o.r); })
        .def_readwrite("center", &PolarObservation::center)
        .def_property(
            "mask",
            [](const PolarObservation& o) {
                std::vector<bool> v(o.mask.begin(), o.mask.end());
                return v;
            },
            [](PolarObservation& o, const std::vector<bool>& v) {
                o.mask.assign(v.begin(), v.end());
            })
        .def("__len__", &PolarObservation::size);

    m.def(
        "gen_binary",
        [](int m, double pi_in, double pi_out, const std::string& design,
           const RadialBoundary& boundary, const ReferencePoint& center, std::uint64_t seed) {
            Rng rng(seed);
            return gen_binary(m, pi_in, pi_out, parse_design_py(design), boundary, center, rng);
        },
        py::arg("m"), py::arg("pi_in"), py::arg("pi_out"), py::arg("design"),
        py::arg("boundary"), py::arg("center"), py::arg("seed") = 0);
    m.def(
        "gen_gaussian",
        [](int m, double mu_in, double mu_out, double sd_in, double sd_out,
           const std::string& design, const RadialBoundary& boundary,
           const ReferencePoint& center, std::uint64_t seed) {
            Rng rng(seed);
            return gen_gaussian(m, mu_in, mu_out, sd_in, sd_out, parse_design_py(design),
                                boundary, center, rng);
        },
        py::arg("m"), py::arg("mu_in"), py::arg("mu_out"), py::arg("sd_in"), py::arg("sd_out"),
        py::arg("design"), py::arg("boundary"), py::arg("center"), py::arg("seed") = 0);

    py::class_<ChainDiagnostics>(m, "ChainDiagnostics")
        .def_readonly("accept_rate", &ChainDiagnostics::accept_rate)
        .def_readonly("unique_fraction", &ChainDiagnostics::unique_fraction)
        .def_readonly("slice_shrink_failures", &ChainDiagnostics::slice_shrink_failures)
        .def_readonly("nuisance_fallbacks", &ChainDiagnostics::nuisance_fallbacks)
        .def_readonly("mle_degenerate", &ChainDiagnostics::mle_degenerate);

    py::class_<ChainOutput>(m, "ChainOutput")
        .def_property_readonly("theta", [](const ChainOutput& c) { return to_array(c.theta); })
        .def_property_readonly("boundaries",
                               [](const ChainOutput& c) { return to_array2d(c.boundaries); })
        .def_property_readonly("z_trace",
                               [](const ChainOutput& c) { return to_array2d(c.z_trace); })
        .def_property_readonly("a_trace",
                               [](const ChainOutput& c) { return to_array(c.a_trace); })
        .def_property_readonly("tau_trace",
                               [](const ChainOutput& c) { return to_array(c.tau_trace); })
        .def_property_readonly(
            "nuisance_trace", [](const ChainOutput& c) { return to_array2d(c.nuisance_trace); })
        .def_readonly("mu", &ChainOutput::mu)
        .def_readonly("diag", &ChainOutput::diag);

    const auto fit_doc = "Run the Gibbs sampler and return the chain output.";
    m.def(
        "gibbs_binary",
        [](const PolarObservation& obs, int nrun, int nburn, int J, const std::string& sampler,
           const std::string& ordering, std::uint64_t seed, std::optional<double> inimean,
           bool output_all) {
            return gibbs_binary(obs, config_from_kwargs(nrun, nburn, J, sampler, ordering, "N",
                                                        seed, inimean, output_all));
        },
        fit_doc, py::arg("obs"), py::arg("nrun") = 4000, py::arg("nburn") = 1000,
        py::arg("J") = 10, py::arg("sampler") = "slice", py::arg("ordering") = "N",
        py::arg("seed") = 0, py::arg("inimean") = py::none(), py::arg("output_all") = false);
    m.def(
        "gibbs_gaussian",
        [](const PolarObservation& obs, int nrun, int nburn, int J, const std::string& sampler,
           const std::string& ordering, const std::string& ordering_sd, std::uint64_t seed,
           std::optional<double> inimean, bool output_all) {
            return gibbs_gaussian(obs, config_from_kwargs(nrun, nburn, J, sampler, ordering,
                                                          ordering_sd, seed, inimean,
                                                          output_all));
        },
        fit_doc, py::arg("obs"), py::arg("nrun") = 4000, py::arg("nburn") = 1000,
        py::arg("J") = 10, py::arg("sampler") = "slice", py::arg("ordering") = "N",
        py::arg("ordering_sd") = "N", py::arg("seed") = 0, py::arg("inimean") = py::none(),
        py::arg("output_all") = false);

    py::class_<PosteriorSummary>(m, "PosteriorSummary")
        .def_property_readonly("theta",
                               [](const PosteriorSummary& s) { return to_array(s.theta); })
        .def_property_readonly("estimate",
                               [](const PosteriorSummary& s) { return to_array(s.estimate); })
        .def_property_readonly("lower",
                               [](const PosteriorSummary& s) { return to_array(s.lower); })
        .def_property_readonly("upper",
                               [](const PosteriorSummary& s) { return to_array(s.upper); })
        .def_readonly("L0", &PosteriorSummary::L0)
        .def_readonly("level", &PosteriorSummary::level)
        .def_readonly("diag", &PosteriorSummary::diag);

    m.def("summarize", &summarize, py::arg("chain"), py::arg("level") = 0.95);

    m.def(
        "membership_export",
        [](const PosteriorSummary& summary, const PolarObservation& obs,
           const std::string& edge) {
            const BandEdge e = edge == "outer"   ? BandEdge::outer
                               : edge == "inner" ? BandEdge::inner
                                                 : BandEdge::mean;
            const auto member = membership_export(summary, obs, e);
            std::vector<bool> out(member.begin(), member.end());
            return out;
        },
        py::arg("summary"), py::arg("obs"), py::arg("edge") = "outer");

    m.def("load_image", &load_image, py::arg("path"), py::arg("center"),
          py::arg("binarize_threshold") = py::none());

    m.def("lebesgue_error", &lebesgue_error, py::arg("g1"), py::arg("g2"));
    m.def("dsm_error", &dsm_error, py::arg("g1"), py::arg("g2"));
    m.def("hausdorff_error", &hausdorff_error, py::arg("g1"), py::arg("g2"));

    m.def("bessel_i_scaled", &bessel_i_scaled, py::arg("order"), py::arg("x"));
    m.def(
        "eigenvalues",
        [](double a, int J) { return to_array(eigenvalues(a, J).v); }, py::arg("a"),
        py::arg("J"));
    m.def("kernel_value", &kernel_value, py::arg("a"), py::arg("t1"), py::arg("t2"));

    m.def("run_cli", &run_cli, py::arg("args"),
          "Invoke the command-line interface in-process; returns the exit code.");
}
