#include "mexneedlet/correlation.hpp"
#include "mexneedlet/error.hpp"
#include "mexneedlet/frame.hpp"
#include "mexneedlet/legendre.hpp"
#include "mexneedlet/needlet.hpp"
#include "mexneedlet/simulate.hpp"
#include "mexneedlet/spectrum.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mexneedlet;

namespace {

NeedletProfile profile(int r, const std::string& f0)
{
    NeedletProfile p{r, profile_family_from_name(f0)};
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Mexican needlet kernels, correlations and frame bounds";

    py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    py::class_<PowerSpectrum>(m, "PowerSpectrum")
        .def_static("power_law", &PowerSpectrum::power_law, py::arg("alpha"))
        .def_static(
            "rational_log",
            [](double alpha, double beta, std::vector<double> p, std::vector<double> q, const std::string& f) {
                return PowerSpectrum::rational_log(alpha, beta, std::move(p), std::move(q),
                                                   log_modulation_from_name(f));
            },
            py::arg("alpha"), py::arg("beta"), py::arg("P"), py::arg("Q"), py::arg("F") = "one")
        .def_static("tabulated", &PowerSpectrum::tabulated, py::arg("alpha"), py::arg("values"))
        .def_static("from_json", &PowerSpectrum::from_json_text)
        .def_static("load", &PowerSpectrum::load, py::arg("path"), py::arg("alpha"))
        .def_property_readonly("alpha", &PowerSpectrum::alpha)
        .def("degree_balance_holds", &PowerSpectrum::degree_balance_holds)
        .def("__call__", [](const PowerSpectrum& ps, int l) { return spectrum_eval(ps, l); })
        .def("to_json", &PowerSpectrum::to_json_text);

    m.def("legendre", [](double x, int lmax) { return legendre_batch(x, lmax).values; }, py::arg("x"),
          py::arg("lmax"));
    m.def("real_sph_harm_all",
          [](int L, double theta, double phi) { return real_sph_harm_all(L, theta, phi); }, py::arg("L"),
          py::arg("theta"), py::arg("phi"));

    m.def("choose_lmax",
          [](int r, double t, double eps, const std::string& f0) { return choose_lmax(profile(r, f0), t, eps); },
          py::arg("r"), py::arg("t"), py::arg("eps_tail") = kDefaultTailEps, py::arg("f0") = "exponential");
    m.def(
        "kernel",
        [](int r, double t, double cos_gamma, const std::string& f0) {
            return kernel_eval(KernelSpec::make(profile(r, f0), t), cos_gamma);
        },
        py::arg("r"), py::arg("t"), py::arg("cos_gamma"), py::arg("f0") = "exponential");

    m.def(
        "correlation",
        [](int r, const PowerSpectrum& ps, double t, double cos_gamma) {
            return analytic_correlation({profile(r, "exponential"), ps, t, cos_gamma});
        },
        py::arg("r"), py::arg("spectrum"), py::arg("t"), py::arg("cos_gamma"));
    m.def(
        "covariance",
        [](int r, const PowerSpectrum& ps, double t, double cos_gamma) {
            return analytic_covariance({profile(r, "exponential"), ps, t, cos_gamma});
        },
        py::arg("r"), py::arg("spectrum"), py::arg("t"), py::arg("cos_gamma"));
    m.def(
        "decay_check",
        [](int r, const PowerSpectrum& ps, double cos_gamma, const std::vector<double>& t_grid) {
            const auto rep = theorem_decay_check(profile(r, "exponential"), ps, cos_gamma, t_grid);
            py::dict d;
            d["t"] = rep.t_grid;
            d["correlations"] = rep.correlations;
            d["fitted_slope"] = rep.fitted_slope;
            d["predicted_exponent"] = rep.predicted_exponent;
            d["N"] = rep.N;
            d["bound_ratio"] = rep.bound_ratio;
            d["pass"] = rep.pass;
            return d;
        },
        py::arg("r"), py::arg("spectrum"), py::arg("cos_gamma"), py::arg("t_grid"));

    m.def(
        "monte_carlo_correlation",
        [](int r, const PowerSpectrum& ps, double t, std::pair<double, double> x, std::pair<double, double> y,
           int replicas, std::uint64_t seed, unsigned threads) {
            McOptions opt;
            opt.replicas = replicas;
            opt.seed = seed;
            opt.threads = threads;
            const auto mc = monte_carlo_correlation(profile(r, "exponential"), ps, t, {x.first, x.second},
                                                    {y.first, y.second}, opt);
            return py::make_tuple(mc.estimate, mc.stderr_);
        },
        py::arg("r"), py::arg("spectrum"), py::arg("t"), py::arg("x"), py::arg("y"), py::arg("replicas") = 4000,
        py::arg("seed") = 0, py::arg("threads") = 1);

    m.def(
        "calderon_bounds",
        [](int r, double a) {
            const auto b = calderon_bounds(profile(r, "exponential"), a);
            return py::make_tuple(b.A, b.B);
        },
        py::arg("r"), py::arg("a"));
    m.def(
        "frame_bounds",
        [](int r, double a, int L, double oversample) {
            const auto p = profile(r, "exponential");
            const auto [jmin, jmax] = default_j_range(p, a, L);
            const auto fb = estimate_frame_bounds(p, a, jmin, jmax, L, oversample);
            return py::make_tuple(fb.A_hat, fb.B_hat);
        },
        py::arg("r"), py::arg("a"), py::arg("L"), py::arg("oversample") = 1.0);
}
