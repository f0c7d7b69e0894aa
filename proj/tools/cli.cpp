#include "cli.hpp"

#include "mexneedlet/correlation.hpp"
#include "mexneedlet/error.hpp"
#include "mexneedlet/frame.hpp"
#include "mexneedlet/needlet.hpp"
#include "mexneedlet/simulate.hpp"
#include "mexneedlet/spectrum.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mexneedlet::cli {
namespace {

using nlohmann::json;

struct CommonOptions {
    int r = 1;
    std::string f0 = "exponential";
    double alpha = 3.0;
    std::string spectrum_path;
    double eps_tail = kDefaultTailEps;
    std::string output;

    NeedletProfile profile() const
    {
        NeedletProfile p{r, profile_family_from_name(f0)};
        p.validate();
        return p;
    }

    PowerSpectrum spectrum() const
    {
        if (spectrum_path.empty()) return PowerSpectrum::power_law(alpha);
        return PowerSpectrum::load(spectrum_path, alpha);
    }

    json to_json() const
    {
        json j{{"r", r}, {"f0", f0}, {"eps_tail", eps_tail}};
        if (spectrum_path.empty()) {
            j["spectrum"] = json::parse(PowerSpectrum::power_law(alpha).to_json_text());
        } else {
            j["spectrum_file"] = spectrum_path;
            j["declared_alpha"] = alpha;
        }
        return j;
    }
};

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_spectrum)
{
    cmd->add_option("--r", o.r, "needlet exponent r in f(s) = s^r f0(s)")->capture_default_str();
    cmd->add_option("--f0", o.f0, "decaying factor: exponential (Mexican) or gaussian")->capture_default_str();
    if (needs_spectrum) {
        cmd->add_option("--alpha", o.alpha, "power-law exponent, or declared alpha for CSV spectra")
            ->capture_default_str();
        cmd->add_option("--spectrum", o.spectrum_path, "spectrum definition (.json) or table (.csv)");
    }
    cmd->add_option("--eps-tail", o.eps_tail, "relative truncation tolerance")->capture_default_str();
    cmd->add_option("-o,--output", o.output, "output file (default: standard output)");
}

json defaults_table()
{
    return json{{"eps_tail", kDefaultTailEps},
                {"theta_min", kDefaultThetaMin},
                {"fit_window", "four smallest t"},
                {"slope_tolerance", 0.5},
                {"ratio_cap", 10.0},
                {"envelope_ratio_cap", kDefaultEnvelopeRatioCap},
                {"growth_tolerance", kDefaultGrowthTolerance},
                {"lemma_theta_switch", kLemmaSwitchTheta},
                {"degree_cap", degree_cap()}};
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Output sink: the --output file if given, otherwise the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw ConfigError("cannot open output file " + path);
        }
        os_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

std::vector<double> parse_theta_range(const std::string& spec)
{
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw ConfigError("--theta expects start:stop:count");
    double start = 0, stop = 0;
    long count = 0;
    try {
        start = std::stod(parts[0]);
        stop = std::stod(parts[1]);
        count = std::stol(parts[2]);
    } catch (const std::exception&) {
        throw ConfigError("--theta expects numeric start:stop:count");
    }
    if (count < 1 || !(stop >= start) || start < 0 || stop > std::numbers::pi + 1e-9) {
        throw ConfigError("--theta range must satisfy 0 <= start <= stop <= pi and count >= 1");
    }
    std::vector<double> out;
    for (long i = 0; i < count; ++i) {
        double th = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1);
        out.push_back(std::max(th, kDefaultThetaMin));
    }
    return out;
}

void require_positive(const std::vector<double>& v, const char* name)
{
    if (v.empty()) throw ConfigError(std::string(name) + " list is empty");
    for (double x : v) {
        if (!(x > 0.0)) throw ConfigError(std::string(name) + " values must be positive");
    }
}

// ---------------------------------------------------------------------------

struct KernelCmd {
    CommonOptions common;
    std::vector<double> t{0.2};
    std::string theta = "0:3.141592653589793:256";

    int run(std::ostream& out) const
    {
        require_positive(t, "--t");
        const auto profile = common.profile();
        const auto thetas = parse_theta_range(theta);
        Sink sink(common.output, out);
        *sink << "t,theta,value\n";
        for (double scale : t) {
            const auto k = KernelSpec::make(profile, scale, common.eps_tail);
            for (double th : thetas) *sink << fmt(scale) << ',' << fmt(th) << ',' << fmt(kernel_eval(k, std::cos(th))) << '\n';
        }
        return kSuccess;
    }
};

json decay_to_json(const DecayReport& r)
{
    return json{{"cos_gamma", r.cos_gamma},
                {"distance", r.distance},
                {"t_grid", r.t_grid},
                {"correlations", r.correlations},
                {"scaled", r.scaled},
                {"fitted_slope", r.fitted_slope},
                {"predicted_exponent", r.predicted_exponent},
                {"N", r.N},
                {"bound_constant", r.bound_constant},
                {"bound_ratio", r.bound_ratio},
                {"slope_tolerance", r.slope_tolerance},
                {"ratio_cap", r.ratio_cap},
                {"qualitative", r.qualitative},
                {"status", r.pass ? "PASS" : "FAIL"}};
}

struct CorrelationCmd {
    CommonOptions common;
    std::vector<double> t{0.2, 0.1, 0.05, 0.025};
    std::vector<double> cos_gamma{1.0, 0.0};
    bool fit = false;
    std::string report;

    int run(std::ostream& out, std::ostream& err) const
    {
        require_positive(t, "--t");
        const auto profile = common.profile();
        const auto spectrum = common.spectrum();
        const double predicted = 4.0 * profile.r - spectrum.alpha() + 2.0;
        const int N = least_integer_above(2.0 * profile.r - spectrum.alpha() / 2.0 + 1.0);
        if (fit && !(predicted > 0.0)) {
            err << "error: decay theorem hypothesis 4r + 2 > alpha fails (r = " << profile.r
                << ", alpha = " << spectrum.alpha() << "); increase r\n";
            return kHypothesisViolation;
        }

        {
            Sink sink(common.output, out);
            *sink << "t,cos_gamma,covariance,correlation,predicted_exponent,N,bound_constant\n";
            for (double scale : t) {
                for (double c : cos_gamma) {
                    const CorrelationQuery q{profile, spectrum, scale, c};
                    const double cov = analytic_covariance(q, common.eps_tail);
                    const double cor = analytic_correlation(q, common.eps_tail);
                    const double d = q.distance();
                    const double bound = std::abs(cor) * std::pow(d, 2 * N) * std::pow(scale, -predicted);
                    *sink << fmt(scale) << ',' << fmt(c) << ',' << fmt(cov) << ',' << fmt(cor) << ','
                          << fmt(predicted) << ',' << N << ',' << fmt(bound) << '\n';
                }
            }
        }
        if (!fit) return kSuccess;

        json reports = json::array();
        bool all_pass = true;
        for (double c : cos_gamma) {
            if (std::acos(std::clamp(c, -1.0, 1.0)) < 0.1) continue;
            const auto rep = theorem_decay_check(profile, spectrum, c, t, common.eps_tail);
            all_pass = all_pass && rep.pass;
            reports.push_back(decay_to_json(rep));
        }
        json doc{{"command", "correlation"},
                 {"config", common.to_json()},
                 {"defaults", defaults_table()},
                 {"decay_reports", reports},
                 {"status", all_pass ? "PASS" : "FAIL"}};
        doc["config"]["t"] = t;
        doc["config"]["cos_gamma"] = cos_gamma;
        Sink sink(report, out);
        *sink << doc.dump(2) << '\n';
        return all_pass ? kSuccess : kVerificationFailed;
    }
};

struct SimulateCmd {
    CommonOptions common;
    std::vector<double> t{0.2};
    std::vector<double> distance{std::numbers::pi / 2};
    int replicas = 4000;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    int run(std::ostream& out, std::ostream& err) const
    {
        require_positive(t, "--t");
        const auto profile = common.profile();
        const auto spectrum = common.spectrum();
        Sink sink(common.output, out);
        *sink << "t,distance,replicas,seed,estimate,stderr,analytic,z\n";
        bool flagged = false;
        for (double scale : t) {
            for (double d : distance) {
                if (d < 0.0 || d > std::numbers::pi) throw ConfigError("--distance must lie in [0, pi]");
                const SpherePoint x{std::numbers::pi / 2, 0.0};
                const SpherePoint y{std::numbers::pi / 2, d};
                const auto mc = monte_carlo_correlation(profile, spectrum, scale, x, y,
                                                        {replicas, seed, threads, common.eps_tail});
                const double analytic =
                    analytic_correlation({profile, spectrum, scale, std::cos(d)}, common.eps_tail);
                double z = 0.0;
                if (mc.stderr_ > 0.0) {
                    z = (mc.estimate - analytic) / mc.stderr_;
                } else if (mc.estimate != analytic) {
                    z = std::copysign(INFINITY, mc.estimate - analytic);
                }
                if (!(std::abs(z) <= 5.0)) {
                    flagged = true;
                    err << "warning: |z| = " << std::abs(z) << " at t = " << scale << ", d = " << d << '\n';
                }
                *sink << fmt(scale) << ',' << fmt(d) << ',' << replicas << ',' << seed << ','
                      << fmt(mc.estimate) << ',' << fmt(mc.stderr_) << ',' << fmt(analytic) << ','
                      << fmt(z) << '\n';
            }
        }
        return flagged ? kVerificationFailed : kSuccess;
    }
};

struct VerifyCmd {
    CommonOptions common;
    std::vector<double> t{0.4, 0.2, 0.1, 0.05};
    std::vector<double> denominator_t{0.2, 0.1, 0.05, 0.025};
    std::optional<double> lemma_mu;
    int localization_n = 3;
    int envelope_lmax = 2000;
    int k_max = 4;
    int window_min = 10;
    int window_max = 2000;

    int run(std::ostream& out) const
    {
        require_positive(t, "--t");
        require_positive(denominator_t, "--denominator-t");
        const auto profile = common.profile();
        const auto spectrum = common.spectrum();
        const double mu = lemma_mu.value_or(4.0 * profile.r - spectrum.alpha());
        if (!(mu + 2.0 > 0.0)) throw ConfigError("lemma requires mu + 2 > 0 (got mu = " + fmt(mu) + ")");

        json checks;

        // localization lemma on the scaled G_t sequences
        {
            json entries = json::array();
            double lo = INFINITY, hi = 0.0;
            int N = 0;
            for (double scale : t) {
                const int lmax = covariance_lmax(profile, scale, common.eps_tail);
                const auto a = scaled_gt_coefficients(profile, spectrum, scale, lmax);
                const auto lb = lemma_bound_check(a, mu);
                N = lb.N;
                lo = std::min(lo, lb.sup_value);
                hi = std::max(hi, lb.sup_value);
                entries.push_back({{"t", scale}, {"lmax", lmax}, {"sup", lb.sup_value}, {"theta_at_sup", lb.theta_at_sup}});
            }
            const double ratio = hi / lo;
            const bool pass = std::isfinite(hi) && lo > 0.0 && ratio <= 10.0;
            checks["lemma"] = {{"mu", mu}, {"N", N}, {"sequence", "G_t(l) / t^(4r)"}, {"entries", entries},
                               {"ratio", ratio}, {"status", pass ? "PASS" : "FAIL"}};
        }
        {
            const auto rep = denominator_lower_bound_check(profile, spectrum, denominator_t, common.eps_tail);
            json entries = json::array();
            for (const auto& e : rep.entries) {
                entries.push_back({{"t", e.t}, {"lmax", e.lmax}, {"variance", e.variance}, {"scaled", e.scaled},
                                   {"small_scale", e.small_scale}});
            }
            checks["denominator"] = {{"entries", entries}, {"inf_scaled", rep.inf_scaled}, {"ratio", rep.ratio},
                                     {"status", rep.pass ? "PASS" : "FAIL"}};
        }
        {
            const auto rep = localization_check(profile, t, localization_n, 2048, common.eps_tail);
            json entries = json::array();
            for (const auto& e : rep.entries) {
                entries.push_back({{"t", e.t}, {"lmax", e.lmax}, {"sup", e.sup}, {"theta_at_sup", e.theta_at_sup}});
            }
            checks["localization"] = {{"N", rep.N}, {"entries", entries}, {"ratio", rep.ratio},
                                      {"status", rep.pass ? "PASS" : "FAIL"}};
        }
        {
            const auto rep = verify_envelope(spectrum, envelope_lmax);
            checks["envelope"] = {{"l_max", rep.l_max}, {"k0_hat", rep.k0_hat}, {"k1_hat", rep.k1_hat},
                                  {"ratio", rep.ratio}, {"ratio_cap", rep.ratio_cap},
                                  {"status", rep.pass ? "PASS" : "FAIL"}};
        }
        {
            const auto rep = verify_derivative_decay(spectrum, k_max, window_min, window_max);
            json orders = json::array();
            for (const auto& o : rep.orders) {
                orders.push_back({{"k", o.k}, {"C_hat", o.c_hat}, {"block_sups", o.block_sups},
                                  {"status", o.pass ? "PASS" : "FAIL"}});
            }
            checks["derivative_decay"] = {{"window", {rep.l_min, rep.l_max}}, {"orders", orders},
                                          {"status", rep.pass ? "PASS" : "FAIL"}};
        }

        bool all_pass = true;
        for (const auto& [name, c] : checks.items()) all_pass = all_pass && c["status"] == "PASS";

        json doc{{"command", "verify"}, {"config", common.to_json()}, {"defaults", defaults_table()},
                 {"checks", checks}, {"status", all_pass ? "PASS" : "FAIL"}};
        doc["config"]["t"] = t;
        doc["config"]["denominator_t"] = denominator_t;
        doc["config"]["localization_N"] = localization_n;
        Sink sink(common.output, out);
        *sink << doc.dump(2) << '\n';
        return all_pass ? kSuccess : kVerificationFailed;
    }
};

struct FrameCmd {
    CommonOptions common;
    double a = 2.0;
    int L = 16;
    std::vector<double> oversample{1.0, 2.0, 4.0};
    std::optional<int> j_min;
    std::optional<int> j_max;
    double density = kDefaultGridDensity;
    std::string export_grid;
    std::optional<int> export_j;

    int run(std::ostream& out, std::ostream& err) const
    {
        const auto profile = common.profile();
        if (oversample.empty()) throw ConfigError("--oversample list is empty");
        const auto [dj_min, dj_max] = default_j_range(profile, a, L);
        const int lo = j_min.value_or(dj_min);
        const int hi = j_max.value_or(dj_max);

        bool ill = false;
        {
            Sink sink(common.output, out);
            *sink << "a,oversample,L,j_min,j_max,rows,A_hat,B_hat,ratio,subspace\n";
            for (double os : oversample) {
                const auto est = estimate_frame_bounds(profile, a, lo, hi, L, os, density);
                if (est.ill_conditioned) {
                    ill = true;
                    err << "warning: ill-conditioned frame estimate at oversample " << os << '\n';
                }
                *sink << fmt(a) << ',' << fmt(os) << ',' << L << ',' << est.j_min << ',' << est.j_max << ','
                      << est.rows << ',' << fmt(est.A_hat) << ',' << fmt(est.B_hat) << ',' << fmt(est.ratio())
                      << ",band_limited\n";
            }
        }
        if (!export_grid.empty()) {
            std::vector<SphereGrid> grids;
            for (int j = hi; j >= lo; --j) {
                if (export_j && *export_j != j) continue;
                grids.push_back(build_grid(a, j, oversample.front(), density));
            }
            if (grids.empty()) throw ConfigError("--export-j lies outside the scale range");
            std::ofstream f(export_grid, std::ios::binary | std::ios::trunc);
            if (!f) throw ConfigError("cannot open grid export file " + export_grid);
            write_grid_csv(f, grids);
        }
        return ill ? kNumericFailure : kSuccess;
    }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mexican needlet analysis on the sphere"};
    app.require_subcommand(1);

    KernelCmd kernel;
    auto* k = app.add_subcommand("kernel", "evaluate K_t(cos theta) on a theta grid");
    add_common(k, kernel.common, false);
    k->add_option("--t", kernel.t, "scales")->delimiter(',');
    k->add_option("--theta", kernel.theta, "start:stop:count (start clamped to theta_min)")->capture_default_str();

    CorrelationCmd corr;
    auto* c = app.add_subcommand("correlation", "analytic covariance and correlation of needlet coefficients");
    add_common(c, corr.common, true);
    c->add_option("--t", corr.t, "scales")->delimiter(',');
    c->add_option("--cos-gamma", corr.cos_gamma, "values of x . y")->delimiter(',');
    c->add_flag("--fit", corr.fit, "fit the decay exponent and emit a JSON report");
    c->add_option("--report", corr.report, "JSON report file for --fit (default: standard output)");

    SimulateCmd sim;
    auto* s = app.add_subcommand("simulate", "Monte-Carlo correlation against the analytic value");
    add_common(s, sim.common, true);
    s->add_option("--t", sim.t, "scales")->delimiter(',');
    s->add_option("--distance", sim.distance, "geodesic distances between the two points")->delimiter(',');
    s->add_option("--replicas", sim.replicas)->capture_default_str();
    s->add_option("--seed", sim.seed)->capture_default_str();
    s->add_option("--threads", sim.threads)->capture_default_str();

    VerifyCmd ver;
    auto* v = app.add_subcommand("verify", "lemma, denominator, localization and spectrum checks");
    add_common(v, ver.common, true);
    v->add_option("--t", ver.t, "scales for lemma and localization checks")->delimiter(',');
    v->add_option("--denominator-t", ver.denominator_t, "scales for the variance lower bound")->delimiter(',');
    v->add_option("--lemma-mu", ver.lemma_mu, "decay exponent mu for the lemma (default 4r - alpha)");
    v->add_option("--localization-n", ver.localization_n)->capture_default_str();
    v->add_option("--envelope-lmax", ver.envelope_lmax)->capture_default_str();
    v->add_option("--k-max", ver.k_max)->capture_default_str();
    v->add_option("--window-min", ver.window_min)->capture_default_str();
    v->add_option("--window-max", ver.window_max)->capture_default_str();

    FrameCmd frame;
    auto* f = app.add_subcommand("frame", "frame-bound estimates on a band-limited subspace");
    add_common(f, frame.common, false);
    f->add_option("--a", frame.a, "dilation")->capture_default_str();
    f->add_option("--L", frame.L, "band limit")->capture_default_str();
    f->add_option("--oversample", frame.oversample)->delimiter(',');
    f->add_option("--j-min", frame.j_min);
    f->add_option("--j-max", frame.j_max);
    f->add_option("--density", frame.density, "points per unit a^{-2j}")->capture_default_str();
    f->add_option("--export-grid", frame.export_grid, "write j,k,theta,phi,weight rows");
    f->add_option("--export-j", frame.export_j, "export only this scale index");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kConfigError;
    }

    try {
        if (*k) return kernel.run(out);
        if (*c) return corr.run(out, err);
        if (*s) return sim.run(out, err);
        if (*v) return ver.run(out);
        if (*f) return frame.run(out, err);
    } catch (const HypothesisError& e) {
        err << "error: " << e.what() << '\n';
        return kHypothesisViolation;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    }
    return kConfigError;
}

}  // namespace mexneedlet::cli
