#include "mexneedlet/correlation.hpp"

#include "mexneedlet/error.hpp"
#include "mexneedlet/legendre.hpp"
#include "mexneedlet/summation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

namespace mexneedlet {

double CorrelationQuery::distance() const { return std::acos(std::clamp(cos_gamma, -1.0, 1.0)); }

void CorrelationQuery::validate() const
{
    profile.validate();
    if (!(t > 0.0)) throw ConfigError("correlation query: t must be positive");
    if (!(std::abs(cos_gamma) <= 1.0 + kDomainSlack)) throw DomainError("correlation query: |cos_gamma| > 1");
}

int covariance_lmax(const NeedletProfile& p, double t, double eps_tail)
{
    return choose_lmax(p, t, eps_tail, 2);
}

namespace {

double covariance_series(const NeedletProfile& p, const PowerSpectrum& ps, double t, int lmax,
                         double cos_gamma)
{
    const auto leg = legendre_batch(cos_gamma, lmax);
    const double t2 = t * t;
    CompensatedSum sum;
    for (int l = 1; l <= lmax; ++l) {
        const double f2 = std::exp(2.0 * log_profile(p, t2 * laplace_eigenvalue(l)));
        sum += f2 * spectrum_eval(ps, l) * (2.0 * l + 1.0) * leg[l];
    }
    return sum.value();
}

}  // namespace

double analytic_covariance(const CorrelationQuery& q, double eps_tail)
{
    q.validate();
    const int lmax = covariance_lmax(q.profile, q.t, eps_tail);
    return covariance_series(q.profile, q.spectrum, q.t, lmax, q.cos_gamma);
}

double analytic_correlation(const CorrelationQuery& q, double eps_tail)
{
    q.validate();
    const int lmax = covariance_lmax(q.profile, q.t, eps_tail);
    const double var = covariance_series(q.profile, q.spectrum, q.t, lmax, 1.0);
    if (!(var > std::numeric_limits<double>::min()) || !std::isfinite(var)) {
        throw NumericError("analytic_correlation: variance underflows at t = " + std::to_string(q.t));
    }
    if (q.cos_gamma >= 1.0) return 1.0;
    const double cov = covariance_series(q.profile, q.spectrum, q.t, lmax, q.cos_gamma);
    return std::clamp(cov / var, -1.0, 1.0);
}

CoeffSequence gt_coefficients(const NeedletProfile& p, const PowerSpectrum& ps, double t, int lmax)
{
    p.validate();
    if (!(t > 0.0)) throw ConfigError("gt_coefficients: t must be positive");
    check_degree(lmax, "gt_coefficients");
    const double t2 = t * t;
    return CoeffSequence::from_function(0, lmax, [&](int l) {
        if (l == 0) return 0.0;
        return std::exp(2.0 * log_profile(p, t2 * laplace_eigenvalue(l))) * spectrum_eval(ps, l);
    });
}

CoeffSequence scaled_gt_coefficients(const NeedletProfile& p, const PowerSpectrum& ps, double t,
                                     int lmax)
{
    p.validate();
    if (!(t > 0.0)) throw ConfigError("scaled_gt_coefficients: t must be positive");
    check_degree(lmax, "scaled_gt_coefficients");
    const double t2 = t * t;
    const double log_scale = 4.0 * p.r * std::log(t);
    return CoeffSequence::from_function(0, lmax, [&](int l) {
        if (l == 0) return 0.0;
        return std::exp(2.0 * log_profile(p, t2 * laplace_eigenvalue(l)) - log_scale) *
               spectrum_eval(ps, l);
    });
}

int least_integer_above(double x) { return static_cast<int>(std::floor(x)) + 1; }

LemmaBound lemma_bound_check(const CoeffSequence& a, double mu, int theta_points)
{
    if (!(mu + 2.0 > 0.0)) throw ConfigError("lemma_bound_check: requires mu + 2 > 0");
    if (theta_points < 2) throw ConfigError("lemma_bound_check: need at least two theta samples");
    if (a.empty()) throw ConfigError("lemma_bound_check: empty coefficient sequence");

    LemmaBound out;
    out.N = least_integer_above(mu / 2.0 + 1.0);
    const auto aN = apply_P_iter(a, out.N);

    for (int i = 1; i <= theta_points; ++i) {
        const double theta = std::numbers::pi * i / theta_points;
        const double c = std::cos(theta);
        const double weight = std::pow(theta, 2 * out.N);
        double v;
        if (theta < kLemmaSwitchTheta) {
            v = weight * std::abs(zonal_series(a, c));
        } else {
            v = weight * std::abs(zonal_series(aN, c)) / std::pow(1.0 - c, out.N);
        }
        if (v > out.sup_value) {
            out.sup_value = v;
            out.theta_at_sup = theta;
        }
    }
    return out;
}

DenominatorReport denominator_lower_bound_check(const NeedletProfile& p, const PowerSpectrum& ps,
                                                const std::vector<double>& t_grid, double eps_tail)
{
    if (t_grid.empty()) throw ConfigError("denominator check: empty scale grid");
    DenominatorReport rep;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double t : t_grid) {
        CorrelationQuery q{p, ps, t, 1.0};
        DenominatorEntry e;
        e.t = t;
        e.lmax = covariance_lmax(p, t, eps_tail);
        e.variance = analytic_covariance(q, eps_tail);
        e.scaled = e.variance * std::pow(t, 2.0 - ps.alpha());
        e.small_scale = t <= 0.5 && e.lmax >= 64;
        lo = std::min(lo, e.scaled);
        hi = std::max(hi, e.scaled);
        rep.entries.push_back(e);
    }
    rep.inf_scaled = lo;
    rep.ratio = hi / lo;
    rep.pass = lo > 0.0 && std::isfinite(hi) && rep.ratio <= rep.ratio_cap;
    return rep;
}

DecayReport theorem_decay_check(const NeedletProfile& p, const PowerSpectrum& ps, double cos_gamma,
                                const std::vector<double>& t_grid, double eps_tail)
{
    p.validate();
    const double alpha = ps.alpha();
    if (!(4.0 * p.r + 2.0 > alpha)) {
        throw HypothesisError("decay theorem needs 4r + 2 > alpha (r = " + std::to_string(p.r) +
                              ", alpha = " + std::to_string(alpha) + "); increase r");
    }
    if (t_grid.size() < 2) throw ConfigError("theorem_decay_check: need at least two scales");
    const double d = std::acos(std::clamp(cos_gamma, -1.0, 1.0));
    if (!(d >= 0.1)) throw ConfigError("theorem_decay_check: geodesic distance must be at least 0.1");

    DecayReport rep;
    rep.cos_gamma = cos_gamma;
    rep.distance = d;
    rep.predicted_exponent = 4.0 * p.r - alpha + 2.0;
    rep.N = least_integer_above(2.0 * p.r - alpha / 2.0 + 1.0);
    rep.t_grid = t_grid;
    std::sort(rep.t_grid.begin(), rep.t_grid.end(), std::greater<>());

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double t : rep.t_grid) {
        const double c = std::abs(analytic_correlation({p, ps, t, cos_gamma}, eps_tail));
        const double scaled = c * std::pow(d, 2 * rep.N) * std::pow(t, -rep.predicted_exponent);
        rep.correlations.push_back(c);
        rep.scaled.push_back(scaled);
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
    }
    rep.bound_constant = hi;
    rep.bound_ratio = hi / lo;

    // fit over the (up to) four smallest scales
    const std::size_t n = rep.t_grid.size();
    const std::size_t first = n > 4 ? n - 4 : 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double m = 0;
    for (std::size_t i = first; i < n; ++i) {
        const double lx = std::log(rep.t_grid[i]);
        const double ly = std::log(rep.correlations[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        m += 1;
    }
    rep.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

    rep.qualitative = rep.predicted_exponent - rep.slope_tolerance <= 0.0;
    const bool slope_ok = rep.qualitative ? rep.fitted_slope > 0.0
                                          : rep.fitted_slope >= rep.predicted_exponent - rep.slope_tolerance;
    rep.pass = std::isfinite(rep.fitted_slope) && slope_ok && std::isfinite(hi) && lo > 0.0 &&
               rep.bound_ratio <= rep.ratio_cap;
    return rep;
}

}  // namespace mexneedlet
