#pragma once

#include "mexneedlet/config.hpp"
#include "mexneedlet/difference.hpp"
#include "mexneedlet/needlet.hpp"
#include "mexneedlet/spectrum.hpp"

#include <vector>

namespace mexneedlet {

struct CorrelationQuery {
    NeedletProfile profile;
    PowerSpectrum spectrum;
    double t = 0.1;
    double cos_gamma = 1.0;

    double distance() const;
    /// Throws ConfigError/DomainError for t <= 0 or |cos_gamma| > 1.
    void validate() const;
};

/// Degree at which the variance series f(t^2 lambda_l)^2 (2l+1) is truncated.
int covariance_lmax(const NeedletProfile& p, double t, double eps_tail = kDefaultTailEps);

/// E(beta_{t,x} beta_{t,y}) = sum_l f(t^2 lambda_l)^2 c_l (2l+1) P_l(x . y),
/// without the 1/(4 pi) normalization of the harmonic basis.
double analytic_covariance(const CorrelationQuery& q, double eps_tail = kDefaultTailEps);

/// Covariance divided by the variance at cos_gamma = 1; exactly 1 at coincidence.
/// Throws NumericError when the variance underflows.
double analytic_correlation(const CorrelationQuery& q, double eps_tail = kDefaultTailEps);

/// a_l = G_t(l) = f(t^2 l(l+1))^2 u(l) for l = 1..lmax, a_0 = 0.
CoeffSequence gt_coefficients(const NeedletProfile& p, const PowerSpectrum& ps, double t, int lmax);

/// G_t(l) / t^{4r}. Every difference bound on G_t carries the factor t^{4r}; with
/// it removed the sequence meets the localization lemma's hypotheses with
/// mu = 4r - alpha and constants that do not depend on t.
CoeffSequence scaled_gt_coefficients(const NeedletProfile& p, const PowerSpectrum& ps, double t,
                                     int lmax);

/// Least integer strictly greater than x.
int least_integer_above(double x);

struct LemmaBound {
    int N = 0;
    double sup_value = 0.0;     ///< sup over theta in (0, pi] of theta^{2N} |sum a_l Z_l(cos theta)|
    double theta_at_sup = 0.0;
};

inline constexpr double kLemmaSwitchTheta = 0.1;

/// Localization lemma check. N is the least integer above mu/2 + 1. For
/// theta >= 0.1 the series is evaluated as |sum a^N_l Z_l| / |cos theta - 1|^N with
/// a^N = apply_P_iter(a, N); below that the untransformed series is summed.
/// Throws ConfigError if mu + 2 <= 0.
LemmaBound lemma_bound_check(const CoeffSequence& a, double mu, int theta_points = 4096);

struct DenominatorEntry {
    double t = 0.0;
    int lmax = 0;
    double variance = 0.0;
    double scaled = 0.0;       ///< variance * t^{2 - alpha}
    bool small_scale = false;  ///< t <= 0.5 and lmax >= 64
};

struct DenominatorReport {
    std::vector<DenominatorEntry> entries;
    double inf_scaled = 0.0;
    double ratio = 0.0;
    double ratio_cap = 10.0;
    bool pass = false;
};

/// Checks that variance * t^{2-alpha} stays positive and within a factor ratio_cap across t_grid.
DenominatorReport denominator_lower_bound_check(const NeedletProfile& p, const PowerSpectrum& ps,
                                                const std::vector<double>& t_grid,
                                                double eps_tail = kDefaultTailEps);

struct DecayReport {
    std::vector<double> t_grid;        ///< sorted descending
    std::vector<double> correlations;  ///< |Cor| per t
    std::vector<double> scaled;        ///< |Cor| d^{2N} t^{-(4r-alpha+2)} per t
    double cos_gamma = 0.0;
    double distance = 0.0;
    double fitted_slope = 0.0;         ///< log-log slope over the four smallest t
    double predicted_exponent = 0.0;   ///< 4r - alpha + 2
    int N = 0;                         ///< least integer above 2r - alpha/2 + 1
    double bound_constant = 0.0;       ///< sup of scaled
    double bound_ratio = 0.0;          ///< max/min of scaled
    double slope_tolerance = 0.5;
    double ratio_cap = 10.0;
    bool qualitative = false;          ///< predicted exponent too small for a slope test
    bool pass = false;
};

/// Throws HypothesisError when 4r + 2 <= alpha and ConfigError when the geodesic
/// distance is below 0.1 or fewer than two scales are given.
DecayReport theorem_decay_check(const NeedletProfile& p, const PowerSpectrum& ps, double cos_gamma,
                                const std::vector<double>& t_grid,
                                double eps_tail = kDefaultTailEps);

}  // namespace mexneedlet
