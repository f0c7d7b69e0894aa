#pragma once

#include "mexneedlet/config.hpp"

#include <string>
#include <vector>

namespace mexneedlet {

/// Rapidly decaying factor f0 of the spectral window f(s) = s^r f0(s).
enum class ProfileFamily {
    Exponential,  ///< f0(s) = e^{-s}; the Mexican needlet
    Gaussian,     ///< f0(s) = e^{-s^2}
};

ProfileFamily profile_family_from_name(const std::string& name);
std::string to_string(ProfileFamily f);

struct NeedletProfile {
    int r = 1;
    ProfileFamily f0 = ProfileFamily::Exponential;

    /// Throws ConfigError unless r >= 1 (which makes f(0) = 0).
    void validate() const;
    /// Location of the maximum of f on (0, inf).
    double peak() const;
};

/// log f(s) for s > 0; -inf at s = 0.
double log_profile(const NeedletProfile& p, double s);

/// f(s) = s^r f0(s).
double profile_eval(const NeedletProfile& p, double s);

/// lambda_l = l(l+1).
inline double laplace_eigenvalue(int l) { return static_cast<double>(l) * (l + 1.0); }

/// Smallest lmax (at least 8) for which the dropped tail of
/// sum_l |f(t^2 lambda_l)|^power (2l+1) is at most eps_tail times the kept part.
/// power = 2 sizes the variance series, which carries f^2.
/// Throws NumericError if the answer exceeds the degree cap or every term underflows.
int choose_lmax(const NeedletProfile& p, double t, double eps_tail = kDefaultTailEps, int power = 1);

/// Truncated zonal expansion of the needlet kernel K_t, coefficients f(t^2 lambda_l)(2l+1).
/// The 1/(4 pi) area factor is not included.
struct KernelSpec {
    NeedletProfile profile;
    double t = 1.0;
    int lmax = 0;
    std::vector<double> coeffs;  ///< coeffs[l], coeffs[0] = 0

    static KernelSpec make(const NeedletProfile& p, double t, double eps_tail = kDefaultTailEps);
    static KernelSpec with_lmax(const NeedletProfile& p, double t, int lmax);
};

/// K_t as a function of cos(gamma) = x . y.
double kernel_eval(const KernelSpec& k, double cos_gamma);

struct LocalizationEntry {
    double t = 0.0;
    int lmax = 0;
    double sup = 0.0;       ///< sup over theta in [t, pi] of t^2 |K_t| (theta/t)^N
    double theta_at_sup = 0.0;
};

struct LocalizationReport {
    int N = 0;
    std::vector<LocalizationEntry> entries;
    double ratio = 0.0;      ///< max/min of the per-t sups
    double ratio_cap = 10.0;
    bool pass = false;
};

/// Sup of t^2 |K_t(cos theta)| (theta/t)^N over theta_points samples of [t, pi].
LocalizationEntry localization_sup(const KernelSpec& k, int N, int theta_points = 2048);

LocalizationReport localization_check(const NeedletProfile& p, const std::vector<double>& t_list,
                                      int N, int theta_points = 2048,
                                      double eps_tail = kDefaultTailEps);

/// g(lambda) = sum_{j in Z} f(a^{2j} lambda)^2, truncated where terms fall below
/// 1e-16 of the largest one.
double calderon_sum(const NeedletProfile& p, double a, double lambda);

struct CalderonBounds {
    double A = 0.0;
    double B = 0.0;
    double ratio() const { return B / A; }
};

/// min and max of g over a log-uniform grid on one period [1, a^2].
CalderonBounds calderon_bounds(const NeedletProfile& p, double a, int samples = 4096);

}  // namespace mexneedlet
