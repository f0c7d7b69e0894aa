#include "mexneedlet/needlet.hpp"

#include "mexneedlet/error.hpp"
#include "mexneedlet/legendre.hpp"
#include "mexneedlet/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mexneedlet {

ProfileFamily profile_family_from_name(const std::string& name)
{
    if (name == "exp" || name == "exponential" || name == "mexican") return ProfileFamily::Exponential;
    if (name == "gauss" || name == "gaussian") return ProfileFamily::Gaussian;
    throw ConfigError("unknown needlet profile family: " + name);
}

std::string to_string(ProfileFamily f)
{
    return f == ProfileFamily::Gaussian ? "gaussian" : "exponential";
}

void NeedletProfile::validate() const
{
    if (r < 1) throw ConfigError("needlet profile exponent r must be a positive integer");
}

double NeedletProfile::peak() const
{
    return f0 == ProfileFamily::Gaussian ? std::sqrt(r / 2.0) : static_cast<double>(r);
}

double log_profile(const NeedletProfile& p, double s)
{
    if (s < 0.0) throw DomainError("needlet profile is defined for s >= 0");
    if (s == 0.0) return -std::numeric_limits<double>::infinity();
    const double log_f0 = p.f0 == ProfileFamily::Gaussian ? -s * s : -s;
    return p.r * std::log(s) + log_f0;
}

double profile_eval(const NeedletProfile& p, double s)
{
    if (s == 0.0) return 0.0;
    return std::exp(log_profile(p, s));
}

int choose_lmax(const NeedletProfile& p, double t, double eps_tail, int power)
{
    p.validate();
    if (!(t > 0.0)) throw ConfigError("choose_lmax: scale t must be positive");
    if (!(eps_tail > 0.0 && eps_tail < 1.0)) throw ConfigError("choose_lmax: eps_tail must lie in (0, 1)");
    if (power < 1) throw ConfigError("choose_lmax: power must be positive");

    const double t2 = t * t;
    std::vector<double> terms{0.0};
    double total = 0.0;
    constexpr int kScanLimit = 1 << 26;
    for (int l = 1;; ++l) {
        if (l > kScanLimit) throw NumericError("choose_lmax: scan did not terminate");
        const double s = t2 * laplace_eigenvalue(l);
        const double term = std::exp(power * log_profile(p, s) + std::log(2.0 * l + 1.0));
        terms.push_back(term);
        total += term;
        // past the peak the terms fall off faster than geometrically
        if (s > p.peak() + 1.0 && l >= 8 && term <= 1e-6 * eps_tail * total) break;
    }
    if (!(total > 0.0)) throw NumericError("choose_lmax: every kernel coefficient underflows; t is too large");

    const int last = static_cast<int>(terms.size()) - 1;
    std::vector<double> suffix(terms.size() + 1, 0.0);
    for (int l = last; l >= 0; --l) suffix[l] = suffix[l + 1] + terms[l];
    int lmax = last;
    for (int l = 1; l <= last; ++l) {
        const double kept = total - suffix[l + 1];
        if (suffix[l + 1] <= eps_tail * kept) {
            lmax = l;
            break;
        }
    }
    lmax = std::max(lmax, 8);
    check_degree(lmax, "choose_lmax");
    return lmax;
}

KernelSpec KernelSpec::make(const NeedletProfile& p, double t, double eps_tail)
{
    return with_lmax(p, t, choose_lmax(p, t, eps_tail, 1));
}

KernelSpec KernelSpec::with_lmax(const NeedletProfile& p, double t, int lmax)
{
    p.validate();
    if (!(t > 0.0)) throw ConfigError("kernel scale t must be positive");
    if (lmax < 1) throw ConfigError("kernel lmax must be at least 1");
    check_degree(lmax, "KernelSpec");
    KernelSpec k{p, t, lmax, std::vector<double>(static_cast<std::size_t>(lmax) + 1, 0.0)};
    for (int l = 1; l <= lmax; ++l) {
        // log-space keeps (t^2 lambda)^r finite for large r
        k.coeffs[l] = std::exp(log_profile(p, t * t * laplace_eigenvalue(l)) + std::log(2.0 * l + 1.0));
    }
    return k;
}

double kernel_eval(const KernelSpec& k, double cos_gamma)
{
    const auto p = legendre_batch(cos_gamma, k.lmax);
    CompensatedSum sum;
    for (int l = 1; l <= k.lmax; ++l) sum += k.coeffs[l] * p[l];
    return sum.value();
}

LocalizationEntry localization_sup(const KernelSpec& k, int N, int theta_points)
{
    if (N < 1) throw ConfigError("localization check: N must be at least 1");
    if (theta_points < 2) throw ConfigError("localization check: need at least two theta samples");
    const double t = k.t;
    LocalizationEntry e{t, k.lmax, 0.0, t};
    const double start = std::min(t, std::numbers::pi);
    for (int i = 0; i < theta_points; ++i) {
        const double theta = start + (std::numbers::pi - start) * i / (theta_points - 1);
        const double v = t * t * std::abs(kernel_eval(k, std::cos(theta))) * std::pow(theta / t, N);
        if (v > e.sup) {
            e.sup = v;
            e.theta_at_sup = theta;
        }
    }
    return e;
}

LocalizationReport localization_check(const NeedletProfile& p, const std::vector<double>& t_list,
                                      int N, int theta_points, double eps_tail)
{
    if (t_list.empty()) throw ConfigError("localization_check: empty scale list");
    LocalizationReport rep;
    rep.N = N;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double t : t_list) {
        const auto e = localization_sup(KernelSpec::make(p, t, eps_tail), N, theta_points);
        lo = std::min(lo, e.sup);
        hi = std::max(hi, e.sup);
        rep.entries.push_back(e);
    }
    rep.ratio = hi / lo;
    rep.pass = std::isfinite(hi) && lo > 0.0 && rep.ratio <= rep.ratio_cap;
    return rep;
}

double calderon_sum(const NeedletProfile& p, double a, double lambda)
{
    if (!(a > 1.0 + 1e-9)) throw ConfigError("Calderon sum needs dilation a > 1");
    if (!(lambda > 0.0)) throw DomainError("Calderon sum needs lambda > 0");
    p.validate();

    const double log_a2 = 2.0 * std::log(a);
    const double peak_value = std::exp(2.0 * log_profile(p, p.peak()));
    const double cutoff = 1e-16 * peak_value;
    const int j0 = static_cast<int>(std::lround(std::log(p.peak() / lambda) / log_a2));
    auto term = [&](int j) { return std::exp(2.0 * log_profile(p, std::exp(j * log_a2) * lambda)); };

    int j_lo = j0;
    while (term(j_lo - 1) >= cutoff || j0 - j_lo < 1) --j_lo;
    int j_hi = j0;
    while (term(j_hi + 1) >= cutoff || j_hi - j0 < 1) ++j_hi;

    CompensatedSum sum;
    for (int j = j_lo; j <= j_hi; ++j) {
        const double v = term(j);
        if (v >= cutoff) sum += v;
    }
    return sum.value();
}

CalderonBounds calderon_bounds(const NeedletProfile& p, double a, int samples)
{
    if (!(a > 1.0 + 1e-9)) throw ConfigError("calderon_bounds: dilation a must exceed 1");
    if (samples < 2) throw ConfigError("calderon_bounds: need at least two samples");
    CalderonBounds b{std::numeric_limits<double>::infinity(), 0.0};
    const double log_a2 = 2.0 * std::log(a);
    for (int i = 0; i < samples; ++i) {
        const double lambda = std::exp(log_a2 * i / (samples - 1));
        const double g = calderon_sum(p, a, lambda);
        b.A = std::min(b.A, g);
        b.B = std::max(b.B, g);
    }
    return b;
}

}  // namespace mexneedlet
