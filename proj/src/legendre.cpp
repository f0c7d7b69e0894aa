#include "mexneedlet/legendre.hpp"

#include "mexneedlet/config.hpp"
#include "mexneedlet/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mexneedlet {
namespace {

double checked_abscissa(double x)
{
    if (!(std::abs(x) <= 1.0 + kDomainSlack)) {
        throw DomainError("Legendre argument outside [-1, 1]: " + std::to_string(x));
    }
    return std::clamp(x, -1.0, 1.0);
}

}  // namespace

double dot(const SpherePoint& x, const SpherePoint& y)
{
    const double c = std::sin(x.theta) * std::sin(y.theta) * std::cos(x.phi - y.phi) +
                     std::cos(x.theta) * std::cos(y.theta);
    return std::clamp(c, -1.0, 1.0);
}

double geodesic_distance(const SpherePoint& x, const SpherePoint& y)
{
    return std::acos(dot(x, y));
}

LegendreTable legendre_batch(double x, int lmax)
{
    if (lmax < 0) throw DomainError("legendre_batch: negative degree");
    check_degree(lmax, "legendre_batch");
    x = checked_abscissa(x);

    LegendreTable table{lmax, x, std::vector<double>(static_cast<std::size_t>(lmax) + 1)};
    auto& p = table.values;
    p[0] = 1.0;
    if (lmax >= 1) p[1] = x;
    for (int l = 1; l < lmax; ++l) {
        const double next = ((2.0 * l + 1.0) * x * p[l] - l * p[l - 1]) / (l + 1.0);
        // rounding can push |P_l| a few ulps past 1 next to the endpoints
        p[l + 1] = std::clamp(next, -1.0, 1.0);
    }
    return table;
}

double legendre_p(int l, double x)
{
    if (l < 0) throw DomainError("legendre_p: negative degree");
    check_degree(l, "legendre_p");
    x = checked_abscissa(x);
    if (l == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int k = 1; k < l; ++k) {
        const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = std::clamp(next, -1.0, 1.0);
    }
    return cur;
}

double zonal_eval(int l, double x) { return (2.0 * l + 1.0) * legendre_p(l, x); }

double recursion_residual(int l, double x)
{
    if (l < 0) throw DomainError("recursion_residual: negative degree");
    const auto t = legendre_batch(x, l + 1);
    const double xc = t.x;
    const double pm1 = l == 0 ? 0.0 : t[l - 1];
    const double lhs = (2.0 * l + 1.0) * (xc - 1.0) * t[l];
    const double rhs = (l + 1.0) * t[l + 1] - (2.0 * l + 1.0) * t[l] + l * pm1;
    return lhs - rhs;
}

double generating_function_check(double xi, double eta, int L)
{
    if (!(std::abs(xi) < 1.0)) throw DomainError("generating function requires |xi| < 1");
    const double base = 1.0 - 2.0 * xi * eta + xi * xi;
    if (!(base > 0.0)) throw DomainError("generating function: 1 - 2 xi eta + xi^2 <= 0");
    const auto t = legendre_batch(eta, L);
    // Horner from the top keeps the partial sum well conditioned
    double series = 0.0;
    for (int l = L; l >= 0; --l) series = series * xi + t[l];
    return std::abs(series - 1.0 / std::sqrt(base));
}

void real_sph_harm_all(int L, double theta, double phi, std::span<double> out)
{
    if (L < 0) throw DomainError("real_sph_harm_all: negative degree");
    check_degree(L, "real_sph_harm_all");
    if (out.size() < harmonic_count(L)) throw ConfigError("real_sph_harm_all: buffer too small");

    const double x = std::cos(theta);
    const double s = std::sin(theta);
    const double sqrt2 = std::numbers::sqrt2;

    // pmm holds the normalized sectoral value \bar P_m^m(x), including 1/sqrt(4 pi)
    double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int m = 0; m <= L; ++m) {
        if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
        const double cm = m == 0 ? 1.0 : sqrt2 * std::cos(m * phi);
        const double sm = m == 0 ? 0.0 : sqrt2 * std::sin(m * phi);

        auto store = [&](int l, double plm) {
            out[harmonic_index(l, m)] = plm * cm;
            if (m > 0) out[harmonic_index(l, -m)] = plm * sm;
        };

        store(m, pmm);
        if (m == L) break;
        double p_prev = pmm;
        double p_cur = std::sqrt(2.0 * m + 3.0) * x * pmm;
        store(m + 1, p_cur);
        for (int l = m + 2; l <= L; ++l) {
            const double ll = static_cast<double>(l);
            const double mm = static_cast<double>(m);
            const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
            const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - mm * mm) /
                                       (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
            const double p_next = a * (x * p_cur - b * p_prev);
            p_prev = p_cur;
            p_cur = p_next;
            store(l, p_cur);
        }
    }
}

std::vector<double> real_sph_harm_all(int L, double theta, double phi)
{
    std::vector<double> out(harmonic_count(L));
    real_sph_harm_all(L, theta, phi, out);
    return out;
}

double real_sph_harm(const SphHarmPoint& p)
{
    if (p.l < 0 || std::abs(p.m) > p.l) throw DomainError("real_sph_harm: require |m| <= l");
    check_degree(p.l, "real_sph_harm");
    const int m = std::abs(p.m);
    const double x = std::cos(p.theta);
    const double s = std::sin(p.theta);

    double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int k = 1; k <= m; ++k) pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;

    double plm = pmm;
    if (p.l > m) {
        double p_prev = pmm;
        double p_cur = std::sqrt(2.0 * m + 3.0) * x * pmm;
        for (int l = m + 2; l <= p.l; ++l) {
            const double ll = static_cast<double>(l);
            const double mm = static_cast<double>(m);
            const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
            const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - mm * mm) /
                                       (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
            const double p_next = a * (x * p_cur - b * p_prev);
            p_prev = p_cur;
            p_cur = p_next;
        }
        plm = p_cur;
    }

    if (p.m == 0) return plm;
    const double sqrt2 = std::numbers::sqrt2;
    return p.m > 0 ? sqrt2 * plm * std::cos(m * p.phi) : sqrt2 * plm * std::sin(m * p.phi);
}

}  // namespace mexneedlet
