#include "mexneedlet/simulate.hpp"

#include "mexneedlet/error.hpp"
#include "mexneedlet/random.hpp"
#include "mexneedlet/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace mexneedlet {
namespace {

std::vector<double> spectrum_sqrt(const PowerSpectrum& ps, int L)
{
    std::vector<double> out(static_cast<std::size_t>(L) + 1, 0.0);
    for (int l = 1; l <= L; ++l) {
        const double c = spectrum_eval(ps, l);
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw ConfigError("angular power spectrum must be positive: c_" + std::to_string(l) +
                              " = " + std::to_string(c));
        }
        out[l] = std::sqrt(c);
    }
    return out;
}

}  // namespace

AlmSet AlmSet::zeros(int L)
{
    if (L < 1) throw ConfigError("AlmSet: L must be at least 1");
    check_degree(L, "AlmSet");
    return AlmSet{L, std::vector<double>(harmonic_count(L), 0.0), 0, 0};
}

AlmSet sample_alm(const PowerSpectrum& ps, int L, std::uint64_t seed, std::uint64_t replica)
{
    auto alm = AlmSet::zeros(L);
    alm.seed = seed;
    alm.replica = replica;
    const auto sd = spectrum_sqrt(ps, L);
    const NormalStream normals(seed, replica);
    for (int l = 1; l <= L; ++l) {
        for (int m = -l; m <= l; ++m) alm.at(l, m) = sd[l] * normals[harmonic_index(l, m)];
    }
    return alm;
}

std::vector<double> needlet_weights(const NeedletProfile& p, double t, int L, const SpherePoint& x)
{
    auto w = real_sph_harm_all(L, x.theta, x.phi);
    w[0] = 0.0;
    for (int l = 1; l <= L; ++l) {
        const double f = profile_eval(p, t * t * laplace_eigenvalue(l));
        for (int m = -l; m <= l; ++m) w[harmonic_index(l, m)] *= f;
    }
    return w;
}

BetaSample beta_at(const AlmSet& alm, const NeedletProfile& p, double t, const SpherePoint& x,
                   double eps_tail)
{
    const int need = choose_lmax(p, t, eps_tail, 1);
    if (alm.L < need) {
        throw NumericError("beta_at: field band limit " + std::to_string(alm.L) +
                           " is below the required degree " + std::to_string(need));
    }
    const auto w = needlet_weights(p, t, alm.L, x);
    CompensatedSum sum;
    for (std::size_t i = 1; i < w.size(); ++i) sum += w[i] * alm.coeffs[i];
    return BetaSample{t, x, sum.value()};
}

AlmSet rotate_about_axis(const AlmSet& alm, double angle)
{
    AlmSet out = alm;
    for (int l = 1; l <= alm.L; ++l) {
        for (int m = 1; m <= l; ++m) {
            const double c = std::cos(m * angle);
            const double s = std::sin(m * angle);
            const double a_cos = alm.at(l, m);
            const double a_sin = alm.at(l, -m);
            out.at(l, m) = a_cos * c - a_sin * s;
            out.at(l, -m) = a_cos * s + a_sin * c;
        }
    }
    return out;
}

McEstimate monte_carlo_correlation(const NeedletProfile& p, const PowerSpectrum& ps, double t,
                                   const SpherePoint& x, const SpherePoint& y, const McOptions& opt)
{
    if (opt.replicas < 100) throw ConfigError("monte_carlo_correlation: need at least 100 replicas");
    const int L = choose_lmax(p, t, opt.eps_tail, 1);
    const auto sd = spectrum_sqrt(ps, L);

    auto wx = needlet_weights(p, t, L, x);
    auto wy = needlet_weights(p, t, L, y);
    for (int l = 1; l <= L; ++l) {
        for (int m = -l; m <= l; ++m) {
            wx[harmonic_index(l, m)] *= sd[l];
            wy[harmonic_index(l, m)] *= sd[l];
        }
    }

    const auto n = static_cast<std::size_t>(opt.replicas);
    std::vector<double> bx(n), by(n);
    const std::size_t count = wx.size();

    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const NormalStream normals(opt.seed, i);
            double sx = 0.0;
            double sy = 0.0;
            // index 0 is the unused monopole slot; blocks cover indices 2k, 2k+1
            for (std::size_t k = 0; 2 * k < count; ++k) {
                const auto [z0, z1] = normals.pair(k);
                const std::size_t i0 = 2 * k;
                const std::size_t i1 = i0 + 1;
                sx += wx[i0] * z0;
                sy += wy[i0] * z0;
                if (i1 < count) {
                    sx += wx[i1] * z1;
                    sy += wy[i1] * z1;
                }
            }
            bx[i] = sx;
            by[i] = sy;
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        run(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin < end) pool.emplace_back(run, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    CompensatedSum sxy, sxx, syy;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += bx[i] * by[i];
        sxx += bx[i] * bx[i];
        syy += by[i] * by[i];
    }
    const double Sxy = sxy.value();
    const double Sxx = sxx.value();
    const double Syy = syy.value();
    if (!(Sxx > 0.0) || !(Syy > 0.0)) throw NumericError("monte_carlo_correlation: degenerate sample variance");

    McEstimate est;
    est.replicas = opt.replicas;
    est.lmax = L;
    est.estimate = Sxy / std::sqrt(Sxx * Syy);

    std::vector<double> loo(n);
    CompensatedSum loo_sum;
    for (std::size_t i = 0; i < n; ++i) {
        const double num = Sxy - bx[i] * by[i];
        loo[i] = num / std::sqrt((Sxx - bx[i] * bx[i]) * (Syy - by[i] * by[i]));
        loo_sum += loo[i];
    }
    const double mean = loo_sum.value() / static_cast<double>(n);
    CompensatedSum dev;
    for (double v : loo) dev += (v - mean) * (v - mean);
    est.stderr_ = std::sqrt(dev.value() * (static_cast<double>(n) - 1.0) / static_cast<double>(n));
    return est;
}

double addition_theorem_check(int l, const SpherePoint& x, const SpherePoint& y)
{
    if (l < 0) throw DomainError("addition_theorem_check: negative degree");
    const auto yx = real_sph_harm_all(l, x.theta, x.phi);
    const auto yy = real_sph_harm_all(l, y.theta, y.phi);
    CompensatedSum sum;
    for (int m = -l; m <= l; ++m) sum += yx[harmonic_index(l, m)] * yy[harmonic_index(l, m)];
    const double rhs = (2.0 * l + 1.0) / (4.0 * std::numbers::pi) * legendre_p(l, dot(x, y));
    return std::abs(sum.value() - rhs);
}

}  // namespace mexneedlet
