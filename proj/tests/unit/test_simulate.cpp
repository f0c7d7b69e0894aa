#include <doctest.h>

#include "mexneedlet/correlation.hpp"
#include "mexneedlet/error.hpp"
#include "mexneedlet/random.hpp"
#include "mexneedlet/simulate.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace mexneedlet;

namespace {

constexpr double kPi = std::numbers::pi;
const NeedletProfile kMex{1, ProfileFamily::Exponential};

}  // namespace

TEST_CASE("Philox4x32-10 known answers")
{
    const Philox4x32 zero(0);
    const auto z = zero({0, 0, 0, 0});
    CHECK(z[0] == 0x6627e8d5u);
    CHECK(z[1] == 0xe169c58du);
    CHECK(z[2] == 0xbc57ac4cu);
    CHECK(z[3] == 0x9b00dbd8u);

    const Philox4x32 ones(0xffffffffffffffffull);
    const auto o = ones({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu});
    CHECK(o[0] == 0x408f276du);
    CHECK(o[1] == 0x41c83b0eu);
    CHECK(o[2] == 0xa20bc7c6u);
    CHECK(o[3] == 0x6d5451fdu);
}

TEST_CASE("normal stream moments and addressing")
{
    const NormalStream s(42, 0);
    double m1 = 0.0, m2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = s[i];
        m1 += v;
        m2 += v * v;
    }
    CHECK(std::abs(m1 / n) <= 4.0 / std::sqrt(n));
    CHECK(std::abs(m2 / n - 1.0) <= 4.0 * std::sqrt(2.0 / n));
    CHECK(s[7] == NormalStream(42, 0)[7]);
    CHECK(s[7] != NormalStream(42, 1)[7]);
    CHECK(s[7] != NormalStream(43, 0)[7]);
}

TEST_CASE("sampled coefficients have variance c_l and are uncorrelated")
{
    const auto ps = PowerSpectrum::power_law(3.0);
    const int L = 4, R = 20000;
    std::vector<double> sum2(harmonic_count(L), 0.0);
    double cross = 0.0;
    for (int i = 0; i < R; ++i) {
        const auto alm = sample_alm(ps, L, 9, i);
        for (std::size_t k = 0; k < sum2.size(); ++k) sum2[k] += alm.coeffs[k] * alm.coeffs[k];
        cross += alm.at(2, 1) * alm.at(3, -2);
        CHECK(alm.at(0, 0) == 0.0);
    }
    for (int l = 1; l <= L; ++l) {
        const double c = spectrum_eval(ps, l);
        for (int m = -l; m <= l; ++m) {
            const double var = sum2[harmonic_index(l, m)] / R;
            CHECK(std::abs(var - c) <= 4.0 * c * std::sqrt(2.0 / R));
        }
    }
    const double sd = std::sqrt(spectrum_eval(ps, 2) * spectrum_eval(ps, 3) / R);
    CHECK(std::abs(cross / R) <= 4.0 * sd);
}

TEST_CASE("beta variance matches the analytic value over 4 pi")
{
    const auto ps = PowerSpectrum::power_law(3.0);
    const double t = 0.3;
    const int L = choose_lmax(kMex, t);
    const SpherePoint x{1.0, 2.0};
    const int R = 4000;
    double s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < R; ++i) {
        const double b = beta_at(sample_alm(ps, L, 1, i), kMex, t, x).value;
        s2 += b * b;
        s4 += b * b * b * b;
    }
    const double var = s2 / R;
    const double se = std::sqrt((s4 / R - var * var) / R);
    const double expected = analytic_covariance({kMex, ps, t, 1.0}) / (4 * kPi);
    CHECK(std::abs(var - expected) <= 4.0 * se);
}

TEST_CASE("beta_at rejects truncated fields")
{
    const auto alm = sample_alm(PowerSpectrum::power_law(3.0), 4, 0);
    CHECK_THROWS_AS(beta_at(alm, kMex, 0.05, {1.0, 1.0}), NumericError);
    CHECK_THROWS_AS(sample_alm(PowerSpectrum::tabulated(3.0, {1.0, 0.1}), 5, 0), ConfigError);
}

TEST_CASE("rotation about the pole is equivariant")
{
    const auto ps = PowerSpectrum::power_law(3.0);
    const double t = 0.3;
    const int L = choose_lmax(kMex, t);
    const auto alm = sample_alm(ps, L, 3);
    const double angle = 0.77;
    const auto rot = rotate_about_axis(alm, angle);
    for (const SpherePoint x : {SpherePoint{0.4, 1.0}, SpherePoint{2.0, 5.5}}) {
        const double moved = beta_at(rot, kMex, t, {x.theta, x.phi + angle}).value;
        CHECK(moved == doctest::Approx(beta_at(alm, kMex, t, x).value).epsilon(1e-11));
    }
}

TEST_CASE("monte carlo corner cases and determinism")
{
    const auto ps = PowerSpectrum::power_law(3.0);
    const SpherePoint x{kPi / 2, 0.0};
    McOptions opt;
    opt.replicas = 500;
    const auto same = monte_carlo_correlation(kMex, ps, 0.2, x, x, opt);
    CHECK(same.estimate == doctest::Approx(1.0).epsilon(1e-14));

    const auto base = monte_carlo_correlation(kMex, ps, 0.2, x, {kPi / 2, kPi / 2}, opt);
    opt.threads = 3;
    const auto threaded = monte_carlo_correlation(kMex, ps, 0.2, x, {kPi / 2, kPi / 2}, opt);
    CHECK(base.estimate == threaded.estimate);
    CHECK(base.stderr_ == threaded.stderr_);

    opt.replicas = 50;
    CHECK_THROWS(monte_carlo_correlation(kMex, ps, 0.2, x, x, opt));
}

TEST_CASE("monte carlo agrees with the analytic correlation")
{
    const auto ps = PowerSpectrum::power_law(3.0);
    McOptions opt;
    opt.replicas = 4000;
    opt.seed = 11;
    const auto mc = monte_carlo_correlation(kMex, ps, 0.2, {kPi / 2, 0.0}, {kPi / 2, kPi / 4}, opt);
    const double exact = analytic_correlation({kMex, ps, 0.2, std::cos(kPi / 4)});
    CHECK(std::abs(mc.estimate - exact) <= 4.0 * mc.stderr_);
}

TEST_CASE("isotropy: correlation depends only on distance")
{
    const auto ps = PowerSpectrum::power_law(3.0);
    McOptions opt;
    opt.replicas = 2000;
    const double d = 0.6;
    const auto a = monte_carlo_correlation(kMex, ps, 0.3, {kPi / 2, 0.0}, {kPi / 2, d}, opt);
    const auto b = monte_carlo_correlation(kMex, ps, 0.3, {0.2, 1.0}, {0.2 + d, 1.0}, opt);
    CHECK(std::abs(a.estimate - b.estimate) <= 4.0 * std::hypot(a.stderr_, b.stderr_));
}

TEST_CASE("addition theorem and Unsold identity")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const SpherePoint x{std::acos(1 - 2 * u(rng)), 2 * kPi * u(rng)};
        const SpherePoint y{std::acos(1 - 2 * u(rng)), 2 * kPi * u(rng)};
        for (int l = 0; l <= 10; ++l) {
            CHECK(addition_theorem_check(l, x, y) <= 1e-12);
            CHECK(addition_theorem_check(l, x, x) <= 1e-12);
        }
    }
}
