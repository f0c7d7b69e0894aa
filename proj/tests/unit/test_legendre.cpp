#include <doctest.h>

#include "mexneedlet/error.hpp"
#include "mexneedlet/legendre.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace mexneedlet;

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes/weights by Newton iteration on a local recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w)
{
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                x[i] = z;
                w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
                break;
            }
        }
    }
}

SpherePoint random_point(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {std::acos(1.0 - 2.0 * u(rng)), 2.0 * kPi * u(rng)};
}

}  // namespace

TEST_CASE("legendre_batch endpoint and explicit values")
{
    const auto one = legendre_batch(1.0, 5);
    for (int l = 0; l <= 5; ++l) CHECK(one[l] == 1.0);

    const auto minus = legendre_batch(-1.0, 5);
    for (int l = 0; l <= 5; ++l) CHECK(minus[l] == doctest::Approx(l % 2 == 0 ? 1.0 : -1.0).epsilon(1e-15));

    const auto half = legendre_batch(0.5, 3);
    CHECK(half[0] == 1.0);
    CHECK(half[1] == 0.5);
    CHECK(half[2] == doctest::Approx((3 * 0.25 - 1) / 2).epsilon(1e-15));
    CHECK(half[2] == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(half[3] == doctest::Approx((5 * 0.125 - 3 * 0.5) / 2).epsilon(1e-15));
}

TEST_CASE("legendre values stay in [-1, 1] and domain errors")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto t = legendre_batch(u(rng), 400);
        for (double v : t.values) CHECK(std::abs(v) <= 1.0);
    }
    CHECK_THROWS_AS(legendre_batch(1.1, 3), DomainError);
    CHECK_NOTHROW(legendre_batch(1.0 + 1e-13, 3));
    CHECK_THROWS_AS(legendre_batch(0.5, 5000), NumericError);
}

TEST_CASE("zonal_eval")
{
    CHECK(zonal_eval(3, 1.0) == 7.0);
    CHECK(zonal_eval(0, 0.3) == 1.0);
    CHECK(zonal_eval(2, 0.5) == doctest::Approx(-0.625).epsilon(1e-15));
}

TEST_CASE("recursion residual")
{
    CHECK(std::abs(recursion_residual(0, 0.7)) <= 1e-15);
    CHECK(std::abs(recursion_residual(1, -0.2)) <= 1e-15);
    CHECK(std::abs(recursion_residual(50, 0.999)) <= 1e-12);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int l = 0; l <= 64; ++l) {
        for (int i = 0; i < 100; ++i) CHECK(std::abs(recursion_residual(l, u(rng))) <= 1e-12);
    }
}

TEST_CASE("generating function partial sums")
{
    CHECK(generating_function_check(0.0, 0.5, 0) == 0.0);
    CHECK(generating_function_check(0.4, 0.3, 80) <= 1e-12);
    CHECK(generating_function_check(-0.4, 0.3, 80) <= 1e-12);
    CHECK(1.0 / std::sqrt(1.0 - 2 * 0.4 * 0.3 + 0.16) == doctest::Approx(std::pow(0.92, -0.5)));
    CHECK_THROWS_AS(generating_function_check(1.0, 0.3, 10), DomainError);
}

TEST_CASE("real spherical harmonics closed forms")
{
    const double y00 = 1.0 / std::sqrt(4 * kPi);
    CHECK(real_sph_harm({0, 0, 0.3, 1.2}) == doctest::Approx(y00).epsilon(1e-15));
    CHECK(real_sph_harm({0, 0, 2.9, 5.0}) == doctest::Approx(y00).epsilon(1e-15));
    CHECK(real_sph_harm({1, 0, 0.0, 0.0}) == doctest::Approx(std::sqrt(3.0 / (4 * kPi))).epsilon(1e-15));

    const double th = 0.83, ph = 2.1;
    const double c = std::cos(th), s = std::sin(th);
    CHECK(real_sph_harm({2, 0, th, ph}) == doctest::Approx(std::sqrt(5 / (16 * kPi)) * (3 * c * c - 1)).epsilon(1e-14));
    CHECK(real_sph_harm({2, 1, th, ph}) == doctest::Approx(std::sqrt(15 / (4 * kPi)) * s * c * std::cos(ph)).epsilon(1e-14));
    CHECK(real_sph_harm({2, -1, th, ph}) == doctest::Approx(std::sqrt(15 / (4 * kPi)) * s * c * std::sin(ph)).epsilon(1e-14));
    CHECK(real_sph_harm({2, 2, th, ph}) == doctest::Approx(std::sqrt(15 / (16 * kPi)) * s * s * std::cos(2 * ph)).epsilon(1e-14));
    CHECK(real_sph_harm({2, -2, th, ph}) == doctest::Approx(std::sqrt(15 / (16 * kPi)) * s * s * std::sin(2 * ph)).epsilon(1e-14));

    CHECK_THROWS_AS(real_sph_harm({2, 3, 0.1, 0.1}), DomainError);
    CHECK(SphHarmPoint{4, 1, 0, 0}.lambda() == 20.0);
}

TEST_CASE("single and packed harmonics agree")
{
    const auto all = real_sph_harm_all(12, 1.1, 4.0);
    for (int l = 0; l <= 12; ++l) {
        for (int m = -l; m <= l; ++m) {
            CHECK(all[harmonic_index(l, m)] == doctest::Approx(real_sph_harm({l, m, 1.1, 4.0})).epsilon(1e-13));
        }
    }
}

TEST_CASE("orthonormality by Gauss-Legendre x trapezoid quadrature")
{
    const int L = 8;
    std::vector<double> xs, ws;
    gauss_legendre(L + 2, xs, ws);
    const int nphi = 2 * L + 2;
    const std::size_t nh = harmonic_count(L);
    std::vector<double> gram(nh * nh, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (int k = 0; k < nphi; ++k) {
            const auto y = real_sph_harm_all(L, std::acos(xs[i]), 2 * kPi * k / nphi);
            const double w = ws[i] * 2 * kPi / nphi;
            for (std::size_t a = 0; a < nh; ++a)
                for (std::size_t b = 0; b < nh; ++b) gram[a * nh + b] += w * y[a] * y[b];
        }
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < nh; ++a)
        for (std::size_t b = 0; b < nh; ++b) worst = std::max(worst, std::abs(gram[a * nh + b] - (a == b ? 1.0 : 0.0)));
    CHECK(worst <= 1e-8);
}

TEST_CASE("addition theorem for random point pairs")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_point(rng);
        const auto y = random_point(rng);
        for (int l = 0; l <= 16; ++l) {
            const auto yx = real_sph_harm_all(l, x.theta, x.phi);
            const auto yy = real_sph_harm_all(l, y.theta, y.phi);
            double sum = 0.0;
            for (int m = -l; m <= l; ++m) sum += yx[harmonic_index(l, m)] * yy[harmonic_index(l, m)];
            CHECK(std::abs(sum - (2 * l + 1) / (4 * kPi) * legendre_p(l, dot(x, y))) <= 1e-10);
        }
    }
}

TEST_CASE("normalized recurrence stays finite at high degree")
{
    const int L = 2000;
    const auto y = real_sph_harm_all(L, 0.7, 0.3);
    double sum = 0.0;
    for (int m = -L; m <= L; ++m) {
        const double v = y[harmonic_index(L, m)];
        REQUIRE(std::isfinite(v));
        sum += v * v;
    }
    CHECK(sum == doctest::Approx((2.0 * L + 1) / (4 * kPi)).epsilon(1e-9));
}
