#include <doctest.h>

#include "mexneedlet/difference.hpp"
#include "mexneedlet/error.hpp"
#include "mexneedlet/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace mexneedlet;

namespace {

// Direct (2l+1) P_l sum without compensation, the oracle for zonal_series.
double naive_zonal(const CoeffSequence& s, double x)
{
    const auto p = legendre_batch(x, std::max(s.last(), 0));
    double sum = 0.0;
    for (int l = s.offset(); l <= s.last(); ++l) sum += s[l] * (2 * l + 1) * p[l];
    return sum;
}

CoeffSequence random_sequence(std::mt19937_64& rng, int offset, int n)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return CoeffSequence(offset, v);
}

}  // namespace

TEST_CASE("window reads outside are zero")
{
    const CoeffSequence s(2, {1.0, 2.0, 3.0});
    CHECK(s[1] == 0.0);
    CHECK(s[-3] == 0.0);
    CHECK(s[2] == 1.0);
    CHECK(s[4] == 3.0);
    CHECK(s[5] == 0.0);
    CHECK(s.last() == 4);
    CHECK(CoeffSequence().last() == -1);
}

TEST_CASE("delta operators on a constant sequence")
{
    const CoeffSequence ones(0, std::vector<double>(5, 1.0));
    const auto dp = delta_plus(ones);
    CHECK(dp.size() == 4);
    for (double v : dp.values()) CHECK(v == 0.0);

    const auto dm = delta_minus(ones);
    CHECK(dm[0] == 1.0);
    for (int l = 1; l <= 4; ++l) CHECK(dm[l] == 0.0);

    CHECK_THROWS(delta_plus(CoeffSequence(0, {1.0})));
}

TEST_CASE("R and S coefficients")
{
    CHECK(r_coeff(0) == 0.0);
    CHECK(s_coeff(0) == 1.0);
    CHECK(r_coeff(2) == doctest::Approx(0.4));
    CHECK(s_coeff(2) == doctest::Approx(0.2));
}

TEST_CASE("apply_P on a single Z_0")
{
    // (x - 1) * 1 = -Z_0 + Z_1 / 3
    const auto a1 = apply_P(CoeffSequence(0, {1.0}));
    CHECK(a1[0] == doctest::Approx(-1.0));
    CHECK(a1[1] == doctest::Approx(1.0 / 3.0));
    CHECK(a1[2] == 0.0);
}

TEST_CASE("master identity for random sequences")
{
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> th(0.0, 3.14159);
    for (int N = 1; N <= 5; ++N) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = random_sequence(rng, trial, 20);
            const auto aN = apply_P_iter(a, N);
            for (int i = 0; i < 50; ++i) {
                const double x = std::cos(th(rng));
                const double lhs = zonal_series(aN, x);
                const double rhs = std::pow(x - 1.0, N) * zonal_series(a, x);
                CHECK(std::abs(lhs - rhs) <= 1e-9);
            }
        }
    }
    CHECK_THROWS(apply_P_iter(CoeffSequence(0, {1.0}), 0));
}

TEST_CASE("apply_P output window")
{
    const auto a = CoeffSequence(5, {1.0, 2.0, 3.0});
    const auto p = apply_P(a);
    CHECK(p.offset() == 4);
    CHECK(p.last() == 8);
    const auto q = apply_P(CoeffSequence(0, {1.0, 2.0}));
    CHECK(q.offset() == 0);
}

TEST_CASE("zonal_series agrees with direct summation")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_sequence(rng, 0, 30);
        const double x = u(rng);
        CHECK(zonal_series(a, x) == doctest::Approx(naive_zonal(a, x)).epsilon(1e-12));
    }
}

TEST_CASE("decay rate of a pure power")
{
    const auto s = CoeffSequence::from_function(1, 500, [](int l) { return std::pow(l, -3.0); });
    CHECK(decay_rate_estimate(s, 10, 500) == doctest::Approx(-3.0).epsilon(1e-10));
    const auto z = CoeffSequence(1, std::vector<double>(20, 0.0));
    CHECK_THROWS_AS(decay_rate_estimate(z, 2, 10), NumericError);
}
