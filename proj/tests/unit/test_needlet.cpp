#include <doctest.h>

#include "mexneedlet/error.hpp"
#include "mexneedlet/legendre.hpp"
#include "mexneedlet/needlet.hpp"

#include <cmath>
#include <numbers>

using namespace mexneedlet;

namespace {

// Brute-force kernel with a hard cutoff, plain double accumulation.
double brute_kernel(const NeedletProfile& p, double t, int lmax, double x)
{
    const auto P = legendre_batch(x, lmax);
    double sum = 0.0;
    for (int l = 1; l <= lmax; ++l) sum += profile_eval(p, t * t * laplace_eigenvalue(l)) * (2 * l + 1) * P[l];
    return sum;
}

}  // namespace

TEST_CASE("profile values")
{
    const NeedletProfile mex{1, ProfileFamily::Exponential};
    CHECK(profile_eval(mex, 0.0) == 0.0);
    CHECK(profile_eval(mex, 1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(profile_eval(mex, 2.0) == doctest::Approx(2 * std::exp(-2.0)));
    CHECK(mex.peak() == 1.0);

    const NeedletProfile g{2, ProfileFamily::Gaussian};
    CHECK(profile_eval(g, 1.5) == doctest::Approx(2.25 * std::exp(-2.25)));
    CHECK(g.peak() == doctest::Approx(1.0));

    CHECK_THROWS_AS((NeedletProfile{0, ProfileFamily::Exponential}.validate()), ConfigError);
    CHECK(profile_family_from_name("gaussian") == ProfileFamily::Gaussian);
    CHECK(to_string(ProfileFamily::Exponential) == "exponential");
}

TEST_CASE("choose_lmax scales like 1/t and respects the tail")
{
    const NeedletProfile p{1, ProfileFamily::Exponential};
    const int l1 = choose_lmax(p, 0.1);
    const int l2 = choose_lmax(p, 0.05);
    CHECK(l1 >= 8);
    CHECK(static_cast<double>(l2) / l1 == doctest::Approx(2.0).epsilon(0.1));

    const double t = 0.1;
    double kept = 0.0, dropped = 0.0;
    for (int l = 0; l < 20 * l1; ++l) {
        const double term = profile_eval(p, t * t * laplace_eigenvalue(l)) * (2 * l + 1);
        (l <= l1 ? kept : dropped) += term;
    }
    CHECK(dropped <= 1e-12 * kept);

    CHECK(choose_lmax(p, 0.1, 1e-12, 2) <= l1);
    CHECK_THROWS_AS(choose_lmax(p, 1e-5), NumericError);
}

TEST_CASE("kernel agrees with a doubled-cutoff brute force")
{
    const NeedletProfile p{1, ProfileFamily::Exponential};
    for (double t : {0.4, 0.2, 0.1}) {
        const auto k = KernelSpec::make(p, t);
        const double scale = brute_kernel(p, t, 2 * k.lmax, 1.0);
        for (double th : {0.0, 0.05, 0.3, 1.0, 2.0, 3.1}) {
            const double x = std::cos(th);
            CHECK(std::abs(kernel_eval(k, x) - brute_kernel(p, t, 2 * k.lmax, x)) <= 1e-11 * scale);
        }
    }
}

TEST_CASE("kernel peak grows like t^-2")
{
    const NeedletProfile p{1, ProfileFamily::Exponential};
    const double k1 = kernel_eval(KernelSpec::make(p, 0.05), 1.0);
    const double k2 = kernel_eval(KernelSpec::make(p, 0.025), 1.0);
    CHECK(k2 / k1 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("explicit truncation")
{
    const NeedletProfile p{1, ProfileFamily::Exponential};
    const auto k = KernelSpec::with_lmax(p, 0.2, 5);
    CHECK(k.coeffs.size() == 6);
    CHECK(k.coeffs[0] == 0.0);
    CHECK(k.coeffs[3] == doctest::Approx(profile_eval(p, 0.04 * 12) * 7));
    CHECK(kernel_eval(k, 0.3) == doctest::Approx(brute_kernel(p, 0.2, 5, 0.3)).epsilon(1e-13));
}

TEST_CASE("localization of the kernel")
{
    const NeedletProfile p{1, ProfileFamily::Exponential};
    const auto rep = localization_check(p, {0.2, 0.1, 0.05}, 3);
    CHECK(rep.pass);
    CHECK(rep.ratio <= 10.0);
    for (const auto& e : rep.entries) {
        CHECK(std::isfinite(e.sup));
        CHECK(e.sup > 0.0);
    }

    KernelSpec single = KernelSpec::with_lmax(p, 0.2, 1);
    single.coeffs = {0.0, 3.0};
    const auto e = localization_sup(single, 3);
    CHECK(std::isfinite(e.sup));
    CHECK(e.sup > 0.0);
}

TEST_CASE("Calderon sum periodicity and bounds")
{
    const NeedletProfile p{1, ProfileFamily::Exponential};
    for (double a : {1.2, 2.0, 3.0}) {
        for (double lam : {0.7, 1.0, 5.3, 42.0}) {
            CHECK(std::abs(calderon_sum(p, a, lam) - calderon_sum(p, a, a * a * lam)) <=
                  1e-12 * calderon_sum(p, a, lam));
        }
    }
    const auto b2 = calderon_bounds(p, 2.0);
    const auto b12 = calderon_bounds(p, 1.2);
    CHECK(b2.A > 0.0);
    CHECK(b2.A <= b2.B);
    CHECK(b12.ratio() < b2.ratio());
    // the continuous limit: sum over j of f(a^{2j} s)^2 ~ (1 / (2 log a)) int f(u)^2 du/u = 1/(8 log a)
    CHECK(b12.A == doctest::Approx(1.0 / (8 * std::log(1.2))).epsilon(1e-6));
    CHECK_THROWS(calderon_sum(p, 1.0, 1.0));
}
