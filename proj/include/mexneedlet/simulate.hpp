#pragma once

#include "mexneedlet/config.hpp"
#include "mexneedlet/legendre.hpp"
#include "mexneedlet/needlet.hpp"
#include "mexneedlet/spectrum.hpp"

#include <cstdint>
#include <vector>

namespace mexneedlet {

/// Real harmonic coefficients a_{l,m}, 1 <= l <= L, packed by harmonic_index (l = 0 slot is zero).
struct AlmSet {
    int L = 0;
    std::vector<double> coeffs;
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;

    double at(int l, int m) const { return coeffs[harmonic_index(l, m)]; }
    double& at(int l, int m) { return coeffs[harmonic_index(l, m)]; }

    static AlmSet zeros(int L);
};

/// Draws a_{l,m} ~ N(0, c_l) independently. Coefficient (l, m) of replica i is
/// normal number harmonic_index(l, m) of Philox stream (seed, i), so the result
/// does not depend on evaluation order or thread layout.
/// Throws ConfigError if some c_l <= 0 for l <= L.
AlmSet sample_alm(const PowerSpectrum& ps, int L, std::uint64_t seed, std::uint64_t replica = 0);

struct BetaSample {
    double t = 0.0;
    SpherePoint point;
    double value = 0.0;
};

/// Harmonic weights f(t^2 lambda_l) Y_l^m(x), packed by harmonic_index up to L.
std::vector<double> needlet_weights(const NeedletProfile& p, double t, int L, const SpherePoint& x);

/// beta_{t,x} = sum_{l=1}^{L} sum_m f(t^2 lambda_l) a_{l,m} Y_l^m(x).
/// Throws NumericError if alm.L is below choose_lmax(profile, t, eps_tail).
BetaSample beta_at(const AlmSet& alm, const NeedletProfile& p, double t, const SpherePoint& x,
                   double eps_tail = kDefaultTailEps);

/// Rotates the field about the polar axis by angle: the returned set describes
/// F(theta, phi - angle).
AlmSet rotate_about_axis(const AlmSet& alm, double angle);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    int replicas = 0;
    int lmax = 0;
};

struct McOptions {
    int replicas = 4000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double eps_tail = kDefaultTailEps;
};

/// Monte-Carlo correlation of (beta_{t,x}, beta_{t,y}) over independent fields.
/// Uses the known zero mean: sum xy / sqrt(sum x^2 sum y^2), with a delete-one
/// jackknife standard error. Bit-identical for any thread count.
McEstimate monte_carlo_correlation(const NeedletProfile& p, const PowerSpectrum& ps, double t,
                                   const SpherePoint& x, const SpherePoint& y, const McOptions& opt);

/// |sum_m Y_l^m(x) Y_l^m(y) - (2l+1)/(4 pi) P_l(x . y)|.
double addition_theorem_check(int l, const SpherePoint& x, const SpherePoint& y);

}  // namespace mexneedlet
