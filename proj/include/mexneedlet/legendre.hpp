#pragma once

#include <span>
#include <vector>

namespace mexneedlet {

/// P_0(x) ... P_lmax(x) at a single abscissa.
struct LegendreTable {
    int lmax = 0;
    double x = 0.0;
    std::vector<double> values;

    double operator[](int l) const { return values[static_cast<std::size_t>(l)]; }
};

/// Point on the unit sphere in colatitude/longitude.
struct SpherePoint {
    double theta = 0.0;  ///< colatitude in [0, pi]
    double phi = 0.0;    ///< longitude in [0, 2pi)
};

/// Cartesian inner product of two sphere points, clamped to [-1, 1].
double dot(const SpherePoint& x, const SpherePoint& y);

/// Great-circle distance arccos(x . y).
double geodesic_distance(const SpherePoint& x, const SpherePoint& y);

struct SphHarmPoint {
    int l = 0;
    int m = 0;
    double theta = 0.0;
    double phi = 0.0;

    /// Laplacian eigenvalue l(l+1).
    double lambda() const { return static_cast<double>(l) * (l + 1); }
};

/// Upward three-term recurrence (l+1)P_{l+1} = (2l+1)xP_l - lP_{l-1}.
/// Throws DomainError for |x| > 1 + 1e-12 and NumericError past the degree cap.
LegendreTable legendre_batch(double x, int lmax);

/// Single Legendre value P_l(x).
double legendre_p(int l, double x);

/// Zonal function normalized as (2l+1) P_l(x), without the 1/(4 pi) area factor.
double zonal_eval(int l, double x);

/// (2l+1)(x-1)P_l - [(l+1)P_{l+1} - (2l+1)P_l + lP_{l-1}], with P_{-1} = 0.
double recursion_residual(int l, double x);

/// |sum_{l<=L} P_l(eta) xi^l - (1 - 2 xi eta + xi^2)^{-1/2}|.
double generating_function_check(double xi, double eta, int L);

/// Index of (l, m) in packed harmonic arrays: l*l + l + m.
constexpr std::size_t harmonic_index(int l, int m)
{
    return static_cast<std::size_t>(l * l + l + m);
}

constexpr std::size_t harmonic_count(int L)
{
    return static_cast<std::size_t>((L + 1) * (L + 1));
}

/// Real orthonormal spherical harmonic.
///
/// m > 0 carries sqrt(2) cos(m phi), m < 0 carries sqrt(2) sin(|m| phi), and
/// the associated Legendre part is produced by a normalized recurrence, so no
/// factorials appear and degrees into the thousands stay finite. The
/// Condon-Shortley phase is omitted.
double real_sph_harm(const SphHarmPoint& p);

/// All real harmonics Y_l^m(theta, phi) for 0 <= l <= L, packed by harmonic_index.
std::vector<double> real_sph_harm_all(int L, double theta, double phi);

/// Same as real_sph_harm_all but writes into a caller buffer of size harmonic_count(L).
void real_sph_harm_all(int L, double theta, double phi, std::span<double> out);

}  // namespace mexneedlet
