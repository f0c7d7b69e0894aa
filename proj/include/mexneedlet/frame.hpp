#pragma once

#include "mexneedlet/legendre.hpp"
#include "mexneedlet/needlet.hpp"

#include <iosfwd>
#include <vector>

namespace mexneedlet {

inline constexpr double kDefaultGridDensity = 4.0;
inline constexpr int kDefaultPointCap = 1 << 22;

/// Points x_{j,k} and weights mu_{j,k} for one scale t = a^j.
struct SphereGrid {
    int j = 0;
    double a = 2.0;
    std::vector<SpherePoint> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

/// Spherical Fibonacci lattice: z_k = 1 - (2k+1)/n, phi_k = 2 pi k / golden ratio.
std::vector<SpherePoint> fibonacci_points(int n);

/// Smallest pairwise great-circle distance (exhaustive, O(n^2)).
double minimal_separation(const std::vector<SpherePoint>& pts);

/// Fibonacci grid with n_j = ceil(oversample * density * a^{-2j}) points and
/// equal weights mu = sqrt(4 pi / n_j), so mu^2 is an equal-area quadrature weight.
SphereGrid build_grid(double a, int j, double oversample, double density = kDefaultGridDensity,
                      int point_cap = kDefaultPointCap);

/// Writes "j,k,theta,phi,weight" rows (with header) for every grid.
void write_grid_csv(std::ostream& out, const std::vector<SphereGrid>& grids);

/// Analysis coefficients <F, psi_{j,k}> = mu_{j,k} sum_{l,m} f(a^{2j} lambda_l) F_hat(l,m) Y_l^m(x_{j,k}).
/// f_hat is packed by harmonic_index and must have size (L+1)^2 for some L >= 1.
/// Returns one vector per grid.
std::vector<std::vector<double>> frame_coefficients(const std::vector<double>& f_hat,
                                                    const NeedletProfile& p,
                                                    const std::vector<SphereGrid>& grids);

/// Frame bounds of the analysis operator restricted to degrees 1..L, which is
/// all an estimate can see; the full L^2 bounds are not computable.
struct FrameBoundsEstimate {
    int L = 0;
    double A_hat = 0.0;
    double B_hat = 0.0;
    int j_min = 0;
    int j_max = 0;
    int rows = 0;
    std::vector<int> degrees;   ///< degrees with Calderon coverage, i.e. kept in the subspace
    bool ill_conditioned = false;

    double ratio() const { return B_hat / A_hat; }
};

/// Extreme squared singular values of M[(j,k),(l,m)] = mu_{j,k} f(a^{2j} lambda_l) Y_l^m(x_{j,k}),
/// computed as eigenvalues of the Gram matrix M^T M.
FrameBoundsEstimate estimate_frame_bounds(const NeedletProfile& p, const std::vector<SphereGrid>& grids,
                                          int L);

/// Builds grids for j = j_min..j_max at the given oversampling and estimates the bounds.
FrameBoundsEstimate estimate_frame_bounds(const NeedletProfile& p, double a, int j_min, int j_max,
                                          int L, double oversample,
                                          double density = kDefaultGridDensity);

/// j_max = 0 and the coarsest j_min with a^{2 j_min} lambda_L <= 0.1, so that
/// every degree up to L sees the peak of f at some scale.
std::pair<int, int> default_j_range(const NeedletProfile& p, double a, int L);

}  // namespace mexneedlet
