#include "mexneedlet/frame.hpp"

#include "mexneedlet/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

namespace mexneedlet {

std::vector<SpherePoint> fibonacci_points(int n)
{
    if (n < 1) throw ConfigError("fibonacci_points: n must be positive");
    std::vector<SpherePoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const double golden = std::numbers::phi;
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        double phi = 2.0 * std::numbers::pi * std::fmod(k / golden, 1.0);
        pts.push_back({std::acos(z), phi});
    }
    return pts;
}

double minimal_separation(const std::vector<SpherePoint>& pts)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t k = i + 1; k < pts.size(); ++k) best = std::min(best, geodesic_distance(pts[i], pts[k]));
    }
    return best;
}

SphereGrid build_grid(double a, int j, double oversample, double density, int point_cap)
{
    if (!(a > 1.0)) throw ConfigError("build_grid: dilation a must exceed 1");
    if (!(oversample >= 1.0)) throw ConfigError("build_grid: oversample must be at least 1");
    if (j > 0) throw ConfigError("build_grid: scale index j must be non-positive");
    const double count = std::ceil(oversample * density * std::pow(a, -2.0 * j));
    if (!(count <= point_cap)) {
        throw NumericError("build_grid: " + std::to_string(count) + " points exceed the cap of " +
                           std::to_string(point_cap));
    }
    const int n = static_cast<int>(count);
    SphereGrid g;
    g.j = j;
    g.a = a;
    g.points = fibonacci_points(n);
    g.weights.assign(static_cast<std::size_t>(n), std::sqrt(4.0 * std::numbers::pi / n));
    return g;
}

void write_grid_csv(std::ostream& out, const std::vector<SphereGrid>& grids)
{
    out << "j,k,theta,phi,weight\n";
    char buf[160];
    for (const auto& g : grids) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%d,%zu,%.17g,%.17g,%.17g\n", g.j, k, g.points[k].theta,
                          g.points[k].phi, g.weights[k]);
            out << buf;
        }
    }
}

namespace {

int band_limit_of(std::size_t n)
{
    const auto root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (root < 2 || static_cast<std::size_t>(root) * static_cast<std::size_t>(root) != n) {
        throw ConfigError("frame_coefficients: coefficient vector is not a full band (L+1)^2 with L >= 1");
    }
    return root - 1;
}

std::vector<double> scale_factors(const NeedletProfile& p, double a, int j, int L)
{
    std::vector<double> f(static_cast<std::size_t>(L) + 1, 0.0);
    const double t2 = std::pow(a, 2.0 * j);
    for (int l = 1; l <= L; ++l) f[l] = profile_eval(p, t2 * laplace_eigenvalue(l));
    return f;
}

}  // namespace

std::vector<std::vector<double>> frame_coefficients(const std::vector<double>& f_hat,
                                                    const NeedletProfile& p,
                                                    const std::vector<SphereGrid>& grids)
{
    const int L = band_limit_of(f_hat.size());
    std::vector<std::vector<double>> out;
    out.reserve(grids.size());
    std::vector<double> y(harmonic_count(L));
    for (const auto& g : grids) {
        const auto f = scale_factors(p, g.a, g.j, L);
        std::vector<double> coeffs(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) {
            real_sph_harm_all(L, g.points[k].theta, g.points[k].phi, y);
            double sum = 0.0;
            for (int l = 1; l <= L; ++l) {
                double inner = 0.0;
                for (int m = -l; m <= l; ++m) inner += f_hat[harmonic_index(l, m)] * y[harmonic_index(l, m)];
                sum += f[l] * inner;
            }
            coeffs[k] = g.weights[k] * sum;
        }
        out.push_back(std::move(coeffs));
    }
    return out;
}

FrameBoundsEstimate estimate_frame_bounds(const NeedletProfile& p, const std::vector<SphereGrid>& grids,
                                          int L)
{
    p.validate();
    if (grids.empty()) throw ConfigError("estimate_frame_bounds: no grids");
    if (L < 1) throw ConfigError("estimate_frame_bounds: L must be at least 1");

    FrameBoundsEstimate est;
    est.L = L;
    est.j_min = grids.front().j;
    est.j_max = grids.front().j;
    for (const auto& g : grids) {
        est.j_min = std::min(est.j_min, g.j);
        est.j_max = std::max(est.j_max, g.j);
        est.rows += static_cast<int>(g.size());
    }

    // ideal (continuous) coverage per degree: sum over the scales of f^2
    std::vector<double> coverage(static_cast<std::size_t>(L) + 1, 0.0);
    for (const auto& g : grids) {
        const auto f = scale_factors(p, g.a, g.j, L);
        for (int l = 1; l <= L; ++l) coverage[l] += f[l] * f[l];
    }
    const double max_cov = *std::max_element(coverage.begin(), coverage.end());
    std::vector<int> column_of(harmonic_count(L), -1);
    int cols = 0;
    for (int l = 1; l <= L; ++l) {
        if (coverage[l] <= 1e-12 * max_cov) continue;
        est.degrees.push_back(l);
        for (int m = -l; m <= l; ++m) column_of[harmonic_index(l, m)] = cols++;
    }
    if (cols == 0) throw NumericError("estimate_frame_bounds: no degree is covered by the scales");

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(cols, cols);
    std::vector<double> y(harmonic_count(L));
    constexpr Eigen::Index kBlock = 512;
    for (const auto& g : grids) {
        const auto f = scale_factors(p, g.a, g.j, L);
        const auto rows = static_cast<Eigen::Index>(g.size());
        for (Eigen::Index start = 0; start < rows; start += kBlock) {
            const Eigen::Index len = std::min(kBlock, rows - start);
            Eigen::MatrixXd block(len, cols);
            for (Eigen::Index r = 0; r < len; ++r) {
                const auto k = static_cast<std::size_t>(start + r);
                real_sph_harm_all(L, g.points[k].theta, g.points[k].phi, y);
                for (int l : est.degrees) {
                    const double scale = g.weights[k] * f[l];
                    for (int m = -l; m <= l; ++m) {
                        const auto idx = harmonic_index(l, m);
                        block(r, column_of[idx]) = scale * y[idx];
                    }
                }
            }
            gram.selfadjointView<Eigen::Lower>().rankUpdate(block.transpose());
        }
    }
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("estimate_frame_bounds: eigen-decomposition failed");
    est.A_hat = solver.eigenvalues()(0);
    est.B_hat = solver.eigenvalues()(cols - 1);
    est.ill_conditioned = !(est.A_hat > 1e-12 * est.B_hat);
    return est;
}

FrameBoundsEstimate estimate_frame_bounds(const NeedletProfile& p, double a, int j_min, int j_max,
                                          int L, double oversample, double density)
{
    if (j_min > j_max) throw ConfigError("estimate_frame_bounds: j_min > j_max");
    std::vector<SphereGrid> grids;
    for (int j = j_max; j >= j_min; --j) grids.push_back(build_grid(a, j, oversample, density));
    return estimate_frame_bounds(p, grids, L);
}

std::pair<int, int> default_j_range(const NeedletProfile& p, double a, int L)
{
    p.validate();
    if (!(a > 1.0)) throw ConfigError("default_j_range: a must exceed 1");
    if (L < 1) throw ConfigError("default_j_range: L must be at least 1");
    const double target = 0.1 * p.peak();
    const int j_min = static_cast<int>(std::floor(std::log(target / laplace_eigenvalue(L)) / (2.0 * std::log(a))));
    return {std::min(j_min, 0), 0};
}

}  // namespace mexneedlet
