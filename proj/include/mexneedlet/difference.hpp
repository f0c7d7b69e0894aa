#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mexneedlet {

/// Finite window a_offset ... a_last of a degree-indexed sequence.
/// Reads below the window (including negative indices) and above it return 0.
class CoeffSequence {
public:
    CoeffSequence() = default;
    CoeffSequence(int offset, std::vector<double> values);

    /// Samples fn(l) for l in [first, last].
    static CoeffSequence from_function(int first, int last, const std::function<double(int)>& fn);

    int offset() const { return offset_; }
    /// Highest stored index; offset() - 1 when empty.
    int last() const { return offset_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double operator[](int l) const;
    const std::vector<double>& values() const { return values_; }

private:
    int offset_ = 0;
    std::vector<double> values_;
};

/// Delta+ a_l = a_{l+1} - a_l on [offset, last-1]. Needs at least two stored values.
CoeffSequence delta_plus(const CoeffSequence& s);

/// Delta- a_l = a_l - a_{l-1} on [offset, last], with a_{offset-1} read as 0.
CoeffSequence delta_minus(const CoeffSequence& s);

/// R(l) = l / (2l+1).
double r_coeff(int l);
/// S(l) = 1 / (2l+1).
double s_coeff(int l);

/// a^1_l = R(l) Delta+ Delta- a_l + S(l) Delta- a_l for a finitely supported sequence.
///
/// The result is the coefficient sequence of (cos theta - 1) sum_l a_l Z_l(cos theta),
/// so the window extends one degree above the input (and one below, down to 0).
CoeffSequence apply_P(const CoeffSequence& s);

/// N-fold composition of apply_P.
CoeffSequence apply_P_iter(const CoeffSequence& s, int n);

/// sum_l a_l (2l+1) P_l(x) over the stored window, compensated, ascending in l.
double zonal_series(const CoeffSequence& s, double x);

/// Ordinary least-squares slope of log|a_l| against log l on [l_min, l_max].
/// Throws NumericError when a sample in the window is exactly zero.
double decay_rate_estimate(const CoeffSequence& s, int l_min, int l_max);

}  // namespace mexneedlet
