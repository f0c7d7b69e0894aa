#include "mexneedlet/difference.hpp"

#include "mexneedlet/error.hpp"
#include "mexneedlet/legendre.hpp"
#include "mexneedlet/summation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mexneedlet {

CoeffSequence::CoeffSequence(int offset, std::vector<double> values)
    : offset_(offset), values_(std::move(values))
{
    if (offset < 0) throw ConfigError("CoeffSequence: offset must be non-negative");
}

CoeffSequence CoeffSequence::from_function(int first, int last,
                                           const std::function<double(int)>& fn)
{
    if (last < first) return CoeffSequence(first, {});
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(last - first + 1));
    for (int l = first; l <= last; ++l) v.push_back(fn(l));
    return CoeffSequence(first, std::move(v));
}

double CoeffSequence::operator[](int l) const
{
    if (l < offset_ || l > last()) return 0.0;
    return values_[static_cast<std::size_t>(l - offset_)];
}

CoeffSequence delta_plus(const CoeffSequence& s)
{
    if (s.empty()) throw ConfigError("delta_plus: empty sequence");
    if (s.size() < 2) throw ConfigError("delta_plus: need at least two values");
    std::vector<double> out(s.size() - 1);
    for (int l = s.offset(); l < s.last(); ++l) {
        out[static_cast<std::size_t>(l - s.offset())] = s[l + 1] - s[l];
    }
    return CoeffSequence(s.offset(), std::move(out));
}

CoeffSequence delta_minus(const CoeffSequence& s)
{
    if (s.empty()) throw ConfigError("delta_minus: empty sequence");
    std::vector<double> out(s.size());
    for (int l = s.offset(); l <= s.last(); ++l) {
        out[static_cast<std::size_t>(l - s.offset())] = s[l] - s[l - 1];
    }
    return CoeffSequence(s.offset(), std::move(out));
}

double r_coeff(int l) { return static_cast<double>(l) / (2.0 * l + 1.0); }
double s_coeff(int l) { return 1.0 / (2.0 * l + 1.0); }

CoeffSequence apply_P(const CoeffSequence& s)
{
    if (s.empty()) throw ConfigError("apply_P: empty sequence");
    const int lo = std::max(s.offset() - 1, 0);
    const int hi = s.last() + 1;
    std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
    for (int l = lo; l <= hi; ++l) {
        const double am = s[l - 1];
        const double a0 = s[l];
        const double ap = s[l + 1];
        out[static_cast<std::size_t>(l - lo)] =
            r_coeff(l) * ((ap - a0) - (a0 - am)) + s_coeff(l) * (ap - a0);
    }
    return CoeffSequence(lo, std::move(out));
}

CoeffSequence apply_P_iter(const CoeffSequence& s, int n)
{
    if (n < 1) throw ConfigError("apply_P_iter: N must be at least 1");
    CoeffSequence out = apply_P(s);
    for (int i = 1; i < n; ++i) out = apply_P(out);
    return out;
}

double zonal_series(const CoeffSequence& s, double x)
{
    if (s.empty()) return 0.0;
    const auto p = legendre_batch(x, s.last());
    CompensatedSum sum;
    for (int l = s.offset(); l <= s.last(); ++l) sum += s[l] * (2.0 * l + 1.0) * p[l];
    return sum.value();
}

double decay_rate_estimate(const CoeffSequence& s, int l_min, int l_max)
{
    if (l_min < 1 || l_max <= l_min) throw ConfigError("decay_rate_estimate: need 1 <= l_min < l_max");
    if (l_min < s.offset() || l_max > s.last()) {
        throw ConfigError("decay_rate_estimate: window outside stored sequence");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = l_max - l_min + 1;
    for (int l = l_min; l <= l_max; ++l) {
        const double a = std::abs(s[l]);
        if (a == 0.0) {
            throw NumericError("decay_rate_estimate: zero coefficient at l = " + std::to_string(l));
        }
        const double lx = std::log(static_cast<double>(l));
        const double ly = std::log(a);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mexneedlet
