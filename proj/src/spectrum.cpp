#include "mexneedlet/spectrum.hpp"

#include "mexneedlet/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace mexneedlet {
namespace {

int degree(const std::vector<double>& c)
{
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[static_cast<std::size_t>(i)] != 0.0) return i;
    }
    return -1;
}

double horner(const std::vector<double>& c, double s)
{
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * s + *it;
    return v;
}

void check_alpha(double alpha)
{
    if (!(alpha > 2.0) || !std::isfinite(alpha)) {
        throw ConfigError("spectrum decay exponent alpha must be finite and > 2");
    }
}

void check_positive_polynomial(const std::vector<double>& c, const char* name)
{
    const int d = degree(c);
    if (d < 0) throw ConfigError(std::string("polynomial ") + name + " is identically zero");
    if (!(c[static_cast<std::size_t>(d)] > 0.0) || !(horner(c, 1.0) > 0.0)) {
        throw ConfigError(std::string("polynomial ") + name + " must be positive on [1, inf)");
    }
}

}  // namespace

LogModulation log_modulation_from_name(const std::string& name)
{
    if (name == "one" || name == "1") return LogModulation::One;
    if (name == "2+sin" || name == "two_plus_sin") return LogModulation::TwoPlusSin;
    if (name == "2+cos" || name == "two_plus_cos") return LogModulation::TwoPlusCos;
    if (name == "2+tanh" || name == "two_plus_tanh") return LogModulation::TwoPlusTanh;
    throw ConfigError("unknown log modulation F: " + name);
}

std::string to_string(LogModulation f)
{
    switch (f) {
    case LogModulation::One: return "one";
    case LogModulation::TwoPlusSin: return "two_plus_sin";
    case LogModulation::TwoPlusCos: return "two_plus_cos";
    case LogModulation::TwoPlusTanh: return "two_plus_tanh";
    }
    return "one";
}

double log_modulation_eval(LogModulation f, double v)
{
    switch (f) {
    case LogModulation::One: return 1.0;
    case LogModulation::TwoPlusSin: return 2.0 + std::sin(v);
    case LogModulation::TwoPlusCos: return 2.0 + std::cos(v);
    case LogModulation::TwoPlusTanh: return 2.0 + std::tanh(v);
    }
    return 1.0;
}

double log_modulation_derivative(LogModulation f, double v)
{
    switch (f) {
    case LogModulation::One: return 0.0;
    case LogModulation::TwoPlusSin: return std::cos(v);
    case LogModulation::TwoPlusCos: return -std::sin(v);
    case LogModulation::TwoPlusTanh: {
        const double c = std::cosh(v);
        return 1.0 / (c * c);
    }
    }
    return 0.0;
}

PowerSpectrum PowerSpectrum::power_law(double alpha)
{
    check_alpha(alpha);
    PowerSpectrum ps;
    ps.family_ = SpectrumFamily::Power;
    ps.alpha_ = alpha;
    ps.beta_ = alpha;
    return ps;
}

PowerSpectrum PowerSpectrum::rational_log(double alpha, double beta, std::vector<double> p,
                                          std::vector<double> q, LogModulation f)
{
    check_alpha(alpha);
    if (!std::isfinite(beta)) throw ConfigError("rational_log: beta must be finite");
    check_positive_polynomial(p, "P");
    check_positive_polynomial(q, "Q");
    PowerSpectrum ps;
    ps.family_ = SpectrumFamily::RationalLog;
    ps.alpha_ = alpha;
    ps.beta_ = beta;
    ps.p_ = std::move(p);
    ps.q_ = std::move(q);
    ps.f_ = f;
    return ps;
}

PowerSpectrum PowerSpectrum::tabulated(double alpha, std::vector<double> values)
{
    check_alpha(alpha);
    for (double v : values) {
        if (!std::isfinite(v)) throw ConfigError("tabulated spectrum contains a non-finite value");
    }
    PowerSpectrum ps;
    ps.family_ = SpectrumFamily::Tabulated;
    ps.alpha_ = alpha;
    ps.table_ = std::move(values);
    return ps;
}

PowerSpectrum PowerSpectrum::from_json_text(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("spectrum JSON: ") + e.what());
    }
    try {
        const std::string family = j.value("family", std::string("power"));
        const double alpha = j.at("alpha").get<double>();
        if (family == "power") return power_law(alpha);
        if (family == "rational_log") {
            return rational_log(alpha, j.value("beta", alpha),
                                j.value("P", std::vector<double>{1.0}),
                                j.value("Q", std::vector<double>{1.0}),
                                log_modulation_from_name(j.value("F", std::string("one"))));
        }
        throw ConfigError("spectrum JSON: unknown family '" + family + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("spectrum JSON: ") + e.what());
    }
}

PowerSpectrum PowerSpectrum::from_csv(std::istream& in, double alpha)
{
    std::vector<double> values;
    std::string line;
    int expected = 1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double l = 0.0;
        double c = 0.0;
        if (!(row >> l >> c)) {
            if (values.empty() && expected == 1) continue;  // header
            throw ConfigError("spectrum CSV: malformed row '" + line + "'");
        }
        if (l == 0.0) continue;  // the monopole never enters any series
        if (l != expected) throw ConfigError("spectrum CSV: degrees must be consecutive from 1");
        values.push_back(c);
        ++expected;
    }
    return tabulated(alpha, std::move(values));
}

PowerSpectrum PowerSpectrum::load(const std::string& path, double declared_alpha)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spectrum file " + path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        return from_csv(in, declared_alpha);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

bool PowerSpectrum::degree_balance_holds() const
{
    if (family_ != SpectrumFamily::RationalLog) return true;
    return std::abs(beta_ + degree(q_) - degree(p_) - alpha_) < 1e-12;
}

double PowerSpectrum::operator()(double s) const
{
    switch (family_) {
    case SpectrumFamily::Power: return std::pow(s, -alpha_);
    case SpectrumFamily::RationalLog:
        return log_modulation_eval(f_, std::log(s)) * horner(p_, s) /
               (std::pow(s, beta_) * horner(q_, s));
    case SpectrumFamily::Tabulated: {
        const auto l = static_cast<long>(std::lround(s));
        if (l < 1 || static_cast<std::size_t>(l) > table_.size()) return 0.0;
        return table_[static_cast<std::size_t>(l - 1)];
    }
    }
    return 0.0;
}

std::string PowerSpectrum::to_json_text() const
{
    nlohmann::json j;
    j["alpha"] = alpha_;
    switch (family_) {
    case SpectrumFamily::Power: j["family"] = "power"; break;
    case SpectrumFamily::RationalLog:
        j["family"] = "rational_log";
        j["beta"] = beta_;
        j["P"] = p_;
        j["Q"] = q_;
        j["F"] = to_string(f_);
        break;
    case SpectrumFamily::Tabulated:
        j["family"] = "tabulated";
        j["entries"] = table_.size();
        break;
    }
    return j.dump();
}

double spectrum_eval(const PowerSpectrum& ps, int l)
{
    if (l < 1) throw DomainError("spectrum_eval: spectra start at l = 1");
    return ps(static_cast<double>(l));
}

EnvelopeReport verify_envelope(const PowerSpectrum& ps, int l_max, double ratio_cap)
{
    if (l_max < 10) throw ConfigError("verify_envelope: l_max must be at least 10");
    EnvelopeReport rep;
    rep.l_max = l_max;
    rep.ratio_cap = ratio_cap;
    rep.k0_hat = std::numeric_limits<double>::infinity();
    rep.k1_hat = -std::numeric_limits<double>::infinity();
    for (int l = 1; l <= l_max; ++l) {
        const double scaled = spectrum_eval(ps, l) * std::pow(static_cast<double>(l), ps.alpha());
        rep.k0_hat = std::min(rep.k0_hat, scaled);
        rep.k1_hat = std::max(rep.k1_hat, scaled);
    }
    rep.ratio = rep.k1_hat / rep.k0_hat;
    rep.pass = rep.k0_hat > 0.0 && std::isfinite(rep.k1_hat) && std::isfinite(rep.ratio) &&
               rep.ratio <= ratio_cap;
    return rep;
}

DerivativeDecayReport verify_derivative_decay(const PowerSpectrum& ps, int k_max, int l_min,
                                              int l_max, double growth_tolerance)
{
    if (k_max < 0 || k_max > 4) throw ConfigError("verify_derivative_decay: k_max must be in [0, 4]");
    if (l_min < 1 || l_max <= l_min) throw ConfigError("verify_derivative_decay: need 1 <= l_min < l_max");

    DerivativeDecayReport rep;
    rep.l_min = l_min;
    rep.l_max = l_max;
    rep.growth_tolerance = growth_tolerance;
    rep.pass = true;

    std::vector<double> diff;
    diff.reserve(static_cast<std::size_t>(l_max - l_min + k_max + 1));
    for (int l = l_min; l <= l_max + k_max; ++l) diff.push_back(spectrum_eval(ps, l));

    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
            diff.pop_back();
        }
        DerivativeOrderReport ord;
        ord.k = k;
        for (int lo = l_min; lo <= l_max; lo *= 2) {
            const int hi = std::min(2 * lo - 1, l_max);
            double block = 0.0;
            for (int l = lo; l <= hi; ++l) {
                const double scaled = std::abs(diff[static_cast<std::size_t>(l - l_min)]) *
                                      std::pow(static_cast<double>(l), ps.alpha() + k);
                block = std::max(block, scaled);
                if (!std::isfinite(scaled)) block = scaled;
            }
            ord.block_sups.push_back(block);
            ord.c_hat = std::max(ord.c_hat, block);
        }
        bool finite = std::isfinite(ord.c_hat);
        bool increasing = ord.block_sups.size() >= 2;
        for (std::size_t b = 1; b < ord.block_sups.size(); ++b) {
            if (!(ord.block_sups[b] > ord.block_sups[b - 1])) increasing = false;
        }
        const bool grew = increasing &&
                          ord.block_sups.back() > (1.0 + growth_tolerance) * ord.block_sups.front();
        ord.pass = finite && !grew;
        rep.pass = rep.pass && ord.pass;
        rep.orders.push_back(std::move(ord));
    }
    return rep;
}

}  // namespace mexneedlet
