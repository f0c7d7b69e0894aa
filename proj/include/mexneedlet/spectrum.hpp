#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mexneedlet {

enum class SpectrumFamily { Power, RationalLog, Tabulated };

/// Smooth positive modulation F applied to log s in the rational-log family.
/// Every entry has a closed-form derivative so decay conditions can be checked analytically.
enum class LogModulation { One, TwoPlusSin, TwoPlusCos, TwoPlusTanh };

LogModulation log_modulation_from_name(const std::string& name);
std::string to_string(LogModulation f);
double log_modulation_eval(LogModulation f, double v);
double log_modulation_derivative(LogModulation f, double v);

/// Angular power spectrum c_l = u(l), l >= 1, decaying like l^{-alpha}.
///
/// Families:
///   power        u(s) = s^{-alpha}
///   rational_log u(s) = F(log s) P(s) / (s^beta Q(s)), P and Q given by
///                ascending coefficient lists (P[i] multiplies s^i)
///   tabulated    u(l) read from a table, zero past its last entry
///
/// Construction does not force beta + deg Q - deg P == alpha, so mis-specified
/// families can be built and then flagged by verify_envelope.
class PowerSpectrum {
public:
    static PowerSpectrum power_law(double alpha);
    static PowerSpectrum rational_log(double alpha, double beta, std::vector<double> p,
                                      std::vector<double> q, LogModulation f);
    /// values[0] is c_1.
    static PowerSpectrum tabulated(double alpha, std::vector<double> values);

    /// {"family": "power"|"rational_log", "alpha", "beta", "P", "Q", "F"}.
    static PowerSpectrum from_json_text(const std::string& text);
    /// Two columns "l,c_l" with optional header; alpha is declared by the caller.
    static PowerSpectrum from_csv(std::istream& in, double alpha);
    /// Dispatches on the extension (.json or .csv).
    static PowerSpectrum load(const std::string& path, double declared_alpha);

    SpectrumFamily family() const { return family_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const std::vector<double>& p_coeffs() const { return p_; }
    const std::vector<double>& q_coeffs() const { return q_; }
    LogModulation modulation() const { return f_; }
    const std::vector<double>& table() const { return table_; }

    /// beta + deg Q - deg P == alpha (always true for power, vacuous for tabulated).
    bool degree_balance_holds() const;

    /// Continuous model u(s) for s >= 1; tabulated spectra only accept integer s.
    double operator()(double s) const;

    std::string to_json_text() const;

private:
    SpectrumFamily family_ = SpectrumFamily::Power;
    double alpha_ = 3.0;
    double beta_ = 3.0;
    std::vector<double> p_{1.0};
    std::vector<double> q_{1.0};
    LogModulation f_ = LogModulation::One;
    std::vector<double> table_;
};

/// u(l) for l >= 1. Throws DomainError for l < 1.
double spectrum_eval(const PowerSpectrum& ps, int l);

struct EnvelopeReport {
    int l_max = 0;
    double k0_hat = 0.0;  ///< min of u(l) l^alpha
    double k1_hat = 0.0;  ///< max of u(l) l^alpha
    double ratio = 0.0;
    double ratio_cap = 0.0;
    bool pass = false;
};

inline constexpr double kDefaultEnvelopeRatioCap = 100.0;

/// Extremes of u(l) l^alpha over [1, l_max]. Fails when a bound is not positive
/// and finite or when k1/k0 exceeds ratio_cap.
EnvelopeReport verify_envelope(const PowerSpectrum& ps, int l_max,
                               double ratio_cap = kDefaultEnvelopeRatioCap);

struct DerivativeOrderReport {
    int k = 0;
    double c_hat = 0.0;                ///< sup |Delta+^k u(l)| l^{alpha+k}
    std::vector<double> block_sups;    ///< same sup over dyadic blocks of the window
    bool pass = false;
};

struct DerivativeDecayReport {
    int l_min = 0;
    int l_max = 0;
    double growth_tolerance = 0.0;
    std::vector<DerivativeOrderReport> orders;
    bool pass = false;
};

inline constexpr double kDefaultGrowthTolerance = 1.0;

/// Forward-difference proxy for |d^k u(s)| <= C_k s^{-alpha-k}, k = 0..k_max (k_max <= 4).
/// An order fails when its dyadic block sups grow monotonically across the window
/// and the last exceeds the first by more than a factor (1 + growth_tolerance).
DerivativeDecayReport verify_derivative_decay(const PowerSpectrum& ps, int k_max, int l_min,
                                              int l_max,
                                              double growth_tolerance = kDefaultGrowthTolerance);

}  // namespace mexneedlet
