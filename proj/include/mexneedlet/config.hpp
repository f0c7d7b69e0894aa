#pragma once

namespace mexneedlet {

inline constexpr int kDefaultDegreeCap = 4096;
inline constexpr double kDefaultTailEps = 1e-12;
inline constexpr double kDefaultThetaMin = 1e-3;
inline constexpr double kDomainSlack = 1e-12;

/// Largest spherical-harmonic degree any routine will allocate or sum to.
/// Initialized from MEXNEEDLET_DEGREE_CAP when set, otherwise 4096.
int degree_cap();
void set_degree_cap(int cap);

/// Throws NumericError when l exceeds the degree cap.
void check_degree(int l, const char* what);

}  // namespace mexneedlet
