#pragma once

#include <complex>

namespace modesum::numerics {

// erf(x) on the real line.
double erf_real_line(double x);

// Scaled complementary error function  erfcx(y) = exp(y^2) erfc(y).
// This is the stable form of the radiation-reaction bracket
// exp(-w^2 a^2/pi) * (1 + erf(i a w / sqrt(pi))) on the imaginary
// frequency axis w = i xi, where it reduces to real arithmetic.
double erf_scaled_imag(double y);

// Dawson integral F(x) = exp(-x^2) int_0^x exp(t^2) dt.
double dawson(double x);

// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
// Accuracy ~1e-12 away from the real axis; intended for diagnostics
// (upper-half-plane zero scans), not for the energy engines.
std::complex<double> faddeeva_w(std::complex<double> z);

// exp(-z^2)*(1 + erf(i z)): the radiation bracket at general z with
// Im z >= 0; equals w(z) analytically, routed through the stable
// special-function paths on the axes.
std::complex<double> radiation_bracket(std::complex<double> z);

} // namespace modesum::numerics
