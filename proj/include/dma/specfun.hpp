#ifndef DMA_SPECFUN_HPP
#define DMA_SPECFUN_HPP

#include <complex>

namespace dma::specfun {

// Fresnel integral convention. HalfPi is C(x) = int_0^x cos(pi t^2/2) dt,
// Plain is C(x) = int_0^x cos(t^2) dt. HalfPi is the project default; it is
// the convention that reproduces the D^2(0.46) ~ 0.99 anchor used in the
// beam-depth derivation (see tests/test_gain.cpp).
enum class FresnelConvention { HalfPi, Plain };

// Imaginary error function erfi(z) = -j erf(jz) for complex z.
//
// Maclaurin series for |z| <= kSeriesRadius, otherwise routed through the
// Faddeeva function (continued-fraction regime). Throws std::overflow_error
// when Re(z^2) exceeds the double exponent range, instead of returning Inf.
std::complex<double> erfi(std::complex<double> z);

// Series/Faddeeva switch radius for erfi. Chosen so that both branches hold
// ~1e-14 relative error at the boundary (the series loses ~e^{2 Im(z)^2} ulps
// of accuracy, which is < 1e2 here; the Faddeeva route loses ~1/|z| digits
// to cancellation near the origin).
inline constexpr double kErfiSeriesRadius = 1.0;

// Complex error function, exposed because the Fresnel integrals and erfi
// share it. Same overflow behaviour as erfi.
std::complex<double> erf(std::complex<double> z);

// Faddeeva function w(z) = exp(-z^2) erfc(-jz).
std::complex<double> faddeeva_w(std::complex<double> z);

double fresnel_c(double x, FresnelConvention conv = FresnelConvention::HalfPi);
double fresnel_s(double x, FresnelConvention conv = FresnelConvention::HalfPi);

} // namespace dma::specfun

#endif
