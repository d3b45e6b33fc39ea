#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "dma/quadrature.hpp"
#include "dma/specfun.hpp"

using dma::specfun::erfi;
using dma::specfun::faddeeva_w;
using dma::specfun::fresnel_c;
using dma::specfun::fresnel_s;
using dma::specfun::FresnelConvention;
using std::complex;

namespace {

constexpr complex<double> kJ{0.0, 1.0};
constexpr double kTwoOverSqrtPi = 2.0 / 1.7724538509055160273;

// erfi(z) = (2/sqrt(pi)) * int_0^1 z exp((z t)^2) dt along the straight ray.
// The integrand peaks at |z| e^{Re(z^2)}, so the absolute tolerance has to
// scale with that peak or the adaptive refinement can never terminate.
complex<double> erfi_quad(complex<double> z) {
    const double peak =
        std::abs(z) * std::exp(std::max(0.0, (z * z).real()));
    auto res = dma::quadrature::integrate(
        [z](double t) { return z * std::exp((z * t) * (z * t)); }, 0.0, 1.0,
        1e-12 * peak);
    REQUIRE(res.converged);
    return kTwoOverSqrtPi * res.value;
}

double fresnel_c_quad(double x) {
    auto res = dma::quadrature::integrate(
        [](double t) {
            return complex<double>(std::cos(0.5 * std::numbers::pi * t * t), 0.0);
        },
        0.0, x, 1e-13);
    REQUIRE(res.converged);
    return res.value.real();
}

double fresnel_s_quad(double x) {
    auto res = dma::quadrature::integrate(
        [](double t) {
            return complex<double>(std::sin(0.5 * std::numbers::pi * t * t), 0.0);
        },
        0.0, x, 1e-13);
    REQUIRE(res.converged);
    return res.value.real();
}

} // namespace

TEST_CASE("quadrature handles elementary integrals exactly") {
    auto lin = dma::quadrature::integrate(
        [](double t) { return complex<double>(t, 0.0); }, 0.0, 2.0, 1e-14);
    CHECK(lin.converged);
    CHECK(lin.value.real() == doctest::Approx(2.0).epsilon(1e-14));

    // oscillatory with a known closed form: int_0^1 e^{j a t} dt
    const double a = 37.0;
    auto osc = dma::quadrature::integrate(
        [a](double t) { return std::exp(complex<double>(0.0, a * t)); }, 0.0, 1.0,
        1e-13);
    CHECK(osc.converged);
    const complex<double> expect = (std::exp(kJ * a) - 1.0) / (kJ * a);
    CHECK(std::abs(osc.value - expect) < 1e-12);
}

TEST_CASE("erfi agrees with the quadrature oracle off the real axis") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-4.5, 4.5);
    int tested = 0;
    while (tested < 300) {
        const complex<double> z{u(rng), u(rng)};
        if ((z * z).real() > 600.0)
            continue; // keep exp(z^2) representable with headroom
        const complex<double> ref = erfi_quad(z);
        const double scale = std::max(std::abs(ref), 1.0);
        CHECK(std::abs(erfi(z) - ref) / scale < 1e-10);
        ++tested;
    }
}

TEST_CASE("erfi symmetry: odd and conjugate-symmetric") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    int tested = 0;
    while (tested < 1000) {
        const complex<double> z{u(rng), u(rng)};
        if (std::abs((z * z).real()) > 600.0)
            continue;
        const auto v = erfi(z);
        const double scale = std::max(std::abs(v), 1e-30);
        CHECK(std::abs(erfi(-z) + v) / scale < 1e-13);
        CHECK(std::abs(erfi(std::conj(z)) - std::conj(v)) / scale < 1e-13);
        ++tested;
    }
}

TEST_CASE("erfi frozen reference values") {
    CHECK(erfi({1.0, 0.0}).real() == doctest::Approx(1.6504257587975429).epsilon(1e-14));
    CHECK(erfi({1.0, 0.0}).imag() == 0.0);
    // erfi(jx) = j erf(x)
    const auto v = erfi({0.0, 0.75});
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(std::erf(0.75)).epsilon(1e-14));
}

TEST_CASE("erf matches std::erf on the real axis") {
    for (double x = -3.0; x <= 3.0; x += 0.37) {
        const auto v = dma::specfun::erf({x, 0.0});
        CHECK(v.imag() == doctest::Approx(0.0));
        CHECK(v.real() == doctest::Approx(std::erf(x)).epsilon(1e-13));
    }
}

TEST_CASE("erfi overflow is signalled, not silently Inf") {
    CHECK_THROWS_AS((void)erfi({27.0, 0.0}), std::overflow_error);
    CHECK_THROWS_AS((void)erfi({-30.0, 0.01}), std::overflow_error);
}

TEST_CASE("faddeeva basics") {
    CHECK(faddeeva_w({0.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(faddeeva_w({0.0, 0.0}).imag() == doctest::Approx(0.0));
    // w(jy) = e^{y^2} erfc(y) on the positive imaginary axis
    for (double y : {0.3, 1.0, 2.5, 6.0}) {
        const auto v = faddeeva_w({0.0, y});
        CHECK(v.imag() == doctest::Approx(0.0));
        CHECK(v.real() ==
              doctest::Approx(std::exp(y * y) * std::erfc(y)).epsilon(1e-12));
    }
}

TEST_CASE("Fresnel integrals: frozen values and quadrature oracle") {
    CHECK(fresnel_c(1.0) == doctest::Approx(0.77989340037682283).epsilon(1e-13));
    CHECK(fresnel_s(1.0) == doctest::Approx(0.43825914739035477).epsilon(1e-13));
    for (double x = -4.0; x <= 4.0; x += 0.31) {
        CHECK(fresnel_c(x) == doctest::Approx(fresnel_c_quad(x)).epsilon(1e-11));
        CHECK(fresnel_s(x) == doctest::Approx(fresnel_s_quad(x)).epsilon(1e-11));
    }
}

TEST_CASE("Fresnel odd symmetry and small-argument behaviour") {
    for (double x : {0.05, 0.4, 1.1, 2.7}) {
        CHECK(fresnel_c(-x) == doctest::Approx(-fresnel_c(x)).epsilon(1e-15));
        CHECK(fresnel_s(-x) == doctest::Approx(-fresnel_s(x)).epsilon(1e-15));
    }
    CHECK(fresnel_c(0.0) == 0.0);
    CHECK(fresnel_s(0.0) == 0.0);
    // leading-order series: C(x) ~ x, S(x) ~ pi x^3 / 6
    CHECK(fresnel_c(1e-4) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(fresnel_s(1e-4) ==
          doctest::Approx(std::numbers::pi * 1e-12 / 6.0).epsilon(1e-10));
}

TEST_CASE("plain-convention Fresnel matches its own quadrature") {
    for (double x : {0.3, 0.9, 1.7, 3.2}) {
        auto cq = dma::quadrature::integrate(
            [](double t) { return complex<double>(std::cos(t * t), 0.0); }, 0.0, x,
            1e-13);
        auto sq = dma::quadrature::integrate(
            [](double t) { return complex<double>(std::sin(t * t), 0.0); }, 0.0, x,
            1e-13);
        CHECK(fresnel_c(x, FresnelConvention::Plain) ==
              doctest::Approx(cq.value.real()).epsilon(1e-11));
        CHECK(fresnel_s(x, FresnelConvention::Plain) ==
              doctest::Approx(sq.value.real()).epsilon(1e-11));
    }
}
