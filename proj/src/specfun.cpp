#include "dma/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace dma::specfun {

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257388;
constexpr double kMaxExp = 708.0; // exp() overflows just above this

bool is_finite(std::complex<double> z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Faddeeva function after Poppe & Wijers: Taylor expansion near the origin,
// (rescaled) Laplace continued fraction elsewhere. Relative accuracy is
// ~1e-13 over the plane.
std::complex<double> wofz(double xi, double yi) {
    const double xabs = std::fabs(xi);
    const double yabs = std::fabs(yi);
    const double x = xabs / 6.3;
    const double y = yabs / 4.4;

    const double xabsq = xabs * xabs;
    double xquad = xabsq - yabs * yabs;
    const double yquad = 2.0 * xabs * yabs;

    double qrho = x * x + y * y;
    const bool near_origin = qrho < 0.085264;

    double u = 0.0, v = 0.0;
    double u2 = 0.0, v2 = 0.0;

    if (near_origin) {
        // Taylor series; the degree tracks |z|.
        qrho = (1.0 - 0.85 * y) * std::sqrt(qrho);
        const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
        int j = 2 * n + 1;
        double xsum = 1.0 / j;
        double ysum = 0.0;
        for (int i = n; i >= 1; --i) {
            j -= 2;
            const double xaux = (xsum * xquad - ysum * yquad) / i;
            ysum = (xsum * yquad + ysum * xquad) / i;
            xsum = xaux + 1.0 / j;
        }
        const double u1 = -kTwoOverSqrtPi * (xsum * yabs + ysum * xabs) + 1.0;
        const double v1 = kTwoOverSqrtPi * (xsum * xabs - ysum * yabs);
        const double daux = std::exp(-xquad);
        u2 = daux * std::cos(yquad);
        v2 = -daux * std::sin(yquad);
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        double h = 0.0, h2 = 0.0, qlambda = 0.0;
        int kapn = 0, nu = 0;
        if (qrho > 1.0) {
            // Pure continued fraction; depth shrinks with |z|.
            const double rho = std::sqrt(qrho);
            nu = static_cast<int>(3.0 + 1442.0 / (26.0 * rho + 77.0));
        } else {
            // Intermediate region: continued fraction rescaled by h.
            qrho = (1.0 - y) * std::sqrt(1.0 - qrho);
            h = 1.88 * qrho;
            h2 = 2.0 * h;
            kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
            nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
        }
        const bool rescaled = h > 0.0;
        if (rescaled)
            qlambda = std::pow(h2, kapn);

        double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
        for (int n = nu; n >= 0; --n) {
            const int np1 = n + 1;
            double tx = yabs + h + np1 * rx;
            double ty = xabs - np1 * ry;
            const double c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if (rescaled && n <= kapn) {
                tx = qlambda + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlambda /= h2;
            }
        }
        if (h == 0.0) {
            u = kTwoOverSqrtPi * rx;
            v = kTwoOverSqrtPi * ry;
        } else {
            u = kTwoOverSqrtPi * sx;
            v = kTwoOverSqrtPi * sy;
        }
        if (yabs == 0.0)
            u = std::exp(-xabsq);
    }

    // Lower half plane via w(z) = 2 exp(-z^2) - w(-z).
    if (yi < 0.0) {
        if (near_origin) {
            u2 *= 2.0;
            v2 *= 2.0;
        } else {
            xquad = -xquad;
            if (xquad > kMaxExp)
                throw std::overflow_error("faddeeva_w: exp(-z^2) overflows in the lower half plane");
            const double w1 = 2.0 * std::exp(xquad);
            u2 = w1 * std::cos(yquad);
            v2 = -w1 * std::sin(yquad);
        }
        u = u2 - u;
        v = v2 - v;
        if (xi > 0.0)
            v = -v;
    } else if (xi < 0.0) {
        v = -v;
    }
    return {u, v};
}

// erfi Maclaurin series (2/sqrt(pi)) sum z^{2k+1} / (k! (2k+1)); adequate
// inside the documented switch radius.
std::complex<double> erfi_series(std::complex<double> z) {
    const std::complex<double> z2 = z * z;
    std::complex<double> term = z;
    std::complex<double> sum = z;
    for (int k = 1; k < 64; ++k) {
        term *= z2 / static_cast<double>(k);
        const std::complex<double> add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) <= 1e-18 * std::abs(sum))
            break;
    }
    return kTwoOverSqrtPi * sum;
}

} // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
    if (!is_finite(z))
        throw std::invalid_argument("faddeeva_w: non-finite argument");
    return wofz(z.real(), z.imag());
}

std::complex<double> erf(std::complex<double> z) {
    if (!is_finite(z))
        throw std::invalid_argument("erf: non-finite argument");
    // erfi and erf share the series/Faddeeva split: erf(z) = -j erfi(jz).
    const std::complex<double> jz(-z.imag(), z.real());
    const std::complex<double> e = erfi(jz);
    return {e.imag(), -e.real()};
}

std::complex<double> erfi(std::complex<double> z) {
    if (!is_finite(z))
        throw std::invalid_argument("erfi: non-finite argument");
    if (std::abs(z) <= kErfiSeriesRadius)
        return erfi_series(z);

    // erfi(z) = j (e^{z^2} w(-z) - 1) for Im(z) <= 0, odd reflection above.
    const bool flip = z.imag() > 0.0;
    const std::complex<double> zz = flip ? -z : z;
    const std::complex<double> zsq = zz * zz;
    if (zsq.real() > kMaxExp)
        throw std::overflow_error("erfi: exp(Re(z^2)) exceeds double range");
    const std::complex<double> ew = std::exp(zsq) * wofz(-zz.real(), -zz.imag());
    std::complex<double> result(-ew.imag(), ew.real() - 1.0); // j*(ew - 1)
    return flip ? -result : result;
}

double fresnel_c(double x, FresnelConvention conv) {
    if (!std::isfinite(x))
        throw std::invalid_argument("fresnel_c: non-finite argument");
    if (conv == FresnelConvention::Plain) {
        // int_0^x cos(t^2) dt = sqrt(pi/2) C_halfpi(x sqrt(2/pi))
        const double s = std::sqrt(2.0 / M_PI);
        return fresnel_c(x * s, FresnelConvention::HalfPi) / s;
    }
    if (std::fabs(x) <= 1.2) {
        // series: sum (-1)^k (pi/2)^{2k} x^{4k+1} / ((2k)! (4k+1))
        const double c = M_PI / 2.0;
        double term = x;
        double sum = x;
        const double x4 = x * x * x * x;
        for (int k = 1; k < 24; ++k) {
            term *= -c * c * x4 / ((2.0 * k - 1.0) * (2.0 * k));
            const double add = term / (4.0 * k + 1.0);
            sum += add;
            if (std::fabs(add) <= 1e-17 * std::fabs(sum))
                break;
        }
        return sum;
    }
    // C(x) + j S(x) = (1+j)/2 erf(sqrt(pi)/2 (1-j) x)
    const double h = std::sqrt(M_PI) / 2.0 * x;
    const std::complex<double> e = erf({h, -h});
    return 0.5 * (e.real() - e.imag());
}

double fresnel_s(double x, FresnelConvention conv) {
    if (!std::isfinite(x))
        throw std::invalid_argument("fresnel_s: non-finite argument");
    if (conv == FresnelConvention::Plain) {
        const double s = std::sqrt(2.0 / M_PI);
        return fresnel_s(x * s, FresnelConvention::HalfPi) / s;
    }
    if (std::fabs(x) <= 1.2) {
        // series: sum (-1)^k (pi/2)^{2k+1} x^{4k+3} / ((2k+1)! (4k+3))
        const double c = M_PI / 2.0;
        double term = c * x * x * x;
        double sum = term / 3.0;
        const double x4 = x * x * x * x;
        for (int k = 1; k < 24; ++k) {
            term *= -c * c * x4 / ((2.0 * k) * (2.0 * k + 1.0));
            const double add = term / (4.0 * k + 3.0);
            sum += add;
            if (std::fabs(add) <= 1e-17 * std::fabs(sum))
                break;
        }
        return sum;
    }
    const double h = std::sqrt(M_PI) / 2.0 * x;
    const std::complex<double> e = erf({h, -h});
    return 0.5 * (e.real() + e.imag());
}

} // namespace dma::specfun
