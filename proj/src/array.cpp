#include "dma/array.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dma {

namespace {

void check_indices(const ArrayConfig &cfg, int i, int n) {
    if (i < 0 || i >= cfg.n_microstrips)
        throw std::out_of_range("microstrip index i out of range: " + std::to_string(i));
    if (n < 0 || n >= cfg.n_elements)
        throw std::out_of_range("element index n out of range: " + std::to_string(n));
}

} // namespace

void ArrayConfig::validate() const {
    if (n_microstrips < 1 || n_elements < 1)
        throw std::invalid_argument("ArrayConfig: N_m and N_e must be >= 1");
    if (!(d_e > 0.0) || !(d_m > 0.0))
        throw std::invalid_argument("ArrayConfig: element spacings must be positive");
    if (!(lambda > 0.0))
        throw std::invalid_argument("ArrayConfig: wavelength must be positive");
    if (!(alpha >= 0.0))
        throw std::invalid_argument("ArrayConfig: attenuation must be non-negative");
    if (!(power_budget > 0.0))
        throw std::invalid_argument("ArrayConfig: power budget must be positive");
}

ArrayConfig ArrayConfig::make(int n_m, int n_e, double d_e, double d_m,
                              double lambda, double alpha, double power_budget) {
    ArrayConfig cfg;
    cfg.n_microstrips = n_m;
    cfg.n_elements = n_e;
    cfg.d_e = d_e;
    cfg.d_m = d_m;
    cfg.lambda = lambda;
    cfg.alpha = alpha;
    cfg.beta = 2.0 * std::numbers::pi / lambda;
    cfg.power_budget = power_budget;
    cfg.validate();
    return cfg;
}

ElementOffsets element_offsets(const ArrayConfig &cfg, int i, int n) {
    check_indices(cfg, i, n);
    return {n - 0.5 * (cfg.n_elements - 1), i - 0.5 * (cfg.n_microstrips - 1),
            n * cfg.d_e};
}

double element_distance(const ArrayConfig &cfg, const SphericalPosition &pos,
                        int i, int n, DistanceMode mode) {
    const auto [n_z, i_y, rho] = element_offsets(cfg, i, n);
    const double st = std::sin(pos.theta);
    const double ct = std::cos(pos.theta);
    const double sp = std::sin(pos.phi);
    const double cp = std::cos(pos.phi);
    const double r = pos.r;

    if (mode == DistanceMode::Exact) {
        const double dx = r * st * cp;
        const double dz = r * ct - n_z * cfg.d_e;
        const double dy = r * st * sp - i_y * cfg.d_m;
        return std::sqrt(dx * dx + dz * dz + dy * dy);
    }

    // Second-order Fresnel expansion around the array center.
    double d = r - n_z * cfg.d_e * ct - i_y * cfg.d_m * st * sp
             + n_z * n_z * cfg.d_e * cfg.d_e * (1.0 - ct * ct) / (2.0 * r)
             + i_y * i_y * cfg.d_m * cfg.d_m * (1.0 - st * st * sp * sp) / (2.0 * r);
    if (mode == DistanceMode::Fresnel)
        d -= n_z * i_y * cfg.d_e * cfg.d_m * ct * st * sp / r;
    return d;
}

ComplexVector focusing_vector(const ArrayConfig &cfg, const SphericalPosition &pos,
                              DistanceMode mode) {
    const double k = 2.0 * std::numbers::pi / cfg.lambda;
    ComplexVector a(cfg.total_elements());
    for (int i = 0; i < cfg.n_microstrips; ++i)
        for (int n = 0; n < cfg.n_elements; ++n)
            a[i * cfg.n_elements + n] =
                std::polar(1.0, -k * element_distance(cfg, pos, i, n, mode));
    return a;
}

ComplexVector decaying_focusing_vector(const ArrayConfig &cfg,
                                       const SphericalPosition &pos,
                                       DistanceMode mode) {
    const double k = 2.0 * std::numbers::pi / cfg.lambda;
    ComplexVector a(cfg.total_elements());
    for (int i = 0; i < cfg.n_microstrips; ++i)
        for (int n = 0; n < cfg.n_elements; ++n)
            a[i * cfg.n_elements + n] =
                std::polar(std::exp(-cfg.alpha * n * cfg.d_e),
                           -k * element_distance(cfg, pos, i, n, mode));
    return a;
}

ComplexVector los_channel(const ArrayConfig &cfg, const SphericalPosition &pos,
                          DistanceMode mode) {
    ComplexVector h = focusing_vector(cfg, pos, mode);
    const double pathloss = cfg.lambda / (4.0 * std::numbers::pi * pos.r);
    for (auto &v : h)
        v *= pathloss;
    return h;
}

std::complex<double> lorentzian_weight(double phi) {
    return 0.5 * (std::complex<double>(0.0, 1.0) + std::polar(1.0, phi));
}

ComplexVector hybrid_beamformer(const ArrayConfig &cfg, const SphericalPosition &focus,
                                DistanceMode mode) {
    cfg.validate();
    const ComplexVector a = focusing_vector(cfg, focus, mode);
    const double v_digital = std::sqrt(cfg.power_budget / cfg.n_microstrips);
    const double inv_sqrt_ne = 1.0 / std::sqrt(static_cast<double>(cfg.n_elements));

    ComplexVector out(cfg.total_elements());
    for (int i = 0; i < cfg.n_microstrips; ++i) {
        for (int n = 0; n < cfg.n_elements; ++n) {
            const int idx = i * cfg.n_elements + n;
            const double rho = n * cfg.d_e;
            // Lorentzian weight phased to cancel the waveguide phase and
            // align with the focusing vector.
            const std::complex<double> q =
                lorentzian_weight(std::arg(a[idx]) + cfg.beta * rho);
            const std::complex<double> p_m =
                std::exp(std::complex<double>(-cfg.alpha * rho, -cfg.beta * rho)) *
                inv_sqrt_ne;
            out[idx] = p_m * q * v_digital;
        }
    }
    return out;
}

ComplexVector hybrid_beamformer_closed_form(const ArrayConfig &cfg,
                                            const SphericalPosition &focus,
                                            DistanceMode mode) {
    cfg.validate();
    const ComplexVector a = focusing_vector(cfg, focus, mode);
    const double scale = 0.5 * std::sqrt(cfg.power_budget / cfg.total_elements());
    ComplexVector out(cfg.total_elements());
    for (int i = 0; i < cfg.n_microstrips; ++i) {
        for (int n = 0; n < cfg.n_elements; ++n) {
            const int idx = i * cfg.n_elements + n;
            const double rho = n * cfg.d_e;
            const std::complex<double> waveguide =
                std::complex<double>(0.0, 1.0) *
                std::exp(std::complex<double>(-cfg.alpha * rho, -cfg.beta * rho));
            out[idx] = scale * (a[idx] * std::exp(-cfg.alpha * rho) + waveguide);
        }
    }
    return out;
}

} // namespace dma
