#include "dma/gain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dma/specfun.hpp"

namespace dma::gain {

namespace {

constexpr std::complex<double> kJ{0.0, 1.0};

double inner_product_gain(const ComplexVector &a_user, const ComplexVector &b) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < a_user.size(); ++k)
        acc += std::conj(a_user[k]) * b[k];
    return std::norm(acc);
}

void check_mismatch(const SphericalPosition &pos, double delta_r) {
    if (!(pos.r + delta_r > 0.0))
        throw std::invalid_argument("range mismatch places the focus behind the array");
}

} // namespace

double w_param(const ArrayConfig &cfg) {
    return 0.5 * cfg.n_elements * cfg.d_e * cfg.alpha;
}

double eta(const ArrayConfig &cfg) {
    if (cfg.alpha == 0.0)
        return 1.0;
    const double num = std::expm1(-cfg.alpha * cfg.d_e * cfg.n_elements);
    const double den = std::expm1(-cfg.alpha * cfg.d_e);
    return num / den / cfg.n_elements;
}

double g_opt(const ArrayConfig &cfg) {
    const double e = eta(cfg);
    return 0.25 * cfg.power_budget * e * e * cfg.total_elements();
}

double relative_gain_oracle(const ArrayConfig &cfg, const SphericalPosition &user,
                            const SphericalPosition &focus, DistanceMode mode) {
    const ComplexVector a = focusing_vector(cfg, user, mode);
    const ComplexVector a_dma = decaying_focusing_vector(cfg, focus, mode);
    const double n = cfg.total_elements();
    const double e = eta(cfg);
    return inner_product_gain(a, a_dma) / (e * e * n * n);
}

double full_beamformer_gain(const ArrayConfig &cfg, const SphericalPosition &user,
                            const SphericalPosition &focus, DistanceMode mode) {
    const ComplexVector a = focusing_vector(cfg, user, mode);
    const ComplexVector qv = hybrid_beamformer(cfg, focus, mode);
    return inner_product_gain(a, qv);
}

double kernel_k(double x, double w) {
    if (x < 0.0 || w < 0.0)
        throw std::invalid_argument("kernel_k: x and w must be non-negative");
    if (x < kKernelLimitX) {
        // Continuum limit of the lossy aperture integral.
        if (w < 1e-12)
            return 1.0;
        return -std::expm1(-2.0 * w) / (2.0 * w);
    }
    const std::complex<double> e_plus = std::polar(1.0, std::numbers::pi / 4.0);
    const std::complex<double> e_minus = std::conj(e_plus);
    const std::complex<double> z1 = e_plus * (0.5 * x) + e_minus * (w / x);
    const std::complex<double> z2 = -e_plus * (0.5 * x) + e_minus * (w / x);
    const double mag = std::abs(specfun::erfi(z1) - specfun::erfi(z2));
    return std::sqrt(std::numbers::pi) * std::exp(-w) / (2.0 * x) * mag;
}

double kernel_d(double x) {
    if (x < 0.0)
        throw std::invalid_argument("kernel_d: x must be non-negative");
    if (x < kKernelLimitX)
        return 1.0;
    const std::complex<double> cs{specfun::fresnel_c(x), specfun::fresnel_s(x)};
    return std::abs(cs) / x;
}

double t_z(const ArrayConfig &cfg, const SphericalPosition &pos, double delta_r) {
    check_mismatch(pos, delta_r);
    const double st = std::sin(pos.theta);
    const double q = std::fabs(delta_r) / (pos.r * pos.r + pos.r * delta_r);
    return cfg.d_e * cfg.n_elements *
           std::sqrt(std::numbers::pi * st * st / cfg.lambda * q);
}

double t_y(const ArrayConfig &cfg, const SphericalPosition &pos, double delta_r) {
    check_mismatch(pos, delta_r);
    const double st = std::sin(pos.theta);
    const double sp = std::sin(pos.phi);
    const double q = 2.0 * std::fabs(delta_r) / (pos.r * pos.r + pos.r * delta_r);
    return cfg.d_m * cfg.n_microstrips *
           std::sqrt(0.5 * (1.0 - st * st * sp * sp) / cfg.lambda * q);
}

double relative_gain_lemma1(const ArrayConfig &cfg, const SphericalPosition &pos,
                            double delta_r) {
    const double e = eta(cfg);
    const double k = kernel_k(t_z(cfg, pos, delta_r), w_param(cfg));
    const double d = kernel_d(t_y(cfg, pos, delta_r));
    return k * k * d * d / (e * e);
}

Lemma2Gain relative_gain_lemma2(const ArrayConfig &cfg, const SphericalPosition &pos,
                                double delta_r) {
    const double e = eta(cfg);
    const double k = kernel_k(t_z(cfg, pos, delta_r), w_param(cfg));
    const double ty = t_y(cfg, pos, delta_r);
    return {k * k / (e * e), ty <= 0.46};
}

GainCurve sweep(const ArrayConfig &cfg, const SphericalPosition &pos,
                double dr_start, double dr_stop, double dr_step,
                GainSource source, DistanceMode mode) {
    if (!(dr_step > 0.0) || dr_stop < dr_start)
        throw std::invalid_argument("sweep: need step > 0 and stop >= start");
    GainCurve curve;
    curve.source = source;
    curve.cfg = cfg;
    curve.pos = pos;
    const int count = static_cast<int>(std::floor((dr_stop - dr_start) / dr_step + 1e-9)) + 1;
    curve.mismatch.reserve(count);
    curve.value.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double dr = dr_start + k * dr_step;
        double g = 0.0;
        switch (source) {
        case GainSource::Oracle: {
            SphericalPosition focus = pos;
            focus.r = pos.r + dr;
            g = relative_gain_oracle(cfg, pos, focus, mode);
            break;
        }
        case GainSource::Lemma1:
            g = relative_gain_lemma1(cfg, pos, dr);
            break;
        case GainSource::Lemma2:
            g = relative_gain_lemma2(cfg, pos, dr).value;
            break;
        }
        curve.mismatch.push_back(dr);
        curve.value.push_back(g);
    }
    return curve;
}

} // namespace dma::gain
