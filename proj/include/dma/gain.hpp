#ifndef DMA_GAIN_HPP
#define DMA_GAIN_HPP

#include <string>
#include <vector>

#include "dma/array.hpp"

namespace dma::gain {

// Half-aperture attenuation exponent w = 0.5 N_e d_e alpha.
double w_param(const ArrayConfig &cfg);

// Effective-element fraction eta = (1/N_e)(e^{-alpha d_e N_e}-1)/(e^{-alpha d_e}-1),
// evaluated by continuity at alpha = 0 (eta -> 1).
double eta(const ArrayConfig &cfg);

// Maximum beamforming gain at perfect alignment, 0.25 P_b eta^2 N.
double g_opt(const ArrayConfig &cfg);

// Brute-force relative beamforming gain |a^H(user) a_DMA(focus)|^2 / (eta N)^2.
// This is the numerical reference every analytic approximation is checked
// against; it supports arbitrary angular mismatch, not just range.
double relative_gain_oracle(const ArrayConfig &cfg, const SphericalPosition &user,
                            const SphericalPosition &focus,
                            DistanceMode mode = DistanceMode::Exact);

// Gain |a^H(user) Q̄v|^2 using the complete hybrid beamformer, including the
// waveguide term j e^{-(alpha+j beta) rho}. Diagnostic: quantifies how little
// that term contributes (and how little beta matters).
double full_beamformer_gain(const ArrayConfig &cfg, const SphericalPosition &user,
                            const SphericalPosition &focus,
                            DistanceMode mode = DistanceMode::Exact);

// Gain kernel along the microstrip axis,
//   K(x,w) = sqrt(pi) e^{-w} / (2x) |erfi(e^{j pi/4} x/2 + e^{-j pi/4} w/x)
//                                   - erfi(-e^{j pi/4} x/2 + e^{-j pi/4} w/x)|.
// Below kKernelLimitX the continuum limit (1 - e^{-2w})/(2w) is returned
// (1 when w = 0), avoiding the 0/0 in the erfi arguments.
double kernel_k(double x, double w);

// Transverse kernel D(x) = |C(x) + j S(x)| / x with D(0) = 1 by limit.
double kernel_d(double x);

inline constexpr double kKernelLimitX = 1e-6;

// Normalized mismatch coordinates of Lemma-style gain approximations.
// delta_r is signed; the sign enters only through the r^2 + r*delta_r
// denominator. Requires pos.r + delta_r > 0.
double t_z(const ArrayConfig &cfg, const SphericalPosition &pos, double delta_r);
double t_y(const ArrayConfig &cfg, const SphericalPosition &pos, double delta_r);

// Range-mismatch gain approximation eta^{-2} K^2(t_z, w) D^2(t_y).
double relative_gain_lemma1(const ArrayConfig &cfg, const SphericalPosition &pos,
                            double delta_r);

struct Lemma2Gain {
    double value;
    bool valid; // t_y <= 0.46, the <1% error condition for dropping D^2
};

// Reduced approximation eta^{-2} K^2(t_z, w); valid when the transverse
// kernel is negligible, i.e. (N_m d_m)^2 / (N_e d_e)^3 -> 0.
Lemma2Gain relative_gain_lemma2(const ArrayConfig &cfg, const SphericalPosition &pos,
                                double delta_r);

enum class GainSource { Oracle, Lemma1, Lemma2 };

// Sampled relative-gain-vs-mismatch series, tagged with how it was computed.
struct GainCurve {
    std::vector<double> mismatch; // signed delta_r [m]
    std::vector<double> value;
    GainSource source = GainSource::Oracle;
    ArrayConfig cfg;
    SphericalPosition pos;
};

GainCurve sweep(const ArrayConfig &cfg, const SphericalPosition &pos,
                double dr_start, double dr_stop, double dr_step,
                GainSource source, DistanceMode mode = DistanceMode::Exact);

} // namespace dma::gain

#endif
