#ifndef DMA_BEAMDEPTH_HPP
#define DMA_BEAMDEPTH_HPP

#include <optional>
#include <span>
#include <vector>

#include "dma/array.hpp"

namespace dma::beamdepth {

// Piecewise-linear model of the depth-limit coordinate x_delta(w):
//   xhat = x_delta(0) + a0(d) + a1(d) w   for w <  w0
//   xhat = x_delta(0) + b0(d) + b1(d) w   for w >= w0
// with each coefficient linear in delta, e.g. a0(d) = a0_c + a0_d * d.
struct DepthFitModel {
    double a0_c, a0_d;
    double a1_c, a1_d;
    double b0_c, b0_d;
    double b1_c, b1_d;
    double w0 = 2.3;

    double a0(double d) const { return a0_c + a0_d * d; }
    double a1(double d) const { return a1_c + a1_d * d; }
    double b0(double d) const { return b0_c + b0_d * d; }
    double b1(double d) const { return b1_c + b1_d * d; }

    // Branch mismatch at the breakpoint, a0 + a1 w0 - b0 - b1 w0.
    double continuity_residual(double d) const;

    // w at which the upper branch crosses x_delta(0), i.e. b0 + b1 w = 0.
    double crossing_w(double d) const;

    // The published coefficients (w0 = 2.3).
    static DepthFitModel published();
};

// Solves K^2(x, w) = delta * K^2(0, w) for x by bracketed bisection
// (absolute tolerance 1e-8). The bracket starts at [1e-6, 4.7], the
// strictly-decreasing region of K^2 in the lossless case; for large w the
// monotone region extends further and the bracket is grown while K^2 keeps
// decreasing. Throws NoRootInBracket when the kernel bottoms out above the
// target. delta must lie in (0, 1); values below 0.2 are outside the fitted
// model's domain but solve fine here.
double solve_x_delta(double delta, double w);

// Piecewise-linear model evaluation; the x_delta(0) anchor is solved
// numerically. The overload taking x_delta_0 skips that solve (for sweeps).
double model_x_delta(const DepthFitModel &model, double delta, double w);
double model_x_delta(const DepthFitModel &model, double delta, double w,
                     double x_delta_0);

struct FitReport {
    DepthFitModel model;
    std::vector<double> per_delta_mse; // data-term MSE per delta-grid entry
    double sse = 0.0;                  // total data-term SSE
    double penalty = 0.0;              // continuity-penalty term at optimum
};

// Joint linear least squares over the 8 coefficient parameters with w0
// fixed, minimizing sum ||xhat - x_num||^2 plus the per-delta continuity
// penalty ||a0 + a1 w0 - b0 - b1 w0||^2. Throws std::invalid_argument on an
// empty or degenerate grid.
FitReport fit_depth_model(std::span<const double> w_grid,
                          std::span<const double> delta_grid, double w0 = 2.3);

// Default grids: w = 0:0.1:15, delta = 0.2:0.1:0.9.
std::vector<double> default_w_grid();
std::vector<double> default_delta_grid();

// Evaluates the data-term SSE and per-delta MSE of an existing model against
// the numeric x_delta on the given grids.
FitReport evaluate_depth_model(const DepthFitModel &model,
                               std::span<const double> w_grid,
                               std::span<const double> delta_grid);

enum class XSource { Numeric, FittedModel };

struct DepthLimits {
    double delta_minus = 0.0;          // always finite
    std::optional<double> delta_plus;  // empty when r >= critical_range
    double critical_range = 0.0;       // r at which delta_plus diverges
    double x_delta = 0.0;              // coordinate used for the limits
};

// Beam-depth limits around pos.r:
//   critical_range = d_e^2 N_e^2 pi sin^2(theta) / (lambda x^2)
//   delta_minus = r^2 / (critical_range + r)
//   delta_plus  = r^2 / (critical_range - r)  when r < critical_range.
// Throws UndefinedBeamDepth when sin(theta) = 0.
DepthLimits depth_limits(const ArrayConfig &cfg, const SphericalPosition &pos,
                         double delta, double w, XSource x_source,
                         const DepthFitModel &model = DepthFitModel::published());

struct LimitGains {
    double lemma2_at_minus = 0.0;
    double oracle_at_minus = 0.0;
    std::optional<double> lemma2_at_plus;
    std::optional<double> oracle_at_plus;
};

// Relative gains realized at r - delta_minus and r + delta_plus, via both
// the Lemma-2 approximation and the brute-force oracle. The oracle values
// are the meaningful check of the depth limits.
LimitGains verify_depth_limits(const ArrayConfig &cfg, const SphericalPosition &pos,
                               double delta, double w, XSource x_source,
                               const DepthFitModel &model = DepthFitModel::published());

} // namespace dma::beamdepth

#endif
