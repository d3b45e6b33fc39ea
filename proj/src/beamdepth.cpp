#include "dma/beamdepth.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dma/errors.hpp"
#include "dma/gain.hpp"

namespace dma::beamdepth {

namespace {

constexpr double kBracketLow = 1e-6;
constexpr double kBracketHigh = 4.7; // lossless monotone region of K^2
constexpr double kBracketCap = 20.0;
constexpr double kBisectTol = 1e-8;
constexpr double kExtendStep = 0.25;

double k_sq(double x, double w) {
    const double k = gain::kernel_k(x, w);
    return k * k;
}

// alpha that realizes a given w on this geometry.
ArrayConfig with_w(const ArrayConfig &cfg, double w) {
    ArrayConfig out = cfg;
    out.alpha = 2.0 * w / (cfg.n_elements * cfg.d_e);
    return out;
}

} // namespace

double DepthFitModel::continuity_residual(double d) const {
    return a0(d) + a1(d) * w0 - b0(d) - b1(d) * w0;
}

double DepthFitModel::crossing_w(double d) const {
    return -b0(d) / b1(d);
}

DepthFitModel DepthFitModel::published() {
    return {0.02, -0.007, -0.154, 0.121, -1.186, 0.963, 0.370, -0.301, 2.3};
}

double solve_x_delta(double delta, double w) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("solve_x_delta: delta must lie in (0, 1)");
    if (!(w >= 0.0))
        throw std::invalid_argument("solve_x_delta: w must be non-negative");

    const double target = delta * k_sq(0.0, w);
    double lo = kBracketLow;
    double hi = kBracketHigh;
    double hi_val = k_sq(hi, w);

    // For larger w the strictly-decreasing region of K^2 extends past the
    // lossless 4.7; grow the bracket while the kernel keeps falling.
    while (hi_val > target) {
        const double next = hi + kExtendStep;
        if (next > kBracketCap)
            throw NoRootInBracket("solve_x_delta: kernel still above target at bracket cap",
                                  hi, hi_val - target);
        const double next_val = k_sq(next, w);
        if (next_val >= hi_val)
            throw NoRootInBracket("solve_x_delta: kernel stops decreasing above target "
                                  "(delta too small for the monotone region)",
                                  hi, hi_val - target);
        lo = hi;
        hi = next;
        hi_val = next_val;
    }

    while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        if (k_sq(mid, w) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double model_x_delta(const DepthFitModel &model, double delta, double w,
                     double x_delta_0) {
    if (w < model.w0)
        return x_delta_0 + model.a0(delta) + model.a1(delta) * w;
    return x_delta_0 + model.b0(delta) + model.b1(delta) * w;
}

double model_x_delta(const DepthFitModel &model, double delta, double w) {
    return model_x_delta(model, delta, w, solve_x_delta(delta, 0.0));
}

std::vector<double> default_w_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 150; ++k)
        g.push_back(k * 0.1);
    return g;
}

std::vector<double> default_delta_grid() {
    std::vector<double> g;
    for (int k = 2; k <= 9; ++k)
        g.push_back(k * 0.1);
    return g;
}

FitReport fit_depth_model(std::span<const double> w_grid,
                          std::span<const double> delta_grid, double w0) {
    if (w_grid.empty() || delta_grid.empty())
        throw std::invalid_argument("fit_depth_model: empty grid");

    const long rows =
        static_cast<long>(w_grid.size()) * static_cast<long>(delta_grid.size()) +
        static_cast<long>(delta_grid.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, 8);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);

    long row = 0;
    for (const double d : delta_grid) {
        const double x0 = solve_x_delta(d, 0.0);
        for (const double w : w_grid) {
            if (w < w0) {
                a(row, 0) = 1.0;
                a(row, 1) = d;
                a(row, 2) = w;
                a(row, 3) = d * w;
            } else {
                a(row, 4) = 1.0;
                a(row, 5) = d;
                a(row, 6) = w;
                a(row, 7) = d * w;
            }
            y(row) = solve_x_delta(d, w) - x0;
            ++row;
        }
        // Continuity penalty row at the breakpoint.
        a(row, 0) = 1.0;
        a(row, 1) = d;
        a(row, 2) = w0;
        a(row, 3) = d * w0;
        a(row, 4) = -1.0;
        a(row, 5) = -d;
        a(row, 6) = -w0;
        a(row, 7) = -d * w0;
        y(row) = 0.0;
        ++row;
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < 8)
        throw std::invalid_argument("fit_depth_model: degenerate grid (singular system)");
    const Eigen::VectorXd c = qr.solve(y);

    FitReport report;
    report.model = {c(0), c(1), c(2), c(3), c(4), c(5), c(6), c(7), w0};
    const FitReport eval = evaluate_depth_model(report.model, w_grid, delta_grid);
    report.per_delta_mse = eval.per_delta_mse;
    report.sse = eval.sse;
    for (const double d : delta_grid) {
        const double res = report.model.continuity_residual(d);
        report.penalty += res * res;
    }
    return report;
}

FitReport evaluate_depth_model(const DepthFitModel &model,
                               std::span<const double> w_grid,
                               std::span<const double> delta_grid) {
    FitReport report;
    report.model = model;
    for (const double d : delta_grid) {
        const double x0 = solve_x_delta(d, 0.0);
        double se = 0.0;
        for (const double w : w_grid) {
            const double err = model_x_delta(model, d, w, x0) - solve_x_delta(d, w);
            se += err * err;
        }
        report.per_delta_mse.push_back(se / static_cast<double>(w_grid.size()));
        report.sse += se;
        const double res = model.continuity_residual(d);
        report.penalty += res * res;
    }
    return report;
}

DepthLimits depth_limits(const ArrayConfig &cfg, const SphericalPosition &pos,
                         double delta, double w, XSource x_source,
                         const DepthFitModel &model) {
    const double st = std::sin(pos.theta);
    if (st * st <= 0.0)
        throw UndefinedBeamDepth("depth_limits: sin(theta) = 0, t_z vanishes for all mismatches");

    const double x = x_source == XSource::Numeric ? solve_x_delta(delta, w)
                                                  : model_x_delta(model, delta, w);
    DepthLimits out;
    out.x_delta = x;
    out.critical_range = cfg.d_e * cfg.d_e * cfg.n_elements * cfg.n_elements *
                         std::numbers::pi * st * st / (cfg.lambda * x * x);
    out.delta_minus = pos.r * pos.r / (out.critical_range + pos.r);
    if (pos.r < out.critical_range)
        out.delta_plus = pos.r * pos.r / (out.critical_range - pos.r);
    return out;
}

LimitGains verify_depth_limits(const ArrayConfig &cfg, const SphericalPosition &pos,
                               double delta, double w, XSource x_source,
                               const DepthFitModel &model) {
    const DepthLimits limits = depth_limits(cfg, pos, delta, w, x_source, model);
    const ArrayConfig lossy = with_w(cfg, w);

    LimitGains gains;
    gains.lemma2_at_minus =
        gain::relative_gain_lemma2(lossy, pos, -limits.delta_minus).value;
    SphericalPosition focus = pos;
    focus.r = pos.r - limits.delta_minus;
    gains.oracle_at_minus = gain::relative_gain_oracle(lossy, pos, focus);

    if (limits.delta_plus) {
        gains.lemma2_at_plus =
            gain::relative_gain_lemma2(lossy, pos, *limits.delta_plus).value;
        focus.r = pos.r + *limits.delta_plus;
        gains.oracle_at_plus = gain::relative_gain_oracle(lossy, pos, focus);
    }
    return gains;
}

} // namespace dma::beamdepth
