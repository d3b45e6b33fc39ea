#include "dma/quadrature.hpp"

#include <cmath>

namespace dma::quadrature {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
constexpr double kNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};

constexpr double kWeightsK[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};

// Gauss weights apply to the odd-index (embedded 7-point) nodes.
constexpr double kWeightsG[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Panel {
    std::complex<double> value;
    double error;
};

Panel gk15(const std::function<std::complex<double>(double)> &f, double a, double b,
           long &evals) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::complex<double> sk{0.0, 0.0};
    std::complex<double> sg{0.0, 0.0};
    for (int i = 0; i < 15; ++i) {
        const std::complex<double> fv = f(mid + half * kNodes[i]);
        sk += kWeightsK[i] * fv;
        if (i % 2 == 1)
            sg += kWeightsG[i / 2] * fv;
    }
    evals += 15;
    sk *= half;
    sg *= half;
    const double diff = std::abs(sk - sg);
    // Standard QUADPACK-style error sharpening.
    return {sk, std::min(diff, 200.0 * diff * std::sqrt(diff))};
}

void refine(const std::function<std::complex<double>(double)> &f, double a, double b,
            const Panel &p, double tol, int depth, Result &out) {
    if (p.error <= tol || depth <= 0) {
        out.value += p.value;
        out.error_estimate += p.error;
        if (p.error > tol && depth <= 0)
            out.converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    const Panel left = gk15(f, a, mid, out.evaluations);
    const Panel right = gk15(f, mid, b, out.evaluations);
    refine(f, a, mid, left, 0.5 * tol, depth - 1, out);
    refine(f, mid, b, right, 0.5 * tol, depth - 1, out);
}

} // namespace

Result integrate(const std::function<std::complex<double>(double)> &f,
                 double a, double b, double abs_tol, int max_depth) {
    Result out;
    out.converged = true;
    if (a == b)
        return out;
    const Panel whole = gk15(f, a, b, out.evaluations);
    refine(f, a, b, whole, abs_tol, max_depth, out);
    return out;
}

} // namespace dma::quadrature
