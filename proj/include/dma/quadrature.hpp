#ifndef DMA_QUADRATURE_HPP
#define DMA_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace dma::quadrature {

struct Result {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0; // achieved absolute-error estimate
    bool converged = false;
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod (7-15) integration of a complex-valued integrand
// over [a, b] to the requested absolute tolerance. Validation oracle for the
// special functions and for the Riemann-sum integrals behind the gain
// kernels; not used on any production code path.
Result integrate(const std::function<std::complex<double>(double)> &f,
                 double a, double b, double abs_tol, int max_depth = 48);

} // namespace dma::quadrature

#endif
