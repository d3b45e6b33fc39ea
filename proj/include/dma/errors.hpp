#ifndef DMA_ERRORS_HPP
#define DMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dma {

// Thrown by solve_x_delta when the gain kernel never drops to the requested
// fraction inside its monotone region (delta too small for the given w).
class NoRootInBracket : public std::runtime_error {
  public:
    NoRootInBracket(const std::string &msg, double bracket_end, double residual)
        : std::runtime_error(msg), bracket_end(bracket_end), residual(residual) {}
    double bracket_end; // last x certified monotone
    double residual;    // K^2(bracket_end,w) - delta*K^2(0,w)
};

// Thrown by depth_limits when sin(theta) = 0; t_z vanishes for every
// mismatch, so no beam depth exists.
class UndefinedBeamDepth : public std::domain_error {
  public:
    explicit UndefinedBeamDepth(const std::string &msg) : std::domain_error(msg) {}
};

// Configuration / input file problems (CLI exits with code 2 on these).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace dma

#endif
