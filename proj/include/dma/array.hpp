#ifndef DMA_ARRAY_HPP
#define DMA_ARRAY_HPP

#include <complex>
#include <vector>

namespace dma {

using ComplexVector = std::vector<std::complex<double>>;

// DMA hardware description. The array lies in the zy-plane, centered at the
// origin: microstrips run along z (element spacing d_e) and are stacked
// along y (spacing d_m). One RF chain feeds each microstrip.
struct ArrayConfig {
    int n_microstrips = 1;    // N_m
    int n_elements = 1;       // N_e, elements per microstrip
    double d_e = 0.0;         // inter-element spacing along z [m]
    double d_m = 0.0;         // inter-microstrip spacing along y [m]
    double lambda = 0.0;      // carrier wavelength [m]
    double alpha = 0.0;       // microstrip attenuation coefficient [1/m]
    double beta = 0.0;        // microstrip wavenumber [rad/m]
    double power_budget = 1.0; // P_b [W]

    int total_elements() const { return n_microstrips * n_elements; }

    // Throws std::invalid_argument on a violated invariant.
    void validate() const;

    // beta is never pinned by the physics here (it cancels out of the
    // beamforming gain); default it to the free-space wavenumber.
    static ArrayConfig make(int n_m, int n_e, double d_e, double d_m,
                            double lambda, double alpha, double power_budget);
};

// Position relative to the array center: range r, azimuth phi, polar theta.
struct SphericalPosition {
    double r = 1.0;
    double phi = 0.0;
    double theta = 1.5707963267948966;
};

// Per-element distance evaluation: exact square-root form, second-order
// Fresnel expansion, or the Fresnel expansion without the bilinear
// n_z*i_y cross term (the form the analytic gain kernels assume).
enum class DistanceMode { Exact, Fresnel, FresnelNoBilinear };

struct ElementOffsets {
    double n_z; // n - 0.5(N_e - 1), element offset along z in units of d_e
    double i_y; // i - 0.5(N_m - 1), microstrip offset along y in units of d_m
    double rho; // n * d_e, distance from the feed port [m]
};

// Indices are 0-based: i in [0, N_m), n in [0, N_e). Throws
// std::out_of_range on bad indices.
ElementOffsets element_offsets(const ArrayConfig &cfg, int i, int n);

double element_distance(const ArrayConfig &cfg, const SphericalPosition &pos,
                        int i, int n, DistanceMode mode);

// Unit-modulus focusing vector a(r,phi,theta); entry (i,n) sits at flat
// index i*N_e + n and carries phase -(2 pi / lambda) r_{i,n}.
ComplexVector focusing_vector(const ArrayConfig &cfg, const SphericalPosition &pos,
                              DistanceMode mode = DistanceMode::Exact);

// Focusing vector with the microstrip loss profile: entry modulus
// exp(-alpha n d_e), phase as in focusing_vector. The best profile a lossy
// DMA can realize.
ComplexVector decaying_focusing_vector(const ArrayConfig &cfg,
                                       const SphericalPosition &pos,
                                       DistanceMode mode = DistanceMode::Exact);

// LoS channel h = lambda/(4 pi r) * a(r,phi,theta); the pathloss is treated
// as constant over the aperture.
ComplexVector los_channel(const ArrayConfig &cfg, const SphericalPosition &pos,
                          DistanceMode mode = DistanceMode::Exact);

// Lorentzian-constrained element weight 0.5(j + e^{j phi}); the feasible
// locus is the circle of radius 0.5 centered at 0.5j.
std::complex<double> lorentzian_weight(double phi);

// Hybrid beamformer Q̄v assembled from its parts: the waveguide propagation
// matrix P_m (with the 1/sqrt(N_e) power normalization), the Lorentzian
// weights phased to align with a(focus), and the uniform digital vector
// with ||v||^2 = P_b.
ComplexVector hybrid_beamformer(const ArrayConfig &cfg, const SphericalPosition &focus,
                                DistanceMode mode = DistanceMode::Exact);

// Closed-form equivalent of hybrid_beamformer:
//   0.5 sqrt(P_b/N) (a(focus) ⊙ e^{-alpha rho} + j e^{-(alpha + j beta) rho}).
// The two must agree entrywise to near machine precision.
ComplexVector hybrid_beamformer_closed_form(const ArrayConfig &cfg,
                                            const SphericalPosition &focus,
                                            DistanceMode mode = DistanceMode::Exact);

} // namespace dma

#endif
