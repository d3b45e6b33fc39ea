#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dma/array.hpp"

using namespace dma;

namespace {

ArrayConfig fig_array(double alpha) {
    return ArrayConfig::make(10, 200, 0.005, 0.005, 0.01, alpha, 1.0);
}

double norm2(const ComplexVector &v) {
    double s = 0.0;
    for (const auto &x : v)
        s += std::norm(x);
    return s;
}

} // namespace

TEST_CASE("config validation rejects broken setups") {
    CHECK_THROWS_AS(ArrayConfig::make(0, 8, 0.01, 0.01, 0.02, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ArrayConfig::make(2, 8, -0.01, 0.01, 0.02, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ArrayConfig::make(2, 8, 0.01, 0.01, 0.02, -1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ArrayConfig::make(2, 8, 0.01, 0.01, 0.02, 0.0, 0.0),
                    std::invalid_argument);
    const auto cfg = ArrayConfig::make(2, 8, 0.01, 0.01, 0.02, 0.5, 1.0);
    CHECK(cfg.beta == doctest::Approx(2.0 * std::numbers::pi / 0.02));
    CHECK(cfg.total_elements() == 16);
}

TEST_CASE("element offsets are centered and feed distance grows along the strip") {
    const auto cfg = ArrayConfig::make(3, 4, 0.01, 0.02, 0.02, 0.0, 1.0);
    const auto first = element_offsets(cfg, 0, 0);
    CHECK(first.n_z == doctest::Approx(-1.5));
    CHECK(first.i_y == doctest::Approx(-1.0));
    CHECK(first.rho == 0.0);
    const auto last = element_offsets(cfg, 2, 3);
    CHECK(last.n_z == doctest::Approx(1.5));
    CHECK(last.i_y == doctest::Approx(1.0));
    CHECK(last.rho == doctest::Approx(0.03));
    CHECK_THROWS_AS(element_offsets(cfg, 3, 0), std::out_of_range);
    CHECK_THROWS_AS(element_offsets(cfg, 0, -1), std::out_of_range);
}

TEST_CASE("exact distance matches a hand computation") {
    const auto cfg = ArrayConfig::make(3, 4, 0.01, 0.02, 0.02, 0.0, 1.0);
    const SphericalPosition pos{2.0, 0.4, 1.1};
    const auto [n_z, i_y, rho] = element_offsets(cfg, 1, 2);
    const double px = pos.r * std::sin(pos.theta) * std::cos(pos.phi);
    const double py = pos.r * std::sin(pos.theta) * std::sin(pos.phi);
    const double pz = pos.r * std::cos(pos.theta);
    const double ez = n_z * cfg.d_e;
    const double ey = i_y * cfg.d_m;
    const double expect =
        std::sqrt(px * px + (py - ey) * (py - ey) + (pz - ez) * (pz - ez));
    CHECK(element_distance(cfg, pos, 1, 2, DistanceMode::Exact) ==
          doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("Fresnel expansion stays within lambda/16 of the exact distance") {
    const auto cfg = fig_array(0.0);
    const SphericalPosition pos{7.0, std::numbers::pi / 3.0, std::numbers::pi / 2.0};
    double worst = 0.0;
    for (int i = 0; i < cfg.n_microstrips; ++i)
        for (int n = 0; n < cfg.n_elements; ++n) {
            const double exact = element_distance(cfg, pos, i, n, DistanceMode::Exact);
            const double fres = element_distance(cfg, pos, i, n, DistanceMode::Fresnel);
            worst = std::max(worst, std::abs(exact - fres));
        }
    CHECK(worst < cfg.lambda / 16.0);
}

TEST_CASE("bilinear cross term vanishes broadside (theta = pi/2)") {
    const auto cfg = fig_array(0.0);
    const SphericalPosition pos{7.0, std::numbers::pi / 3.0, std::numbers::pi / 2.0};
    for (int i : {0, 4, 9})
        for (int n : {0, 77, 199})
            CHECK(element_distance(cfg, pos, i, n, DistanceMode::Fresnel) ==
                  doctest::Approx(element_distance(cfg, pos, i, n,
                                                   DistanceMode::FresnelNoBilinear))
                      .epsilon(1e-15));
    // off broadside the two expansions differ
    const SphericalPosition tilted{7.0, std::numbers::pi / 3.0, std::numbers::pi / 3.0};
    CHECK(element_distance(cfg, tilted, 0, 0, DistanceMode::Fresnel) !=
          element_distance(cfg, tilted, 0, 0, DistanceMode::FresnelNoBilinear));
}

TEST_CASE("focusing vector: unit modulus, spherical phase") {
    const auto cfg = fig_array(0.0);
    const SphericalPosition pos{7.0, std::numbers::pi / 3.0, std::numbers::pi / 2.0};
    const auto a = focusing_vector(cfg, pos);
    REQUIRE(static_cast<int>(a.size()) == cfg.total_elements());
    const double k = 2.0 * std::numbers::pi / cfg.lambda;
    for (int idx : {0, 199, 200, 1999}) {
        const int i = idx / cfg.n_elements, n = idx % cfg.n_elements;
        CHECK(std::abs(a[idx]) == doctest::Approx(1.0).epsilon(1e-14));
        const double want = -k * element_distance(cfg, pos, i, n, DistanceMode::Exact);
        CHECK(std::abs(a[idx] - std::polar(1.0, want)) < 1e-12);
    }
}

TEST_CASE("decaying focusing vector: e^{-alpha rho} magnitude profile") {
    const auto cfg = fig_array(4.0);
    const SphericalPosition pos{7.0, std::numbers::pi / 3.0, std::numbers::pi / 2.0};
    const auto a = decaying_focusing_vector(cfg, pos);
    CHECK(std::abs(a[0]) == doctest::Approx(1.0).epsilon(1e-14));
    // last element of a strip: alpha * 199 * d_e = 3.98
    CHECK(std::abs(a[199]) == doctest::Approx(std::exp(-3.98)).epsilon(1e-13));
    CHECK(std::abs(a[5 * 200 + 199]) == doctest::Approx(std::exp(-3.98)).epsilon(1e-13));
}

TEST_CASE("LoS channel carries the free-space pathloss") {
    const auto cfg = fig_array(0.0);
    const SphericalPosition pos{7.0, std::numbers::pi / 3.0, std::numbers::pi / 2.0};
    const auto h = los_channel(cfg, pos);
    const double pl = cfg.lambda / (4.0 * std::numbers::pi * pos.r);
    CHECK(std::abs(h[42]) == doctest::Approx(pl).epsilon(1e-13));
    CHECK(pl == doctest::Approx(1.1368210220849667e-4).epsilon(1e-12));
}

TEST_CASE("Lorentzian weights live on the circle |q - 0.5j| = 0.5") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const std::complex<double> center{0.0, 0.5};
    for (int k = 0; k < 256; ++k) {
        const auto q = lorentzian_weight(u(rng));
        CHECK(std::abs(q - center) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(q) <= 1.0 + 1e-14);
    }
}

TEST_CASE("assembled beamformer equals its closed form over random configs") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> nm(1, 6), ne(2, 40);
    std::uniform_real_distribution<double> spacing(0.002, 0.02), att(0.0, 10.0),
        range(1.0, 40.0), ang(0.2, 2.9), pw(0.1, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto cfg = ArrayConfig::make(nm(rng), ne(rng), spacing(rng), spacing(rng),
                                     0.01, att(rng), pw(rng));
        const SphericalPosition focus{range(rng), ang(rng), ang(rng)};
        const auto built = hybrid_beamformer(cfg, focus);
        const auto closed = hybrid_beamformer_closed_form(cfg, focus);
        REQUIRE(built.size() == closed.size());
        for (std::size_t idx = 0; idx < built.size(); ++idx)
            CHECK(std::abs(built[idx] - closed[idx]) < 1e-12);
    }
}

TEST_CASE("beamformer respects the power budget") {
    for (double alpha : {0.0, 2.0, 8.0}) {
        auto cfg = fig_array(alpha);
        cfg.power_budget = 2.5;
        const SphericalPosition focus{7.0, std::numbers::pi / 3.0,
                                      std::numbers::pi / 2.0};
        const double radiated = norm2(hybrid_beamformer(cfg, focus));
        CHECK(radiated <= cfg.power_budget * (1.0 + 1e-12));
        CHECK(radiated > 0.0);
    }
}
