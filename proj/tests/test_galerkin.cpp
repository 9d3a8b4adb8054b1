#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "tmhd/galerkin.hpp"
#include "tmhd/stepper.hpp"

using namespace tmhd;
using namespace tmhd::test;

namespace {

std::vector<double> random_coeffs(int n, std::uint64_t seed, double radius) {
    SplitMix64 rng(seed);
    std::vector<double> z(n);
    double norm_sq = 0.0;
    for (double& x : z) {
        x = rng.next_normal();
        norm_sq += x * x;
    }
    const double scale = radius / std::sqrt(norm_sq);
    for (double& x : z) x *= scale;
    return z;
}

}  // namespace

TEST_CASE("basis: Gram matrix is the identity, states divergence-free") {
    const Grid g = Grid::make(8);
    const GalerkinBasis basis = GalerkinBasis::build(g, 64);
    for (int i = 0; i < basis.size(); ++i) {
        std::vector<double> ei(basis.size(), 0.0);
        ei[i] = 1.0;
        const SpectralState yi = basis.assemble(ei);
        CHECK(max_divergence(yi.v) < 1e-12);
        CHECK(max_divergence(yi.B) < 1e-12);
        // projection fixed point
        const SpectralState proj = leray_project(yi);
        CHECK(max_coeff_diff(proj.v, yi.v) < 1e-13);
        CHECK(max_coeff_diff(proj.B, yi.B) < 1e-13);
        for (int j = 0; j < basis.size(); ++j) {
            const double gij = basis.pair_h1_state(yi, j);
            CHECK(std::abs(gij - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("basis: ordering by |k| and mode count bookkeeping") {
    const Grid g = Grid::make(8);
    const int full = GalerkinBasis::max_modes(g);
    CHECK(full == 6 + 8 * ((7 * 7 * 7 - 1) / 2));
    CHECK_THROWS_AS((void)GalerkinBasis::build(g, full + 1), std::invalid_argument);

    const GalerkinBasis basis = GalerkinBasis::build(g, 80);
    double prev = 0.0;
    for (int i = 0; i < basis.size(); ++i) {
        CHECK(basis[i].k_sq >= prev);
        prev = basis[i].k_sq;
    }
    // the first six are the constants
    for (int i = 0; i < 6; ++i) CHECK(basis[i].k_sq == 0.0);
}

TEST_CASE("basis: two-mode request gives an H1-orthonormal pair") {
    const Grid g = Grid::make(8);
    const GalerkinBasis basis = GalerkinBasis::build(g, 2);
    REQUIRE(basis.size() == 2);
    std::vector<double> e1{1.0, 0.0}, e2{0.0, 1.0};
    const SpectralState y1 = basis.assemble(e1);
    const SpectralState y2 = basis.assemble(e2);
    CHECK(std::abs(basis.pair_h1_state(y1, 1)) < 1e-13);
    CHECK(std::abs(basis.pair_h1_state(y2, 0)) < 1e-13);
    CHECK(std::abs(basis.pair_h1_state(y1, 0) - 1.0) < 1e-13);
}

TEST_CASE("drift: zero coefficients give the zero vector") {
    const Grid g = Grid::make(8);
    GalerkinSystem system(GalerkinBasis::build(g, 40), TamingFunction(1.0), nullptr);
    const std::vector<double> b = drift(system, std::vector<double>(40, 0.0));
    for (double x : b) CHECK(x == 0.0);
}

TEST_CASE("drift: single polarization mode reduces to linear dissipation plus taming") {
    const Grid g = Grid::make(8);
    GalerkinSystem system(GalerkinBasis::build(g, 40), TamingFunction(1.0), nullptr);
    // first non-constant state carries the smallest |k| = 1 mode
    const int idx = 6;
    REQUIRE(system.basis[idx].k_sq == doctest::Approx(1.0));

    // small amplitude: taming off, drift is exactly -|kappa|^2 z on that mode
    {
        std::vector<double> z(40, 0.0);
        z[idx] = 0.01;
        const std::vector<double> b = drift(system, z);
        CHECK(std::abs(b[idx] + system.basis[idx].k_sq * z[idx]) < 1e-12);
        for (int j = 0; j < 40; ++j)
            if (j != idx) CHECK(std::abs(b[j]) < 1e-12);
    }

    // large amplitude: advective part still vanishes; the taming pairing is
    // checked against a direct grid-quadrature oracle
    {
        std::vector<double> z(40, 0.0);
        z[idx] = 40.0;
        const std::vector<double> b = drift(system, z);
        const SpectralState y = system.basis.assemble(z);
        const SpectralState yp = transform(y, Rep::physical);
        std::vector<double> ei(40, 0.0);
        ei[idx] = 1.0;
        const SpectralState e_phys = transform(system.basis.assemble(ei), Rep::physical);
        double taming_pair = 0.0;
        for (std::size_t p = 0; p < g.size(); ++p) {
            double r = 0.0, dot = 0.0;
            for (int c = 0; c < 3; ++c) {
                r += yp.v[c].phys()[p] * yp.v[c].phys()[p];
                dot += yp.v[c].phys()[p] * e_phys.v[c].phys()[p];
            }
            taming_pair += system.tf.eval(r) * dot;
        }
        taming_pair *= g.cell_volume() * (1.0 + system.basis[idx].k_sq);
        const double expected = -system.basis[idx].k_sq * z[idx] - taming_pair;
        CHECK(rel_diff(b[idx], expected) < 1e-10);
    }
}

TEST_CASE("coercivity <z, b(z)> <= C |z|^2 with brute-force constant") {
    const Grid g = Grid::make(8);
    GalerkinSystem system(GalerkinBasis::build(g, 40), TamingFunction(1.0), nullptr);

    // calibration sample
    double c_max = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        SplitMix64 rho(4000 + trial);
        const double radius = std::pow(10.0, -1.0 + 3.0 * rho.next_uniform());
        const std::vector<double> z = random_coeffs(40, 5000 + trial, radius);
        const std::vector<double> b = drift(system, z);
        double dot = 0.0, norm_sq = 0.0;
        for (int i = 0; i < 40; ++i) {
            dot += z[i] * b[i];
            norm_sq += z[i] * z[i];
        }
        c_max = std::max(c_max, dot / norm_sq);
    }
    const double C = std::max(1e-6, c_max) * 1.5;

    // assertion on a fresh sample
    for (int trial = 0; trial < 100; ++trial) {
        SplitMix64 rho(6000 + trial);
        const double radius = std::pow(10.0, -1.0 + 3.0 * rho.next_uniform());
        const std::vector<double> z = random_coeffs(40, 7000 + trial, radius);
        const std::vector<double> b = drift(system, z);
        double dot = 0.0, norm_sq = 0.0;
        for (int i = 0; i < 40; ++i) {
            dot += z[i] * b[i];
            norm_sq += z[i] * z[i];
        }
        CHECK(dot <= C * norm_sq);
    }
}

TEST_CASE("projection consistency: drift equals H1 pairings of the full rhs") {
    const Grid g = Grid::make(8);
    GalerkinSystem system(GalerkinBasis::build(g, GalerkinBasis::max_modes(g)), TamingFunction(1.0),
                          nullptr);
    const SpectralState y = random_state(g, 88, 2, 1.4);
    const std::vector<double> z = system.basis.coefficients(y);

    // the span is full, so reconstruction is exact
    const SpectralState rebuilt = system.basis.assemble(z);
    CHECK(state_l2_distance(rebuilt, y) < 1e-12 * (1.0 + sobolev_norm(y, 0)));

    const std::vector<double> b = drift(system, z);
    const RhsParts parts = rhs_full(y, &system.tf, nullptr);
    double worst = 0.0;
    for (int i = 0; i < system.basis.size(); ++i) {
        const double direct = system.basis.pair_h1(parts.linear, i) +
                              system.basis.pair_h1(parts.advective, i) +
                              system.basis.pair_h1(parts.taming, i);
        worst = std::max(worst, std::abs(b[i] - direct));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("integrate: zero data with zero forcing stays zero") {
    const Grid g = Grid::make(8);
    GalerkinSystem system(GalerkinBasis::build(g, 24), TamingFunction(1.0), nullptr);
    const GalerkinTrajectory traj =
        integrate_galerkin(system, std::vector<double>(24, 0.0), 0.05, 1e-3);
    for (const auto& z : traj.coeffs)
        for (double x : z) CHECK(x == 0.0);
}

TEST_CASE("integrate: coefficient energy nonincreasing for decaying data") {
    const Grid g = Grid::make(8);
    GalerkinSystem system(GalerkinBasis::build(g, 64), TamingFunction(1.0), nullptr);
    const SpectralState y0 = random_state(g, 99, 1, 0.8);
    std::vector<double> z0 = system.basis.coefficients(y0);
    const GalerkinTrajectory traj = integrate_galerkin(system, z0, 0.05, 5e-4);
    double prev = 1e300;
    bool first = true;
    for (const auto& z : traj.coeffs) {
        double norm_sq = 0.0;
        for (double x : z) norm_sq += x * x;
        if (!first) CHECK(norm_sq <= prev * (1.0 + 1e-12));
        prev = norm_sq;
        first = false;
    }
}

TEST_CASE("integrate: discrete H1 energy identity holds to integrator order") {
    const Grid g = Grid::make(8);
    const StateFields f = make_forcing(g, "sin_shear", 0.3);
    GalerkinSystem system(GalerkinBasis::build(g, 64), TamingFunction(1.0), &f);
    const SpectralState y0 = random_state(g, 101, 1, 0.9);
    std::vector<double> z0 = system.basis.coefficients(y0);
    const double T = 0.02;
    const double dt = 5e-4;
    const GalerkinTrajectory traj = integrate_galerkin(system, z0, T, dt);

    std::vector<double> ts, integrand;
    for (std::size_t s = 0; s < traj.coeffs.size(); ++s) {
        const std::vector<double>& z = traj.coeffs[s];
        const std::vector<double> b = drift(system, z);
        double dot = 0.0;
        for (int i = 0; i < system.basis.size(); ++i)
            dot += (b[i] + system.forcing_coeffs[i]) * z[i];
        ts.push_back(traj.times[s]);
        integrand.push_back(2.0 * dot);
    }
    double n0 = 0.0, nT = 0.0;
    for (double x : traj.coeffs.front()) n0 += x * x;
    for (double x : traj.coeffs.back()) nT += x * x;
    const double residual = std::abs(nT - n0 - trapezoid(ts, integrand));
    CHECK(residual < 5.0 * dt * dt * (1.0 + n0) * (T / dt));
}

TEST_CASE("full-basis trajectory matches the spectral solver") {
    const Grid g = Grid::make(8);
    const double T = 0.02;

    SolverConfig cfg;
    cfg.grid.n = 8;
    cfg.taming_threshold = 1.0;
    cfg.time.t_end = T;
    cfg.time.auto_dt = false;
    cfg.time.dt = 1e-4;
    cfg.initial.type = "random_band";
    cfg.initial.seed = 7;
    cfg.initial.k_max = 2;
    cfg.initial.amplitude = 1.3;
    const RunResult res = run(cfg);
    REQUIRE(res.status == RunStatus::completed);

    GalerkinSystem system(GalerkinBasis::build(g, GalerkinBasis::max_modes(g)), TamingFunction(1.0),
                          nullptr);
    const SpectralState y0 = make_initial_state(cfg);
    const GalerkinTrajectory traj =
        integrate_galerkin(system, system.basis.coefficients(y0), T, 5e-4);
    const SpectralState yg = system.basis.assemble(traj.coeffs.back());
    const double rel =
        state_l2_distance(res.final_state, yg) / std::max(1e-300, sobolev_norm(res.final_state, 0));
    CHECK(rel < 1e-6);
}
