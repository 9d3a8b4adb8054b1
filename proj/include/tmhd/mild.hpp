#pragma once

#include <vector>

#include "tmhd/field.hpp"
#include "tmhd/taming.hpp"

namespace tmhd {

// Kernel multipliers of the integral-equation formulation, realized on the
// torus: heat(k,t) = e^{-|kappa|^2 t}; the projected (Oseen) kernel is the
// Leray multiplier times heat, identity at k = 0.

// e^{-|kappa|^2 t} applied to every component; rejects t < 0.
SpectralState heat_propagate(const SpectralState& y0, double t);
VectorField heat_propagate(const VectorField& u, double t);

// Trajectory sampled on the uniform quadrature grid tau_i = i h of [0, T].
struct MildTrajectory {
    double h = 0.0;
    std::vector<SpectralState> nodes;

    double time(int i) const { return h * i; }
    int count() const { return static_cast<int>(nodes.size()); }
};

struct MildConfig {
    int nodes = 64;          // quadrature intervals per Duhamel integral
    double tolerance = 1e-10;  // sup-in-time L^2 distance, relative to 1 + ||y0||
    int max_iterations = 40;
};

// The bilinear Duhamel operator at node i:
//   B(u,w)(tau_i) = int_0^{tau_i} sum_k d_k [P F_{tau_i - s} (u w_k)] ds
// with trapezoid quadrature in s and dealiased pointwise products.
VectorField oseen_bilinear(const MildTrajectory& u, const MildTrajectory& w, int node);

// The 2x2 block combination (B(v1,v2) - B(B1,B2), B(v1,B2) - B(B1,v2)).
StateFields mhd_bilinear(const MildTrajectory& y1, const MildTrajectory& y2, int node);

// f_N(tau_i) = F_{tau_i} y0 - int_0^{tau_i} F_{tau_i - s} P(g(|y|^2) y - f) ds.
SpectralState duhamel_forcing(const MildTrajectory& y, const SpectralState& y0,
                              const TamingFunction& tf, const StateFields* forcing, int node);

struct NotConvergedError : std::runtime_error {
    explicit NotConvergedError(int iters)
        : std::runtime_error("picard iteration did not converge after " + std::to_string(iters) +
                             " iterations"),
          iterations(iters) {}
    int iterations;
};

struct PicardResult {
    MildTrajectory trajectory;
    int iterations = 0;
};

// Fixed-point iteration y <- f_N(y) - B(y,y) on the quadrature grid, started
// from the heat flow of y0. Throws NotConvergedError when the contraction
// fails (data or horizon too large).
PicardResult picard_solve(const SpectralState& y0, const TamingFunction& tf,
                          const StateFields* forcing, double t_end, const MildConfig& cfg);

}  // namespace tmhd
