#pragma once

#include <optional>

#include "tmhd/field.hpp"
#include "tmhd/taming.hpp"

namespace tmhd {

// Right-hand side of the tamed system split into its parts. Every part is
// divergence-free: the linear part because the state is, the advective and
// taming parts by projection, the forcing by construction.
struct RhsParts {
    StateFields linear;
    StateFields advective;
    StateFields taming;
    StateFields forcing;
    bool taming_active = false;
};

// Pseudo-spectral (u . grad) w: transform to physical, multiply u_j against
// the spectral derivatives of w, transform back, dealias.
VectorField advect(const VectorField& u, const VectorField& w);

// Physical-space copies of the state and its 18 first derivatives; the
// shared workspace of the right-hand side, the pressure recovery and the
// pointwise diagnostics.
struct StateDerivatives {
    SpectralState phys;
    ScalarField dv[3][3];  // dv[j][i] = d_j v_i
    ScalarField dB[3][3];
};
StateDerivatives state_derivatives(const SpectralState& y);

// Full tamed right-hand side. tf == nullptr drops the taming term (the
// untamed reference system); forcing == nullptr means f = 0. When the
// pointwise magnitude never exceeds the threshold the taming part is an
// exact zero field and the code path matches the untamed one bitwise.
RhsParts rhs_full(const SpectralState& y, const TamingFunction* tf, const StateFields* forcing);

// <A(y), y>_{H^0} computed from the assembled parts (forcing excluded).
double rhs_pairing_h0(const SpectralState& y, const TamingFunction& tf);

// Closed form -||grad y||^2 - integral g(|y|^2)|y|^2 it must agree with.
double rhs_pairing_h0_closed_form(const SpectralState& y, const TamingFunction& tf);

// <A(y), y>_{H^1} = <A(y), (I - Delta) y>_{H^0}.
double rhs_pairing_h1(const SpectralState& y, const TamingFunction& tf);

// Grid quadrature of g(|y|^2) |y|^2 (the taming dissipation integrand).
double taming_dissipation(const SpectralState& y_physical, const TamingFunction& tf);

// L^2 norm of  [-(v.grad)B + (B.grad)v] - curl(v x B),  both sides spectral
// with consistent dealiasing; vanishing residual is the structural identity
// behind the absence of magnetic pressure in the untamed system.
double curl_identity_residual(const VectorField& v, const VectorField& B);

struct PressureFields {
    ScalarField p;   // kinematic pressure, zero mean
    ScalarField pi;  // magnetic pressure, zero mean
};

// Solve  Delta p  = div((v.grad)v - (B.grad)B - B.(grad B) + g(|y|^2) v)
//        Delta pi = div(g(|y|^2) B)
// by spectral inversion with the k = 0 mode gauged to zero. Quadratic
// products are dealiased exactly as in advect; the taming products are not.
PressureFields recover_pressures(const SpectralState& y, const TamingFunction& tf);

// Sources of the two Poisson problems above (for residual checks).
struct PressureSources {
    VectorField momentum;  // argument of div in the p equation
    VectorField magnetic;  // argument of div in the pi equation
};
PressureSources pressure_sources(const SpectralState& y, const TamingFunction& tf,
                                 const StateDerivatives* pre = nullptr);
PressureFields recover_pressures(const SpectralState& y, const TamingFunction& tf,
                                 const StateDerivatives* pre);

// Pointwise p + |B|^2/2; the combination entering the local energy balance.
ScalarField total_pressure(const ScalarField& p, const VectorField& B_physical);

}  // namespace tmhd
