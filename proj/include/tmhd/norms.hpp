#pragma once

#include <map>

#include "tmhd/field.hpp"

namespace tmhd {

// Norms from the combined-field calculus: Bessel-potential Sobolev norms
// ||(I - Delta)^{m/2} y||_{L^2} over the (v, B) pair, and L^p norms of the
// pointwise magnitude |y| = sqrt(|v|^2 + |B|^2).

// sqrt of sum_k (1 + |kappa|^2)^m (|v_hat|^2 + |B_hat|^2) * volume.
double sobolev_norm(const SpectralState& y, int m);

// Same weighting applied to one vector field.
double sobolev_norm(const VectorField& u, int m);

// ||grad y||^2_{H^0} = sum_k |kappa|^2 (|v_hat|^2 + |B_hat|^2) * volume.
double grad_energy_sq(const SpectralState& y);

// Grid quadrature of (|v|^2 + |B|^2)^{p/2}; p = infinity gives the max
// pointwise magnitude. Rejects p < 1.
double lp_norm(const SpectralState& y, double p);
double lp_norm_inf(const SpectralState& y);

// L^p norm of a scalar field (grid quadrature of |f|^p).
double scalar_lp_norm(const ScalarField& f, double p);

// Plain L^2 norm of a vector field (either representation).
double vector_l2_norm(const VectorField& u);

// L^2 distance between two states in the combined norm.
double state_l2_distance(const SpectralState& a, const SpectralState& b);

// H^0 pairing <a, b> = volume * sum_k Re(a_hat . conj(b_hat)) over both
// blocks; m = 1 inserts the (1 + |kappa|^2) weight.
double state_pairing(const StateFields& a, const SpectralState& b, int m);
double vector_pairing(const VectorField& a, const VectorField& b, int m);

struct NormReport {
    double h0 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    std::map<double, double> lp;
    double linf = 0.0;
};

NormReport norm_report(const SpectralState& y, const std::vector<double>& exponents);

}  // namespace tmhd
