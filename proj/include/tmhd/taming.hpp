#pragma once

#include <utility>

#include "tmhd/field.hpp"

namespace tmhd {

// Cutoff cubic damping profile: zero up to the threshold N, linear with
// slope 2 from N+1 on, joined by a monotone Hermite ramp with
// value/slope/curvature (0,0,0) at N and (1,2,0) at N+1. The ramp works out
// to 2s^3 - s^4 on s = r - N, which keeps g' within [0,2] and
// g(r) >= max(0, 2(r - N - 1/2)) everywhere.
class TamingFunction {
  public:
    explicit TamingFunction(double threshold);

    double threshold() const { return threshold_; }
    static constexpr double taming_constant() { return 2.0; }

    double eval(double r) const;
    double eval_derivative(double r) const;
    // Primitive G(r) = integral of eval from 0 to r; G(r) <= r^2.
    double eval_primitive(double r) const;

  private:
    double threshold_;
};

// Pointwise (g(|v|^2+|B|^2) v, g(|v|^2+|B|^2) B); input and output physical.
std::pair<VectorField, VectorField> apply_taming(const TamingFunction& tf, const SpectralState& y);

// Max of |v|^2 + |B|^2 over grid points; taming is inactive iff this is <= N.
double max_pointwise_magnitude_sq(const SpectralState& y_physical);

}  // namespace tmhd
