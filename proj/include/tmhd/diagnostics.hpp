#pragma once

#include <optional>
#include <vector>

#include "tmhd/field.hpp"
#include "tmhd/mhd.hpp"
#include "tmhd/taming.hpp"

namespace tmhd {

// One sampled row of run diagnostics. The first fifteen fields are the CSV
// columns, in order; the trailing fields are internal bookkeeping.
struct DiagnosticsRow {
    double t = 0.0;
    double energy = 0.0;              // ||y||^2_{H^0}
    double grad_energy = 0.0;         // ||grad y||^2_{H^0}
    double h1 = 0.0;                  // ||y||_{H^1}
    double h2 = 0.0;                  // ||y||_{H^2}
    double taming_dissipation = 0.0;  // || sqrt(g(|y|^2)) |y| ||^2_{L^2}
    double wg_vv = 0.0;               // || |v||grad v| ||^2
    double wg_BB = 0.0;
    double wg_vB = 0.0;               // || |v||grad B| ||^2
    double wg_Bv = 0.0;
    double div_v_max = 0.0;
    double div_B_max = 0.0;
    double p_l95 = 0.0;   // L^{9/5} norm of the kinematic pressure
    double pi_l95 = 0.0;  // L^{9/5} norm of the magnetic pressure
    double energy_residual = 0.0;

    double fy_pairing = 0.0;  // <f, y>_{H^0}
    double sup_sq = 0.0;      // max pointwise |y|^2
    bool taming_active = false;
};

struct TrajectoryRecord {
    std::vector<DiagnosticsRow> rows;
    std::vector<SpectralState> states;  // optional, at the output cadence
};

// Incremental row computation along a run; keeps the trapezoid integrals the
// energy-residual column needs.
class DiagnosticsAccumulator {
  public:
    // full_detail = false skips the weighted-gradient and pressure columns
    // (left at zero); used by callers that only consume the cheap columns.
    DiagnosticsRow compute(const SpectralState& y, const TamingFunction* tf,
                           const StateFields* forcing, bool full_detail = true);

  private:
    bool have_prev_ = false;
    double e0_ = 0.0;
    double prev_t_ = 0.0;
    double prev_dissipation_ = 0.0;
    double prev_fy_ = 0.0;
    double dissipation_integral_ = 0.0;
    double fy_integral_ = 0.0;
};

// |  ||y(t)||^2 + 2 int (||grad y||^2 + taming) - ||y0||^2 - 2 int <f,y>  |
// recomputed from the recorded rows with trapezoid time quadrature.
std::vector<double> energy_equality_residual(const TrajectoryRecord& traj);

struct AprioriReport {
    bool h0_bound_ok = true;          // ||y(t)|| <= ||y0|| + int ||f||
    bool dissipation_bound_ok = true; // int(||grad y||^2 + taming) <= ||y0||^2 + 2 [int ||f||]^2
    double worst_h0_margin = 0.0;      // min over samples of RHS - LHS
    double worst_dissipation_margin = 0.0;
    double empirical_growth_constant = 0.0;  // report-only constant of the H^1 bound
};

// Checks the two a-priori inequalities pointwise in t with slack
// 1e-8 * (1 + |RHS|); the H^1-growth constant is reported, never asserted.
AprioriReport apriori_checks(const TrajectoryRecord& traj, double taming_threshold,
                             double forcing_h0_norm);

// Smooth space-time bump phi(t,x) = bump((t - T/2)/(0.4 T)) *
// prod_i bump((x_i - L/2)/w), with bump(u) = exp(1 - 1/(1-u^2)) on |u| < 1.
// All derivatives vanish at the support boundary; dt, grad and laplacian are
// closed-form.
class TestFunctionPhi {
  public:
    TestFunctionPhi(double t_end, const Grid& grid, double spatial_halfwidth_fraction = 0.45,
                    double temporal_halfwidth_fraction = 0.4);

    double time_factor(double t) const;
    double time_factor_dt(double t) const;

    const std::vector<double>& space() const { return space_; }
    const std::vector<double>& space_gradient(int axis) const { return grad_[axis]; }
    const std::vector<double>& space_laplacian() const { return lap_; }
    double t_end() const { return t_end_; }

  private:
    double t_end_;
    double t_center_;
    double t_halfwidth_;
    std::vector<double> space_;
    std::vector<double> grad_[3];
    std::vector<double> lap_;
};

// Accumulates both sides of the finite-N local energy balance
//   2 iint (|grad y|^2 + g(|y|^2)|y|^2) phi
//     = iint [ |y|^2 (dt phi + lap phi) + 2 <y,f> phi
//              + (|y|^2 - 2 (p + |B|^2/2)) <v, grad phi>
//              - 2 pi <B, grad phi> - 2 <B,v><B, grad phi> ]
// with trapezoid time quadrature over the fed samples.
class LocalEnergyAccumulator {
  public:
    LocalEnergyAccumulator(const TestFunctionPhi& phi, const TamingFunction& tf,
                           const StateFields* forcing);

    void add_sample(const SpectralState& y_fourier);

    double lhs() const;
    double rhs() const;
    double residual() const { return std::abs(lhs() - rhs()); }
    double rhs_scale() const;

  private:
    const TestFunctionPhi& phi_;
    const TamingFunction& tf_;
    std::optional<StateFields> forcing_physical_;
    std::vector<double> times_;
    std::vector<double> lhs_samples_;
    std::vector<double> rhs_samples_;
    double rhs_abs_peak_ = 0.0;
};

// Convenience wrapper for stored trajectories.
struct LocalEnergyResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double rhs_scale = 0.0;
};
LocalEnergyResult local_energy_equality_residual(const std::vector<SpectralState>& states,
                                                 const TestFunctionPhi& phi,
                                                 const TamingFunction& tf,
                                                 const StateFields* forcing);

// Trapezoid quadrature over sampled times.
double trapezoid(const std::vector<double>& ts, const std::vector<double>& vals);

}  // namespace tmhd
