#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmhd/stepper.hpp"

namespace tmhd {

// Taming-parameter study: the same data and discretization integrated for
// each threshold in turn, tracking the magnetic-pressure decay and the
// Cauchy behaviour of the trajectories as the threshold grows.
struct SweepEntry {
    double threshold = 0.0;
    // int_0^T ||pi||_{L^{9/5}}^{9/8} dt, the convergence norm of the
    // magnetic pressure.
    double pi_integral = 0.0;
    double sup_pointwise_sq = 0.0;  // max over the run of max_x |y|^2
    double sup_h2_sq = 0.0;         // max over the run of ||y||^2_{H^2}
    bool taming_active = false;
    // space-time L^2 distance to the previous (smaller-threshold) run
    double distance_to_prev = 0.0;
    bool bitwise_equal_prev = false;
};

struct SweepReport {
    std::vector<SweepEntry> entries;
    // least-squares fit sup ||y||^2_{H^2} ~ a + b (1 + N^2); report-only
    double fit_intercept = 0.0;
    double fit_slope = 0.0;
    bool fit_monotone = false;
    // smallest listed threshold whose run never activates taming (if any);
    // all larger runs are bitwise identical to it
    std::optional<double> saturation_threshold;
};

SweepReport n_sweep(const SolverConfig& base, const std::vector<double>& thresholds);

void write_sweep_csv(const SweepReport& report, const std::string& path);

}  // namespace tmhd
