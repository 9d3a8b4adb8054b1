#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "tmhd/diagnostics.hpp"
#include "tmhd/field.hpp"
#include "tmhd/mhd.hpp"

namespace tmhd {

struct BlowupError : std::runtime_error {
    explicit BlowupError(double t)
        : std::runtime_error("blow-up: non-finite state at t = " + std::to_string(t)), time(t) {}
    double time;
};

enum class Integrator { etd_rk2, if_rk4 };

struct GridSpec {
    int n = 32;
    double box_length = kTwoPi;
};

struct TimeSpec {
    double t_end = 0.5;
    bool auto_dt = true;   // dt = cfl * dx / max(1, ||y||_Linf), clamped to dt_max
    double dt = 1e-3;      // used when auto_dt is false
    double cfl = 0.4;
    double dt_max = 1e-2;
    Integrator integrator = Integrator::etd_rk2;
};

struct InitialSpec {
    std::string type = "taylor_green";  // taylor_green | orszag_tang_3d | random_band | file
    double amplitude = 1.0;
    std::uint64_t seed = 1;
    int k_max = 2;
    std::string path;
};

struct ForcingSpec {
    std::string type = "none";  // none | preset
    std::string preset = "sin_shear";
    double amplitude = 0.0;
};

struct OutputSpec {
    int every_steps = 1;
    bool snapshots = false;
    int snapshot_every = 0;  // 0 = final only (when snapshots enabled)
};

// Reynolds, magnetic Reynolds and Lundquist numbers are fixed to 1 by the
// nondimensionalization; they are not configurable.
struct SolverConfig {
    GridSpec grid;
    double taming_threshold = 1.0;
    TimeSpec time;
    InitialSpec initial;
    ForcingSpec forcing;
    OutputSpec output;
};

// One ETD-RK2 step: exact diffusion multipliers, explicit projected
// advective + taming + forcing part. Throws BlowupError on non-finite output.
SpectralState step(const SpectralState& y, const TamingFunction& tf, const StateFields* forcing,
                   double dt);

// Same discretization with the taming term removed.
SpectralState untamed_reference_step(const SpectralState& y, const StateFields* forcing, double dt);

SpectralState step_ifrk4(const SpectralState& y, const TamingFunction* tf,
                         const StateFields* forcing, double dt);

enum class RunStatus { completed, blew_up };

struct RunResult {
    TrajectoryRecord record;
    RunStatus status = RunStatus::completed;
    double blowup_time = 0.0;
    SpectralState final_state;
    StateFields forcing;
    bool taming_ever_active = false;
};

struct RunOptions {
    bool keep_states = false;  // store states at the output cadence
    bool tamed = true;         // false integrates the untamed reference system
    bool full_rows = true;     // false skips weighted-gradient and pressure columns
    // Called at every recorded sample, after the row is appended.
    std::function<void(const SpectralState&, const DiagnosticsRow&)> on_sample;
};

SpectralState make_initial_state(const SolverConfig& config);

RunResult run(const SolverConfig& config, const RunOptions& options = {});

}  // namespace tmhd
