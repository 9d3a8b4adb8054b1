#include "tmhd/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "tmhd/norms.hpp"

namespace tmhd {
namespace {

bool states_bitwise_equal(const SpectralState& a, const SpectralState& b) {
    for (int c = 0; c < 3; ++c) {
        const auto& av = a.v[c].spec();
        const auto& bv = b.v[c].spec();
        const auto& ab = a.B[c].spec();
        const auto& bb = b.B[c].spec();
        if (av.size() != bv.size()) return false;
        if (std::memcmp(av.data(), bv.data(), av.size() * sizeof(cplx)) != 0) return false;
        if (std::memcmp(ab.data(), bb.data(), ab.size() * sizeof(cplx)) != 0) return false;
    }
    return true;
}

}  // namespace

SweepReport n_sweep(const SolverConfig& base, const std::vector<double>& thresholds) {
    if (thresholds.empty()) throw std::invalid_argument("n_sweep: empty threshold list");
    if (base.time.auto_dt)
        throw std::invalid_argument("n_sweep: fixed dt required so runs share sample times");

    SweepReport report;
    std::vector<SpectralState> prev_states;

    for (std::size_t idx = 0; idx < thresholds.size(); ++idx) {
        SolverConfig cfg = base;
        cfg.taming_threshold = thresholds[idx];
        RunOptions opts;
        opts.keep_states = true;
        const RunResult res = run(cfg, opts);
        if (res.status != RunStatus::completed)
            throw BlowupError(res.blowup_time);

        SweepEntry entry;
        entry.threshold = thresholds[idx];
        entry.taming_active = res.taming_ever_active;

        std::vector<double> ts, pi_pow, sq_dist;
        for (const DiagnosticsRow& row : res.record.rows) {
            ts.push_back(row.t);
            pi_pow.push_back(std::pow(row.pi_l95, 9.0 / 8.0));
            entry.sup_pointwise_sq = std::max(entry.sup_pointwise_sq, row.sup_sq);
            entry.sup_h2_sq = std::max(entry.sup_h2_sq, row.h2 * row.h2);
        }
        entry.pi_integral = trapezoid(ts, pi_pow);

        if (idx > 0) {
            if (prev_states.size() != res.record.states.size())
                throw std::logic_error("n_sweep: sample counts differ between runs");
            bool bitwise = true;
            for (std::size_t i = 0; i < prev_states.size(); ++i) {
                const double d = state_l2_distance(prev_states[i], res.record.states[i]);
                sq_dist.push_back(d * d);
                bitwise = bitwise && states_bitwise_equal(prev_states[i], res.record.states[i]);
            }
            entry.distance_to_prev = std::sqrt(trapezoid(ts, sq_dist));
            entry.bitwise_equal_prev = bitwise;
        }
        prev_states = res.record.states;
        report.entries.push_back(entry);
    }

    // Saturation: smallest threshold with no taming activity; larger runs
    // must be bitwise identical to it.
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        if (!report.entries[i].taming_active) {
            bool all_equal = true;
            for (std::size_t j = i + 1; j < report.entries.size(); ++j)
                all_equal = all_equal && report.entries[j].bitwise_equal_prev;
            if (all_equal) {
                report.saturation_threshold = report.entries[i].threshold;
                break;
            }
        }
    }

    // Least squares sup ||y||^2_{H^2} = a + b (1 + N^2).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(report.entries.size());
    for (const SweepEntry& e : report.entries) {
        const double x = 1.0 + e.threshold * e.threshold;
        sx += x;
        sy += e.sup_h2_sq;
        sxx += x * x;
        sxy += x * e.sup_h2_sq;
    }
    const double det = m * sxx - sx * sx;
    if (det != 0.0) {
        report.fit_slope = (m * sxy - sx * sy) / det;
        report.fit_intercept = (sy - report.fit_slope * sx) / m;
    } else {
        report.fit_slope = 0.0;
        report.fit_intercept = sy / m;
    }
    double scale = 0.0;
    for (const SweepEntry& e : report.entries) scale = std::max(scale, std::abs(e.sup_h2_sq));
    report.fit_monotone = report.fit_slope >= -1e-12 * (1.0 + scale);
    return report;
}

void write_sweep_csv(const SweepReport& report, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw std::runtime_error("sweep: cannot open '" + path + "' for writing");
    std::fprintf(f, "N,pi_l95_98_integral,sup_pointwise_sq,sup_h2_sq,taming_active,distance_to_prev,bitwise_equal_prev\n");
    for (const SweepEntry& e : report.entries) {
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%d,%.17g,%d\n", e.threshold, e.pi_integral,
                     e.sup_pointwise_sq, e.sup_h2_sq, e.taming_active ? 1 : 0, e.distance_to_prev,
                     e.bitwise_equal_prev ? 1 : 0);
    }
    std::fprintf(f, "# fit sup_h2_sq = %.17g + %.17g * (1 + N^2); monotone=%d\n", report.fit_intercept,
                 report.fit_slope, report.fit_monotone ? 1 : 0);
    std::fclose(f);
}

}  // namespace tmhd
