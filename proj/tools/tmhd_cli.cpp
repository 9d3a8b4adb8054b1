// Batch driver for the tamed-MHD core. Talks to the engine exclusively
// through the C API in tmhd/tmhd.h.
//
// Exit codes: 0 success, 1 usage/config/I-O error, 2 failed invariant check,
// 3 blow-up during integration.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tmhd/tmhd.h"

namespace {

int status_to_exit(tmhd_status s) {
    switch (s) {
        case TMHD_OK: return 0;
        case TMHD_ASSERTION_FAILED: return 2;
        case TMHD_BLOWUP: return 3;
        case TMHD_NOT_CONVERGED: return 2;
        default: return 1;
    }
}

int report_failure(tmhd_status s) {
    std::fprintf(stderr, "error: %s\n", tmhd_last_error());
    return status_to_exit(s);
}

struct ConfigHandle {
    tmhd_config* ptr = nullptr;
    ~ConfigHandle() { tmhd_config_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tamed-MHD pseudo-spectral simulator and verification harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string snapshot_path;
    std::string n_list_text = "1,2,4,8,16";
    int modes = 0;
    int nodes = 64;
    double t_end = 0.05;

    auto* cmd_run = app.add_subcommand("run", "integrate and write diagnostics CSV + snapshots");
    cmd_run->add_option("--config", config_path, "run configuration file")->required();
    cmd_run->add_option("--out", out_dir, "output directory");

    auto* cmd_sweep = app.add_subcommand("sweep-n", "taming-threshold sweep study");
    cmd_sweep->add_option("--config", config_path, "run configuration file")->required();
    cmd_sweep->add_option("--n-list", n_list_text, "comma-separated thresholds");
    cmd_sweep->add_option("--out", out_dir, "output directory");

    auto* cmd_gal = app.add_subcommand("galerkin", "finite-basis trajectory + cross-check vs full solver");
    cmd_gal->add_option("--config", config_path, "run configuration file")->required();
    cmd_gal->add_option("--modes", modes, "basis size (0 = full)");
    cmd_gal->add_option("--out", out_dir, "output directory");

    auto* cmd_mild = app.add_subcommand("mild-check", "Picard integral-equation solve vs time stepper");
    cmd_mild->add_option("--config", config_path, "run configuration file")->required();
    cmd_mild->add_option("--t-end", t_end, "comparison horizon");
    cmd_mild->add_option("--nodes", nodes, "quadrature nodes");
    cmd_mild->add_option("--out", out_dir, "output directory");

    auto* cmd_diag = app.add_subcommand("diagnose", "one-shot identity checks on a stored state");
    cmd_diag->add_option("--snapshot", snapshot_path, "snapshot file")->required();

    CLI11_PARSE(app, argc, argv);

    if (cmd_diag->parsed()) {
        std::vector<char> report(8192);
        const tmhd_status s = tmhd_diagnose(snapshot_path.c_str(), report.data(), report.size());
        std::fputs(report.data(), stdout);
        if (s != TMHD_OK) return report_failure(s);
        std::printf("all snapshot invariants hold\n");
        return 0;
    }

    ConfigHandle cfg;
    if (tmhd_status s = tmhd_config_load(config_path.c_str(), &cfg.ptr); s != TMHD_OK)
        return report_failure(s);

    if (cmd_run->parsed()) {
        tmhd_result* res = nullptr;
        const tmhd_status s = tmhd_run(cfg.ptr, out_dir.c_str(), &res);
        if (res != nullptr) {
            std::printf("wrote %zu diagnostics rows to %s/diagnostics.csv\n", tmhd_result_rows(res),
                        out_dir.c_str());
            tmhd_result_free(res);
        }
        return s == TMHD_OK ? 0 : report_failure(s);
    }

    if (cmd_sweep->parsed()) {
        std::vector<double> thresholds;
        std::string token;
        for (char ch : n_list_text + ",") {
            if (ch == ',') {
                if (!token.empty()) thresholds.push_back(std::stod(token));
                token.clear();
            } else {
                token += ch;
            }
        }
        const std::string out_csv = out_dir + "/sweep.csv";
        const tmhd_status s = tmhd_sweep_n(cfg.ptr, thresholds.data(), thresholds.size(), out_csv.c_str());
        if (s != TMHD_OK) return report_failure(s);
        std::printf("wrote sweep report to %s\n", out_csv.c_str());
        return 0;
    }

    if (cmd_gal->parsed()) {
        double rel = 0.0;
        const std::string out_csv = out_dir + "/galerkin.csv";
        const tmhd_status s = tmhd_galerkin_check(cfg.ptr, modes, out_csv.c_str(), &rel);
        if (s != TMHD_OK) return report_failure(s);
        std::printf("final relative L2 difference vs spectral solver: %.6e (report: %s)\n", rel,
                    out_csv.c_str());
        return 0;
    }

    if (cmd_mild->parsed()) {
        double rel = 0.0;
        int iterations = 0;
        const std::string out_csv = out_dir + "/mild.csv";
        const tmhd_status s =
            tmhd_mild_check(cfg.ptr, t_end, nodes, out_csv.c_str(), &rel, &iterations);
        if (s != TMHD_OK) return report_failure(s);
        std::printf("picard converged in %d iterations; relative L2 difference at t_end: %.6e\n",
                    iterations, rel);
        return 0;
    }

    return 1;
}
