#include "tmhd/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tmhd {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects a number, got '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config: key '" + key + "' expects a number, got '" + value + "'");
    return v;
}

long parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw std::invalid_argument("config: key '" + key + "' expects true/false, got '" + value + "'");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void apply_config_kv(SolverConfig& cfg, const std::string& section, const std::string& key,
                     const std::string& value) {
    const std::string qual = section + "." + key;
    if (qual == "grid.n") cfg.grid.n = static_cast<int>(parse_int(qual, value));
    else if (qual == "grid.box_length") cfg.grid.box_length = parse_double(qual, value);
    else if (qual == "taming.N") cfg.taming_threshold = parse_double(qual, value);
    else if (qual == "time.t_end") cfg.time.t_end = parse_double(qual, value);
    else if (qual == "time.dt") {
        if (value == "auto") {
            cfg.time.auto_dt = true;
        } else {
            cfg.time.auto_dt = false;
            cfg.time.dt = parse_double(qual, value);
        }
    } else if (qual == "time.cfl") cfg.time.cfl = parse_double(qual, value);
    else if (qual == "time.dt_max") cfg.time.dt_max = parse_double(qual, value);
    else if (qual == "time.integrator") {
        if (value == "etd_rk2") cfg.time.integrator = Integrator::etd_rk2;
        else if (value == "if_rk4") cfg.time.integrator = Integrator::if_rk4;
        else throw std::invalid_argument("config: unknown integrator '" + value + "'");
    } else if (qual == "initial.type") cfg.initial.type = value;
    else if (qual == "initial.amplitude") cfg.initial.amplitude = parse_double(qual, value);
    else if (qual == "initial.seed") cfg.initial.seed = static_cast<std::uint64_t>(parse_int(qual, value));
    else if (qual == "initial.k_max") cfg.initial.k_max = static_cast<int>(parse_int(qual, value));
    else if (qual == "initial.path") cfg.initial.path = value;
    else if (qual == "forcing.type") cfg.forcing.type = value;
    else if (qual == "forcing.preset") cfg.forcing.preset = value;
    else if (qual == "forcing.amplitude") cfg.forcing.amplitude = parse_double(qual, value);
    else if (qual == "output.every_steps") cfg.output.every_steps = static_cast<int>(parse_int(qual, value));
    else if (qual == "output.snapshots") cfg.output.snapshots = parse_bool(qual, value);
    else if (qual == "output.snapshot_every") cfg.output.snapshot_every = static_cast<int>(parse_int(qual, value));
    else throw std::invalid_argument("config: unknown key '" + qual + "'");
}

void validate_config(const SolverConfig& cfg) {
    if (cfg.initial.type != "taylor_green" && cfg.initial.type != "orszag_tang_3d" &&
        cfg.initial.type != "random_band" && cfg.initial.type != "file")
        throw std::invalid_argument("config: unknown initial.type '" + cfg.initial.type + "'");
    if (cfg.forcing.type != "none" && cfg.forcing.type != "preset")
        throw std::invalid_argument("config: unknown forcing.type '" + cfg.forcing.type + "'");
    if (!(cfg.taming_threshold > 0.0)) throw std::invalid_argument("config: taming.N must be positive");
    if (!(cfg.time.t_end >= 0.0)) throw std::invalid_argument("config: time.t_end must be nonnegative");
    if (!cfg.time.auto_dt && !(cfg.time.dt > 0.0))
        throw std::invalid_argument("config: time.dt must be positive");
}

SolverConfig parse_config(const std::string& text) {
    SolverConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section header at line " +
                                            std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "grid" && section != "taming" && section != "time" &&
                section != "initial" && section != "forcing" && section != "output")
                throw std::invalid_argument("config: unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " + std::to_string(lineno));
        apply_config_kv(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    validate_config(cfg);
    return cfg;
}

SolverConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const SolverConfig& cfg) {
    std::ostringstream out;
    out << "[grid]\n";
    out << "n = " << cfg.grid.n << "\n";
    out << "box_length = " << fmt(cfg.grid.box_length) << "\n";
    out << "\n[taming]\n";
    out << "N = " << fmt(cfg.taming_threshold) << "\n";
    out << "\n[time]\n";
    out << "t_end = " << fmt(cfg.time.t_end) << "\n";
    if (cfg.time.auto_dt)
        out << "dt = auto\n";
    else
        out << "dt = " << fmt(cfg.time.dt) << "\n";
    out << "cfl = " << fmt(cfg.time.cfl) << "\n";
    out << "dt_max = " << fmt(cfg.time.dt_max) << "\n";
    out << "integrator = " << (cfg.time.integrator == Integrator::etd_rk2 ? "etd_rk2" : "if_rk4")
        << "\n";
    out << "\n[initial]\n";
    out << "type = " << cfg.initial.type << "\n";
    out << "amplitude = " << fmt(cfg.initial.amplitude) << "\n";
    out << "seed = " << cfg.initial.seed << "\n";
    out << "k_max = " << cfg.initial.k_max << "\n";
    if (!cfg.initial.path.empty()) out << "path = " << cfg.initial.path << "\n";
    out << "\n[forcing]\n";
    out << "type = " << cfg.forcing.type << "\n";
    out << "preset = " << cfg.forcing.preset << "\n";
    out << "amplitude = " << fmt(cfg.forcing.amplitude) << "\n";
    out << "\n[output]\n";
    out << "every_steps = " << cfg.output.every_steps << "\n";
    out << "snapshots = " << (cfg.output.snapshots ? "true" : "false") << "\n";
    out << "snapshot_every = " << cfg.output.snapshot_every << "\n";
    return out.str();
}

const char* const kDiagnosticsCsvHeader =
    "t,energy,grad_energy,h1,h2,taming_dissipation,wg_vv,wg_BB,wg_vB,wg_Bv,div_v_max,div_B_max,"
    "p_l95,pi_l95,energy_residual";

void write_diagnostics_csv(const TrajectoryRecord& record, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    std::fprintf(f, "%s\n", kDiagnosticsCsvHeader);
    for (const DiagnosticsRow& r : record.rows) {
        std::fprintf(f,
                     "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                     "%.17g,%.17g,%.17g\n",
                     r.t, r.energy, r.grad_energy, r.h1, r.h2, r.taming_dissipation, r.wg_vv,
                     r.wg_BB, r.wg_vB, r.wg_Bv, r.div_v_max, r.div_B_max, r.p_l95, r.pi_l95,
                     r.energy_residual);
    }
    std::fclose(f);
}

std::vector<std::vector<double>> parse_csv(const std::string& path, std::string* header_out) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
    std::string line;
    std::vector<std::vector<double>> rows;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (first) {
            if (header_out != nullptr) *header_out = line;
            first = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace tmhd
