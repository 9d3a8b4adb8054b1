#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmhd/field.hpp"

namespace tmhd {

// Binary state snapshot. Layout, all little-endian:
//   magic "TMHD1" (5 bytes), version u16, n per axis (3 x u32),
//   box length f64, time f64, taming threshold f64,
//   six f64 arrays in C order (vx, vy, vz, Bx, By, Bz; physical space),
//   presence byte, then optionally the p and pi arrays.
struct Snapshot {
    std::uint32_t nx = 0, ny = 0, nz = 0;
    double box_length = 0.0;
    double time = 0.0;
    double taming_threshold = 0.0;
    std::vector<double> field[6];  // vx vy vz Bx By Bz
    bool has_pressures = false;
    std::vector<double> p;
    std::vector<double> pi;
};

void save_snapshot(const Snapshot& snap, const std::string& path);
Snapshot load_snapshot(const std::string& path);

Snapshot make_snapshot(const SpectralState& y, double taming_threshold);
// Physical-representation state from a snapshot (cubic grids only).
SpectralState load_snapshot_state(const std::string& path);

}  // namespace tmhd
