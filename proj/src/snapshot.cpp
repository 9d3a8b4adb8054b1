#include "tmhd/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace tmhd {
namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

constexpr char kMagic[5] = {'T', 'M', 'H', 'D', '1'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw std::runtime_error("snapshot: truncated file");
    return value;
}

void write_array(std::ofstream& out, const std::vector<double>& a) {
    out.write(reinterpret_cast<const char*>(a.data()),
              static_cast<std::streamsize>(a.size() * sizeof(double)));
}

std::vector<double> read_array(std::ifstream& in, std::size_t count) {
    std::vector<double> a(count);
    in.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("snapshot: truncated array");
    return a;
}

}  // namespace

void save_snapshot(const Snapshot& snap, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("snapshot: cannot open '" + path + "' for writing");
    out.write(kMagic, 5);
    write_pod(out, kVersion);
    write_pod(out, snap.nx);
    write_pod(out, snap.ny);
    write_pod(out, snap.nz);
    write_pod(out, snap.box_length);
    write_pod(out, snap.time);
    write_pod(out, snap.taming_threshold);
    for (int c = 0; c < 6; ++c) write_array(out, snap.field[c]);
    const std::uint8_t presence = snap.has_pressures ? 1 : 0;
    write_pod(out, presence);
    if (snap.has_pressures) {
        write_array(out, snap.p);
        write_array(out, snap.pi);
    }
    if (!out) throw std::runtime_error("snapshot: write failed for '" + path + "'");
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("snapshot: cannot open '" + path + "'");
    char magic[5];
    in.read(magic, 5);
    if (!in || std::memcmp(magic, kMagic, 5) != 0)
        throw std::runtime_error("snapshot: bad magic in '" + path + "'");
    const auto version = read_pod<std::uint16_t>(in);
    if (version != kVersion) throw std::runtime_error("snapshot: unsupported version");
    Snapshot snap;
    snap.nx = read_pod<std::uint32_t>(in);
    snap.ny = read_pod<std::uint32_t>(in);
    snap.nz = read_pod<std::uint32_t>(in);
    snap.box_length = read_pod<double>(in);
    snap.time = read_pod<double>(in);
    snap.taming_threshold = read_pod<double>(in);
    const std::size_t count =
        static_cast<std::size_t>(snap.nx) * snap.ny * snap.nz;
    if (count == 0 || count > (std::size_t{1} << 30)) throw std::runtime_error("snapshot: bad grid size");
    for (int c = 0; c < 6; ++c) snap.field[c] = read_array(in, count);
    const auto presence = read_pod<std::uint8_t>(in);
    snap.has_pressures = presence != 0;
    if (snap.has_pressures) {
        snap.p = read_array(in, count);
        snap.pi = read_array(in, count);
    }
    return snap;
}

Snapshot make_snapshot(const SpectralState& y, double taming_threshold) {
    const SpectralState yp = y.rep() == Rep::physical ? y : transform(y, Rep::physical);
    const Grid& g = yp.grid();
    Snapshot snap;
    snap.nx = snap.ny = snap.nz = static_cast<std::uint32_t>(g.n);
    snap.box_length = g.box_length;
    snap.time = yp.time;
    snap.taming_threshold = taming_threshold;
    for (int c = 0; c < 3; ++c) {
        snap.field[c] = yp.v[c].phys();
        snap.field[3 + c] = yp.B[c].phys();
    }
    return snap;
}

SpectralState load_snapshot_state(const std::string& path) {
    const Snapshot snap = load_snapshot(path);
    if (snap.nx != snap.ny || snap.ny != snap.nz)
        throw std::runtime_error("snapshot: non-cubic grids are not supported");
    const Grid g = Grid::make(static_cast<int>(snap.nx), snap.box_length);
    SpectralState y(g, Rep::physical);
    y.time = snap.time;
    for (int c = 0; c < 3; ++c) {
        y.v[c].phys() = snap.field[c];
        y.B[c].phys() = snap.field[3 + c];
    }
    return y;
}

}  // namespace tmhd
