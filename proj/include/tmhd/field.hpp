#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tmhd/grid.hpp"

namespace tmhd {

using cplx = std::complex<double>;

enum class Rep { physical, fourier };

// A real scalar field on the grid, stored either as point values or as the
// full cube of complex Fourier coefficients (conjugate-symmetric for real
// data). Fields are value types; every operation returns a fresh field.
class ScalarField {
  public:
    ScalarField() = default;
    ScalarField(const Grid& grid, Rep rep) : grid_(grid), rep_(rep) {
        if (rep == Rep::physical)
            phys_.assign(grid.size(), 0.0);
        else
            spec_.assign(grid.size(), cplx{0.0, 0.0});
    }

    const Grid& grid() const { return grid_; }
    Rep rep() const { return rep_; }

    std::vector<double>& phys() {
        require(Rep::physical);
        return phys_;
    }
    const std::vector<double>& phys() const {
        require(Rep::physical);
        return phys_;
    }
    std::vector<cplx>& spec() {
        require(Rep::fourier);
        return spec_;
    }
    const std::vector<cplx>& spec() const {
        require(Rep::fourier);
        return spec_;
    }

  private:
    void require(Rep rep) const {
        if (rep_ != rep) throw std::logic_error("scalar field: representation mismatch");
    }

    Grid grid_{};
    Rep rep_ = Rep::physical;
    std::vector<double> phys_;
    std::vector<cplx> spec_;
};

struct VectorField {
    std::array<ScalarField, 3> comp;

    VectorField() = default;
    VectorField(const Grid& grid, Rep rep)
        : comp{ScalarField(grid, rep), ScalarField(grid, rep), ScalarField(grid, rep)} {}

    const Grid& grid() const { return comp[0].grid(); }
    Rep rep() const { return comp[0].rep(); }
    ScalarField& operator[](int i) { return comp[i]; }
    const ScalarField& operator[](int i) const { return comp[i]; }
};

// The combined unknown: velocity and magnetic field, plus simulation time.
struct SpectralState {
    VectorField v;
    VectorField B;
    double time = 0.0;

    SpectralState() = default;
    SpectralState(const Grid& grid, Rep rep) : v(grid, rep), B(grid, rep) {}

    const Grid& grid() const { return v.grid(); }
    Rep rep() const { return v.rep(); }
};

// A velocity/magnetic pair without time; used for right-hand-side parts and
// forcing terms.
struct StateFields {
    VectorField v;
    VectorField B;

    StateFields() = default;
    StateFields(const Grid& grid, Rep rep) : v(grid, rep), B(grid, rep) {}

    const Grid& grid() const { return v.grid(); }
};

// transform plumbing (FFT-backed); inverse composition is identity to 1e-13.
ScalarField transform(const ScalarField& field, Rep target);
VectorField transform(const VectorField& field, Rep target);
SpectralState transform(const SpectralState& state, Rep target);

}  // namespace tmhd
