#pragma once

#include <array>
#include <vector>

#include "tmhd/field.hpp"
#include "tmhd/mhd.hpp"
#include "tmhd/taming.hpp"

namespace tmhd {

// One real H^1-orthonormal basis state: either a constant vector (k = 0) or
// a polarized cos/sin mode at +-k, living in the velocity or the magnetic
// block. Stored sparsely as its nonzero Fourier coefficients.
struct BasisState {
    struct Entry {
        int block;         // 0 = velocity, 1 = magnetic
        int component;     // 0..2
        std::size_t flat;  // coefficient index
        cplx value;
    };
    std::vector<Entry> entries;
    double k_sq = 0.0;      // |kappa|^2 of the carrying mode
    std::array<int, 3> k{}; // integer wavenumber (zero for constants)
};

// Divergence-free Fourier polarization basis, orthonormal in H^1, ordered by
// increasing |k| with lexicographic tie-break, constants (k = 0) first; per
// wavenumber the order is velocity block before magnetic block, cos before
// sin, polarization 1 before 2.
class GalerkinBasis {
  public:
    static GalerkinBasis build(const Grid& grid, int n_modes);
    // All representable modes below the Nyquist planes; spans every state the
    // spectral solver can reach.
    static int max_modes(const Grid& grid);

    const Grid& grid() const { return grid_; }
    int size() const { return static_cast<int>(states_.size()); }
    const BasisState& operator[](int i) const { return states_[i]; }

    SpectralState assemble(const std::vector<double>& z) const;
    // z_i = <y, e_i>_{H^1}
    std::vector<double> coefficients(const SpectralState& y) const;

    double pair_h1(const StateFields& a, int i) const;
    double pair_h1_state(const SpectralState& a, int i) const;

  private:
    Grid grid_{};
    std::vector<BasisState> states_;
};

struct GalerkinSystem {
    GalerkinBasis basis;
    TamingFunction tf;
    std::vector<double> forcing_coeffs;  // <f, e_i>_{H^1}, time-independent

    GalerkinSystem(GalerkinBasis basis_, TamingFunction tf_, const StateFields* forcing);
};

// b_n(z)_i = <A(z . e), e_i>_{H^1} assembled through the full right-hand
// side operator and the H^1 pairing.
std::vector<double> drift(const GalerkinSystem& system, const std::vector<double>& z);

struct GalerkinTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> coeffs;
};

// Classical RK4 on the coefficient ODE dz/dt = b_n(z) + f_n.
GalerkinTrajectory integrate_galerkin(const GalerkinSystem& system, const std::vector<double>& z0,
                                      double t_end, double dt, int sample_every = 1);

}  // namespace tmhd
