#include "tmhd/taming.hpp"

#include <stdexcept>

#include "tmhd/parallel.hpp"

namespace tmhd {

TamingFunction::TamingFunction(double threshold) : threshold_(threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("taming: threshold must be positive");
}

double TamingFunction::eval(double r) const {
    if (r < 0.0) throw std::domain_error("taming: eval requires r >= 0");
    if (r <= threshold_) return 0.0;
    if (r >= threshold_ + 1.0) return 2.0 * (r - threshold_ - 0.5);
    const double s = r - threshold_;
    return s * s * s * (2.0 - s);
}

double TamingFunction::eval_derivative(double r) const {
    if (r < 0.0) throw std::domain_error("taming: eval_derivative requires r >= 0");
    if (r <= threshold_) return 0.0;
    if (r >= threshold_ + 1.0) return 2.0;
    const double s = r - threshold_;
    return s * s * (6.0 - 4.0 * s);
}

double TamingFunction::eval_primitive(double r) const {
    if (r < 0.0) throw std::domain_error("taming: eval_primitive requires r >= 0");
    if (r <= threshold_) return 0.0;
    if (r < threshold_ + 1.0) {
        const double s = r - threshold_;
        const double s4 = s * s * s * s;
        return 0.5 * s4 - 0.2 * s4 * s;
    }
    const double u = r - threshold_ - 0.5;
    return u * u + 0.05;
}

std::pair<VectorField, VectorField> apply_taming(const TamingFunction& tf, const SpectralState& y) {
    if (y.rep() != Rep::physical) throw std::logic_error("apply_taming: physical representation required");
    const Grid& g = y.grid();
    VectorField out_v(g, Rep::physical);
    VectorField out_B(g, Rep::physical);
    const auto& vx = y.v[0].phys();
    const auto& vy = y.v[1].phys();
    const auto& vz = y.v[2].phys();
    const auto& bx = y.B[0].phys();
    const auto& by = y.B[1].phys();
    const auto& bz = y.B[2].phys();
    parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double r = vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i] + bx[i] * bx[i] +
                             by[i] * by[i] + bz[i] * bz[i];
            const double gv = tf.eval(r);
            out_v[0].phys()[i] = gv * vx[i];
            out_v[1].phys()[i] = gv * vy[i];
            out_v[2].phys()[i] = gv * vz[i];
            out_B[0].phys()[i] = gv * bx[i];
            out_B[1].phys()[i] = gv * by[i];
            out_B[2].phys()[i] = gv * bz[i];
        }
    });
    return {std::move(out_v), std::move(out_B)};
}

double max_pointwise_magnitude_sq(const SpectralState& y) {
    if (y.rep() != Rep::physical)
        throw std::logic_error("max_pointwise_magnitude_sq: physical representation required");
    const Grid& g = y.grid();
    const auto& vx = y.v[0].phys();
    const auto& vy = y.v[1].phys();
    const auto& vz = y.v[2].phys();
    const auto& bx = y.B[0].phys();
    const auto& by = y.B[1].phys();
    const auto& bz = y.B[2].phys();
    double mx = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i] + bx[i] * bx[i] +
                         by[i] * by[i] + bz[i] * bz[i];
        mx = std::max(mx, r);
    }
    return mx;
}

}  // namespace tmhd
