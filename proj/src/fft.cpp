#include <fftw3.h>

#include <map>
#include <mutex>

#include "tmhd/field.hpp"
#include "tmhd/parallel.hpp"

namespace tmhd {
namespace {

// One cached FFTW plan pair per grid size. Plans are created with
// FFTW_ESTIMATE (deterministic) and FFTW_UNALIGNED so they can be executed
// on any caller-owned buffer via the new-array interface, which is
// thread-safe. Only plan creation is serialized.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<cplx> dummy(static_cast<std::size_t>(n) * n * n);
    auto* ptr = reinterpret_cast<fftw_complex*>(dummy.data());
    PlanPair p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_dft_3d(n, n, n, ptr, ptr, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_3d(n, n, n, ptr, ptr, FFTW_BACKWARD, flags);
    return cache.emplace(n, p).first->second;
}

void run_plan(fftw_plan plan, std::vector<cplx>& buf) {
    auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

ScalarField transform(const ScalarField& field, Rep target) {
    if (field.rep() == target) return field;
    const Grid& g = field.grid();
    const std::size_t size = g.size();
    PlanPair& plans = plans_for(g.n);

    ScalarField out(g, target);
    std::vector<cplx> buf(size);
    if (target == Rep::fourier) {
        const auto& src = field.phys();
        parallel_for(size, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) buf[i] = cplx{src[i], 0.0};
        });
        run_plan(plans.fwd, buf);
        const double scale = 1.0 / static_cast<double>(size);
        auto& dst = out.spec();
        parallel_for(size, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) dst[i] = buf[i] * scale;
        });
    } else {
        buf = field.spec();
        run_plan(plans.bwd, buf);
        auto& dst = out.phys();
        parallel_for(size, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) dst[i] = buf[i].real();
        });
    }
    return out;
}

VectorField transform(const VectorField& field, Rep target) {
    VectorField out;
    for (int c = 0; c < 3; ++c) out.comp[c] = transform(field[c], target);
    return out;
}

SpectralState transform(const SpectralState& state, Rep target) {
    SpectralState out;
    out.v = transform(state.v, target);
    out.B = transform(state.B, target);
    out.time = state.time;
    return out;
}

}  // namespace tmhd
