#include "filmsim/initial_condition.hpp"

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

namespace filmsim {

namespace {

// Uniform draw in [-1, 1] with an implementation-independent mapping, so
// that a seed pins the state bit-for-bit on any platform.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}
    double next() {
        const std::uint64_t bits = engine_() >> 11;  // 53 random bits
        return 2.0 * (static_cast<double>(bits) * 0x1.0p-53) - 1.0;
    }

private:
    std::mt19937_64 engine_;
};

double base_profile(double x, const RunConfig& cfg) {
    return 1.0 + cfg.ic.amplitude *
                     std::sin(2.0 * std::numbers::pi * cfg.ic.mode_number * x / cfg.L);
}

void require_positive_profile(const RunConfig& cfg) {
    if (cfg.ic.amplitude < 0.0 || cfg.ic.noise_amplitude < 0.0 ||
        cfg.ic.amplitude + cfg.ic.noise_amplitude >= 1.0)
        throw std::invalid_argument(
            "filmsim: initial amplitude plus noise must stay below 1 so h remains positive");
}

}  // namespace

FlowField make_initial_full(const RunConfig& cfg, NoisePlacement placement) {
    require_positive_profile(cfg);
    const FullGrid grid = FullGrid::make(cfg.L, cfg.resolved_n_cells());
    FlowField f = FlowField::uniform(grid, 1.0, cfg.ic.u1, cfg.ic.u2);
    for (int p = 0; p < grid.h_count(); ++p) f.h[p] = base_profile(grid.x_h(p), cfg);

    if (cfg.ic.noise_amplitude > 0.0) {
        NoiseSource noise(cfg.ic.seed);
        if (placement == NoisePlacement::Everywhere) {
            for (int p = 0; p < grid.h_count(); ++p)
                f.h[p] += cfg.ic.noise_amplitude * noise.next();
        } else {
            // One draw per odd patch, applied at the nearest h-point.
            for (int j = 1; j < cfg.m; j += 2) {
                const double x = j * cfg.D;
                const int p = static_cast<int>(std::lround(x / (2.0 * grid.spacing()))) %
                              grid.h_count();
                f.h[p] += cfg.ic.noise_amplitude * noise.next();
            }
        }
    }
    return f;
}

CoupledState make_initial_gaptooth(const RunConfig& cfg, const PatchLayout& layout,
                                   NoisePlacement placement) {
    require_positive_profile(cfg);
    CoupledState s = CoupledState::uniform(layout, 1.0, cfg.ic.u1, cfg.ic.u2);
    const int np = layout.n_half;
    for (int j = 0; j < layout.m; ++j) {
        const bool odd = layout.odd_patch(j);
        const int lo = odd ? -(np - 1) : -(np - 2);
        const int hi = -lo;
        for (int i = lo; i <= hi; i += 2)
            s.values[dof_index(layout, {j, i, PatchField::H})] =
                base_profile(layout.x(j, i), cfg);
    }
    if (cfg.ic.noise_amplitude > 0.0) {
        NoiseSource noise(cfg.ic.seed);
        if (placement == NoisePlacement::Everywhere) {
            for (int j = 0; j < layout.m; ++j) {
                const bool odd = layout.odd_patch(j);
                const int lo = odd ? -(np - 1) : -(np - 2);
                for (int i = lo; i <= -lo; i += 2)
                    s.values[dof_index(layout, {j, i, PatchField::H})] +=
                        cfg.ic.noise_amplitude * noise.next();
            }
        } else {
            for (int j = 1; j < layout.m; j += 2)
                s.values[dof_index(layout, {j, 0, PatchField::H})] +=
                    cfg.ic.noise_amplitude * noise.next();
        }
    }
    return s;
}

}  // namespace filmsim
