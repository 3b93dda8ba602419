#pragma once

#include "filmsim/full_domain.hpp"
#include "filmsim/gaptooth.hpp"
#include "filmsim/run_config.hpp"

namespace filmsim {

/// Where seeded depth noise is injected.  `Everywhere` perturbs every depth
/// unknown (standalone simulations); `SharedPoints` perturbs only the
/// odd-patch centres and, on the full grid, the h-points nearest to them,
/// with identical draws so the two representations stay comparable.
enum class NoisePlacement { Everywhere, SharedPoints };

/// h = 1 + a sin(2 pi q x / L) + noise, uniform layer velocities, on the
/// reference grid.  Deterministic in cfg.ic.seed.
FlowField make_initial_full(const RunConfig& cfg,
                            NoisePlacement placement = NoisePlacement::Everywhere);

/// The same profile sampled at patch micro-points.
CoupledState make_initial_gaptooth(const RunConfig& cfg, const PatchLayout& layout,
                                   NoisePlacement placement = NoisePlacement::Everywhere);

}  // namespace filmsim
