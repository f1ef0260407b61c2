#pragma once

#include <vector>

#include "osg/core_model.hpp"
#include "osg/momentum.hpp"
#include "osg/parallel.hpp"

namespace osg {

/// Density-matrix components of one momentum pair: rho_gg(q), rho_ee(q + hbar k),
/// rho_ge(q). Values are densities over the base momentum q.
struct BlochComponents {
  double rho_gg = 0.0;
  double rho_ee = 0.0;
  cplx rho_ge{0.0, 0.0};

  double trace() const { return rho_gg + rho_ee; }
  /// Smaller eigenvalue of [[rho_gg, rho_ge], [rho_ge*, rho_ee]].
  double min_eigenvalue() const;
};

/// One BlochComponents per pair mode of the grid (see MomentumGrid::mode_base).
struct BlochField {
  MomentumGrid grid;
  std::vector<BlochComponents> modes;
  double time = 0.0;
  double decay_rate = 0.0;  // Gamma, rad/s

  double base_momentum(std::size_t mode) const { return grid.momentum(grid.mode_base(mode)); }
  double trace() const;
};

/// d/dt of the components:
///   rho_gg' = G rho_ee - iJ (rho_ge - rho_eg)
///   rho_ee' = -G rho_ee + iJ (rho_ge - rho_eg)
///   rho_ge' = (i delta - G/2) rho_ge + iJ (rho_ee - rho_gg)
BlochComponents bloch_rhs(const BlochComponents& c, double delta, double coupling, double gamma);

/// Pure-state density matrix of each pair of `state`.
BlochField bloch_field_from_state(const MomentumState& state, double decay_rate);

struct BlochOptions {
  // Step size is min(T, 1/Gamma) / steps_per_scale.
  int steps_per_scale = 400;
  // Allowed L1 difference (per unit trace) between the h and h/2 runs.
  double halving_tolerance = 1e-6;
  bool validate_step = true;
  Backend backend = Backend::parallel;
};

/// Integrates every mode over `t` with fixed-step RK4. The returned field is
/// the h/2 run; throws if it disagrees with the h run beyond tolerance.
BlochField integrate_bloch(const BlochField& initial, double t, const AtomSpecies& species,
                           const DriveField& field, const BlochOptions& options = {});

/// Steady state of the damped equations for detuning delta.
BlochComponents stationary_solution(double delta, double omega, double gamma);

struct IntegratedPopulations {
  double ground = 0.0;
  double excited = 0.0;
  cplx coherence{0.0, 0.0};
};

IntegratedPopulations integrated_populations(const BlochField& field);

/// Per-mode stationary values weighted by each mode's trace.
IntegratedPopulations integrated_stationary(const BlochField& field, const AtomSpecies& species,
                                            const DriveField& drive);

}  // namespace osg
