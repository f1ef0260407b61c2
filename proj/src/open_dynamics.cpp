#include "osg/open_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "osg/error.hpp"
#include "osg/kernels.hpp"

namespace osg {

double BlochComponents::min_eigenvalue() const {
  const double mean = 0.5 * (rho_gg + rho_ee);
  const double half_gap = std::hypot(0.5 * (rho_gg - rho_ee), std::abs(rho_ge));
  return mean - half_gap;
}

double BlochField::trace() const {
  double s = 0.0;
  for (std::size_t m = 0; m < modes.size(); ++m)
    s += modes[m].trace() * trapezoid_weight(m, modes.size(), grid.spacing);
  return s;
}

BlochComponents bloch_rhs(const BlochComponents& c, double delta, double coupling, double gamma) {
  const cplx i{0.0, 1.0};
  const cplx transfer = i * coupling * (c.rho_ge - std::conj(c.rho_ge));  // purely real
  BlochComponents d;
  d.rho_gg = gamma * c.rho_ee - transfer.real();
  d.rho_ee = -gamma * c.rho_ee + transfer.real();
  d.rho_ge = (i * delta - 0.5 * gamma) * c.rho_ge + i * coupling * (c.rho_ee - c.rho_gg);
  return d;
}

BlochField bloch_field_from_state(const MomentumState& state, double decay_rate) {
  if (!(decay_rate >= 0.0)) throw Error("decay rate must be non-negative");
  const auto& grid = state.grid;
  const auto n = static_cast<std::ptrdiff_t>(grid.count);
  BlochField f{grid, std::vector<BlochComponents>(grid.mode_count()), state.time, decay_rate};
  for (std::size_t m = 0; m < grid.mode_count(); ++m) {
    const std::ptrdiff_t g = grid.mode_base(m);
    const std::ptrdiff_t e = g + grid.photon_stride;
    const cplx ag = g >= 0 ? state.phi_g[g] : cplx{};
    const cplx ae = e < n ? state.phi_e[e] : cplx{};
    f.modes[m] = {std::norm(ag), std::norm(ae), ag * std::conj(ae)};
  }
  return f;
}

namespace {

void run_modes(Backend backend, std::vector<BlochComponents>& modes,
               const std::vector<double>& deltas, double coupling, double gamma, double h,
               long steps) {
  if (backend == Backend::serial)
    kernels::integrate_modes_serial(modes, deltas, coupling, gamma, h, steps);
  else
    kernels::integrate_modes_omp(modes, deltas, coupling, gamma, h, steps);
}

}  // namespace

BlochField integrate_bloch(const BlochField& initial, double t, const AtomSpecies& species,
                           const DriveField& field, const BlochOptions& options) {
  if (!(t >= 0.0)) throw Error("integration time must be non-negative");
  if (options.steps_per_scale < 200) throw Error("steps_per_scale must be at least 200");
  BlochField out = initial;
  out.time = initial.time + t;
  if (t == 0.0) return out;

  const double period = oscillation_period(field);
  const double scale =
      initial.decay_rate > 0.0 ? std::min(period, 1.0 / initial.decay_rate) : period;
  const double h_max = scale / options.steps_per_scale;
  const long steps = std::max(1L, static_cast<long>(std::ceil(t / h_max - 1e-9)));

  std::vector<double> deltas(initial.modes.size());
  for (std::size_t m = 0; m < deltas.size(); ++m)
    deltas[m] = energy_shift_delta(initial.base_momentum(m), species, field);
  const double coupling = 0.5 * field.rabi_frequency;

  run_modes(options.backend, out.modes, deltas, coupling, initial.decay_rate, t / (2 * steps),
            2 * steps);

  if (options.validate_step) {
    std::vector<BlochComponents> coarse = initial.modes;
    run_modes(options.backend, coarse, deltas, coupling, initial.decay_rate,
              t / static_cast<double>(steps), steps);
    double diff = 0.0;
    for (std::size_t m = 0; m < coarse.size(); ++m) {
      const double w = trapezoid_weight(m, coarse.size(), initial.grid.spacing);
      diff += w * (std::abs(coarse[m].rho_gg - out.modes[m].rho_gg) +
                   std::abs(coarse[m].rho_ee - out.modes[m].rho_ee) +
                   std::abs(coarse[m].rho_ge - out.modes[m].rho_ge));
    }
    const double trace = initial.trace();
    if (trace > 0.0 && diff / trace > options.halving_tolerance)
      throw Error("Bloch integration not converged: step-halving difference " +
                  std::to_string(diff / trace) + " exceeds tolerance; refine the step");
  }
  return out;
}

BlochComponents stationary_solution(double delta, double omega, double gamma) {
  if (!(omega > 0.0)) throw Error("Rabi frequency must be positive");
  const double denom = 4.0 * delta * delta / omega + gamma * gamma / omega + 2.0 * omega;
  const double excited = omega / denom;
  return {1.0 - excited, excited, cplx{2.0 * delta / denom, -gamma / denom}};
}

IntegratedPopulations integrated_populations(const BlochField& field) {
  IntegratedPopulations p;
  for (std::size_t m = 0; m < field.modes.size(); ++m) {
    const double w = trapezoid_weight(m, field.modes.size(), field.grid.spacing);
    p.ground += w * field.modes[m].rho_gg;
    p.excited += w * field.modes[m].rho_ee;
    p.coherence += w * field.modes[m].rho_ge;
  }
  return p;
}

IntegratedPopulations integrated_stationary(const BlochField& field, const AtomSpecies& species,
                                            const DriveField& drive) {
  IntegratedPopulations p;
  for (std::size_t m = 0; m < field.modes.size(); ++m) {
    const double w = trapezoid_weight(m, field.modes.size(), field.grid.spacing) *
                     field.modes[m].trace();
    const double delta = energy_shift_delta(field.base_momentum(m), species, drive);
    const auto s = stationary_solution(delta, drive.rabi_frequency, field.decay_rate);
    p.ground += w * s.rho_gg;
    p.excited += w * s.rho_ee;
    p.coherence += w * s.rho_ge;
  }
  return p;
}

}  // namespace osg
