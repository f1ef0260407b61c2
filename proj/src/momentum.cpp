#include "osg/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "osg/error.hpp"
#include "osg/kernels.hpp"

namespace osg {

void MomentumGrid::validate(double photon_momentum) const {
  if (!(spacing > 0.0)) throw Error("momentum grid spacing must be positive");
  if (count < 2) throw Error("momentum grid needs at least two points");
  if (photon_stride < 1) throw Error("photon stride must be a positive integer");
  const double mismatch = std::abs(photon_stride * spacing - photon_momentum);
  if (mismatch > 1e-12 * photon_momentum)
    throw Error("momentum grid is not commensurate with the photon recoil");
}

MomentumGrid MomentumGrid::around(double center, double half_span, double photon_momentum,
                                  int photon_stride) {
  if (photon_stride < 1) throw Error("photon stride must be a positive integer");
  if (!(half_span > 0.0)) throw Error("momentum grid span must be positive");
  const double spacing = photon_momentum / photon_stride;
  const auto half = static_cast<std::size_t>(std::ceil(half_span / spacing - 1e-9));
  MomentumGrid g{center - static_cast<double>(half) * spacing, spacing, 2 * half + 1,
                 photon_stride};
  g.validate(photon_momentum);
  return g;
}

MomentumGrid MomentumGrid::with_count(double p_min, std::size_t count, double photon_momentum,
                                      int photon_stride) {
  if (photon_stride < 1) throw Error("photon stride must be a positive integer");
  MomentumGrid g{p_min, photon_momentum / photon_stride, count, photon_stride};
  g.validate(photon_momentum);
  return g;
}

MomentumGrid default_momentum_grid(const PacketParams& packet, const DriveField& field,
                                   int photon_stride, double span_width, double span_recoil) {
  const double hk = photon_momentum(field);
  const double half = std::max(span_width * packet.momentum_width, span_recoil * hk);
  return MomentumGrid::around(packet.center_momentum, half, hk, photon_stride);
}

double trapezoid_weight(std::size_t i, std::size_t count, double spacing) {
  return (i == 0 || i + 1 == count) ? 0.5 * spacing : spacing;
}

namespace {

double trapezoid_norm(const std::vector<cplx>& amp, double spacing) {
  double s = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i)
    s += std::norm(amp[i]) * trapezoid_weight(i, amp.size(), spacing);
  return s;
}

}  // namespace

double MomentumState::ground_norm() const { return trapezoid_norm(phi_g, grid.spacing); }
double MomentumState::excited_norm() const { return trapezoid_norm(phi_e, grid.spacing); }

MomentumState gaussian_initial(const PacketParams& params, const MomentumGrid& grid) {
  params.validate();
  const double width = params.momentum_width;
  const double below = params.center_momentum - grid.p_min;
  const double above = grid.p_max() - params.center_momentum;
  // Continuum probability of |phi(p,0)|^2 outside the grid.
  const double lost = 0.5 * std::erfc(below / width) + 0.5 * std::erfc(above / width);
  if (!(lost <= 1e-6))
    throw Error("momentum grid too narrow: truncates " + std::to_string(lost) +
                " of the packet norm");

  MomentumState s{grid, std::vector<cplx>(grid.count), std::vector<cplx>(grid.count), 0.0};
  const double amp0 = 1.0 / (std::pow(kPi, 0.25) * std::sqrt(width));
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double u = (grid.momentum(static_cast<std::ptrdiff_t>(i)) - params.center_momentum) / width;
    const double phi = amp0 * std::exp(-0.5 * u * u);
    s.phi_g[i] = params.amp_ground * phi;
    s.phi_e[i] = params.amp_excited * phi;
  }
  const double scale = 1.0 / std::sqrt(s.norm());
  for (auto& a : s.phi_g) a *= scale;
  for (auto& a : s.phi_e) a *= scale;
  return s;
}

PairSolution solve_pair(cplx phi_g0, cplx phi_e0, double p, const AtomSpecies& species,
                        const DriveField& field) {
  const double delta = energy_shift_delta(p, species, field);
  const double omega = field.rabi_frequency;
  const double sigma = std::hypot(delta, omega);
  const double inv = 1.0 / (2.0 * sigma);
  PairSolution s;
  s.a_plus = inv * ((sigma + delta) * phi_g0 + omega * phi_e0);
  s.a_minus = inv * ((sigma - delta) * phi_g0 - omega * phi_e0);
  s.b_plus = inv * ((sigma - delta) * phi_e0 + omega * phi_g0);
  s.b_minus = inv * ((sigma + delta) * phi_e0 - omega * phi_g0);
  s.sigma = sigma;
  const double hk = photon_momentum(field);
  s.common_phase_rate =
      0.5 * (field.detuning + kinetic_frequency(p + hk, species) + kinetic_frequency(p, species));
  return s;
}

std::pair<cplx, cplx> evolve_pair(const PairSolution& sol, double t) {
  const cplx up = std::polar(1.0, 0.5 * sol.sigma * t);
  const cplx down = std::conj(up);
  const cplx common = std::polar(1.0, -sol.common_phase_rate * t);
  return {(sol.a_plus * up + sol.a_minus * down) * common,
          (sol.b_plus * up + sol.b_minus * down) * common};
}

MomentumState evolve_state(const MomentumState& initial, double t, const AtomSpecies& species,
                           const DriveField& field, Backend backend) {
  initial.grid.validate(photon_momentum(field));
  MomentumState out{initial.grid, std::vector<cplx>(initial.grid.count),
                    std::vector<cplx>(initial.grid.count), initial.time + t};
  const double lost = backend == Backend::serial
                          ? kernels::evolve_pairs_serial(initial, t, species, field, out)
                          : kernels::evolve_pairs_omp(initial, t, species, field, out);
  if (lost > 1e-6)
    throw Error("momentum grid truncates pair partners: lost norm " + std::to_string(lost));
  return out;
}

MomentumDistributions momentum_distributions(const MomentumState& state) {
  MomentumDistributions d{std::vector<double>(state.grid.count),
                          std::vector<double>(state.grid.count)};
  for (std::size_t i = 0; i < state.grid.count; ++i) {
    d.ground[i] = std::norm(state.phi_g[i]);
    d.excited[i] = std::norm(state.phi_e[i]);
  }
  return d;
}

}  // namespace osg
