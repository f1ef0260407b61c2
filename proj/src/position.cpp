#include "osg/position.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "osg/error.hpp"
#include "osg/kernels.hpp"

namespace osg {

PositionGrid conjugate_grid(const MomentumGrid& grid) {
  const double dx = 2.0 * kPi * kHbar / (static_cast<double>(grid.count) * grid.spacing);
  const auto half = static_cast<double>(grid.count / 2);
  return {-half * dx, dx, grid.count};
}

namespace {

double riemann_norm(const std::vector<cplx>& amp, double dx) {
  double s = 0.0;
  for (const auto& a : amp) s += std::norm(a);
  return s * dx;
}

}  // namespace

double PositionField::ground_norm() const { return riemann_norm(psi_g, grid.spacing); }
double PositionField::excited_norm() const { return riemann_norm(psi_e, grid.spacing); }

bool strong_coupling_holds(const PacketParams& params, const AtomSpecies& species,
                           const DriveField& field) {
  // delta(p) is linear in p, so the extremes sit at the interval ends.
  const double lo = energy_shift_delta(params.center_momentum - 3.0 * params.momentum_width,
                                       species, field);
  const double hi = energy_shift_delta(params.center_momentum + 3.0 * params.momentum_width,
                                       species, field);
  return field.rabi_frequency >= 50.0 * std::max(std::abs(lo), std::abs(hi));
}

std::pair<cplx, cplx> analytic_amplitudes(double x, double t, const PacketParams& params,
                                          const AtomSpecies& species, const DriveField& field) {
  const double pc = params.center_momentum;
  const double width = params.momentum_width;
  const double mass = species.mass;
  const double k = field.wavenumber;
  const double v = packet_velocity(species, field);
  const double x_plus = (pc / mass + v) * t;
  const double x_minus = (pc / mass - v) * t;
  const double common = kHbar * field.detuning / 2.0 + pc * pc / (2.0 * mass) +
                        kHbar * kHbar * k * k / (4.0 * mass);
  const double zeta_g = common + pc * v;
  const double zeta_e = common - pc * v;

  const double pref = std::sqrt(width) / (std::pow(kPi, 0.25) * std::sqrt(kHbar));
  const double c = std::cos(0.5 * field.rabi_frequency * t);
  const double s = std::sin(0.5 * field.rabi_frequency * t);
  const cplx i{0.0, 1.0};
  const double env = width * width / (2.0 * kHbar * kHbar);

  const double dg = x - x_plus;
  const double de = x - x_minus;
  const cplx psi_g = pref *
                     (params.amp_ground * c + i * params.amp_excited * s * std::polar(1.0, -k * dg)) *
                     std::exp(-env * dg * dg) * std::polar(1.0, (pc * x - zeta_g * t) / kHbar);
  const cplx psi_e = pref *
                     (params.amp_excited * c + i * params.amp_ground * s * std::polar(1.0, k * de)) *
                     std::exp(-env * de * de) * std::polar(1.0, (pc * x - zeta_e * t) / kHbar);
  return {psi_g, psi_e};
}

PositionField analytic_field(const PositionGrid& grid, double t, const PacketParams& params,
                             const AtomSpecies& species, const DriveField& field) {
  PositionField f{grid, std::vector<cplx>(grid.count), std::vector<cplx>(grid.count), t};
  for (std::size_t j = 0; j < grid.count; ++j) {
    const auto [g, e] = analytic_amplitudes(grid.position(j), t, params, species, field);
    f.psi_g[j] = g;
    f.psi_e[j] = e;
  }
  return f;
}

PositionField numeric_position_reconstruct(const MomentumState& state, Backend backend) {
  const auto& mg = state.grid;
  if (state.phi_g.size() != mg.count || state.phi_e.size() != mg.count)
    throw Error("momentum state does not match its grid");
  const PositionGrid xg = conjugate_grid(mg);
  auto transform = backend == Backend::serial ? kernels::momentum_to_position_serial
                                              : kernels::momentum_to_position_omp;
  return {xg, transform(state.phi_g, mg.p_min, mg.spacing, xg.x_min, xg.spacing),
          transform(state.phi_e, mg.p_min, mg.spacing, xg.x_min, xg.spacing), state.time};
}

PositionField position_field(const PacketParams& params, const AtomSpecies& species,
                             const DriveField& field, const MomentumGrid& momentum_grid, double t,
                             Method method) {
  if (method == Method::analytic)
    return analytic_field(conjugate_grid(momentum_grid), t, params, species, field);
  const MomentumState initial = gaussian_initial(params, momentum_grid);
  return numeric_position_reconstruct(evolve_state(initial, t, species, field));
}

double fidelity(const PositionField& a, const PositionField& b) {
  if (a.grid.count != b.grid.count ||
      std::abs(a.grid.spacing - b.grid.spacing) > 1e-12 * a.grid.spacing ||
      std::abs(a.grid.x_min - b.grid.x_min) > 1e-9 * a.grid.spacing)
    throw Error("fidelity requires fields on the same position grid");
  cplx overlap{};
  for (std::size_t j = 0; j < a.grid.count; ++j)
    overlap += std::conj(a.psi_g[j]) * b.psi_g[j] + std::conj(a.psi_e[j]) * b.psi_e[j];
  overlap *= a.grid.spacing;
  return std::abs(overlap) / std::sqrt(a.norm() * b.norm());
}

namespace {

std::optional<double> centroid(const PositionGrid& grid, const std::vector<cplx>& psi) {
  double mass = 0.0;
  double first = 0.0;
  for (std::size_t j = 0; j < grid.count; ++j) {
    const double w = std::norm(psi[j]) * grid.spacing;
    mass += w;
    first += w * grid.position(j);
  }
  if (mass < 1e-12) return std::nullopt;
  return first / mass;
}

}  // namespace

CentroidTrajectories centroid_trajectories(const std::vector<PositionField>& fields) {
  CentroidTrajectories c;
  for (const auto& f : fields) {
    c.ground.push_back(centroid(f.grid, f.psi_g));
    c.excited.push_back(centroid(f.grid, f.psi_e));
  }
  return c;
}

std::optional<double> fit_gaussian_center(const PositionGrid& grid, const std::vector<double>& density,
                                          double threshold) {
  if (density.size() != grid.count || density.empty()) return std::nullopt;
  const auto peak_it = std::max_element(density.begin(), density.end());
  if (!(*peak_it > 0.0)) return std::nullopt;
  const double peak_x = grid.position(static_cast<std::size_t>(peak_it - density.begin()));
  const double cut = threshold * *peak_it;

  // Normal equations for log(rho) = c0 + c1 u + c2 u^2, u = (x - x_peak) / dx.
  std::array<double, 5> su{};  // sums of u^0..u^4
  std::array<double, 3> sy{};  // sums of y u^0..u^2
  std::size_t used = 0;
  for (std::size_t j = 0; j < grid.count; ++j) {
    if (density[j] <= cut) continue;
    const double u = (grid.position(j) - peak_x) / grid.spacing;
    const double y = std::log(density[j]);
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      su[k] += p;
      if (k < 3) sy[k] += y * p;
      p *= u;
    }
    ++used;
  }
  if (used < 3) return std::nullopt;
  const std::array<std::array<double, 3>, 3> a{
      {{su[0], su[1], su[2]}, {su[1], su[2], su[3]}, {su[2], su[3], su[4]}}};
  auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double det = det3(a);
  if (std::abs(det) < 1e-300) return std::nullopt;
  auto replaced = [&](int col) {
    auto m = a;
    for (int r = 0; r < 3; ++r) m[r][col] = sy[r];
    return det3(m);
  };
  const double c1 = replaced(1) / det;
  const double c2 = replaced(2) / det;
  if (!(c2 < 0.0)) return std::nullopt;
  return peak_x - c1 / (2.0 * c2) * grid.spacing;
}

DeflectionMap deflection_map(const PacketParams& params, const AtomSpecies& species,
                             const DriveField& field, const MomentumGrid& momentum_grid,
                             double t_max, std::size_t nt, Method method) {
  if (!(t_max > 0.0)) throw Error("t_max must be positive");
  if (nt < 2) throw Error("deflection map needs at least two time samples");
  DeflectionMap map;
  map.grid = conjugate_grid(momentum_grid);
  const MomentumState initial =
      method == Method::numeric ? gaussian_initial(params, momentum_grid) : MomentumState{};
  for (std::size_t it = 0; it < nt; ++it) {
    const double t = t_max * static_cast<double>(it) / static_cast<double>(nt - 1);
    const PositionField f =
        method == Method::analytic
            ? analytic_field(map.grid, t, params, species, field)
            : numeric_position_reconstruct(evolve_state(initial, t, species, field));
    std::vector<double> g(f.grid.count), e(f.grid.count), total(f.grid.count);
    for (std::size_t j = 0; j < f.grid.count; ++j) {
      g[j] = std::norm(f.psi_g[j]);
      e[j] = std::norm(f.psi_e[j]);
      total[j] = g[j] + e[j];
    }
    map.times.push_back(t);
    map.ground.push_back(std::move(g));
    map.excited.push_back(std::move(e));
    map.total.push_back(std::move(total));
  }
  return map;
}

std::pair<Ridge, Ridge> internal_state_ridges(const PositionField& field) {
  const auto c = centroid_trajectories({field});
  return {Ridge{field.ground_norm(), c.ground.front()},
          Ridge{field.excited_norm(), c.excited.front()}};
}

}  // namespace osg
