// Reference implementations: straightforward loops over the textbook
// formulas. Kept for testing the OpenMP kernels and for benchmarking.

#include <cmath>

#include "osg/kernels.hpp"
#include "osg/momentum.hpp"
#include "osg/open_dynamics.hpp"

namespace osg::kernels {

double evolve_pairs_serial(const MomentumState& in, double t, const AtomSpecies& species,
                           const DriveField& field, MomentumState& out) {
  const auto& grid = in.grid;
  const auto n = static_cast<std::ptrdiff_t>(grid.count);
  double lost = 0.0;
  for (std::size_t mode = 0; mode < grid.mode_count(); ++mode) {
    const std::ptrdiff_t g = grid.mode_base(mode);
    const std::ptrdiff_t e = g + grid.photon_stride;
    const bool g_in = g >= 0 && g < n;
    const bool e_in = e >= 0 && e < n;
    const cplx g0 = g_in ? in.phi_g[g] : cplx{};
    const cplx e0 = e_in ? in.phi_e[e] : cplx{};
    const PairSolution sol = solve_pair(g0, e0, grid.momentum(g), species, field);
    const auto [gt, et] = evolve_pair(sol, t);
    if (g_in) out.phi_g[g] = gt; else lost += std::norm(gt) * grid.spacing;
    if (e_in) out.phi_e[e] = et; else lost += std::norm(et) * grid.spacing;
  }
  return lost;
}

std::vector<cplx> momentum_to_position_serial(std::span<const cplx> phi, double p_min, double dp,
                                              double x_min, double dx) {
  const std::size_t n = phi.size();
  const double pref = dp / std::sqrt(2.0 * kPi * kHbar);
  std::vector<cplx> psi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = x_min + static_cast<double>(j) * dx;
    cplx acc{};
    for (std::size_t i = 0; i < n; ++i) {
      const double p = p_min + static_cast<double>(i) * dp;
      acc += phi[i] * std::polar(1.0, p * x / kHbar);
    }
    psi[j] = pref * acc;
  }
  return psi;
}

void integrate_modes_serial(std::span<BlochComponents> modes, std::span<const double> deltas,
                            double coupling, double gamma, double h, long steps) {
  auto axpy = [](const BlochComponents& y, double a, const BlochComponents& k) {
    return BlochComponents{y.rho_gg + a * k.rho_gg, y.rho_ee + a * k.rho_ee,
                           y.rho_ge + a * k.rho_ge};
  };
  for (std::size_t m = 0; m < modes.size(); ++m) {
    BlochComponents y = modes[m];
    const double d = deltas[m];
    for (long s = 0; s < steps; ++s) {
      const auto k1 = bloch_rhs(y, d, coupling, gamma);
      const auto k2 = bloch_rhs(axpy(y, 0.5 * h, k1), d, coupling, gamma);
      const auto k3 = bloch_rhs(axpy(y, 0.5 * h, k2), d, coupling, gamma);
      const auto k4 = bloch_rhs(axpy(y, h, k3), d, coupling, gamma);
      y.rho_gg += h / 6.0 * (k1.rho_gg + 2.0 * k2.rho_gg + 2.0 * k3.rho_gg + k4.rho_gg);
      y.rho_ee += h / 6.0 * (k1.rho_ee + 2.0 * k2.rho_ee + 2.0 * k3.rho_ee + k4.rho_ee);
      y.rho_ge += h / 6.0 * (k1.rho_ge + 2.0 * k2.rho_ge + 2.0 * k3.rho_ge + k4.rho_ge);
    }
    modes[m] = y;
  }
}

}  // namespace osg::kernels
