#include <array>
#include <cmath>

#include "osg/kernels.hpp"
#include "osg/momentum.hpp"
#include "osg/open_dynamics.hpp"

namespace osg::kernels {

double evolve_pairs_omp(const MomentumState& in, double t, const AtomSpecies& species,
                        const DriveField& field, MomentumState& out) {
  const auto& grid = in.grid;
  const auto n = static_cast<std::ptrdiff_t>(grid.count);
  const auto modes = static_cast<std::ptrdiff_t>(grid.mode_count());
  const int stride = grid.photon_stride;
  const double omega = field.rabi_frequency;
  const double hk = photon_momentum(field);
  const double two_m_hbar = 2.0 * species.mass * kHbar;
  // Lost norm per mode, summed serially afterwards so the result does not
  // depend on the thread count.
  std::vector<double> lost(static_cast<std::size_t>(modes), 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t mode = 0; mode < modes; ++mode) {
    const std::ptrdiff_t g = mode - stride;
    const std::ptrdiff_t e = mode;
    const bool g_in = g >= 0;
    const bool e_in = e < n;
    const cplx g0 = g_in ? in.phi_g[g] : cplx{};
    const cplx e0 = e_in ? in.phi_e[e] : cplx{};

    const double q = grid.momentum(g);
    const double delta = energy_shift_delta(q, species, field);
    const double sigma = std::hypot(delta, omega);
    const double half = 0.5 * sigma * t;
    const double c = std::cos(half);
    const double s = std::sin(half);
    const double rate = 0.5 * (field.detuning + (q * q + (q + hk) * (q + hk)) / two_m_hbar);
    const cplx common = std::polar(1.0, -rate * t);

    // exp(-iKt) with K = -(delta sigma_z + Omega sigma_x) / 2.
    const cplx gg{c, s * delta / sigma};
    const cplx ge{0.0, s * omega / sigma};
    const cplx ee{c, -s * delta / sigma};
    const cplx gt = (gg * g0 + ge * e0) * common;
    const cplx et = (ge * g0 + ee * e0) * common;

    double dropped = 0.0;
    if (g_in) out.phi_g[g] = gt; else dropped += std::norm(gt);
    if (e_in) out.phi_e[e] = et; else dropped += std::norm(et);
    lost[static_cast<std::size_t>(mode)] = dropped * grid.spacing;
  }
  double total = 0.0;
  for (double l : lost) total += l;
  return total;
}

std::vector<cplx> momentum_to_position_omp(std::span<const cplx> phi, double p_min, double dp,
                                           double x_min, double dx) {
  const std::size_t n = phi.size();
  const double pref = dp / std::sqrt(2.0 * kPi * kHbar);

  // p_n x_j / hbar = p_min x_j / hbar + n dp x_min / hbar + 2 pi n j / N on the
  // conjugate grid; the last factor comes from an exact twiddle table.
  std::vector<cplx> twiddle(n);
  for (std::size_t r = 0; r < n; ++r)
    twiddle[r] = std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n));
  std::vector<cplx> shifted(n);
  for (std::size_t i = 0; i < n; ++i)
    shifted[i] = phi[i] * std::polar(1.0, static_cast<double>(i) * dp * x_min / kHbar);

  std::vector<cplx> psi(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    const double x = x_min + static_cast<double>(j) * dx;
    double re = 0.0;
    double im = 0.0;
    std::size_t r = 0;
    const auto step = static_cast<std::size_t>(j);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx a = shifted[i];
      const cplx w = twiddle[r];
      re += a.real() * w.real() - a.imag() * w.imag();
      im += a.real() * w.imag() + a.imag() * w.real();
      r += step;
      if (r >= n) r -= n;
    }
    psi[static_cast<std::size_t>(j)] = pref * std::polar(1.0, p_min * x / kHbar) * cplx{re, im};
  }
  return psi;
}

void integrate_modes_omp(std::span<BlochComponents> modes, std::span<const double> deltas,
                         double coupling, double gamma, double h, long steps) {
  using Mat = std::array<std::array<double, 4>, 4>;
  const auto count = static_cast<std::ptrdiff_t>(modes.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < count; ++m) {
    const double d = deltas[static_cast<std::size_t>(m)];
    // State (gg, ee, Re ge, Im ge); the equations are linear, so one RK4
    // step is the matrix polynomial I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24.
    const Mat a{{{0.0, gamma, 0.0, 2.0 * coupling},
                 {0.0, -gamma, 0.0, -2.0 * coupling},
                 {0.0, 0.0, -0.5 * gamma, -d},
                 {-coupling, coupling, d, -0.5 * gamma}}};
    Mat step{};
    Mat term{};
    for (int i = 0; i < 4; ++i) step[i][i] = term[i][i] = 1.0;
    for (int k = 1; k <= 4; ++k) {
      Mat next{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double s = 0.0;
          for (int l = 0; l < 4; ++l) s += term[i][l] * a[l][j];
          next[i][j] = s * h / k;
        }
      term = next;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) step[i][j] += term[i][j];
    }

    auto& c = modes[static_cast<std::size_t>(m)];
    std::array<double, 4> y{c.rho_gg, c.rho_ee, c.rho_ge.real(), c.rho_ge.imag()};
    for (long s = 0; s < steps; ++s) {
      std::array<double, 4> z{};
      for (int i = 0; i < 4; ++i)
        z[i] = step[i][0] * y[0] + step[i][1] * y[1] + step[i][2] * y[2] + step[i][3] * y[3];
      y = z;
    }
    c.rho_gg = y[0];
    c.rho_ee = y[1];
    c.rho_ge = {y[2], y[3]};
  }
}

}  // namespace osg::kernels
