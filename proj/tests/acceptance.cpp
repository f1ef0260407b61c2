// Acceptance run: one PASS/FAIL line per criterion, with the measured value,
// its pinned tolerance and the wall time. Exit status is nonzero if any
// criterion fails.
//
// usage: osg_acceptance <path to osg executable>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "osg/commands.hpp"
#include "osg/config.hpp"
#include "osg/momentum.hpp"
#include "osg/open_dynamics.hpp"
#include "osg/position.hpp"
#include "osg/spin_orbit.hpp"

using namespace osg;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kRabiFlipTol = 1e-9;
constexpr double kFig3ReturnL1 = 1e-3;
constexpr double kFig3ShiftTol = 1e-2;       // in hbar k
constexpr double kGapRelTol = 1e-10;
constexpr double kPauliTol = 4.0 * 2.220446049250313e-16;  // relative to max entry
constexpr double kSlopeTarget = 2.0, kSlopeTol = 0.1;
constexpr double kRidgeWeightTol = 0.01;
constexpr double kRidgeStepTol = 0.05;       // relative to 2 Lambda
constexpr double kFidelityLocked = 0.291735004;  // first oracle run, fig4 grid
constexpr double kFidelityLockTol = 1e-6;
constexpr double kFidelityZeroTol = 1e-9;
constexpr double kClosedLimitTol = 1e-6;
constexpr double kSteadyTol = 1e-4;
constexpr double kConservationTol = 1e-9;
constexpr double kPositivityFloor = -1e-9;
constexpr double kBruteForceTol = 1e-6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // 0 = no runtime requirement
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

AtomSpecies sr() { return AtomSpecies::strontium87(); }

RunConfig preset(const std::string& name) { return parse_config("", name); }

// ---- 1
Outcome rabi_flip() {
  const auto s = sr();
  auto f = resonant_drive(s, 2.0 * kPi * 1e6);
  f.detuning = -recoil_shift(s, f);  // delta(0) = 0
  const double T = oscillation_period(f);
  const auto sol = solve_pair(1.0, 0.0, 0.0, s, f);
  const double half = std::norm(evolve_pair(sol, T / 2).second);
  const double full = std::norm(evolve_pair(sol, T).second);
  const double err = std::max(std::abs(half - 1.0), std::abs(full));
  return {err <= kRabiFlipTol, "P_e(T/2)=" + fmt("%.12f", half) + " P_e(T)=" + fmt("%.3e", full) +
                                   " tol " + fmt("%.0e", kRabiFlipTol)};
}

// ---- 2
Outcome fig3_snapshots() {
  const auto cfg = preset("fig3");
  const auto s = cfg.species;
  const auto f = cfg.drive();
  const double hk = photon_momentum(f);
  const double T = oscillation_period(f);
  const auto packet = cfg.packet();
  // 4096 grid points centred on p_c, stride chosen so the span covers 16 Pi
  const int stride = 512;
  const auto grid = MomentumGrid::with_count(packet.center_momentum - 2048.0 * hk / stride, 4096,
                                             hk, stride);
  const auto init = gaussian_initial(packet, grid);

  auto mean = [&](const std::vector<double>& d) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      num += d[i] * grid.momentum(static_cast<std::ptrdiff_t>(i));
      den += d[i];
    }
    return std::pair{num / den, den * grid.spacing};
  };
  std::vector<MomentumDistributions> snaps;
  for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0})
    snaps.push_back(momentum_distributions(evolve_state(init, frac * T, s, f)));

  // at T/2 the bands have swapped: ground weight now in the excited band
  // one recoil up, excited weight in the ground band one recoil down
  const auto [pe_half, we_half] = mean(snaps[2].excited);
  const auto [pg_half, wg_half] = mean(snaps[2].ground);
  const auto [pg0, wg0] = mean(snaps[0].ground);
  const auto [pe0, we0] = mean(snaps[0].excited);
  const bool shifted = std::abs((pe_half - pg0) / hk - 1.0) < kFig3ShiftTol &&
                       std::abs((pg_half - pe0) / hk + 1.0) < kFig3ShiftTol &&
                       std::abs(we_half - wg0) < kFig3ShiftTol &&
                       std::abs(wg_half - we0) < kFig3ShiftTol;
  const auto [pq, wq] = mean(snaps[1].excited);
  const bool quarter = wq > std::min(wg0, we0) && wq < std::max(wg0, we0);

  double l1 = 0.0;
  for (std::size_t i = 0; i < grid.count; ++i)
    l1 += (std::abs(snaps[4].ground[i] - snaps[0].ground[i]) +
           std::abs(snaps[4].excited[i] - snaps[0].excited[i])) *
          grid.spacing;
  const bool pass = shifted && quarter && l1 < kFig3ReturnL1;
  return {pass, "N=" + std::to_string(grid.count) + " <p_e>(T/2)-<p_g>(0)=" +
                    fmt("%.6f", (pe_half - pg0) / hk) + " hk, <p_g>(T/2)-<p_e>(0)=" +
                    fmt("%.6f", (pg_half - pe0) / hk) + " hk, w_e(T/2)=" + fmt("%.6f", we_half) +
                    " w_e(T/4)=" + fmt("%.4f", wq) + " L1(T,0)=" + fmt("%.3e", l1) + " tol " +
                    fmt("%.0e", kFig3ReturnL1)};
}

// ---- 3
Outcome dispersion_gap() {
  const auto cfg = preset("fig2");
  const auto s = cfg.species;
  const auto f = cfg.drive();
  const double hk = photon_momentum(f);
  auto gap = [&](double p) {
    const auto w = dispersion_spectrum(std::vector<double>{p}, s, f);
    return w.excited[0] - w.ground[0];
  };
  // coarse scan, then golden-section refinement around the best point
  double best = -3.0 * hk;
  for (int i = 0; i <= 5000; ++i) {
    const double p = (-3.0 + 5.0 * i / 5000.0) * hk;
    if (gap(p) < gap(best)) best = p;
  }
  double a = best - 0.002 * hk, b = best + 0.002 * hk;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double c = b - r * (b - a), d = a + r * (b - a);
    if (gap(c) < gap(d)) b = d; else a = c;
  }
  const double p_min = 0.5 * (a + b);
  const double g = gap(p_min);
  const double rel = std::abs(g / f.rabi_frequency - 1.0);
  const double where = p_min / hk + 0.5;
  const bool pass = rel <= kGapRelTol && std::abs(where) < 1e-4;
  return {pass, "min gap/Omega-1=" + fmt("%.3e", rel) + " at p/hk=" + fmt("%.8f", p_min / hk) +
                    " tol " + fmt("%.0e", kGapRelTol)};
}

// ---- 4
Outcome pauli_dirac() {
  const auto s = sr();
  const auto f = resonant_drive(s, 2.0 * kPi * 1e6);
  const double hk = photon_momentum(f);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto h = symmetric_hamiltonian(u(rng) * hk, s, f);
    const auto back = pauli_decompose(h).reconstruct();
    for (std::size_t k = 0; k < 4; ++k)
      worst = std::max(worst, std::abs(h.m[k] - back.m[k]) / h.max_abs());
  }
  std::vector<double> lx, ly;
  for (double eps : {0.1, 0.05, 0.02, 0.01, 0.005}) {
    double err = 0.0;
    for (int i = -50; i <= 50; ++i) {
      const double q = eps * hk * i / 50.0;
      const auto exact = symmetric_hamiltonian(q, s, f).eigenvalues();
      const auto lin = dirac_limit(q, s, f).linear.eigenvalues();
      err = std::max({err, std::abs(exact.first - lin.first), std::abs(exact.second - lin.second)});
    }
    lx.push_back(std::log(eps));
    ly.push_back(std::log(err));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const bool pass = worst <= kPauliTol && std::abs(slope - kSlopeTarget) <= kSlopeTol;
  return {pass, "max rel entry gap=" + fmt("%.2e", worst) + " (tol " + fmt("%.1e", kPauliTol) +
                    ") Dirac residual slope=" + fmt("%.4f", slope)};
}

// ---- 5
Outcome fig5_splitting() {
  auto cfg = preset("fig5");
  cfg.method = Method::numeric;
  std::ostringstream log;
  const auto products = build_products("deflection", cfg, log);
  const auto& ridges = products.at(1).table;
  // columns: periods, weight_g, weight_e, center_g, center_e, separation
  bool weights_ok = true;
  bool steps_ok = true;
  std::string detail = "t/T=" + fmt("%.0f", cfg.t_max) + " samples=" +
                       std::to_string(cfg.samples) + ";";
  double prev = 0.0;
  for (const auto& row : ridges.rows) {
    const double n = row[0];
    if (n == 0.0) {
      prev = row[5];
      continue;
    }
    weights_ok = weights_ok && std::abs(row[1] - 0.64) <= kRidgeWeightTol &&
                 std::abs(row[2] - 0.36) <= kRidgeWeightTol;
    const double growth = row[5] - prev;
    const bool ok = std::abs(growth / 2.0 - 1.0) <= kRidgeStepTol;
    steps_ok = steps_ok && ok;
    detail += " n=" + fmt("%.0f", n) + " w=(" + fmt("%.4f", row[1]) + "," + fmt("%.4f", row[2]) +
              ") growth=" + fmt("%.3f", growth) + "L" + (ok ? "" : "[out]");
    prev = row[5];
  }
  detail += " (tol w+-" + fmt("%.2f", kRidgeWeightTol) + ", growth 2L+-" +
            fmt("%.0f", 100 * kRidgeStepTol) + "%)";
  return {weights_ok && steps_ok && ridges.rows.size() == 4, detail};
}

// ---- 6
Outcome fidelity_oracle() {
  const auto cfg = preset("fig4");
  const auto s = cfg.species;
  const auto f = cfg.drive();
  const auto packet = cfg.packet();
  const auto grid = cfg.momentum_grid();
  const double T = oscillation_period(f);
  auto fid = [&](double t) {
    return fidelity(position_field(packet, s, f, grid, t, Method::analytic),
                    position_field(packet, s, f, grid, t, Method::numeric));
  };
  const double at_t = fid(T);
  const double at_0 = fid(0.0);
  const bool pass = std::abs(at_t - kFidelityLocked) <= kFidelityLockTol &&
                    at_0 > 1.0 - kFidelityZeroTol;
  return {pass, "F(T)=" + fmt("%.9f", at_t) + " locked " + fmt("%.9f", kFidelityLocked) + "+-" +
                    fmt("%.0e", kFidelityLockTol) + " 1-F(0)=" + fmt("%.2e", 1.0 - at_0)};
}

// ---- 7
Outcome open_limits() {
  // (a) Gamma = 0 against the closed form, fig7 packet, over 5T
  auto cfg = preset("fig7");
  const auto s = cfg.species;
  const auto f = cfg.drive();
  const double T = oscillation_period(f);
  const auto init = gaussian_initial(cfg.packet(), cfg.momentum_grid());
  double worst = 0.0;
  auto open = bloch_field_from_state(init, 0.0);
  for (int k = 1; k <= 20; ++k) {
    open = integrate_bloch(open, T / 4, s, f);
    const auto closed = bloch_field_from_state(evolve_state(init, k * T / 4, s, f), 0.0);
    const auto a = integrated_populations(open);
    const auto b = integrated_populations(closed);
    worst = std::max({worst, std::abs(a.ground - b.ground), std::abs(a.excited - b.excited)});
    for (std::size_t m = 0; m < open.modes.size(); ++m)
      worst = std::max({worst,
                        std::abs(open.modes[m].rho_gg - closed.modes[m].rho_gg) * init.grid.spacing,
                        std::abs(open.modes[m].rho_ee - closed.modes[m].rho_ee) * init.grid.spacing});
  }
  // (b) Gamma = 0.1 Omega, long time, delta = 0. Each pair has its own
  // delta(q); the drive is tuned so that its trace-weighted mean vanishes.
  // The untuned fig7 drive (Delta = 0) is reported alongside.
  const double gamma = cfg.gamma();
  const auto start = bloch_field_from_state(init, gamma);
  double q_mean = 0.0, w_sum = 0.0;
  for (std::size_t m = 0; m < start.modes.size(); ++m) {
    q_mean += start.modes[m].trace() * start.base_momentum(m);
    w_sum += start.modes[m].trace();
  }
  q_mean /= w_sum;
  DriveField tuned = f;
  tuned.detuning = -(f.wavenumber / s.mass) * (q_mean + 0.5 * photon_momentum(f));
  const auto p = integrated_populations(integrate_bloch(start, 40.0 / gamma, s, tuned));
  const auto raw = integrated_populations(integrate_bloch(start, 40.0 / gamma, s, f));
  const bool b_ok = std::abs(p.excited - 0.49751) <= kSteadyTol &&
                    std::abs(p.coherence.real()) <= kSteadyTol &&
                    std::abs(p.coherence.imag() + 0.04975) <= kSteadyTol;
  const bool pass = worst <= kClosedLimitTol && b_ok;
  return {pass, "(a) max dev=" + fmt("%.2e", worst) + " tol " + fmt("%.0e", kClosedLimitTol) +
                    "; (b) t=40/Gamma rho_ee=" + fmt("%.6f", p.excited) + " Re rho_ge=" +
                    fmt("%.2e", p.coherence.real()) + " Im rho_ge=" + fmt("%.6f", p.coherence.imag()) +
                    " tol " + fmt("%.0e", kSteadyTol) + " [Delta=0: rho_ee=" +
                    fmt("%.6f", raw.excited) + " Re rho_ge=" + fmt("%.2e", raw.coherence.real()) +
                    "]"};
}

// ---- 8
Outcome conservation() {
  const auto s = sr();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double norm_drift = 0.0, trace_drift = 0.0, min_eig = 1.0;
  for (int i = 0; i < 50; ++i) {
    DriveField f = resonant_drive(s, 2.0 * kPi * 1e6 * (0.5 + std::abs(u(rng))));
    f.detuning = f.rabi_frequency * u(rng);
    const double hk = photon_momentum(f);
    PacketParams p{hk * u(rng), hk * (0.3 + 1.2 * std::abs(u(rng))), {u(rng), u(rng)},
                   {u(rng), u(rng)}};
    const double n = std::sqrt(std::norm(p.amp_ground) + std::norm(p.amp_excited));
    p.amp_ground /= n;
    p.amp_excited /= n;
    const double T = oscillation_period(f);
    const auto init = gaussian_initial(p, default_momentum_grid(p, f, 8, 10.0));
    norm_drift = std::max(norm_drift, std::abs(evolve_state(init, 10.0 * T, s, f).norm() - init.norm()));

    auto cur = bloch_field_from_state(init, f.rabi_frequency * 0.3 * std::abs(u(rng)));
    const double tr0 = cur.trace();
    for (int k = 0; k < 20; ++k) {
      cur = integrate_bloch(cur, T / 2, s, f);
      for (const auto& m : cur.modes) min_eig = std::min(min_eig, m.min_eigenvalue() * init.grid.spacing);
    }
    trace_drift = std::max(trace_drift, std::abs(cur.trace() - tr0));
  }
  const bool pass = norm_drift < kConservationTol && trace_drift < kConservationTol &&
                    min_eig >= kPositivityFloor;
  return {pass, "50 sets over 10T: norm drift=" + fmt("%.2e", norm_drift) + " trace drift=" +
                    fmt("%.2e", trace_drift) + " (tol " + fmt("%.0e", kConservationTol) +
                    ") min eigenvalue=" + fmt("%.2e", min_eig) + " (floor " +
                    fmt("%.0e", kPositivityFloor) + ")"};
}

// ---- 9
std::array<cplx, 2> rk4_pair(cplx g, cplx e, double p, const AtomSpecies& s, const DriveField& f,
                             double t, long steps) {
  const double hk = f.wavenumber * kHbar;
  const double h11 = p * p / (2.0 * s.mass * kHbar);
  const double h22 = f.detuning + (p + hk) * (p + hk) / (2.0 * s.mass * kHbar);
  const double h12 = -0.5 * f.rabi_frequency;
  const cplx mi{0.0, -1.0};
  auto rhs = [&](cplx a, cplx b) {
    return std::array<cplx, 2>{mi * (h11 * a + h12 * b), mi * (h12 * a + h22 * b)};
  };
  const double dt = t / static_cast<double>(steps);
  for (long n = 0; n < steps; ++n) {
    const auto k1 = rhs(g, e);
    const auto k2 = rhs(g + 0.5 * dt * k1[0], e + 0.5 * dt * k1[1]);
    const auto k3 = rhs(g + 0.5 * dt * k2[0], e + 0.5 * dt * k2[1]);
    const auto k4 = rhs(g + dt * k3[0], e + dt * k3[1]);
    g += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    e += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  }
  return {g, e};
}

Outcome brute_force() {
  const auto s = sr();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    DriveField f = resonant_drive(s, 2.0 * kPi * std::pow(10.0, 4.0 + 2.0 * std::abs(u(rng))));
    f.detuning = 2.0 * f.rabi_frequency * u(rng);
    const double p = 5.0 * u(rng) * photon_momentum(f);
    cplx g0{u(rng), u(rng)}, e0{u(rng), u(rng)};
    const double n = std::sqrt(std::norm(g0) + std::norm(e0));
    g0 /= n;
    e0 /= n;
    const double T = oscillation_period(f);
    const double t = 2.0 * T * std::abs(u(rng));
    const auto [g, e] = evolve_pair(solve_pair(g0, e0, p, s, f), t);
    const auto ref = rk4_pair(g0, e0, p, s, f, t, std::max(1L, std::lround(t / (T * 1e-4))));
    worst = std::max(worst, std::sqrt(std::norm(g - ref[0]) + std::norm(e - ref[1])));
  }
  return {worst < kBruteForceTol, "100 tuples, RK4 step T/1e4: max rel error=" +
                                      fmt("%.2e", worst) + " tol " + fmt("%.0e", kBruteForceTol)};
}

// ---- 10
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism(const std::string& exe) {
  if (exe.empty() || !fs::exists(exe)) return {false, "osg executable not found: '" + exe + "'"};
  const fs::path root = fs::temp_directory_path() / ("osg_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "run.cfg";
  {
    std::ofstream os(cfg);
    os << "# fig4 with a shorter horizon\npreset = fig4\n[time]\nt_max = 1\nsnapshots = 3\n"
          "samples = 5\n";
  }
  const std::vector<std::string> runs = {"params",     "dispersion", "momentum", "position",
                                         "deflection", "populations", "steady"};
  std::size_t files = 0;
  std::string mismatch;
  for (const char* format : {"csv", "json"}) {
    for (const auto& sub : runs) {
      for (const char* tag : {"a", "b"}) {
        const fs::path out = root / format / tag;
        const std::string cmd = "\"" + exe + "\" " + sub + " --config \"" + cfg.string() +
                                "\" --out \"" + out.string() + "\" --format " + format +
                                " > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) return {false, "osg " + sub + " failed"};
      }
    }
    for (const auto& entry : fs::directory_iterator(root / format / "a")) {
      const fs::path twin = root / format / "b" / entry.path().filename();
      ++files;
      if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin))
        mismatch += " " + entry.path().filename().string();
    }
  }
  fs::remove_all(root);
  return {mismatch.empty() && files > 0,
          std::to_string(files) + " artifacts compared byte for byte" +
              (mismatch.empty() ? "" : "; differ:" + mismatch)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria = {
      {1, "resonant Rabi flip", 1.0, rabi_flip},
      {2, "fig3 momentum snapshots", 10.0, fig3_snapshots},
      {3, "dispersion gap", 1.0, dispersion_gap},
      {4, "Pauli/Dirac algebra", 1.0, pauli_dirac},
      {5, "position-space splitting (fig5, numeric, 3T)", 60.0, fig5_splitting},
      {6, "analytic-vs-numeric fidelity", 0.0, fidelity_oracle},
      {7, "open-system limits", 30.0, open_limits},
      {8, "conservation suite", 0.0, conservation},
      {9, "brute-force equivalence", 0.0, brute_force},
      {10, "CLI determinism", 0.0, [&] { return determinism(exe); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.2f s", secs);
    if (c.budget_s > 0.0) {
      timing += " (budget " + fmt("%.0f", c.budget_s) + " s)";
      if (secs > c.budget_s) {
        o.pass = false;
        timing += " OVER BUDGET";
      }
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s; %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
