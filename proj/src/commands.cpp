#include "osg/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

#include "osg/error.hpp"
#include "osg/open_dynamics.hpp"
#include "osg/position.hpp"
#include "osg/spin_orbit.hpp"

namespace osg {
namespace {

struct Context {
  const RunConfig& cfg;
  AtomSpecies species;
  DriveField field;
  double period = 0.0;
  double hk = 0.0;
  double lambda = 0.0;
  double omega = 0.0;

  explicit Context(const RunConfig& c)
      : cfg(c), species(c.species), field(c.drive()) {
    species.validate();
    field.validate();
    period = oscillation_period(field);
    hk = photon_momentum(field);
    lambda = step_length(species, field);
    omega = field.rabi_frequency;
  }

  SnapshotTable table(std::vector<std::string> columns, std::vector<std::string> units) const {
    SnapshotTable t;
    t.columns = std::move(columns);
    t.units = std::move(units);
    t.parameters = cfg.echo();
    return t;
  }

  std::vector<double> snapshot_times() const {
    std::vector<double> ts;
    const std::size_t n = cfg.snapshots;
    for (std::size_t i = 0; i < n; ++i)
      ts.push_back(n == 1 ? 0.0
                          : cfg.t_max * period * static_cast<double>(i) / static_cast<double>(n - 1));
    return ts;
  }
};

std::string indexed(std::string_view stem, std::size_t i) {
  std::string s = std::to_string(i);
  if (s.size() < 2) s.insert(0, 2 - s.size(), '0');
  return std::string(stem) + "_" + s;
}

std::vector<Product> params_products(const Context& c) {
  auto t = c.table({"wavenumber", "photon_momentum", "recoil_shift", "velocity", "period",
                    "step_length", "rabi_frequency", "detuning", "decay_rate",
                    "effective_rabi_at_center", "strong_coupling"},
                   {"rad/m", "kg m/s", "rad/s", "m/s", "s", "m", "rad/s", "rad/s", "rad/s",
                    "rad/s", "1"});
  const auto packet = c.cfg.packet();
  t.add_row({c.field.wavenumber, c.hk, recoil_shift(c.species, c.field),
             packet_velocity(c.species, c.field), c.period, c.lambda, c.omega, c.field.detuning,
             c.cfg.gamma(), effective_rabi(packet.center_momentum, c.species, c.field),
             strong_coupling_holds(packet, c.species, c.field) ? 1.0 : 0.0});
  return {{"params", std::move(t)}};
}

std::vector<Product> dispersion_products(const Context& c) {
  std::vector<double> p(c.cfg.dispersion_count);
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = c.hk * (c.cfg.dispersion_min + (c.cfg.dispersion_max - c.cfg.dispersion_min) *
                                              static_cast<double>(i) /
                                              static_cast<double>(p.size() - 1));
  const auto s = dispersion_spectrum(p, c.species, c.field);
  auto t = c.table({"p_over_hk", "W_g_over_Omega", "W_e_over_Omega", "bare_g_over_Omega",
                    "bare_e_over_Omega", "p", "W_g", "W_e", "bare_g", "bare_e"},
                   {"hbar k", "Omega", "Omega", "Omega", "Omega", "kg m/s", "rad/s", "rad/s",
                    "rad/s", "rad/s"});
  for (std::size_t i = 0; i < p.size(); ++i)
    t.add_row({p[i] / c.hk, s.ground[i] / c.omega, s.excited[i] / c.omega,
               s.bare_ground[i] / c.omega, s.bare_excited[i] / c.omega, p[i], s.ground[i],
               s.excited[i], s.bare_ground[i], s.bare_excited[i]});
  return {{"dispersion", std::move(t)}};
}

std::vector<Product> momentum_products(const Context& c) {
  const auto grid = c.cfg.momentum_grid();
  const auto initial = gaussian_initial(c.cfg.packet(), grid);
  std::vector<Product> out;
  const auto times = c.snapshot_times();
  for (std::size_t s = 0; s < times.size(); ++s) {
    const auto state = evolve_state(initial, times[s], c.species, c.field);
    const auto d = momentum_distributions(state);
    auto t = c.table({"p_over_hk", "rho_g_hk", "rho_e_hk", "p", "rho_g", "rho_e"},
                     {"hbar k", "1/(hbar k)", "1/(hbar k)", "kg m/s", "s/(kg m)", "s/(kg m)"});
    t.parameters.emplace_back("t_over_T", format_double(times[s] / c.period));
    t.parameters.emplace_back("t_s", format_double(times[s]));
    for (std::size_t i = 0; i < grid.count; ++i) {
      const double p = grid.momentum(static_cast<std::ptrdiff_t>(i));
      t.add_row({p / c.hk, d.ground[i] * c.hk, d.excited[i] * c.hk, p, d.ground[i], d.excited[i]});
    }
    out.push_back({indexed("momentum", s), std::move(t)});
  }
  return out;
}

// Output rows are restricted to |x| <= window around the origin.
double output_window(const Context& c) {
  if (c.cfg.window > 0.0) return c.cfg.window * c.lambda;
  const auto packet = c.cfg.packet();
  const double drift = std::abs(packet.center_momentum) / c.species.mass +
                       packet_velocity(c.species, c.field);
  return drift * c.cfg.t_max * c.period + 6.0 * kHbar / packet.momentum_width;
}

void warn_strong_coupling(const Context& c, std::ostream& log) {
  if (c.cfg.method == Method::analytic &&
      !strong_coupling_holds(c.cfg.packet(), c.species, c.field))
    log << "osg: warning: Omega < 50 max|delta| over the packet; the analytic "
           "strong-coupling formulas are outside their regime\n";
}

std::vector<Product> position_products(const Context& c, std::ostream& log) {
  warn_strong_coupling(c, log);
  const auto grid = c.cfg.momentum_grid();
  const auto packet = c.cfg.packet();
  const double window = output_window(c);
  auto t = c.table({"t_over_T", "x_over_Lambda", "rho_g_Lambda", "rho_e_Lambda", "t", "x", "rho_g",
                    "rho_e"},
                   {"T", "Lambda", "1/Lambda", "1/Lambda", "s", "m", "1/m", "1/m"});
  auto cen = c.table({"t_over_T", "weight_g", "weight_e", "centroid_g_over_Lambda",
                      "centroid_e_over_Lambda", "valid_g", "valid_e", "t", "centroid_g",
                      "centroid_e"},
                     {"T", "1", "1", "Lambda", "Lambda", "1", "1", "s", "m", "m"});
  t.parameters.emplace_back("method", c.cfg.method == Method::analytic ? "analytic" : "numeric");
  cen.parameters = t.parameters;
  std::vector<PositionField> fields;
  for (double time : c.snapshot_times()) {
    auto f = position_field(packet, c.species, c.field, grid, time, c.cfg.method);
    for (std::size_t j = 0; j < f.grid.count; ++j) {
      const double x = f.grid.position(j);
      if (std::abs(x) > window) continue;
      const double g = std::norm(f.psi_g[j]);
      const double e = std::norm(f.psi_e[j]);
      t.add_row({time / c.period, x / c.lambda, g * c.lambda, e * c.lambda, time, x, g, e});
    }
    fields.push_back(std::move(f));
  }
  const auto tracks = centroid_trajectories(fields);
  for (std::size_t s = 0; s < fields.size(); ++s) {
    const auto& g = tracks.ground[s];
    const auto& e = tracks.excited[s];
    cen.add_row({fields[s].time / c.period, fields[s].ground_norm(), fields[s].excited_norm(),
                 g.value_or(0.0) / c.lambda, e.value_or(0.0) / c.lambda, g ? 1.0 : 0.0,
                 e ? 1.0 : 0.0, fields[s].time, g.value_or(0.0), e.value_or(0.0)});
  }
  return {{"position", std::move(t)}, {"position_centroids", std::move(cen)}};
}

std::vector<Product> deflection_products(const Context& c, std::ostream& log) {
  warn_strong_coupling(c, log);
  const auto grid = c.cfg.momentum_grid();
  const auto packet = c.cfg.packet();
  const double window = output_window(c);
  const auto map = deflection_map(packet, c.species, c.field, grid, c.cfg.t_max * c.period,
                                  c.cfg.samples, c.cfg.method);
  auto t = c.table({"t_over_T", "x_over_Lambda", "density_Lambda", "t", "x", "density"},
                   {"T", "Lambda", "1/Lambda", "s", "m", "1/m"});
  t.parameters.emplace_back("method", c.cfg.method == Method::analytic ? "analytic" : "numeric");
  for (std::size_t it = 0; it < map.times.size(); ++it)
    for (std::size_t j = 0; j < map.grid.count; ++j) {
      const double x = map.grid.position(j);
      if (std::abs(x) > window) continue;
      const double rho = map.total[it][j];
      t.add_row({map.times[it] / c.period, x / c.lambda, rho * c.lambda, map.times[it], x, rho});
    }

  auto ridges = c.table({"periods", "weight_g", "weight_e", "center_g_over_Lambda",
                         "center_e_over_Lambda", "separation_over_Lambda"},
                        {"1", "1", "1", "Lambda", "Lambda", "Lambda"});
  ridges.parameters = t.parameters;
  const auto periods = static_cast<std::size_t>(std::floor(c.cfg.t_max + 1e-9));
  for (std::size_t n = 0; n <= periods; ++n) {
    const auto f = position_field(packet, c.species, c.field, grid,
                                  static_cast<double>(n) * c.period, c.cfg.method);
    const auto [g, e] = internal_state_ridges(f);
    const double cg = g.center.value_or(0.0) / c.lambda;
    const double ce = e.center.value_or(0.0) / c.lambda;
    ridges.add_row({static_cast<double>(n), g.weight, e.weight, cg, ce,
                    g.center && e.center ? cg - ce : 0.0});
  }
  return {{"deflection", std::move(t)}, {"deflection_ridges", std::move(ridges)}};
}

std::vector<Product> decay_products(const Context& c) {
  const auto grid = c.cfg.momentum_grid();
  BlochField field = bloch_field_from_state(gaussian_initial(c.cfg.packet(), grid), c.cfg.gamma());
  auto t = c.table({"t_over_T", "p_over_hk", "rho_gg_hk", "rho_ee_hk", "t", "p", "rho_gg",
                    "rho_ee"},
                   {"T", "hbar k", "1/(hbar k)", "1/(hbar k)", "s", "kg m/s", "s/(kg m)",
                    "s/(kg m)"});
  const auto stride = static_cast<std::size_t>(grid.photon_stride);
  for (double time : c.snapshot_times()) {
    field = integrate_bloch(field, time - field.time, c.species, c.field);
    for (std::size_t i = 0; i < grid.count; ++i) {
      const double p = grid.momentum(static_cast<std::ptrdiff_t>(i));
      // Spectrum labelling: ground from the pair based at p, excited from
      // the pair based at p - hbar k.
      const double gg = field.modes[i + stride].rho_gg;
      const double ee = field.modes[i].rho_ee;
      t.add_row({time / c.period, p / c.hk, gg * c.hk, ee * c.hk, time, p, gg, ee});
    }
  }
  return {{"decay", std::move(t)}};
}

std::vector<Product> populations_products(const Context& c) {
  const auto grid = c.cfg.momentum_grid();
  BlochField field = bloch_field_from_state(gaussian_initial(c.cfg.packet(), grid), c.cfg.gamma());
  auto t = c.table({"t_over_T", "rho_gg", "rho_ee", "re_rho_ge", "im_rho_ge", "t"},
                   {"T", "1", "1", "1", "1", "s"});
  const std::size_t n = c.cfg.samples;
  for (std::size_t i = 0; i < n; ++i) {
    const double time = c.cfg.t_max * c.period * static_cast<double>(i) / static_cast<double>(n - 1);
    field = integrate_bloch(field, time - field.time, c.species, c.field);
    const auto p = integrated_populations(field);
    t.add_row({time / c.period, p.ground, p.excited, p.coherence.real(), p.coherence.imag(), time});
  }
  auto s = c.table({"rho_gg", "rho_ee", "re_rho_ge", "im_rho_ge"}, {"1", "1", "1", "1"});
  const auto st = integrated_stationary(field, c.species, c.field);
  s.add_row({st.ground, st.excited, st.coherence.real(), st.coherence.imag()});
  return {{"populations", std::move(t)}, {"populations_stationary", std::move(s)}};
}

std::vector<Product> steady_products(const Context& c) {
  auto t = c.table({"delta_over_Omega", "rho_gg", "rho_ee", "re_rho_ge", "im_rho_ge", "delta"},
                   {"Omega", "1", "1", "1", "1", "rad/s"});
  const std::size_t n = c.cfg.steady_count;
  for (std::size_t i = 0; i < n; ++i) {
    const double ratio =
        n == 1 ? c.cfg.steady_min
               : c.cfg.steady_min + (c.cfg.steady_max - c.cfg.steady_min) *
                                        static_cast<double>(i) / static_cast<double>(n - 1);
    const double delta = ratio * c.omega;
    const auto s = stationary_solution(delta, c.omega, c.cfg.gamma());
    t.add_row({ratio, s.rho_gg, s.rho_ee, s.rho_ge.real(), s.rho_ge.imag(), delta});
  }
  return {{"steady", std::move(t)}};
}

}  // namespace

std::vector<std::string> subcommand_names() {
  return {"dispersion", "momentum", "position", "deflection",
          "decay",      "populations", "steady", "params"};
}

std::vector<Product> build_products(std::string_view subcommand, const RunConfig& config,
                                    std::ostream& log) {
  const Context c(config);
  if (subcommand == "params") return params_products(c);
  if (subcommand == "dispersion") return dispersion_products(c);
  if (subcommand == "momentum") return momentum_products(c);
  if (subcommand == "position") return position_products(c, log);
  if (subcommand == "deflection") return deflection_products(c, log);
  if (subcommand == "decay") return decay_products(c);
  if (subcommand == "populations") return populations_products(c);
  if (subcommand == "steady") return steady_products(c);
  throw Error("unknown subcommand '" + std::string(subcommand) + "'");
}

std::vector<std::filesystem::path> write_products(const std::vector<Product>& products,
                                                  const std::filesystem::path& dir, Format format) {
  namespace fs = std::filesystem;
  std::vector<std::string> bodies;
  for (const auto& p : products) bodies.push_back(write_table(p.table, format));

  std::vector<fs::path> staged;
  std::vector<fs::path> finals;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& f : staged) fs::remove(f, ec);
    for (const auto& f : finals) fs::remove(f, ec);
  };
  try {
    fs::create_directories(dir);
    for (std::size_t i = 0; i < products.size(); ++i) {
      const fs::path target = dir / (products[i].name + std::string(format_extension(format)));
      fs::path tmp = target;
      tmp += ".partial";
      staged.push_back(tmp);
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      os << bodies[i];
      os.close();
      if (!os) throw Error("failed to write " + tmp.string());
    }
    for (std::size_t i = 0; i < products.size(); ++i) {
      fs::path target = staged[i];
      target.replace_extension();
      fs::rename(staged[i], target);
      finals.push_back(target);
    }
  } catch (const fs::filesystem_error& e) {
    cleanup();
    throw Error(std::string("output error: ") + e.what());
  } catch (...) {
    cleanup();
    throw;
  }
  return finals;
}

int run_subcommand(std::string_view name, const RunConfig& config, std::ostream& out,
                   std::ostream& err) {
  try {
    const auto products = build_products(name, config, err);
    for (const auto& path : write_products(products, config.out_dir, config.format))
      out << path.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "osg: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace osg
