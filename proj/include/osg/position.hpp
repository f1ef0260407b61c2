#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "osg/core_model.hpp"
#include "osg/momentum.hpp"
#include "osg/parallel.hpp"

namespace osg {

struct PositionGrid {
  double x_min = 0.0;    // m
  double spacing = 0.0;  // m
  std::size_t count = 0;

  double position(std::size_t j) const { return x_min + static_cast<double>(j) * spacing; }
};

/// Grid conjugate to `grid`: dx * dp * N = 2 pi hbar, centred on x = 0.
PositionGrid conjugate_grid(const MomentumGrid& grid);

struct PositionField {
  PositionGrid grid;
  std::vector<cplx> psi_g;
  std::vector<cplx> psi_e;
  double time = 0.0;

  double ground_norm() const;
  double excited_norm() const;
  double norm() const { return ground_norm() + excited_norm(); }
};

enum class Method { analytic, numeric };

/// True when Omega >= 50 max|delta(p)| over p in [p_c - 3 Pi, p_c + 3 Pi].
bool strong_coupling_holds(const PacketParams& params, const AtomSpecies& species,
                           const DriveField& field);

/// Strong-coupling closed-form amplitudes (psi_g, psi_e) at (x, t): Gaussian
/// envelopes riding on x_{+-}(t) = (p_c/M +- v) t with the cos/sin Rabi factors.
std::pair<cplx, cplx> analytic_amplitudes(double x, double t, const PacketParams& params,
                                          const AtomSpecies& species, const DriveField& field);

PositionField analytic_field(const PositionGrid& grid, double t, const PacketParams& params,
                             const AtomSpecies& species, const DriveField& field);

/// Exact discrete transform of the momentum amplitudes onto the conjugate grid.
PositionField numeric_position_reconstruct(const MomentumState& state,
                                           Backend backend = Backend::parallel);

/// Position-space field at time t by either route, on the conjugate grid of
/// `momentum_grid`.
PositionField position_field(const PacketParams& params, const AtomSpecies& species,
                             const DriveField& field, const MomentumGrid& momentum_grid, double t,
                             Method method);

/// |<a|b>| / (|a| |b|), summed over both internal components.
double fidelity(const PositionField& a, const PositionField& b);

struct CentroidTrajectories {
  std::vector<std::optional<double>> ground;
  std::vector<std::optional<double>> excited;
};

/// Per-snapshot <x> of |psi_g|^2 and |psi_e|^2; absent when the component
/// norm is below 1e-12.
CentroidTrajectories centroid_trajectories(const std::vector<PositionField>& fields);

/// Centre of a least-squares Gaussian fit to log(density) over points above
/// `threshold` times the peak.
std::optional<double> fit_gaussian_center(const PositionGrid& grid, const std::vector<double>& density,
                                          double threshold = 1e-2);

struct DeflectionMap {
  PositionGrid grid;
  std::vector<double> times;
  // [time][x] densities
  std::vector<std::vector<double>> total;
  std::vector<std::vector<double>> ground;
  std::vector<std::vector<double>> excited;
};

/// Densities over nt evenly spaced times in [0, t_max].
DeflectionMap deflection_map(const PacketParams& params, const AtomSpecies& species,
                             const DriveField& field, const MomentumGrid& momentum_grid,
                             double t_max, std::size_t nt, Method method);

/// Weight and centroid of the part of the packet in one internal state.
struct Ridge {
  double weight = 0.0;
  std::optional<double> center;
};

std::pair<Ridge, Ridge> internal_state_ridges(const PositionField& field);

}  // namespace osg
