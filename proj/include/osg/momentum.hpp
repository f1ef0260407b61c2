#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "osg/core_model.hpp"
#include "osg/parallel.hpp"

namespace osg {

/// Uniform momentum grid whose spacing divides the photon recoil hbar*k,
/// so that p -> p + hbar*k is an exact shift by `photon_stride` indices.
struct MomentumGrid {
  double p_min = 0.0;    // kg m/s
  double spacing = 0.0;  // kg m/s
  std::size_t count = 0;
  int photon_stride = 0;

  double momentum(std::ptrdiff_t i) const { return p_min + static_cast<double>(i) * spacing; }
  double p_max() const { return momentum(static_cast<std::ptrdiff_t>(count) - 1); }

  // Pair modes are labelled by a base index b in [-stride, count): the
  // ground amplitude lives at b and its excited partner at b + stride.
  std::size_t mode_count() const { return count + static_cast<std::size_t>(photon_stride); }
  std::ptrdiff_t mode_base(std::size_t mode) const {
    return static_cast<std::ptrdiff_t>(mode) - photon_stride;
  }

  void validate(double photon_momentum) const;

  /// Symmetric grid around `center` covering at least `half_span` either side.
  static MomentumGrid around(double center, double half_span, double photon_momentum,
                             int photon_stride);
  /// Grid with an explicit number of points starting at `p_min`.
  static MomentumGrid with_count(double p_min, std::size_t count, double photon_momentum,
                                 int photon_stride);
};

/// Default grid: p_c +- max(span_width * Pi, span_recoil * hbar k).
MomentumGrid default_momentum_grid(const PacketParams& packet, const DriveField& field,
                                   int photon_stride = 4, double span_width = 8.0,
                                   double span_recoil = 4.0);

/// Two-component momentum amplitudes in the spectrum labelling: phi_e[i]
/// is the excited amplitude at momentum grid.momentum(i).
struct MomentumState {
  MomentumGrid grid;
  std::vector<cplx> phi_g;
  std::vector<cplx> phi_e;
  double time = 0.0;

  // Trapezoid-rule norms.
  double ground_norm() const;
  double excited_norm() const;
  double norm() const { return ground_norm() + excited_norm(); }
};

/// Closed-form dressed-state coefficients of one {|g,p>, |e,p+hbar k>} pair.
struct PairSolution {
  cplx a_plus, a_minus;
  cplx b_plus, b_minus;
  double sigma = 0.0;              // effective Rabi frequency
  double common_phase_rate = 0.0;  // (Delta + w_{p+hbar k} + w_p) / 2
};

MomentumState gaussian_initial(const PacketParams& params, const MomentumGrid& grid);

PairSolution solve_pair(cplx phi_g0, cplx phi_e0, double p, const AtomSpecies& species,
                        const DriveField& field);

/// Amplitudes (phi_g(p,t), phi_e(p+hbar k,t)).
std::pair<cplx, cplx> evolve_pair(const PairSolution& sol, double t);

/// Advances every pair by `t`. Throws if more than 1e-6 of the norm is lost
/// to partners that fall outside the grid.
MomentumState evolve_state(const MomentumState& initial, double t, const AtomSpecies& species,
                           const DriveField& field, Backend backend = Backend::parallel);

struct MomentumDistributions {
  std::vector<double> ground;
  std::vector<double> excited;
};

MomentumDistributions momentum_distributions(const MomentumState& state);

/// Trapezoid weights (1/2 at the ends) times the spacing.
double trapezoid_weight(std::size_t i, std::size_t count, double spacing);

}  // namespace osg
