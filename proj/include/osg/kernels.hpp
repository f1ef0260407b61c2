#pragma once

// Data-parallel kernels. Each has a plain serial reference written from the
// textbook formula and an OpenMP variant tuned for throughput; tests check
// that the two agree.

#include <span>
#include <vector>

#include "osg/core_model.hpp"

namespace osg {

struct MomentumState;
struct BlochComponents;

namespace kernels {

/// Evolves every pair mode of `in` by `t` into `out` (same grid). Returns
/// the norm carried by amplitudes whose partner index is off the grid.
double evolve_pairs_serial(const MomentumState& in, double t, const AtomSpecies& species,
                           const DriveField& field, MomentumState& out);
double evolve_pairs_omp(const MomentumState& in, double t, const AtomSpecies& species,
                        const DriveField& field, MomentumState& out);

/// psi(x_j) = dp / sqrt(2 pi hbar) * sum_n phi(p_n) exp(i p_n x_j / hbar),
/// on the conjugate grid x_j = x_min + j dx, dx = 2 pi hbar / (N dp).
std::vector<cplx> momentum_to_position_serial(std::span<const cplx> phi, double p_min, double dp,
                                              double x_min, double dx);
std::vector<cplx> momentum_to_position_omp(std::span<const cplx> phi, double p_min, double dp,
                                           double x_min, double dx);

/// Classical RK4 on each mode's Bloch equations, `steps` steps of size `h`.
void integrate_modes_serial(std::span<BlochComponents> modes, std::span<const double> deltas,
                            double coupling, double gamma, double h, long steps);
void integrate_modes_omp(std::span<BlochComponents> modes, std::span<const double> deltas,
                         double coupling, double gamma, double h, long steps);

}  // namespace kernels
}  // namespace osg
