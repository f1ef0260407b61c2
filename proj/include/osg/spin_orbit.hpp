#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "osg/core_model.hpp"

namespace osg {

/// 2x2 complex operator, row-major. Entries in joules for the Hamiltonians
/// built here.
struct TwoByTwoOperator {
  std::array<cplx, 4> m{};

  cplx& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
  cplx operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

  bool is_hermitian(double rel_tol = 1e-12) const;
  double max_abs() const;
  /// Ascending eigenvalues; requires a Hermitian operator.
  std::pair<double, double> eigenvalues() const;
};

/// Coefficients of c_I I + c_z sigma_z + c_x sigma_x (joules).
struct PauliCoefficients {
  double c_identity = 0.0;
  double c_z = 0.0;
  double c_x = 0.0;

  TwoByTwoOperator reconstruct() const;
};

/// Pair Hamiltonian in the momentum frame shifted by hbar k / 2 (zero detuning).
TwoByTwoOperator symmetric_hamiltonian(double p_x, const AtomSpecies& species,
                                       const DriveField& field);

PauliCoefficients pauli_decompose(const TwoByTwoOperator& op);

struct DiracLimit {
  TwoByTwoOperator linear;  // (hbar w_B / 4) I - v p_x sigma_z - hbar J sigma_x
  double residual = 0.0;    // dropped p_x^2 / 2M
};

DiracLimit dirac_limit(double p_x, const AtomSpecies& species, const DriveField& field);

/// Dressed branches W_g, W_e and the bare levels w_p, Delta + w_{p+hbar k} (rad/s).
struct DispersionSpectrum {
  std::vector<double> ground;
  std::vector<double> excited;
  std::vector<double> bare_ground;
  std::vector<double> bare_excited;
};

DispersionSpectrum dispersion_spectrum(std::span<const double> p_values, const AtomSpecies& species,
                                       const DriveField& field);

}  // namespace osg
