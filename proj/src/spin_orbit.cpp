#include "osg/spin_orbit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "osg/error.hpp"

namespace osg {

double TwoByTwoOperator::max_abs() const {
  double s = 0.0;
  for (const auto& z : m) s = std::max(s, std::abs(z));
  return s;
}

bool TwoByTwoOperator::is_hermitian(double rel_tol) const {
  const double tol = rel_tol * std::max(max_abs(), 1e-300);
  const auto& a = *this;
  return std::abs(a(0, 0).imag()) <= tol && std::abs(a(1, 1).imag()) <= tol &&
         std::abs(a(0, 1) - std::conj(a(1, 0))) <= tol;
}

std::pair<double, double> TwoByTwoOperator::eigenvalues() const {
  if (!is_hermitian()) throw Error("eigenvalues requested for a non-Hermitian operator");
  const auto& a = *this;
  const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
  const double r = std::hypot(0.5 * (a(0, 0).real() - a(1, 1).real()), std::abs(a(0, 1)));
  return {mean - r, mean + r};
}

TwoByTwoOperator PauliCoefficients::reconstruct() const {
  TwoByTwoOperator op;
  op(0, 0) = c_identity + c_z;
  op(1, 1) = c_identity - c_z;
  op(0, 1) = c_x;
  op(1, 0) = c_x;
  return op;
}

TwoByTwoOperator symmetric_hamiltonian(double p_x, const AtomSpecies& species,
                                       const DriveField& field) {
  if (field.detuning != 0.0)
    throw Error("symmetric Hamiltonian is defined for zero detuning only (got Delta = " +
                std::to_string(field.detuning) + " rad/s)");
  const double hk = photon_momentum(field);
  const double two_m = 2.0 * species.mass;
  const double kinetic = p_x * p_x / two_m;
  const double shift = hk * p_x / two_m;
  const double offset = hk * hk / (8.0 * species.mass);
  TwoByTwoOperator op;
  op(0, 0) = kinetic - shift + offset;
  op(1, 1) = kinetic + shift + offset;
  op(0, 1) = op(1, 0) = -kHbar * 0.5 * field.rabi_frequency;
  return op;
}

PauliCoefficients pauli_decompose(const TwoByTwoOperator& op) {
  if (!op.is_hermitian()) throw Error("Pauli decomposition requires a Hermitian operator");
  if (std::abs(op(0, 1).imag()) > 1e-12 * std::max(op.max_abs(), 1e-300))
    throw Error("Pauli decomposition supports real-symmetric operators only");
  const double a = op(0, 0).real();
  const double d = op(1, 1).real();
  return {0.5 * (a + d), 0.5 * (a - d), op(0, 1).real()};
}

DiracLimit dirac_limit(double p_x, const AtomSpecies& species, const DriveField& field) {
  if (field.detuning != 0.0) throw Error("Dirac limit is defined for zero detuning only");
  const PauliCoefficients linear{0.25 * kHbar * recoil_shift(species, field),
                                 -packet_velocity(species, field) * p_x,
                                 -kHbar * 0.5 * field.rabi_frequency};
  return {linear.reconstruct(), p_x * p_x / (2.0 * species.mass)};
}

DispersionSpectrum dispersion_spectrum(std::span<const double> p_values, const AtomSpecies& species,
                                       const DriveField& field) {
  const std::size_t n = p_values.size();
  DispersionSpectrum s{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                       std::vector<double>(n)};
  const double hk = photon_momentum(field);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = p_values[i];
    const double lower = kinetic_frequency(p, species);
    const double upper = field.detuning + kinetic_frequency(p + hk, species);
    const double sigma = effective_rabi(p, species, field);
    s.ground[i] = 0.5 * (lower + upper - sigma);
    s.excited[i] = 0.5 * (lower + upper + sigma);
    s.bare_ground[i] = lower;
    s.bare_excited[i] = upper;
  }
  return s;
}

}  // namespace osg
