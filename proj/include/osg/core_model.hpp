#pragma once

#include <complex>
#include <string>

namespace osg {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kSpeedOfLight = 299792458.0;    // m/s
// Mass unit used for the strontium preset. Deliberately the rounded
// 1.67e-27 kg rather than the CODATA value.
inline constexpr double kAtomicMassUnit = 1.67e-27;     // kg

/// Mass and clock-transition frequency of the atom.
struct AtomSpecies {
  std::string name;
  double mass = 0.0;                  // kg
  double transition_frequency = 0.0;  // Hz

  static AtomSpecies strontium87();
  void validate() const;
};

/// Traveling-wave drive. All rates are angular (rad/s).
struct DriveField {
  double rabi_frequency = 0.0;  // Omega
  double detuning = 0.0;        // Delta
  double wavenumber = 0.0;      // k, rad/m

  void validate() const;
};

/// Gaussian packet in momentum space with internal-state amplitudes.
struct PacketParams {
  double center_momentum = 0.0;  // kg m/s
  double momentum_width = 0.0;   // kg m/s
  cplx amp_ground{1.0, 0.0};
  cplx amp_excited{0.0, 0.0};

  void validate() const;
};

/// Resonant drive wavenumber 2*pi*nu0/c.
double wavenumber_from_frequency(const AtomSpecies& species);

/// Builds a resonant drive for the species.
DriveField resonant_drive(const AtomSpecies& species, double rabi_frequency,
                          double detuning = 0.0);

/// Free kinetic frequency p^2 / (2 M hbar).
double kinetic_frequency(double p, const AtomSpecies& species);

/// Photon recoil momentum hbar k.
double photon_momentum(const DriveField& field);

double recoil_shift(const AtomSpecies& species, const DriveField& field);
double doppler_shift(double p, const AtomSpecies& species, const DriveField& field);

/// delta(p) = Delta + p k / M + hbar k^2 / 2M, evaluated as
/// Delta + (k/M)(p + hbar k / 2) so that delta(-hbar k/2) == Delta exactly.
double energy_shift_delta(double p, const AtomSpecies& species, const DriveField& field);

double effective_rabi(double p, const AtomSpecies& species, const DriveField& field);
double oscillation_period(const DriveField& field);
double packet_velocity(const AtomSpecies& species, const DriveField& field);
double step_length(const AtomSpecies& species, const DriveField& field);

/// Density above which pair interactions of the given range matter: 1/R^3 (m^-3).
double interaction_threshold_density(double range);

}  // namespace osg
