#include "osg/core_model.hpp"

#include <cmath>

#include "osg/error.hpp"

namespace osg {

AtomSpecies AtomSpecies::strontium87() {
  return {"Sr87", 86.9088775 * kAtomicMassUnit, 429228004229873.65};
}

void AtomSpecies::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw Error("species mass must be positive");
  if (!(transition_frequency > 0.0) || !std::isfinite(transition_frequency))
    throw Error("species transition frequency must be positive");
}

void DriveField::validate() const {
  if (!(rabi_frequency > 0.0) || !std::isfinite(rabi_frequency))
    throw Error("Rabi frequency must be positive");
  if (!(wavenumber > 0.0) || !std::isfinite(wavenumber)) throw Error("wavenumber must be positive");
  if (!std::isfinite(detuning)) throw Error("detuning must be finite");
}

void PacketParams::validate() const {
  if (!(momentum_width > 0.0) || !std::isfinite(momentum_width))
    throw Error("packet momentum width must be positive");
  if (!std::isfinite(center_momentum)) throw Error("packet center momentum must be finite");
  const double n = std::norm(amp_ground) + std::norm(amp_excited);
  if (std::abs(n - 1.0) > 1e-12)
    throw Error("internal-state amplitudes must satisfy |C_g|^2 + |C_e|^2 = 1");
}

double wavenumber_from_frequency(const AtomSpecies& species) {
  if (!(species.transition_frequency > 0.0)) throw Error("transition frequency must be positive");
  return 2.0 * kPi * species.transition_frequency / kSpeedOfLight;
}

DriveField resonant_drive(const AtomSpecies& species, double rabi_frequency, double detuning) {
  return {rabi_frequency, detuning, wavenumber_from_frequency(species)};
}

double kinetic_frequency(double p, const AtomSpecies& species) {
  return p * p / (2.0 * species.mass * kHbar);
}

double photon_momentum(const DriveField& field) { return kHbar * field.wavenumber; }

double recoil_shift(const AtomSpecies& species, const DriveField& field) {
  return kHbar * field.wavenumber * field.wavenumber / (2.0 * species.mass);
}

double doppler_shift(double p, const AtomSpecies& species, const DriveField& field) {
  return p * field.wavenumber / species.mass;
}

double energy_shift_delta(double p, const AtomSpecies& species, const DriveField& field) {
  const double half_recoil = 0.5 * photon_momentum(field);
  return field.detuning + field.wavenumber / species.mass * (p + half_recoil);
}

double effective_rabi(double p, const AtomSpecies& species, const DriveField& field) {
  return std::hypot(energy_shift_delta(p, species, field), field.rabi_frequency);
}

double oscillation_period(const DriveField& field) {
  if (!(field.rabi_frequency > 0.0)) throw Error("Rabi frequency must be positive");
  return 2.0 * kPi / field.rabi_frequency;
}

double packet_velocity(const AtomSpecies& species, const DriveField& field) {
  return kHbar * field.wavenumber / (2.0 * species.mass);
}

double step_length(const AtomSpecies& species, const DriveField& field) {
  return packet_velocity(species, field) * oscillation_period(field);
}

double interaction_threshold_density(double range) {
  if (!(range > 0.0) || !std::isfinite(range)) throw Error("interaction range must be positive");
  return 1.0 / (range * range * range);
}

}  // namespace osg
