#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osg/core_model.hpp"
#include "osg/error.hpp"
#include "osg/momentum.hpp"
#include "osg/position.hpp"
#include "osg/table.hpp"

namespace osg {

/// Parse failure; the message names the offending key and line.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Validated run configuration. Momenta are given in units of hbar k,
/// times in units of T = 2 pi / Omega, detuning sweeps in units of Omega.
struct RunConfig {
  std::string preset;

  AtomSpecies species = AtomSpecies::strontium87();

  // Omega = rabi_value, or 2 pi * rabi_value when two_pi_times is set.
  double rabi_value = 0.0;
  bool two_pi_times = false;
  double detuning = 0.0;        // rad/s
  double detuning_ratio = 0.0;  // in units of Omega, added to `detuning`
  bool compensate_recoil = false;  // subtract w_B so that delta(0) = detuning
  double decay_rate = 0.0;         // rad/s
  double decay_ratio = 0.0;        // in units of Omega, added to `decay_rate`

  double center_momentum = 0.0;  // hbar k
  double momentum_width = 0.0;   // hbar k
  cplx amp_ground{1.0, 0.0};
  cplx amp_excited{0.0, 0.0};

  int stride = 4;
  double span_width = 8.0;
  double span_recoil = 4.0;

  double t_max = 3.0;          // T
  std::size_t samples = 121;   // deflection map / population time series
  std::size_t snapshots = 5;   // snapshot tables over [0, t_max]

  double window = 0.0;  // position output half-width in Lambda; 0 = automatic

  double dispersion_min = -3.0;  // hbar k
  double dispersion_max = 2.0;
  std::size_t dispersion_count = 501;

  double steady_min = -1.0;  // Omega
  double steady_max = 1.0;
  std::size_t steady_count = 201;

  std::filesystem::path out_dir = ".";
  Format format = Format::csv;
  Method method = Method::analytic;

  double rabi_frequency() const { return two_pi_times ? 2.0 * kPi * rabi_value : rabi_value; }
  DriveField drive() const;
  double gamma() const;
  PacketParams packet() const;
  MomentumGrid momentum_grid() const;

  /// Parameter echo written into every output header.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

std::vector<std::string> preset_names();

/// Parses `key = value` lines with `[section]` headers ('#' starts a comment).
/// `preset_override`, when set, takes the place of a `preset` key in the text.
RunConfig parse_config(std::string_view text,
                       std::optional<std::string> preset_override = std::nullopt);

Method parse_method(std::string_view name);

}  // namespace osg
