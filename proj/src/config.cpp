#include "osg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "osg/error.hpp"

namespace osg {

DriveField RunConfig::drive() const {
  const double omega = rabi_frequency();
  DriveField f = resonant_drive(species, omega, 0.0);
  f.detuning = detuning + detuning_ratio * omega;
  if (compensate_recoil) f.detuning -= recoil_shift(species, f);
  return f;
}

double RunConfig::gamma() const { return decay_rate + decay_ratio * rabi_frequency(); }

PacketParams RunConfig::packet() const {
  const double hk = photon_momentum(drive());
  return {center_momentum * hk, momentum_width * hk, amp_ground, amp_excited};
}

MomentumGrid RunConfig::momentum_grid() const {
  return default_momentum_grid(packet(), drive(), stride, span_width, span_recoil);
}

namespace {

std::string complex_text(cplx z) {
  return format_double(z.real()) + ", " + format_double(z.imag());
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  const DriveField f = drive();
  return {
      {"preset", preset.empty() ? "none" : preset},
      {"species", species.name},
      {"mass_kg", format_double(species.mass)},
      {"transition_frequency_hz", format_double(species.transition_frequency)},
      {"rabi_frequency_rad_s", format_double(f.rabi_frequency)},
      {"rabi_frequency_over_2pi_hz", format_double(f.rabi_frequency / (2.0 * kPi))},
      {"detuning_rad_s", format_double(f.detuning)},
      {"decay_rate_over_rabi", format_double(gamma() / f.rabi_frequency)},
      {"center_momentum_hbar_k", format_double(center_momentum)},
      {"momentum_width_hbar_k", format_double(momentum_width)},
      {"amp_ground", complex_text(amp_ground)},
      {"amp_excited", complex_text(amp_excited)},
  };
}

namespace {

struct PresetValues {
  std::map<std::string, std::string> values;  // "section.key" -> text
};

const std::map<std::string, PresetValues>& presets() {
  static const std::map<std::string, PresetValues> table = {
      {"fig2",
       {{{"drive.rabi_frequency", "2000"}, {"drive.two_pi_times", "true"},
         {"packet.momentum_width", "0.5"}, {"dispersion.p_min", "-3"},
         {"dispersion.p_max", "2"}, {"dispersion.count", "501"}}}},
      {"fig3",
       {{{"drive.rabi_frequency", "1e6"}, {"drive.two_pi_times", "true"},
         {"packet.momentum_width", "0.5"}, {"packet.amp_ground", "0.8"},
         {"packet.amp_excited", "0.6"}, {"grid.stride", "64"}, {"time.t_max", "1"},
         {"time.snapshots", "5"}}}},
      {"fig4",
       {{{"drive.rabi_frequency", "1e6"}, {"drive.two_pi_times", "true"},
         {"packet.momentum_width", "20"}, {"packet.amp_ground", "0.8"},
         {"packet.amp_excited", "0.6"}, {"grid.stride", "16"}, {"time.t_max", "3"},
         {"time.snapshots", "13"}}}},
      {"fig5",
       {{{"drive.rabi_frequency", "1e6"}, {"drive.two_pi_times", "true"},
         {"packet.momentum_width", "20"}, {"packet.amp_ground", "0.8"},
         {"packet.amp_excited", "0.6"}, {"grid.stride", "16"}, {"time.t_max", "3"},
         {"time.samples", "121"}}}},
      {"fig6",
       {{{"drive.rabi_frequency", "1e6"}, {"drive.two_pi_times", "true"},
         {"drive.decay_ratio", "0.1"}, {"packet.momentum_width", "0.5"},
         {"packet.amp_ground", "0.8"}, {"packet.amp_excited", "0.6"}, {"grid.stride", "64"},
         {"time.t_max", "6"}, {"time.snapshots", "25"}}}},
      {"fig7",
       {{{"drive.rabi_frequency", "1e6"}, {"drive.two_pi_times", "true"},
         {"drive.decay_ratio", "0.1"}, {"packet.momentum_width", "0.5"},
         {"packet.amp_ground", "0.8"}, {"packet.amp_excited", "0.6"}, {"grid.stride", "64"},
         {"time.t_max", "10"}, {"time.samples", "201"}}}},
  };
  return table;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& what) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << "key '" << key << "': " << what;
  throw ConfigError(os.str());
}

double to_double(const std::string& text, int line, const std::string& key) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    fail(line, key, "expected a finite number, got '" + text + "'");
  return v;
}

std::size_t to_count(const std::string& text, int line, const std::string& key) {
  const double v = to_double(text, line, key);
  if (v != std::floor(v) || v < 0.0 || v > 1e9) fail(line, key, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& text, int line, const std::string& key) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  fail(line, key, "expected true or false, got '" + text + "'");
}

cplx to_complex(const std::string& text, int line, const std::string& key) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {to_double(trim(text), line, key), 0.0};
  return {to_double(trim(text.substr(0, comma)), line, key),
          to_double(trim(text.substr(comma + 1)), line, key)};
}

using Setter = std::function<void(RunConfig&, const std::string&, int, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"species.name",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         if (v == "sr87" || v == "Sr87") {
           c.species = AtomSpecies::strontium87();
         } else if (v.empty()) {
           fail(l, k, "species name must not be empty");
         } else {
           c.species.name = v;
         }
       }},
      {"species.mass",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.species.mass = to_double(v, l, k);
       }},
      {"species.mass_u",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.species.mass = to_double(v, l, k) * kAtomicMassUnit;
       }},
      {"species.transition_frequency",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.species.transition_frequency = to_double(v, l, k);
       }},
      {"drive.rabi_frequency",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.rabi_value = to_double(v, l, k);
       }},
      {"drive.two_pi_times",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.two_pi_times = to_bool(v, l, k);
       }},
      {"drive.detuning",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.detuning = to_double(v, l, k);
       }},
      {"drive.detuning_ratio",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.detuning_ratio = to_double(v, l, k);
       }},
      {"drive.compensate_recoil",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.compensate_recoil = to_bool(v, l, k);
       }},
      {"drive.decay_rate",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.decay_rate = to_double(v, l, k);
       }},
      {"drive.decay_ratio",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.decay_ratio = to_double(v, l, k);
       }},
      {"packet.center_momentum",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.center_momentum = to_double(v, l, k);
       }},
      {"packet.momentum_width",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.momentum_width = to_double(v, l, k);
       }},
      {"packet.amp_ground",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.amp_ground = to_complex(v, l, k);
       }},
      {"packet.amp_excited",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.amp_excited = to_complex(v, l, k);
       }},
      {"grid.stride",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.stride = static_cast<int>(to_count(v, l, k));
       }},
      {"grid.span_width",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.span_width = to_double(v, l, k);
       }},
      {"grid.span_recoil",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.span_recoil = to_double(v, l, k);
       }},
      {"time.t_max",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.t_max = to_double(v, l, k);
       }},
      {"time.samples",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.samples = to_count(v, l, k);
       }},
      {"time.snapshots",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.snapshots = to_count(v, l, k);
       }},
      {"position.window",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.window = to_double(v, l, k);
       }},
      {"dispersion.p_min",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.dispersion_min = to_double(v, l, k);
       }},
      {"dispersion.p_max",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.dispersion_max = to_double(v, l, k);
       }},
      {"dispersion.count",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.dispersion_count = to_count(v, l, k);
       }},
      {"steady.delta_min",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.steady_min = to_double(v, l, k);
       }},
      {"steady.delta_max",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.steady_max = to_double(v, l, k);
       }},
      {"steady.count",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         c.steady_count = to_count(v, l, k);
       }},
      {"output.dir",
       [](RunConfig& c, const std::string& v, int, const std::string&) { c.out_dir = v; }},
      {"output.format",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         try {
           c.format = parse_format(v);
         } catch (const Error& e) {
           fail(l, k, e.what());
         }
       }},
      {"output.method",
       [](RunConfig& c, const std::string& v, int l, const std::string& k) {
         try {
           c.method = parse_method(v);
         } catch (const Error& e) {
           fail(l, k, e.what());
         }
       }},
  };
  return table;
}

struct Entry {
  std::string value;
  int line = 0;
};

void check(RunConfig& c, const std::map<std::string, Entry>& seen) {
  auto line_of = [&](const std::string& key) {
    const auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second.line;
  };
  auto require = [&](bool ok, const std::string& key, const std::string& what) {
    if (!ok) fail(line_of(key), key, what);
  };
  require(c.species.mass > 0.0, "species.mass", "must be positive");
  require(c.species.transition_frequency > 0.0, "species.transition_frequency", "must be positive");
  require(c.rabi_value > 0.0, "drive.rabi_frequency", "must be positive");
  require(c.gamma() >= 0.0, "drive.decay_rate", "decay rate must be non-negative");
  require(c.momentum_width > 0.0, "packet.momentum_width", "must be positive");
  require(std::abs(std::norm(c.amp_ground) + std::norm(c.amp_excited) - 1.0) <= 1e-12,
          "packet.amp_ground", "|amp_ground|^2 + |amp_excited|^2 must equal 1");
  require(c.stride >= 1, "grid.stride", "must be a positive integer");
  require(c.span_width > 0.0, "grid.span_width", "must be positive");
  require(c.span_recoil >= 0.0, "grid.span_recoil", "must be non-negative");
  require(c.t_max > 0.0, "time.t_max", "must be positive");
  require(c.samples >= 2, "time.samples", "must be at least 2");
  require(c.snapshots >= 1, "time.snapshots", "must be at least 1");
  require(c.window >= 0.0, "position.window", "must be non-negative");
  require(c.dispersion_max > c.dispersion_min, "dispersion.p_max", "must exceed p_min");
  require(c.dispersion_count >= 2, "dispersion.count", "must be at least 2");
  require(c.steady_max >= c.steady_min, "steady.delta_max", "must not be below delta_min");
  require(c.steady_count >= 1, "steady.count", "must be at least 1");
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : presets()) names.push_back(name);
  return names;
}

Method parse_method(std::string_view name) {
  if (name == "analytic") return Method::analytic;
  if (name == "numeric") return Method::numeric;
  throw Error("unknown method '" + std::string(name) + "' (expected analytic or numeric)");
}

RunConfig parse_config(std::string_view text, std::optional<std::string> preset_override) {
  std::map<std::string, Entry> seen;
  std::string preset;
  int preset_line = 0;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') fail(line, body, "malformed section header");
      section = trim(body.substr(1, body.size() - 2));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(line, body, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (section.empty() && key == "preset") {
      preset = value;
      preset_line = line;
      continue;
    }
    const std::string full =
        section.empty() || key.find('.') != std::string::npos ? key : section + "." + key;
    if (!setters().contains(full)) fail(line, full, "unknown key");
    if (seen.contains(full)) fail(line, full, "duplicate key");
    seen[full] = {value, line};
  }
  if (preset_override) preset = *preset_override;

  RunConfig cfg;
  if (!preset.empty()) {
    const auto it = presets().find(preset);
    if (it == presets().end()) fail(preset_line, "preset", "unknown preset '" + preset + "'");
    cfg.preset = preset;
    for (const auto& [key, value] : it->second.values) setters().at(key)(cfg, value, 0, key);
  } else {
    std::vector<std::string> missing;
    for (const char* key : {"drive.rabi_frequency", "packet.momentum_width"})
      if (!seen.contains(key)) missing.emplace_back(key);
    if (!missing.empty()) {
      std::string msg = "missing required keys (or name a preset):";
      for (const auto& k : missing) msg += " " + k;
      throw ConfigError(msg);
    }
  }
  // Explicit keys, in line order, on top of the preset.
  std::vector<std::pair<std::string, Entry>> ordered(seen.begin(), seen.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.second.line < b.second.line; });
  for (const auto& [key, entry] : ordered) setters().at(key)(cfg, entry.value, entry.line, key);
  check(cfg, seen);
  return cfg;
}

}  // namespace osg
