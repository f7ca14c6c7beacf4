#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxent/maps.hpp"

namespace maxent::app {

inline constexpr const char* kArtifactName = "maxent";
inline constexpr const char* kArtifactVersion = "0.1.0";

/// Flat run configuration. Every field has a key usable both in a
/// `key = value` config file and as a `--key value` command-line flag.
struct RunConfig {
  MapParams map;
  int resolution = 0;  // 0 selects 1024 (circle) or 128 (torus)
  int samples = 32;
  int orbit_length = 10000;
  double tol_iter = 1e-10;
  int max_iters = 10000;
  double mass_floor = -1.0;  // negative selects 1e-3 / N^d
  double delta0 = 0.02;
  std::vector<double> eps_list{0.05, 0.1};
  int seeds = 5;
  std::string out_dir = "maxent_out";
  std::uint64_t seed = 0;
  int grid_n = 256;
  double lipschitz = 0.0;
  bool force = false;
  bool all_starts = false;
  std::optional<std::vector<double>> x0;
  std::optional<double> c;  // overrides c(f)/10 for orbit analyses
  int base_points = 32;
  int bk_n_max = 8;
  int sep_n = 0;           // 0 selects 6 (circle) or 3 (torus)
  double sep_eps = 0.1;
  int sep_candidates = 0;  // 0 selects 10000 (circle) or 40000 (torus)
  int mixing_max_iter = 64;
  int exponent_samples = 32;
  int exponent_length = 2000;
  std::string measure_file;

  int effective_resolution(int dim) const;
  int effective_sep_n(int dim) const;
  int effective_sep_candidates(int dim) const;
};

/// Recognized keys, dashed form (underscores are accepted on input).
const std::vector<std::string>& config_keys();
/// Keys that are boolean switches (value optional on the command line).
bool is_flag_key(const std::string& key);

/// Parses `key = value` lines; '#' starts a comment. Throws ConfigError.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Applies one key; throws ConfigError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Range checks: tolerances positive, sizes within documented bounds.
void validate(const RunConfig& cfg);

/// Deterministic `key=value` listing of every field.
std::string canonical_form(const RunConfig& cfg);
/// FNV-1a 64 of canonical_form, hex encoded.
std::string config_hash(const RunConfig& cfg);

}  // namespace maxent::app
