#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdsim/field.hpp"
#include "rdsim/models.hpp"
#include "rdsim/solver.hpp"

namespace rdsim {

struct InitialProfile {
  enum class Kind { constant, bump, piecewise };
  Kind kind = Kind::constant;
  double value = 0.0;  // constant
  // Gaussian bump: base + amplitude * exp(-((x - center) / width)^2)
  double center = 0.0, width = 1.0, amplitude = 0.0, base = 0.0;
  // Piecewise constants: values[k] on [breaks[k-1], breaks[k]), breaks strictly increasing
  std::vector<double> breaks, values;
};

Field realize_profile(const InitialProfile& p, const Grid1D& grid);

struct DiagnosticsSettings {
  bool enabled = true;
  double d = 0.0;  // defaults to 2 max d_i
  bool d_explicit = false;
  std::vector<double> holder_gammas{0.25, 0.5};
  bool check_structure = true;
  bool check_mass = true;
  bool check_auxiliary = true;
  bool check_entropy = true;
  bool check_rates = true;
  std::size_t structure_samples = 1000;
  std::vector<double> interpolation_family;  // initial-data amplitudes; empty disables
  double interpolation_delta = 0.5;
};

struct TransformSettings {
  bool augment = false;
  std::size_t samples = 1000;
  double horizon = 0.0;  // defaults to t_end
};

/// Deliberate defects used to confirm the checks can fail.
struct FaultSettings {
  double z_offset = 0.0;
  double augmentation_offset = 0.0;
};

struct RunConfig {
  nlohmann::ordered_json echo;  // the input document as read
  std::string content_hash;     // FNV-1a 64 of the canonical (sorted-key) dump, hex
  std::string model_type;
  ModelParams model;
  std::vector<double> diffusion;
  std::size_t n_cells = 128;
  double length = 1.0;
  std::vector<InitialProfile> initial;
  SolverConfig solver;
  DiagnosticsSettings diagnostics;
  TransformSettings transform;
  FaultSettings faults;
  std::string csv_path = "run.csv";
  std::string report_path = "report.json";
  std::uint64_t seed = 0;
};

/// Validates a parsed document. Throws ConfigError listing every problem by field path.
RunConfig parse_config(const nlohmann::ordered_json& doc);

/// Reads and validates a JSON config file.
RunConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace rdsim
