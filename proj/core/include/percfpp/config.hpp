#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "percfpp/link_dynamics.hpp"
#include "percfpp/thinning.hpp"

namespace percfpp {

enum class ExperimentKind { sweep_critical, decay, ratio_curve, gamma_tau, circuits, snapshot_equiv };

std::string to_string(ExperimentKind kind);

struct LinkProbSetting {
  std::string kind = "constant";  // constant | affine | table
  std::optional<double> p;
  std::optional<double> a;
  std::optional<double> b;
  std::vector<double> knots;
  std::vector<double> values;

  LinkProbability build() const;
  friend bool operator==(const LinkProbSetting&, const LinkProbSetting&) = default;
};

struct SpecSetting {
  std::string active_family = "exponential";
  double active_mean = 1.0;
  double active_mean_slope = 0.0;
  std::string inactive_family = "exponential";
  double inactive_mean = 1.0;
  double inactive_mean_slope = 0.0;

  OnOffSpec build() const;
  friend bool operator==(const SpecSetting&, const SpecSetting&) = default;
};

// Parsed experiment file. Optional members are the ones not required by every
// experiment kind; validate_config checks presence per kind.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::circuits;
  std::uint64_t master_seed = 1;
  std::size_t replicates = 1;
  std::string output_dir = "out";
  unsigned threads = 0;

  std::optional<double> density;
  std::vector<double> densities;
  std::optional<double> window_side;
  std::vector<double> tau;
  bool include_tau_zero = false;
  std::optional<std::size_t> pairs_per_band;
  std::size_t bands = 8;
  std::size_t sources_per_replicate = 4;
  double top_fraction = 0.25;
  std::vector<double> h_values;
  std::optional<int> m_max;
  double tolerance = 0.01;
  std::vector<double> lambdas;

  std::optional<LinkProbSetting> link_prob;
  std::optional<SpecSetting> spec;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ConfigError {
  std::size_t line = 0;  // 0 when not tied to a line
  std::string key;
  std::string message;
};

std::string format_errors(const std::vector<ConfigError>& errors);

// Line-oriented format: "[section]" headers, "key = value" entries, '#' comments.
// Lists are comma separated. Every problem found is reported, unknown keys
// included.
std::variant<ExperimentConfig, std::vector<ConfigError>> validate_config(std::string_view text);

// Reads and validates a file; I/O failure is reported as a single error.
std::variant<ExperimentConfig, std::vector<ConfigError>> load_config(const std::filesystem::path& path);

// Text that validate_config parses back to an equal config.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace percfpp
