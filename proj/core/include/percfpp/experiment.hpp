#pragma once

#include <string>
#include <utility>
#include <vector>

#include "percfpp/config.hpp"

namespace percfpp {

std::string toolkit_version();

// Ordered key = value results of one run.
struct ResultsSummary {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(std::string key, std::string value);
  void add(std::string key, double value);
  void add(std::string key, bool value);
  const std::string* find(const std::string& key) const;
};

// Dispatches to the experiment kind, writes its CSV (and SVG) outputs into
// config.output_dir and a summary.txt. Returns the summary. Throws
// std::runtime_error if the output directory cannot be created or written.
ResultsSummary run_experiment(const ExperimentConfig& config);

// summary.txt parser (key = value lines, '#' comments).
std::vector<std::pair<std::string, std::string>> read_summary(const std::string& text);

}  // namespace percfpp
