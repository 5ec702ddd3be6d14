#include "percfpp/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "percfpp/errors.hpp"

namespace percfpp {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::sweep_critical:
      return "sweep_critical";
    case ExperimentKind::decay:
      return "decay";
    case ExperimentKind::ratio_curve:
      return "ratio_curve";
    case ExperimentKind::gamma_tau:
      return "gamma_tau";
    case ExperimentKind::circuits:
      return "circuits";
    case ExperimentKind::snapshot_equiv:
      return "snapshot_equiv";
  }
  return "?";
}

LinkProbability LinkProbSetting::build() const {
  if (kind == "constant") return LinkProbability::constant(p.value_or(1.0));
  if (kind == "affine") return LinkProbability::affine(a.value_or(0.0), b.value_or(0.0));
  if (kind == "table") return LinkProbability::table(knots, values);
  throw InvalidInput("unknown link probability kind '" + kind + "'");
}

OnOffSpec SpecSetting::build() const {
  return OnOffSpec({parse_period_family(inactive_family), {inactive_mean, inactive_mean_slope}},
                   {parse_period_family(active_family), {active_mean, active_mean_slope}});
}

std::string format_errors(const std::vector<ConfigError>& errors) {
  std::ostringstream out;
  for (const auto& e : errors) {
    if (e.line > 0) out << "line " << e.line << ": ";
    if (!e.key.empty()) out << e.key << ": ";
    out << e.message << '\n';
  }
  return out.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    double v;
    if (!parse_double(trim(item), v)) return false;
    out.push_back(v);
  }
  return !out.empty();
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1" || s == "yes") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no") {
    out = false;
    return true;
  }
  return false;
}

struct Parser {
  ExperimentConfig config;
  std::vector<ConfigError> errors;
  std::set<std::string> seen;
  std::size_t line = 0;

  void error(const std::string& key, const std::string& message) {
    errors.push_back({line, key, message});
  }

  LinkProbSetting& link_prob() {
    if (!config.link_prob) config.link_prob.emplace();
    return *config.link_prob;
  }
  SpecSetting& spec() {
    if (!config.spec) config.spec.emplace();
    return *config.spec;
  }

  // Typed setters; each reports its own parse and range errors.
  void real(const std::string& key, const std::string& v, const std::function<void(double)>& set,
            double min, bool min_inclusive) {
    double x;
    if (!parse_double(v, x)) return error(key, "expected a real number, got '" + v + "'");
    if (min_inclusive ? x < min : x <= min) {
      return error(key, "out of range: must be " + std::string(min_inclusive ? ">= " : "> ") +
                            std::to_string(min) + ", got " + v);
    }
    set(x);
  }
  void integer(const std::string& key, const std::string& v,
               const std::function<void(std::uint64_t)>& set, std::uint64_t min) {
    std::uint64_t x;
    if (!parse_u64(v, x)) return error(key, "expected a non-negative integer, got '" + v + "'");
    if (x < min) return error(key, "out of range: must be >= " + std::to_string(min));
    set(x);
  }
  void list(const std::string& key, const std::string& v, std::vector<double>& dst, double min) {
    std::vector<double> xs;
    if (!parse_list(v, xs)) return error(key, "expected a comma-separated list of reals, got '" + v + "'");
    for (double x : xs) {
      if (x < min) return error(key, "out of range: every value must be >= " + std::to_string(min));
    }
    dst = std::move(xs);
  }

  void assign(const std::string& section, const std::string& key, const std::string& v) {
    const std::string full = section + "." + key;
    if (!seen.insert(full).second) return error(full, "duplicate key");
    auto& c = config;
    if (section == "experiment") {
      if (key == "kind") {
        static const std::map<std::string, ExperimentKind> kinds = {
            {"sweep_critical", ExperimentKind::sweep_critical},
            {"decay", ExperimentKind::decay},
            {"ratio_curve", ExperimentKind::ratio_curve},
            {"gamma_tau", ExperimentKind::gamma_tau},
            {"circuits", ExperimentKind::circuits},
            {"snapshot_equiv", ExperimentKind::snapshot_equiv}};
        const auto it = kinds.find(v);
        if (it == kinds.end()) return error(full, "unknown experiment kind '" + v + "'");
        c.experiment = it->second;
      } else if (key == "master_seed") {
        integer(full, v, [&](auto x) { c.master_seed = x; }, 0);
      } else if (key == "replicates") {
        integer(full, v, [&](auto x) { c.replicates = x; }, 1);
      } else if (key == "output_dir") {
        if (v.empty()) return error(full, "must not be empty");
        c.output_dir = v;
      } else if (key == "threads") {
        integer(full, v, [&](auto x) { c.threads = static_cast<unsigned>(x); }, 0);
      } else {
        error(full, "unknown key '" + key + "'");
      }
    } else if (section == "model") {
      if (key == "density") {
        real(full, v, [&](double x) { c.density = x; }, 0.0, true);
      } else if (key == "densities") {
        list(full, v, c.densities, 0.0);
      } else if (key == "window_side") {
        real(full, v, [&](double x) { c.window_side = x; }, 0.0, false);
      } else if (key == "tau") {
        list(full, v, c.tau, 0.0);
      } else if (key == "include_tau_zero") {
        if (!parse_bool(v, c.include_tau_zero)) error(full, "expected true or false");
      } else if (key == "pairs_per_band") {
        integer(full, v, [&](auto x) { c.pairs_per_band = x; }, 1);
      } else if (key == "bands") {
        integer(full, v, [&](auto x) { c.bands = x; }, 1);
      } else if (key == "sources_per_replicate") {
        integer(full, v, [&](auto x) { c.sources_per_replicate = x; }, 1);
      } else if (key == "top_fraction") {
        real(full, v, [&](double x) {
          if (x > 1.0) return error(full, "out of range: must be <= 1");
          c.top_fraction = x;
        }, 0.0, false);
      } else if (key == "h_values") {
        list(full, v, c.h_values, 0.0);
      } else if (key == "m_max") {
        integer(full, v, [&](auto x) {
          if (x > 8) return error(full, "out of range: must lie in [2, 8]");
          c.m_max = static_cast<int>(x);
        }, 2);
      } else if (key == "tolerance") {
        real(full, v, [&](double x) { c.tolerance = x; }, 0.0, false);
      } else if (key == "lambdas") {
        list(full, v, c.lambdas, 0.0);
      } else {
        error(full, "unknown key '" + key + "'");
      }
    } else if (section == "link_prob") {
      auto& lp = link_prob();
      if (key == "kind") {
        if (v != "constant" && v != "affine" && v != "table") {
          return error(full, "unknown link probability kind '" + v + "'");
        }
        lp.kind = v;
      } else if (key == "p") {
        real(full, v, [&](double x) {
          if (x > 1.0) return error(full, "out of range: must lie in [0, 1]");
          lp.p = x;
        }, 0.0, true);
      } else if (key == "a") {
        real(full, v, [&](double x) { lp.a = x; }, -1e300, true);
      } else if (key == "b") {
        real(full, v, [&](double x) { lp.b = x; }, -1e300, true);
      } else if (key == "knots") {
        list(full, v, lp.knots, 0.0);
      } else if (key == "values") {
        list(full, v, lp.values, 0.0);
      } else {
        error(full, "unknown key '" + key + "'");
      }
    } else if (section == "spec") {
      auto& s = spec();
      auto family = [&](std::string& dst) {
        if (v != "exponential" && v != "deterministic" && v != "uniform") {
          return error(full, "unknown period family '" + v + "'");
        }
        dst = v;
      };
      if (key == "active_family") {
        family(s.active_family);
      } else if (key == "inactive_family") {
        family(s.inactive_family);
      } else if (key == "active_mean") {
        real(full, v, [&](double x) { s.active_mean = x; }, 0.0, false);
      } else if (key == "inactive_mean") {
        real(full, v, [&](double x) { s.inactive_mean = x; }, 0.0, false);
      } else if (key == "active_mean_slope") {
        real(full, v, [&](double x) { s.active_mean_slope = x; }, -1e300, true);
      } else if (key == "inactive_mean_slope") {
        real(full, v, [&](double x) { s.inactive_mean_slope = x; }, -1e300, true);
      } else {
        error(full, "unknown key '" + key + "'");
      }
    } else {
      error(full, "key in unknown section [" + section + "]");
    }
  }

  void require(bool present, const std::string& key) {
    if (!present) {
      errors.push_back({0, key, "required for experiment kind " + to_string(config.experiment)});
    }
  }

  void check_kind() {
    const auto& c = config;
    const bool has_kind = seen.count("experiment.kind") > 0;
    if (!has_kind) {
      errors.push_back({0, "experiment.kind", "missing required key"});
      return;
    }
    const bool replicates_given = seen.count("experiment.replicates") > 0;
    switch (c.experiment) {
      case ExperimentKind::circuits:
        require(c.m_max.has_value(), "model.m_max");
        break;
      case ExperimentKind::sweep_critical:
        require(replicates_given, "experiment.replicates");
        require(c.link_prob.has_value(), "link_prob");
        require(c.window_side.has_value(), "model.window_side");
        // the half window is estimated too
        if (c.window_side && *c.window_side < 40.0) {
          errors.push_back({0, "model.window_side", "out of range: must be >= 40 for sweep_critical"});
        }
        break;
      case ExperimentKind::decay:
        require(replicates_given, "experiment.replicates");
        require(c.density.has_value(), "model.density");
        require(c.link_prob.has_value(), "link_prob");
        require(!c.h_values.empty(), "model.h_values");
        for (std::size_t i = 1; i < c.h_values.size(); ++i) {
          if (!(c.h_values[i] > c.h_values[i - 1])) {
            errors.push_back({0, "model.h_values", "must be strictly increasing"});
            break;
          }
        }
        break;
      case ExperimentKind::ratio_curve:
      case ExperimentKind::gamma_tau:
        require(replicates_given, "experiment.replicates");
        require(c.density.has_value(), "model.density");
        require(c.window_side.has_value(), "model.window_side");
        require(c.spec.has_value(), "spec");
        require(c.pairs_per_band.has_value(), "model.pairs_per_band");
        if (c.density && *c.density <= 0.0) {
          errors.push_back({0, "model.density", "out of range: must be > 0"});
        }
        if (c.window_side && *c.window_side * 0.8 <= 5.0) {
          errors.push_back({0, "model.window_side", "out of range: 0.8 * window_side must exceed 5"});
        }
        if (c.experiment == ExperimentKind::ratio_curve) {
          if (c.tau.size() > 1) errors.push_back({0, "model.tau", "ratio_curve takes a single tau"});
        } else {
          require(!c.tau.empty(), "model.tau");
          for (std::size_t i = 0; i < c.tau.size(); ++i) {
            if (!(c.tau[i] > 0.0) || (i > 0 && !(c.tau[i] < c.tau[i - 1]))) {
              errors.push_back({0, "model.tau", "gamma_tau needs positive, strictly decreasing values"});
              break;
            }
          }
        }
        break;
      case ExperimentKind::snapshot_equiv:
        require(replicates_given, "experiment.replicates");
        require(c.spec.has_value(), "spec");
        require(c.window_side.has_value(), "model.window_side");
        require(c.density.has_value() || !c.densities.empty(), "model.densities");
        break;
    }
    if (c.link_prob) {
      const auto& lp = *c.link_prob;
      if (lp.kind == "constant" && !lp.p) require(false, "link_prob.p");
      if (lp.kind == "affine" && !lp.a) require(false, "link_prob.a");
      if (lp.kind == "table") {
        if (lp.knots.empty() || lp.knots.size() != lp.values.size()) {
          errors.push_back({0, "link_prob.values", "table needs equally long knots and values"});
        } else if (!std::is_sorted(lp.knots.begin(), lp.knots.end())) {
          errors.push_back({0, "link_prob.knots", "must be sorted"});
        }
        for (double p : lp.values) {
          if (p > 1.0) {
            errors.push_back({0, "link_prob.values", "out of range: values must lie in [0, 1]"});
            break;
          }
        }
      }
    }
    if (c.spec) {
      try {
        (void)c.spec->build();
      } catch (const InvalidInput& e) {
        errors.push_back({0, "spec", e.what()});
      }
    }
  }
};

}  // namespace

std::variant<ExperimentConfig, std::vector<ConfigError>> validate_config(std::string_view text) {
  Parser parser;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++parser.line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') {
        parser.error("", "malformed section header '" + content + "'");
        continue;
      }
      section = trim(content.substr(1, content.size() - 2));
      if (section != "experiment" && section != "model" && section != "link_prob" &&
          section != "spec") {
        parser.error("[" + section + "]", "unknown section");
      }
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      parser.error("", "expected 'key = value', got '" + content + "'");
      continue;
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (section.empty()) {
      parser.error(key, "key outside of any [section]");
      continue;
    }
    parser.assign(section, key, value);
  }
  parser.line = 0;
  parser.check_kind();
  if (!parser.errors.empty()) return parser.errors;
  return parser.config;
}

std::variant<ExperimentConfig, std::vector<ConfigError>> load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::vector<ConfigError>{{0, "", "cannot read config file '" + path.string() + "'"}};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return validate_config(buf.str());
}

namespace {

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string exact_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += exact(xs[i]);
  }
  return out;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "kind = " << to_string(c.experiment) << '\n';
  out << "master_seed = " << c.master_seed << '\n';
  out << "replicates = " << c.replicates << '\n';
  out << "output_dir = " << c.output_dir << '\n';
  out << "threads = " << c.threads << '\n';
  out << "\n[model]\n";
  if (c.density) out << "density = " << exact(*c.density) << '\n';
  if (!c.densities.empty()) out << "densities = " << exact_list(c.densities) << '\n';
  if (c.window_side) out << "window_side = " << exact(*c.window_side) << '\n';
  if (!c.tau.empty()) out << "tau = " << exact_list(c.tau) << '\n';
  out << "include_tau_zero = " << (c.include_tau_zero ? "true" : "false") << '\n';
  if (c.pairs_per_band) out << "pairs_per_band = " << *c.pairs_per_band << '\n';
  out << "bands = " << c.bands << '\n';
  out << "sources_per_replicate = " << c.sources_per_replicate << '\n';
  out << "top_fraction = " << exact(c.top_fraction) << '\n';
  if (!c.h_values.empty()) out << "h_values = " << exact_list(c.h_values) << '\n';
  if (c.m_max) out << "m_max = " << *c.m_max << '\n';
  out << "tolerance = " << exact(c.tolerance) << '\n';
  if (!c.lambdas.empty()) out << "lambdas = " << exact_list(c.lambdas) << '\n';
  if (c.link_prob) {
    const auto& lp = *c.link_prob;
    out << "\n[link_prob]\nkind = " << lp.kind << '\n';
    if (lp.p) out << "p = " << exact(*lp.p) << '\n';
    if (lp.a) out << "a = " << exact(*lp.a) << '\n';
    if (lp.b) out << "b = " << exact(*lp.b) << '\n';
    if (!lp.knots.empty()) out << "knots = " << exact_list(lp.knots) << '\n';
    if (!lp.values.empty()) out << "values = " << exact_list(lp.values) << '\n';
  }
  if (c.spec) {
    const auto& s = *c.spec;
    out << "\n[spec]\n";
    out << "active_family = " << s.active_family << '\n';
    out << "active_mean = " << exact(s.active_mean) << '\n';
    out << "active_mean_slope = " << exact(s.active_mean_slope) << '\n';
    out << "inactive_family = " << s.inactive_family << '\n';
    out << "inactive_mean = " << exact(s.inactive_mean) << '\n';
    out << "inactive_mean_slope = " << exact(s.inactive_mean_slope) << '\n';
  }
  return out.str();
}

}  // namespace percfpp
