#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kolmo/group.hpp"
#include "kolmo/regularity.hpp"

namespace kolmo {

struct OutputSpec {
  std::string path;  // empty -> stdout
  enum class Format { csv, json } format = Format::csv;
};

struct ConnectConfig {
  int level = 0;
  Eigen::VectorXd y;
  Point zeta;
};

struct HolderConfig {
  std::vector<std::string> fields;
  std::vector<double> alphas;
  Region region;
  long samples = 1000;
};

/// One experiment description; loaded from a JSON file with a mandatory
/// schema_version key.  The rho grid is stored strictly decreasing toward 0.
struct ExperimentConfig {
  explicit ExperimentConfig(GroupSpec g) : group(std::move(g)) {
    anchor = Point::zero(group.d());
  }

  std::string name = "experiment";
  GroupSpec group;
  std::string field = "sin_cos_poly";
  std::vector<int> orders = {0, 1, 2};
  double alpha = 1.0;
  Point anchor;
  std::vector<double> rho_grid;
  int directions = 8;
  bool equal_time = false;
  int pairs = 1000;
  std::uint64_t seed = 0;
  double slope_tolerance = 0.15;
  OutputSpec output;
  std::optional<ConnectConfig> connect;
  std::optional<HolderConfig> holder;
  std::optional<Point> point;  // taylor-eval target
};

/// Parses and validates a config; every failure is reported as a ConfigError
/// mentioning the offending key.
ExperimentConfig parse_config(const std::string& json_text);

/// Reads the file (consulting the KOLMO_CONFIG_DIR directory for relative
/// paths that do not resolve locally) and parses it.
ExperimentConfig load_config(const std::string& path);

}  // namespace kolmo
