#include "kolmo/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kolmo/fields_builtin.hpp"

namespace kolmo {

namespace {

using nlohmann::json;

Point parse_point(const json& j, int d, const std::string& where) {
  if (!j.is_object() || !j.contains("t") || !j.contains("x"))
    fail(ErrorCode::ConfigError, where + ": expected {\"t\": ..., \"x\": [...]}");
  Point p;
  p.t = j.at("t").get<double>();
  const auto& xs = j.at("x");
  if (!xs.is_array() || static_cast<int>(xs.size()) != d)
    fail(ErrorCode::ConfigError, where + ".x: expected " + std::to_string(d) + " entries");
  p.x.resize(d);
  for (int i = 0; i < d; ++i) p.x(i) = xs.at(i).get<double>();
  return p;
}

GroupSpec parse_group(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ConfigError, "group: expected an object");
  if (j.contains("preset")) {
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "prototype" || preset == "langevin") return GroupSpec::prototype();
    fail(ErrorCode::ConfigError, "group.preset: unknown preset '" + preset + "'");
  }
  if (!j.contains("matrix") || !j.contains("layers"))
    fail(ErrorCode::ConfigError, "group: needs either a preset or matrix + layers");
  std::vector<int> layers = j.at("layers").get<std::vector<int>>();
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || rows.empty())
    fail(ErrorCode::ConfigError, "group.matrix: expected an array of rows");
  const int d = static_cast<int>(rows.size());
  Eigen::MatrixXd B(d, d);
  for (int i = 0; i < d; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      fail(ErrorCode::ConfigError,
           "group.matrix: row " + std::to_string(i + 1) + " must have " + std::to_string(d) +
               " entries");
    for (int c = 0; c < d; ++c) B(i, c) = row.at(c).get<double>();
  }
  return GroupSpec::validate(B, layers);
}

std::vector<double> parse_rho(const json& j) {
  std::vector<double> grid;
  if (j.is_array()) {
    grid = j.get<std::vector<double>>();
  } else if (j.is_object()) {
    const double max = j.at("max").get<double>();
    const double min = j.at("min").get<double>();
    const int count = j.at("count").get<int>();
    if (!(min > 0.0) || !(max > min) || count < 2)
      fail(ErrorCode::ConfigError, "rho: need 0 < min < max and count >= 2");
    for (int i = 0; i < count; ++i)
      grid.push_back(std::pow(10.0, std::log10(max) +
                                        (std::log10(min) - std::log10(max)) * i / (count - 1)));
  } else {
    fail(ErrorCode::ConfigError, "rho: expected {max, min, count} or an explicit array");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) fail(ErrorCode::ConfigError, "rho: all radii must be positive");
    if (i > 0 && !(grid[i] < grid[i - 1]))
      fail(ErrorCode::ConfigError, "rho: grid must decrease strictly toward 0");
  }
  return grid;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }

  try {
    if (!j.contains("schema_version"))
      fail(ErrorCode::ConfigError, "schema_version: missing");
    if (j.at("schema_version").get<int>() != 1)
      fail(ErrorCode::ConfigError, "schema_version: expected 1");
    if (!j.contains("group")) fail(ErrorCode::ConfigError, "group: missing");

    ExperimentConfig cfg(parse_group(j.at("group")));
    const int d = cfg.group.d();

    if (j.contains("experiment")) cfg.name = j.at("experiment").get<std::string>();
    if (j.contains("field")) cfg.field = j.at("field").get<std::string>();
    if (j.contains("orders")) {
      cfg.orders = j.at("orders").get<std::vector<int>>();
      if (cfg.orders.empty()) fail(ErrorCode::ConfigError, "orders: must be nonempty");
      for (int n : cfg.orders)
        if (n < 0) fail(ErrorCode::ConfigError, "orders: must be nonnegative");
    }
    if (j.contains("alpha")) {
      cfg.alpha = j.at("alpha").get<double>();
      if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0)
        fail(ErrorCode::ConfigError, "alpha: expected a value in (0, 1]");
    }
    if (j.contains("anchor")) cfg.anchor = parse_point(j.at("anchor"), d, "anchor");
    if (j.contains("rho")) cfg.rho_grid = parse_rho(j.at("rho"));
    if (j.contains("directions")) {
      cfg.directions = j.at("directions").get<int>();
      if (cfg.directions < 1) fail(ErrorCode::ConfigError, "directions: must be >= 1");
    }
    if (j.contains("equal_time")) cfg.equal_time = j.at("equal_time").get<bool>();
    if (j.contains("pairs")) {
      cfg.pairs = j.at("pairs").get<int>();
      if (cfg.pairs < 1) fail(ErrorCode::ConfigError, "pairs: must be >= 1");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("slope_tolerance")) {
      cfg.slope_tolerance = j.at("slope_tolerance").get<double>();
      if (!(cfg.slope_tolerance >= 0.0))
        fail(ErrorCode::ConfigError, "slope_tolerance: must be >= 0");
    }
    if (j.contains("output")) {
      const auto& out = j.at("output");
      if (out.contains("path")) cfg.output.path = out.at("path").get<std::string>();
      if (out.contains("format")) {
        const std::string f = out.at("format").get<std::string>();
        if (f == "csv")
          cfg.output.format = OutputSpec::Format::csv;
        else if (f == "json")
          cfg.output.format = OutputSpec::Format::json;
        else
          fail(ErrorCode::ConfigError, "output.format: expected csv or json");
      }
    }
    if (j.contains("connect")) {
      const auto& c = j.at("connect");
      ConnectConfig cc;
      cc.level = c.value("level", 0);
      if (cc.level < 0 || cc.level > cfg.group.r())
        fail(ErrorCode::ConfigError, "connect.level: outside 0..r");
      const auto ys = c.at("y").get<std::vector<double>>();
      if (static_cast<int>(ys.size()) != d)
        fail(ErrorCode::ConfigError, "connect.y: expected " + std::to_string(d) + " entries");
      cc.y.resize(d);
      for (int i = 0; i < d; ++i) cc.y(i) = ys[i];
      cc.zeta = c.contains("zeta") ? parse_point(c.at("zeta"), d, "connect.zeta") : Point::zero(d);
      cfg.connect = cc;
    }
    if (j.contains("holder")) {
      const auto& h = j.at("holder");
      HolderConfig hc;
      hc.fields = h.at("fields").get<std::vector<std::string>>();
      if (hc.fields.empty()) fail(ErrorCode::ConfigError, "holder.fields: must be nonempty");
      hc.alphas = h.at("alphas").get<std::vector<double>>();
      if (hc.alphas.empty()) fail(ErrorCode::ConfigError, "holder.alphas: must be nonempty");
      hc.region.center = h.contains("region") && h.at("region").contains("center")
                             ? parse_point(h.at("region").at("center"), d, "holder.region.center")
                             : Point::zero(d);
      if (h.contains("region") && h.at("region").contains("halfwidth"))
        hc.region.halfwidth = h.at("region").at("halfwidth").get<double>();
      if (!(hc.region.halfwidth > 0.0))
        fail(ErrorCode::ConfigError, "holder.region.halfwidth: must be > 0");
      hc.samples = h.value("samples", 1000);
      if (hc.samples < 1) fail(ErrorCode::ConfigError, "holder.samples: must be >= 1");
      cfg.holder = hc;
    }
    if (j.contains("point")) cfg.point = parse_point(j.at("point"), d, "point");

    // Field names resolve against the group; finite declared smoothness caps
    // the usable orders.
    const ScalarField probe = make_field(cfg.group, cfg.field);
    for (int n : cfg.orders)
      if (n > probe.smooth_order)
        fail(ErrorCode::ConfigError, "orders: n = " + std::to_string(n) +
                                         " exceeds the declared smoothness of '" + cfg.field +
                                         "'");
    return cfg;
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (!fs::exists(p) && p.is_relative()) {
    if (const char* dir = std::getenv("KOLMO_CONFIG_DIR")) {
      const fs::path alt = fs::path(dir) / p;
      if (fs::exists(alt)) p = alt;
    }
  }
  std::ifstream in(p);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace kolmo
