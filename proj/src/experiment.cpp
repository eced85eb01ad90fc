#include "kolmo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "kolmo/fields_builtin.hpp"
#include "kolmo/rng.hpp"

namespace kolmo {

namespace {

using ordered_json = nlohmann::ordered_json;

void parallel_for(int jobs, int count, const std::function<void(int)>& body) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  auto worker = [&] {
    int i;
    while ((i = next.fetch_add(1)) < count) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(jobs, count); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// Random directions with unit quasi-norm, drawn once from the master seed.
std::vector<Point> draw_directions(const ExperimentConfig& cfg) {
  const GroupSpec& g = cfg.group;
  HashRng rng(cfg.seed, 0xD17ECu);
  std::vector<Point> dirs;
  dirs.reserve(cfg.directions);
  for (int j = 0; j < cfg.directions; ++j) {
    const std::uint64_t base = static_cast<std::uint64_t>(j) * (g.d() + 1);
    Point w;
    w.t = cfg.equal_time ? 0.0 : rng.uniform(base, -1.0, 1.0);
    w.x.resize(g.d());
    for (int c = 0; c < g.d(); ++c) w.x(c) = rng.uniform(base + 1 + c, -1.0, 1.0);
    double nrm = norm(g, w);
    if (nrm < 1e-9) {
      w.t = 0.0;
      w.x.setZero();
      w.x(0) = 1.0;
      nrm = 1.0;
    }
    dirs.push_back(dilate(g, 1.0 / nrm, w));
  }
  return dirs;
}

// Least-squares decay slope with the residual-spike rule: the two smallest
// radii are dropped when their residual spikes above the bulk (rounding or FD
// noise flattening the tail).
void fit_cell(ConvergenceCell& cell, double alpha, double tolerance) {
  std::vector<double> xs, ys;
  for (const auto& row : cell.rows) {
    if (std::abs(row.remainder) > 0.0 && row.norm > 0.0) {
      xs.push_back(std::log10(row.norm));
      ys.push_back(std::log10(std::abs(row.remainder)));
    }
  }
  cell.threshold = cell.n + alpha - tolerance;
  if (xs.size() < 3) {
    cell.exact = true;
    cell.pass = true;
    return;
  }
  LineFit fit = fit_line(xs, ys);
  // Rows are ordered by decreasing rho, so the smallest radii sit at the end.
  const std::size_t m = xs.size();
  if (m >= 5) {
    double ss = 0.0;
    for (std::size_t i = 0; i + 2 < m; ++i) {
      const double e = ys[i] - (fit.slope * xs[i] + fit.intercept);
      ss += e * e;
    }
    const double rms = std::sqrt(ss / (m - 2));
    const double cut = std::max(3.0 * rms, 0.1);
    std::size_t keep = m;
    const double resid_last = std::abs(ys[m - 1] - (fit.slope * xs[m - 1] + fit.intercept));
    if (resid_last > cut) {
      keep = m - 1;
      const double resid_prev = std::abs(ys[m - 2] - (fit.slope * xs[m - 2] + fit.intercept));
      if (resid_prev > cut) keep = m - 2;
    }
    if (keep < m) {
      xs.resize(keep);
      ys.resize(keep);
      fit = fit_line(xs, ys);
    }
  }
  cell.fit = fit;
  cell.points_used = fit.points;
  cell.pass = fit.slope >= cell.threshold;
}

void require(bool cond, const std::string& message) {
  if (!cond) fail(ErrorCode::ConfigError, message);
}

}  // namespace

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ConvergenceReport run_converge(const ExperimentConfig& cfg, int jobs) {
  const GroupSpec& g = cfg.group;
  require(!cfg.rho_grid.empty(), "rho: required by converge");
  const ScalarField field = make_field(g, cfg.field);
  if (field.singular_distance && field.singular_distance(cfg.anchor) < 1e-3)
    fail(ErrorCode::ConfigError,
         "anchor lies on the singular set of field '" + cfg.field + "'");

  const std::vector<Point> dirs = draw_directions(cfg);
  ConvergenceReport report;
  report.experiment = cfg.name;
  report.alpha = cfg.alpha;
  report.cells.resize(cfg.orders.size() * dirs.size());

  const double scale = std::max(1.0, std::abs(field.eval(cfg.anchor)));
  parallel_for(jobs, static_cast<int>(report.cells.size()), [&](int idx) {
    ConvergenceCell& cell = report.cells[idx];
    cell.n = cfg.orders[idx / dirs.size()];
    cell.direction = static_cast<int>(idx % dirs.size());
    const Point& w = dirs[cell.direction];
    const TaylorPoly poly = taylor_poly(g, field, cell.n, cfg.anchor);
    bool tiny = true;
    for (double rho : cfg.rho_grid) {
      const Point z = compose(g, cfg.anchor, dilate(g, rho, w));
      RemainderRow row;
      row.rho = rho;
      row.remainder = field.eval(z) - taylor_eval(g, poly, z);
      row.norm = norm(g, compose(g, inverse(g, cfg.anchor), z));
      tiny = tiny && std::abs(row.remainder) <= 1e-13 * scale;
      cell.rows.push_back(row);
    }
    if (tiny) {
      cell.exact = true;
      cell.pass = true;
      cell.threshold = cell.n + cfg.alpha - cfg.slope_tolerance;
      return;
    }
    fit_cell(cell, cfg.alpha, cfg.slope_tolerance);
  });

  for (const auto& cell : report.cells) report.all_pass = report.all_pass && cell.pass;
  return report;
}

BonfiglioliReport run_compare_bonfiglioli(const ExperimentConfig& cfg) {
  const GroupSpec& g = cfg.group;
  if (!is_prototype(g))
    fail(ErrorCode::UnsupportedGroup, "compare-bonfiglioli runs on the prototype group");
  const ScalarField field = make_field(g, cfg.field);

  BonfiglioliReport report;
  report.experiment = cfg.name;
  report.pairs = cfg.pairs;
  for (int n = 0; n <= 4; ++n) {
    BonfiglioliRow row;
    row.n = n;
    row.compact_terms = static_cast<long>(enumerate_terms(g, n).size());
    row.permutation_terms = bonfiglioli_term_count(n);
    row.tolerance = (n <= 2) ? 1e-14 : 1e-10;
    report.rows.push_back(row);
  }

  HashRng rng(cfg.seed, 0xB0FEu);
  for (int i = 0; i < cfg.pairs; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * 2 * (g.d() + 1);
    Point zeta, z;
    zeta.t = rng.uniform(base, -1.0, 1.0);
    z.t = rng.uniform(base + g.d() + 1, -1.0, 1.0);
    zeta.x.resize(g.d());
    z.x.resize(g.d());
    for (int c = 0; c < g.d(); ++c) {
      zeta.x(c) = rng.uniform(base + 1 + c, -1.0, 1.0);
      z.x(c) = rng.uniform(base + g.d() + 2 + c, -1.0, 1.0);
    }
    if (field.singular_distance && field.singular_distance(zeta) < 0.05) continue;
    for (auto& row : report.rows) {
      const double tn = taylor_eval(g, taylor_poly(g, field, row.n, zeta), z);
      const double pn = bonfiglioli_prototype(g, field, row.n, zeta, z);
      row.max_abs_diff = std::max(row.max_abs_diff, std::abs(tn - pn));
    }
  }
  for (auto& row : report.rows) {
    row.pass = row.max_abs_diff < row.tolerance;
    report.all_pass = report.all_pass && row.pass;
  }
  return report;
}

ConnectDemoReport run_connect_demo(const ExperimentConfig& cfg) {
  require(cfg.connect.has_value(), "connect: section required by connect-demo");
  const GroupSpec& g = cfg.group;
  const ConnectConfig& cc = *cfg.connect;

  ConnectionResult conn = connect(g, cc.level, cc.zeta, cc.y);
  ConnectDemoReport report;
  report.experiment = cfg.name;
  report.d = g.d();
  report.level = cc.level;
  report.deltas = conn.deltas;
  report.rows.push_back(ConnectWaypointRow{-1, 0, cc.zeta});
  int index = 1;
  for (std::size_t s = 0; s < conn.segments.size(); ++s) {
    const int k = cc.level + static_cast<int>(s);
    const auto& wps = conn.segments[s].waypoints;
    for (std::size_t i = 1; i < wps.size(); ++i)  // first waypoint repeats the previous end
      report.rows.push_back(ConnectWaypointRow{k, index++, wps[i]});
  }
  report.endpoint = conn.points.back();
  report.target = Point{cc.zeta.t, cc.zeta.x + cc.y};
  double err = std::abs(report.endpoint.t - report.target.t);
  for (int c = 0; c < g.d(); ++c)
    err = std::max(err, std::abs(report.endpoint.x(c) - report.target.x(c)));
  report.endpoint_error = err;
  report.pass = err < 1e-10;
  return report;
}

HolderReport run_holder_scan(const ExperimentConfig& cfg) {
  require(cfg.holder.has_value(), "holder: section required by holder-scan");
  const GroupSpec& g = cfg.group;
  const HolderConfig& hc = *cfg.holder;

  HolderReport report;
  report.experiment = cfg.name;
  for (const auto& name : hc.fields) {
    const ScalarField u = make_field(g, name);
    for (double alpha : hc.alphas) {
      HolderClassification cls = classify_C0alpha(g, u, alpha, hc.region, hc.samples, cfg.seed);
      for (std::size_t p = 0; p < cls.parts.size(); ++p) {
        HolderCell cell;
        cell.field = name;
        cell.alpha = alpha;
        cell.flow = (p == 0) ? "Y" : "X" + std::to_string(p);
        cell.estimate = cls.parts[p];
        report.cells.push_back(std::move(cell));
      }
      HolderCell pair;
      pair.field = name;
      pair.alpha = alpha;
      pair.flow = "pair";
      pair.estimate = cls.pair_quotient;
      report.cells.push_back(std::move(pair));
    }
  }
  return report;
}

TaylorEvalReport run_taylor_eval(const ExperimentConfig& cfg) {
  require(cfg.point.has_value(), "point: required by taylor-eval");
  const GroupSpec& g = cfg.group;
  const ScalarField field = make_field(g, cfg.field);
  if (field.singular_distance && field.singular_distance(cfg.anchor) < 1e-3)
    fail(ErrorCode::ConfigError,
         "anchor lies on the singular set of field '" + cfg.field + "'");

  TaylorEvalReport report;
  report.experiment = cfg.name;
  for (int n : cfg.orders) {
    TaylorEvalRow row;
    row.n = n;
    row.taylor = taylor_eval(g, taylor_poly(g, field, n, cfg.anchor), *cfg.point);
    row.u_at_z = field.eval(*cfg.point);
    row.remainder = row.u_at_z - row.taylor;
    report.rows.push_back(row);
  }
  return report;
}

// ---------------------------------------------------------------------------
// writers

void write_csv(const ConvergenceReport& r, std::ostream& out) {
  out << "experiment,n,alpha,direction,rho,remainder,norm,slope\n";
  for (const auto& cell : r.cells) {
    for (std::size_t i = 0; i < cell.rows.size(); ++i) {
      const auto& row = cell.rows[i];
      out << r.experiment << ',' << cell.n << ',' << csv_double(r.alpha) << ','
          << cell.direction << ',' << csv_double(row.rho) << ',' << csv_double(row.remainder)
          << ',' << csv_double(row.norm) << ',';
      if (i + 1 == cell.rows.size()) out << (cell.exact ? "exact" : csv_double(cell.fit.slope));
      out << '\n';
    }
  }
}

void write_json(const ConvergenceReport& r, std::ostream& out) {
  ordered_json j;
  j["experiment"] = r.experiment;
  j["alpha"] = r.alpha;
  j["all_pass"] = r.all_pass;
  j["cells"] = ordered_json::array();
  for (const auto& cell : r.cells) {
    ordered_json c;
    c["n"] = cell.n;
    c["direction"] = cell.direction;
    c["exact"] = cell.exact;
    c["slope"] = cell.fit.slope;
    c["intercept"] = cell.fit.intercept;
    c["rms_residual"] = cell.fit.rms_residual;
    c["points_used"] = cell.points_used;
    c["threshold"] = cell.threshold;
    c["pass"] = cell.pass;
    c["rows"] = ordered_json::array();
    for (const auto& row : cell.rows)
      c["rows"].push_back({{"rho", row.rho}, {"remainder", row.remainder}, {"norm", row.norm}});
    j["cells"].push_back(std::move(c));
  }
  out << j.dump(2) << '\n';
}

void write_csv(const BonfiglioliReport& r, std::ostream& out) {
  out << "experiment,n,pairs,max_abs_diff,compact_terms,permutation_terms,tolerance,pass\n";
  for (const auto& row : r.rows)
    out << r.experiment << ',' << row.n << ',' << r.pairs << ',' << csv_double(row.max_abs_diff)
        << ',' << row.compact_terms << ',' << row.permutation_terms << ','
        << csv_double(row.tolerance) << ',' << (row.pass ? "1" : "0") << '\n';
}

void write_json(const BonfiglioliReport& r, std::ostream& out) {
  ordered_json j;
  j["experiment"] = r.experiment;
  j["pairs"] = r.pairs;
  j["all_pass"] = r.all_pass;
  j["rows"] = ordered_json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"n", row.n},
                         {"max_abs_diff", row.max_abs_diff},
                         {"compact_terms", row.compact_terms},
                         {"permutation_terms", row.permutation_terms},
                         {"tolerance", row.tolerance},
                         {"pass", row.pass}});
  out << j.dump(2) << '\n';
}

void write_csv(const ConnectDemoReport& r, std::ostream& out) {
  out << "experiment,step,index,t";
  for (int c = 1; c <= r.d; ++c) out << ",x" << c;
  out << '\n';
  for (const auto& row : r.rows) {
    out << r.experiment << ',' << row.step << ',' << row.index << ',' << csv_double(row.point.t);
    for (int c = 0; c < r.d; ++c) out << ',' << csv_double(row.point.x(c));
    out << '\n';
  }
}

void write_json(const ConnectDemoReport& r, std::ostream& out) {
  ordered_json j;
  j["experiment"] = r.experiment;
  j["level"] = r.level;
  j["deltas"] = r.deltas;
  j["endpoint_error"] = r.endpoint_error;
  j["pass"] = r.pass;
  j["waypoints"] = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json w;
    w["step"] = row.step;
    w["index"] = row.index;
    w["t"] = row.point.t;
    w["x"] = std::vector<double>(row.point.x.data(), row.point.x.data() + row.point.x.size());
    j["waypoints"].push_back(std::move(w));
  }
  out << j.dump(2) << '\n';
}

void write_csv(const HolderReport& r, std::ostream& out) {
  out << "experiment,field,alpha,flow,delta,quotient,value,trend_slope,saturated\n";
  for (const auto& cell : r.cells) {
    const auto& est = cell.estimate;
    if (est.per_delta.empty()) {
      out << r.experiment << ',' << cell.field << ',' << csv_double(cell.alpha) << ','
          << cell.flow << ",0," << csv_double(est.value) << ',' << csv_double(est.value) << ','
          << csv_double(est.trend_slope) << ',' << (est.saturated ? "1" : "0") << '\n';
      continue;
    }
    for (std::size_t i = 0; i < est.per_delta.size(); ++i) {
      out << r.experiment << ',' << cell.field << ',' << csv_double(cell.alpha) << ','
          << cell.flow << ',' << csv_double(est.per_delta[i].first) << ','
          << csv_double(est.per_delta[i].second);
      if (i + 1 == est.per_delta.size())
        out << ',' << csv_double(est.value) << ',' << csv_double(est.trend_slope) << ','
            << (est.saturated ? "1" : "0");
      else
        out << ",,,";
      out << '\n';
    }
  }
}

void write_json(const HolderReport& r, std::ostream& out) {
  ordered_json j;
  j["experiment"] = r.experiment;
  j["cells"] = ordered_json::array();
  for (const auto& cell : r.cells) {
    ordered_json c;
    c["field"] = cell.field;
    c["alpha"] = cell.alpha;
    c["flow"] = cell.flow;
    c["value"] = cell.estimate.value;
    c["samples"] = cell.estimate.sample_count;
    c["saturated"] = cell.estimate.saturated;
    c["trend_slope"] = cell.estimate.trend_slope;
    c["per_delta"] = ordered_json::array();
    for (const auto& [delta, q] : cell.estimate.per_delta)
      c["per_delta"].push_back({{"delta", delta}, {"quotient", q}});
    j["cells"].push_back(std::move(c));
  }
  out << j.dump(2) << '\n';
}

void write_csv(const TaylorEvalReport& r, std::ostream& out) {
  out << "experiment,n,taylor,u,remainder\n";
  for (const auto& row : r.rows)
    out << r.experiment << ',' << row.n << ',' << csv_double(row.taylor) << ','
        << csv_double(row.u_at_z) << ',' << csv_double(row.remainder) << '\n';
}

void write_json(const TaylorEvalReport& r, std::ostream& out) {
  ordered_json j;
  j["experiment"] = r.experiment;
  j["rows"] = ordered_json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"n", row.n},
                         {"taylor", row.taylor},
                         {"u", row.u_at_z},
                         {"remainder", row.remainder}});
  out << j.dump(2) << '\n';
}

void write_group_info_text(const GroupSpec& g, std::ostream& out) {
  out << "d = " << g.d() << "\nr = " << g.r() << "\nlayers = (";
  for (std::size_t i = 0; i < g.layers().size(); ++i)
    out << (i ? ", " : "") << g.layers()[i];
  out << ")\nq = (";
  for (int j = 0; j < g.d(); ++j) out << (j ? ", " : "") << g.dilation_exponents()[j];
  out << ")\n";
  for (int n = 0; n <= g.r(); ++n) {
    out << "B^" << n << " =\n";
    const auto& m = g.matrix_power(n);
    for (int row = 0; row < g.d(); ++row) {
      out << " ";
      for (int col = 0; col < g.d(); ++col) out << ' ' << csv_double(m(row, col));
      out << '\n';
    }
  }
  if (g.r() == 0) {
    out << "no sub-diagonal blocks (parabolic case)\n";
    return;
  }
  for (int n = 1; n <= g.r(); ++n) {
    const PivotSet piv = pivot_columns(g, n);
    out << "Pi_{B," << n << "} = {";
    for (std::size_t i = 0; i < piv.columns.size(); ++i)
      out << (i ? ", " : "") << (piv.columns[i] + 1);
    out << "} (1-based layer-0 columns)\n";
  }
}

void write_group_info_json(const GroupSpec& g, std::ostream& out) {
  ordered_json j;
  j["d"] = g.d();
  j["r"] = g.r();
  j["layers"] = g.layers();
  j["q"] = g.dilation_exponents();
  j["powers"] = ordered_json::array();
  for (int n = 0; n <= g.r(); ++n) {
    const auto& m = g.matrix_power(n);
    ordered_json rows = ordered_json::array();
    for (int row = 0; row < g.d(); ++row) {
      std::vector<double> vals(g.d());
      for (int col = 0; col < g.d(); ++col) vals[col] = m(row, col);
      rows.push_back(vals);
    }
    j["powers"].push_back(std::move(rows));
  }
  j["pivots"] = ordered_json::array();
  for (int n = 1; n <= g.r(); ++n) {
    const PivotSet piv = pivot_columns(g, n);
    std::vector<int> cols;
    for (int c : piv.columns) cols.push_back(c + 1);
    j["pivots"].push_back({{"n", n}, {"columns", cols}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace kolmo
