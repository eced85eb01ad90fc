#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kolmo/config.hpp"
#include "kolmo/fitting.hpp"
#include "kolmo/paths.hpp"

namespace kolmo {

struct RemainderRow {
  double rho = 0.0;
  double remainder = 0.0;
  double norm = 0.0;
};

struct ConvergenceCell {
  int n = 0;
  int direction = 0;
  std::vector<RemainderRow> rows;
  LineFit fit;
  int points_used = 0;
  bool exact = false;  // remainders at rounding level, fit skipped
  double threshold = 0.0;
  bool pass = false;
};

struct ConvergenceReport {
  std::string experiment;
  double alpha = 1.0;
  std::vector<ConvergenceCell> cells;
  bool all_pass = true;
};

/// Evaluates the remainder of T_n at z = anchor o D(rho) w across the rho
/// grid for each order and random unit direction w, then fits the decay
/// slope; a cell passes when slope >= n + alpha - slope_tolerance.  Cells are
/// computed into pre-indexed slots, so the report does not depend on `jobs`.
ConvergenceReport run_converge(const ExperimentConfig& cfg, int jobs);

struct BonfiglioliRow {
  int n = 0;
  double max_abs_diff = 0.0;
  long compact_terms = 0;
  long permutation_terms = 0;
  double tolerance = 0.0;
  bool pass = false;
};

struct BonfiglioliReport {
  std::string experiment;
  long pairs = 0;
  std::vector<BonfiglioliRow> rows;
  bool all_pass = true;
};

/// Compares the compact Taylor polynomial with the permutation form on the
/// prototype group over random point pairs, n = 0..4.
BonfiglioliReport run_compare_bonfiglioli(const ExperimentConfig& cfg);

struct ConnectWaypointRow {
  int step = -1;     // level k of the gamma segment; -1 marks the start point
  int index = 0;     // running waypoint index
  Point point;
};

struct ConnectDemoReport {
  std::string experiment;
  int d = 0;
  int level = 0;
  std::vector<double> deltas;
  std::vector<ConnectWaypointRow> rows;
  Point endpoint;
  Point target;
  double endpoint_error = 0.0;  // max-norm coordinate error
  bool pass = false;
};

ConnectDemoReport run_connect_demo(const ExperimentConfig& cfg);

struct HolderCell {
  std::string field;
  double alpha = 0.0;
  std::string flow;  // "Y", "X1", ..., "pair"
  SeminormEstimate estimate;
};

struct HolderReport {
  std::string experiment;
  std::vector<HolderCell> cells;
};

HolderReport run_holder_scan(const ExperimentConfig& cfg);

struct TaylorEvalRow {
  int n = 0;
  double taylor = 0.0;
  double u_at_z = 0.0;
  double remainder = 0.0;
};

struct TaylorEvalReport {
  std::string experiment;
  std::vector<TaylorEvalRow> rows;
};

TaylorEvalReport run_taylor_eval(const ExperimentConfig& cfg);

void write_csv(const ConvergenceReport&, std::ostream&);
void write_json(const ConvergenceReport&, std::ostream&);
void write_csv(const BonfiglioliReport&, std::ostream&);
void write_json(const BonfiglioliReport&, std::ostream&);
void write_csv(const ConnectDemoReport&, std::ostream&);
void write_json(const ConnectDemoReport&, std::ostream&);
void write_csv(const HolderReport&, std::ostream&);
void write_json(const HolderReport&, std::ostream&);
void write_csv(const TaylorEvalReport&, std::ostream&);
void write_json(const TaylorEvalReport&, std::ostream&);

void write_group_info_text(const GroupSpec&, std::ostream&);
void write_group_info_json(const GroupSpec&, std::ostream&);

/// Fixed-format float used in every CSV so identical runs stay byte-identical.
std::string csv_double(double v);

}  // namespace kolmo
