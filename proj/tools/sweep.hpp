#pragma once

#include "forge/rootsys.hpp"
#include "forge/toraldata.hpp"

#include <string>
#include <vector>

namespace forge {

struct SweepConfig {
  std::vector<RootSystemType> types;
  int primes_per_type = 2;
  std::vector<u64> primes;     // explicit primes; overrides primes_per_type when nonempty
  std::vector<int> q_powers{1, 2};
  std::vector<int> ns{1, 2};
  int jobs = 1;
  bool twist = true;
};

struct GridPoint {
  RootSystemType type;
  u64 p = 0, q = 0;
  int n = 0;
};

struct TwistCheck {
  std::int64_t i = 1;
  bool window_ok = false;
  bool genericity = false;
};

struct SweepRow {
  GridPoint point;
  std::string case_label;
  bool descent = false;
  bool genericity = false;
  int coroots = 0;
  int failing = 0;
  int twist_m = 0;
  std::vector<TwistCheck> twists;
  bool twist_pass = true;
  std::string error;
  bool pass = false;
  double ms = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;  // skipped grid points
  bool pass() const;
};

// Expands the grid; points with p <= Cox(type) are skipped with a warning.
std::vector<GridPoint> sweep_grid(const SweepConfig& cfg, std::vector<std::string>* warnings = nullptr);
SweepRow run_grid_point(const GridPoint& g, bool twist);
SweepResult run_sweep(const SweepConfig& cfg);

// Deterministic reports: no timings, fixed row order.
std::string sweep_report_json(const SweepResult& r);
std::string sweep_report_text(const SweepResult& r);
// Console table with a timing column.
std::string sweep_console_table(const SweepResult& r);

} // namespace forge
