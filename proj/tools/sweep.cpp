#include "sweep.hpp"

#include "forge/error.hpp"
#include "forge/serialize.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace forge {

bool SweepResult::pass() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.pass; });
}

std::vector<GridPoint> sweep_grid(const SweepConfig& cfg, std::vector<std::string>* warnings) {
  std::vector<GridPoint> grid;
  for (const auto& t : cfg.types) {
    if (!is_valid(t)) throw InvalidInput("invalid root system type " + t.name());
    const u64 cox = static_cast<u64>(coxeter_number(t));
    std::vector<u64> primes;
    if (!cfg.primes.empty()) {
      for (u64 p : cfg.primes) {
        if (!is_prime(p)) throw InvalidInput("sweep: " + std::to_string(p) + " is not prime");
        if (p <= cox) {
          if (warnings) warnings->push_back("skipped " + t.name() + " p=" + std::to_string(p) + ": p <= Cox");
          continue;
        }
        primes.push_back(p);
      }
    } else {
      u64 p = cox;
      for (int k = 0; k < cfg.primes_per_type; ++k) {
        p = next_prime(p);
        primes.push_back(p);
      }
    }
    for (u64 p : primes)
      for (int f : cfg.q_powers)
        for (int n : cfg.ns) grid.push_back(GridPoint{t, p, ipow(p, static_cast<u64>(f)), n});
  }
  return grid;
}

SweepRow run_grid_point(const GridPoint& g, bool twist) {
  SweepRow row;
  row.point = g;
  auto t0 = std::chrono::steady_clock::now();
  try {
    RootSystem rs = build_root_system(g.type);
    ZeroToralDatum d = build_generic_element(g.type, trivial_automorphism(rs), g.p, g.q, g.n);
    GenericityReport rep = verify_datum(d);
    row.case_label = d.case_label;
    row.descent = rep.descent_pass();
    row.genericity = rep.genericity_pass();
    row.coroots = static_cast<int>(rep.coroots.size());
    row.failing = static_cast<int>(rep.failing_coroots().size());
    row.pass = rep.pass();
    if (twist) {
      // level m of the window containing the depth, e_F = 1
      Rational half = d.depth / 2;
      std::int64_t m = half.numerator() / half.denominator();
      if (Rational(m) != half) m += 1;
      row.twist_m = static_cast<int>(m);
      for (std::int64_t k = 0; k < m; ++k)
        for (std::int64_t u : {1, 2}) {
          std::int64_t i = u * static_cast<std::int64_t>(ipow(g.p, static_cast<u64>(k)));
          TwistResult tr = twist_datum(d, i, static_cast<int>(m), 1);
          TwistCheck tc{i, tr.window_ok, tr.report.pass()};
          row.twist_pass = row.twist_pass && tc.window_ok && tc.genericity;
          row.twists.push_back(tc);
        }
      row.pass = row.pass && row.twist_pass;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
    row.pass = false;
  }
  row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  SweepResult res;
  std::vector<GridPoint> grid = sweep_grid(cfg, &res.warnings);
  if (grid.empty()) throw InvalidInput("sweep: empty grid");
  res.rows.resize(grid.size());
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(grid.size())));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < grid.size(); i = next++) res.rows[i] = run_grid_point(grid[i], cfg.twist);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return res;
}

std::string sweep_report_json(const SweepResult& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"type", row.point.type.name()},
           {"p", row.point.p},
           {"q", row.point.q},
           {"n", row.point.n},
           {"case", row.case_label},
           {"descent", row.descent},
           {"genericity", row.genericity},
           {"coroots", row.coroots},
           {"failing_coroots", row.failing}};
    if (!row.twists.empty()) {
      Json tw = Json::array();
      for (const auto& t : row.twists)
        tw.push_back(Json{{"i", t.i}, {"window", t.window_ok}, {"genericity", t.genericity}});
      j["twist_m"] = row.twist_m;
      j["twists"] = tw;
    }
    if (!row.error.empty()) j["error"] = row.error;
    j["pass"] = row.pass;
    rows.push_back(j);
  }
  Json out{{"rows", rows}, {"warnings", r.warnings}, {"pass", r.pass()}};
  return out.dump(2) + "\n";
}

namespace {

std::string table(const SweepResult& r, bool timings) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-5s %5s %8s %3s %-12s %-7s %-10s %-6s %-5s", "type", "p", "q", "n", "case",
                "descent", "genericity", "twist", "pass");
  os << buf;
  if (timings) os << "       ms";
  os << "\n";
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%-5s %5llu %8llu %3d %-12s %-7s %-10s %-6s %-5s", row.point.type.name().c_str(),
                  static_cast<unsigned long long>(row.point.p), static_cast<unsigned long long>(row.point.q),
                  row.point.n, row.case_label.empty() ? "-" : row.case_label.c_str(), row.descent ? "ok" : "FAIL",
                  row.genericity ? "ok" : "FAIL", row.twists.empty() ? "-" : (row.twist_pass ? "ok" : "FAIL"),
                  row.pass ? "PASS" : "FAIL");
    os << buf;
    if (timings) {
      std::snprintf(buf, sizeof buf, " %8.1f", row.ms);
      os << buf;
    }
    if (!row.error.empty()) os << "  error: " << row.error;
    os << "\n";
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  size_t passed = std::count_if(r.rows.begin(), r.rows.end(), [](const SweepRow& x) { return x.pass; });
  os << passed << "/" << r.rows.size() << " grid points pass\n";
  return os.str();
}

} // namespace

std::string sweep_report_text(const SweepResult& r) { return table(r, false); }
std::string sweep_console_table(const SweepResult& r) { return table(r, true); }

} // namespace forge
