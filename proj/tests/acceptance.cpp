// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "forge/congruence.hpp"
#include "forge/cuspcheck.hpp"
#include "forge/depthcalc.hpp"
#include "forge/ffield.hpp"
#include "forge/rootsys.hpp"
#include "forge/toraldata.hpp"
#include "sweep.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace forge;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_ms, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  bool timely = limit_ms <= 0 || ms < limit_ms;
  bool pass = o.pass && timely;
  if (!pass) ++failures;
  std::printf("criterion %2d %-28s %s  %.1f ms", id, name, pass ? "PASS" : "FAIL", ms);
  if (limit_ms > 0) std::printf(" (limit %.0f ms)", limit_ms);
  if (!o.detail.empty()) std::printf("  %s", o.detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

int literal_coxeter(const RootSystemType& t) {
  switch (t.family) {
    case Family::A: return t.rank + 1;
    case Family::B:
    case Family::C: return 2 * t.rank;
    case Family::D: return 2 * t.rank - 2;
    case Family::E: return t.rank == 6 ? 12 : t.rank == 7 ? 18 : 30;
    case Family::F: return 12;
    case Family::G: return 6;
  }
  return -1;
}

std::vector<std::int64_t> unit(int i) {
  std::vector<std::int64_t> e(6, 0);
  e[i - 1] = 1;
  return e;
}

FFElem frob_pow(const FieldExtension& k, FFElem a, int i) {
  for (int j = 0; j < i; ++j) a = k.pow(a, k.q());
  return a;
}

bool witness(const FieldExtension& k, const FFElem& e) {
  if (k.is_zero(e)) return false;
  FFElem s = k.zero();
  for (int i = 1; i <= k.n(); ++i) s = k.add(s, frob_pow(k, e, i));
  if (!k.is_zero(s)) return false;
  for (int i = 1; i < k.n(); ++i)
    if (k.n() % i == 0 && frob_pow(k, e, i) == e) return false;
  return true;
}

// trace-zero generators of F_{q^n} / F_q: Moebius inversion of q^{d-1} over subfields (p not dividing n)
i64 witness_count(u64 q, int n) {
  i64 c = 0;
  for (int d : divisors(n)) c += moebius(n / d) * static_cast<i64>(ipow(q, d - 1));
  return c;
}

SweepResult run(int jobs) {
  SweepConfig cfg;
  cfg.types = irreducible_types(8);
  cfg.jobs = jobs;
  return run_sweep(cfg);
}

} // namespace

int main() {
  criterion(1, "coxeter table", 1.0, [] {
    Outcome o;
    int n = 0;
    for (const auto& t : irreducible_types(8)) {
      o.pass = o.pass && coxeter_number(t) == literal_coxeter(t);
      ++n;
    }
    o.detail = std::to_string(n) + " types";
    return o;
  });

  criterion(2, "E6 battery", 100.0, [] {
    Outcome o;
    RootSystem e6 = build_root_system(RootSystemType::parse("E6"));
    WeylElement wh = e6_coxeter_wh(e6);
    WeylElement w = weyl_power(wh, 4);
    using V = std::vector<std::int64_t>;
    const std::vector<V> expect{{-1, -1, -1, -1, 0, 0}, {1, 0, 1, 1, 1, 1},    {1, 1, 1, 2, 1, 0},
                                {-1, -1, -2, -3, -2, -1}, {0, 1, 1, 2, 1, 1}, {0, -1, 0, -1, -1, -1}};
    int formulas = 0;
    for (int i = 1; i <= 6; ++i) formulas += weyl_apply(w, Coroot{unit(i)}).expansion == expect[i - 1];
    o.pass = weyl_order(wh) == 12 && cyclotomic_exponents(wh, 12) == std::vector<int>{1, 4, 5, 7, 8, 11} &&
             is_elliptic(w) && formulas == 6 && e6.positive_coroots().size() == 36;
    o.detail = std::to_string(formulas) + "/6 action formulas";
    return o;
  });

  criterion(3, "D_odd battery", 0, [] {
    Outcome o;
    int instances = 0;
    double worst = 0;
    for (int s : {5, 7}) {
      u64 p = static_cast<u64>(2 * s - 2);
      for (int k = 0; k < 2; ++k) {
        p = next_prime(p);
        auto t0 = Clock::now();
        DoddRelations rel = check_dodd_relations(s, build_dodd_coordinates(s, p));
        RootSystemType t{Family::D, s};
        RootSystem rs = build_root_system(t);
        ZeroToralDatum d = build_generic_element(t, trivial_automorphism(rs), p, p, 1);
        GenericityReport g = verify_genericity(d);
        double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        worst = std::max(worst, ms);
        bool ok = rel.all() && d.case_label == "Dodd" && g.genericity_pass() &&
                  g.coroots.size() == static_cast<size_t>(2 * s * (s - 1)) && ms < 10000.0;
        o.pass = o.pass && ok;
        ++instances;
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d instances, slowest %.1f ms (limit 10000 ms each)", instances, worst);
    o.detail = buf;
    return o;
  });

  SweepResult sweep1;
  criterion(4, "full sweep", 60000.0, [&] {
    sweep1 = run(1);
    Outcome o;
    size_t ok = 0;
    for (const auto& r : sweep1.rows) ok += r.descent && r.genericity && r.failing == 0 && r.error.empty();
    o.pass = !sweep1.rows.empty() && ok == sweep1.rows.size();
    o.detail = std::to_string(ok) + "/" + std::to_string(sweep1.rows.size()) + " grid points";
    return o;
  });

  criterion(5, "highest coroot", 0, [] {
    Outcome o;
    for (const auto& t : irreducible_types(8))
      o.pass = o.pass && build_root_system(t).highest_coroot().height() == coxeter_number(t) - 1;
    return o;
  });

  criterion(6, "trace-zero generators", 0, [] {
    Outcome o;
    int pairs = 0, exhaustive = 0;
    for (u64 q = 2; q * q <= 1000000; ++q) {
      auto pp = prime_power(q);
      if (!pp) continue;
      for (int n = 2; ipow128(q, n) <= 1000000; ++n) {
        if (n % static_cast<int>(pp->first) == 0) continue;
        FieldExtension k(pp->first, pp->second, n);
        FFElem e = find_trace_zero_generator(k);
        bool ok = witness(k, e);
        if (ipow128(q, n) <= 10000) {
          i64 count = 0;
          for (u128 i = 1; i < k.size(); ++i) count += witness(k, k.from_index(i));
          ok = ok && count == witness_count(q, n) && count > 0;
          ++exhaustive;
        }
        if (!ok) o.detail += "q=" + std::to_string(q) + " n=" + std::to_string(n) + " ";
        o.pass = o.pass && ok;
        ++pairs;
      }
    }
    o.detail += std::to_string(pairs) + " (q, n) pairs, " + std::to_string(exhaustive) + " exhaustive";
    return o;
  });

  criterion(7, "level arithmetic", 0, [] {
    Outcome o;
    int checks = 0;
    for (u64 p : {3u, 5u, 7u})
      for (int e_F = 1; e_F <= 3; ++e_F)
        for (int m = 1; m <= 4; ++m) {
          FilteredLattice lat{p, 1, Rational(0), 1, e_F};
          LevelWindow w = level_window(e_F, m);
          for (Rational r : {w.lo + Rational(1, 2), w.hi}) {
            ImageOrder at = character_image_order(r, lat);
            ImageOrder low = character_image_order(r - 2 * e_F, lat);
            o.pass = o.pass && at.order == ipow(p, m) && low.order == ipow(p, m - 1);
            ++checks;
          }
        }
    o.detail = std::to_string(checks) + " windows";
    return o;
  });

  criterion(8, "twist window", 0, [&] {
    Outcome o;
    size_t twists = 0;
    for (const auto& r : sweep1.rows) {
      o.pass = o.pass && r.twist_pass && !r.twists.empty();
      for (const auto& t : r.twists) {
        // r - v(i) > r / 2 recomputed from the depth window: r <= 2m and v(i) <= m - 1
        o.pass = o.pass && t.window_ok && t.genericity && vp(t.i, r.point.p) < r.twist_m;
        ++twists;
      }
    }
    o.pass = o.pass && !sweep1.rows.empty();
    o.detail = std::to_string(twists) + " twists";
    return o;
  });

  criterion(9, "congruence model", 5000.0, [] {
    Outcome o;
    int operators = 0;
    for (int m : {1, 2}) {
      FiniteModel model = builtin_model("heisenberg", 3, m);
      for (int N : {1, 2}) {
        CongruenceReport rep = verify_congruence_theorem(model, N);
        // block (o, k), (o', k') of the left matrix equals delta_{k k'} times entry (o, o') of the right one
        const i64 pm = static_cast<i64>(ipow(3, m));
        const int n = rep.orbit_count;
        bool eq = !rep.operators.empty();
        for (const auto& op : rep.operators) {
          eq = eq && op.left.rows() == n * N && op.right.rows() == n;
          for (int o = 0; eq && o < n; ++o)
            for (int q = 0; q < n; ++q)
              for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l)
                  eq = eq && mod(op.left(o * N + k, q * N + l) - (k == l ? op.right(o, q) : 0), pm) == 0;
          ++operators;
        }
        o.pass = o.pass && rep.pass && eq;
      }
      DecompositionReport d = decompose_rational(model);
      int sum = 0;
      for (const auto& c : d.components) sum += c.rank * c.degree;
      o.pass = o.pass && d.consistent && sum == (static_cast<int>(ipow(3, m)) - 1) * d.trivial_dimension;
      o.pass = o.pass && quotient_map_check(model) && !quotient_map_check(builtin_model("heisenberg-nonfree", 3, m));
    }
    o.detail = std::to_string(operators) + " Hecke matrix pairs";
    return o;
  });

  criterion(10, "non-constant coefficients", 0, [] {
    auto gens = builtin_vmodule("cyclic-v", 3);
    NonconstantReport a = nonconstant_check(builtin_model("cyclic-v", 3, 2), gens, 4);
    NonconstantReport b = nonconstant_check(builtin_model("cyclic-v", 3, 3), gens, 4);
    Outcome o;
    o.pass = a.pass && !a.shrink && b.shrink;
    o.detail = "m'=" + std::to_string(a.m_prime) + ", kernel at m=3 of order " + std::to_string(b.kernel_order);
    return o;
  });

  criterion(11, "sl2 cusp battery", 30000.0, [] {
    Outcome o;
    EllipticSeed seed = elliptic_seed(5, 8);
    o.pass = seed.pass;
    int sums = 0, zero = 0;
    for (int m : {1, 2}) {
      const int n = m + 2;
      LambdaChar lc = lambda_character(seed, n, m, 100);
      o.pass = o.pass && lc.homomorphism && lc.surjective && lc.random_pairs == 100 && lc.generator_pairs > 0;
      auto samples = cusp_samples(seed, n, 20);
      CuspReport cr = cusp_integral_check(seed, n, m, x_classes(5, m), samples);
      bool upper = false, lower = false;
      for (const auto& r : cr.rows) {
        upper = upper || r.parabolic == Parabolic::upper;
        lower = lower || r.parabolic == Parabolic::lower;
        zero += r.zero;
        ++sums;
      }
      o.pass = o.pass && cr.pass && cr.samples >= 20 && upper && lower;
    }
    int fourier = 0;
    for (int m : {1, 2}) {
      EllipticSeed s3 = elliptic_seed(3, m + 2);
      for (u64 x : x_classes(3, m)) {
        FourierReport fr = fourier_support_check(s3, m, x, 2);
        for (const auto& c : fr.cases) o.pass = o.pass && c.exact_ran;
        o.pass = o.pass && fr.pass;
        ++fourier;
      }
    }
    o.pass = o.pass && sums > 0 && zero == sums;
    o.detail = std::to_string(zero) + "/" + std::to_string(sums) + " cusp sums zero, " + std::to_string(fourier) +
               " exact Fourier checks";
    return o;
  });

  criterion(12, "determinism", 0, [&] {
    SweepResult again = run(1), parallel = run(4);
    Outcome o;
    const std::string j = sweep_report_json(sweep1), t = sweep_report_text(sweep1);
    o.pass = j == sweep_report_json(again) && j == sweep_report_json(parallel) && t == sweep_report_text(again) &&
             t == sweep_report_text(parallel);
    o.detail = "jobs 1, 1, 4";
    return o;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
