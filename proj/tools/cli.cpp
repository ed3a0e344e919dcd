#include "cli.hpp"

#include "sweep.hpp"

#include "forge/congruence.hpp"
#include "forge/cuspcheck.hpp"
#include "forge/depthcalc.hpp"
#include "forge/error.hpp"
#include "forge/serialize.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace forge {

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  for (const auto& item : split_csv(s)) {
    try {
      size_t pos = 0;
      long long v = std::stoll(item, &pos);
      if (pos != item.size() || v < 0) throw InvalidInput("bad list entry: " + item);
      out.push_back(static_cast<T>(v));
    } catch (const std::logic_error&) {
      throw InvalidInput("bad list entry: " + item);
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::string elem_str(const FFElem& x) {
  std::string s = "[";
  for (size_t i = 0; i < x.c.size(); ++i) s += (i ? "," : "") + std::to_string(x.c[i]);
  return s + "]";
}

std::string vec_str(const std::vector<std::int64_t>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

void print_datum_report(std::ostream& out, const ZeroToralDatum& d, const GenericityReport& r) {
  out << "type " << d.rs.type.name() << "  case " << d.case_label << "  p " << d.p << "  q " << d.q << "  n " << d.n
      << "  depth " << to_string(d.depth) << "  [E:F] " << d.ext.degree() << "\n";
  out << "cocycle: permutes coroots " << (r.cocycle_permutes_coroots ? "yes" : "no") << ", elliptic "
      << (r.cocycle_elliptic ? "yes" : "no") << ", order divides [E:F] " << (r.cocycle_order_divides_degree ? "yes" : "no")
      << "\n";
  int bad_descent = 0;
  for (const auto& row : r.descent)
    if (!row.pass) {
      ++bad_descent;
      out << "  descent FAIL at a_" << row.index << ": " << elem_str(row.lhs) << " != " << elem_str(row.rhs) << "\n";
    }
  out << "descent: " << r.descent.size() << " relations, " << bad_descent << " failing -> "
      << (r.descent_pass() ? "PASS" : "FAIL") << "\n";
  auto failing = r.failing_coroots();
  for (const auto& row : failing) out << "  genericity FAIL coroot " << vec_str(row.expansion) << " residue " << elem_str(row.residue) << "\n";
  out << "genericity: " << r.coroots.size() << " coroots, " << failing.size() << " failing -> "
      << (r.genericity_pass() ? "PASS" : "FAIL") << "\n";
  out << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
}

int env_jobs(int fallback) {
  if (const char* s = std::getenv("FORGE_JOBS")) {
    try {
      int j = std::stoi(s);
      if (j >= 1) return j;
    } catch (const std::logic_error&) {
    }
    throw InvalidInput("FORGE_JOBS must be a positive integer");
  }
  return fallback;
}

// ---------------------------------------------------------------------------

struct BuildOpts {
  std::string type;
  u64 p = 0, q = 0;
  int n = 1;
  bool ramified = false, unramified = false;
  std::string delta = "trivial";
  std::string output, json;
};

int cmd_build(const BuildOpts& o, std::ostream& out) {
  RootSystemType t = RootSystemType::parse(o.type);
  if (!is_valid(t)) throw InvalidInput("invalid type " + o.type);
  RootSystem rs = build_root_system(t);
  DiagramAutomorphism delta;
  if (o.delta == "trivial") delta = trivial_automorphism(rs);
  else if (o.delta == "involution") delta = diagram_involution(rs);
  else if (o.delta == "triality") delta = d4_triality(rs);
  else throw InvalidInput("unknown diagram automorphism " + o.delta);
  if (o.ramified && o.unramified) throw InvalidInput("--ramified and --unramified are exclusive");
  Ramification pref = o.ramified ? Ramification::ramified : o.unramified ? Ramification::unramified : Ramification::automatic;
  ZeroToralDatum d = build_generic_element(t, delta, o.p, o.q ? o.q : o.p, o.n, pref);
  GenericityReport r = verify_datum(d);
  if (!o.output.empty()) write_file(o.output, to_json(d).dump(2) + "\n");
  if (!o.json.empty()) write_file(o.json, to_json(r).dump(2) + "\n");
  print_datum_report(out, d, r);
  return r.pass() ? 0 : 1;
}

int cmd_verify(const std::string& path, const std::string& json, std::ostream& out) {
  ZeroToralDatum d = datum_from_json(read_json(path));
  GenericityReport r = verify_datum(d);
  if (!json.empty()) write_file(json, to_json(r).dump(2) + "\n");
  print_datum_report(out, d, r);
  return r.pass() ? 0 : 1;
}

struct SweepOpts {
  std::string types = "all";
  int max_rank = 8;
  int primes_per_type = 2;
  std::string primes, q_powers = "1,2", ns = "1,2";
  int jobs = 1;
  bool no_twist = false;
  std::string json, text;
};

int cmd_sweep(const SweepOpts& o, std::ostream& out, std::ostream& err) {
  SweepConfig cfg;
  if (o.types == "all") {
    cfg.types = irreducible_types(o.max_rank);
  } else {
    for (const auto& s : split_csv(o.types)) {
      RootSystemType t = RootSystemType::parse(s);
      if (!is_valid(t)) throw InvalidInput("invalid type " + s);
      cfg.types.push_back(t);
    }
  }
  cfg.primes_per_type = o.primes_per_type;
  cfg.primes = parse_list<u64>(o.primes);
  cfg.q_powers = parse_list<int>(o.q_powers);
  cfg.ns = parse_list<int>(o.ns);
  for (int f : cfg.q_powers)
    if (f < 1) throw InvalidInput("q powers must be positive");
  cfg.jobs = env_jobs(o.jobs);
  cfg.twist = !o.no_twist;
  if (cfg.types.empty() || cfg.q_powers.empty() || cfg.ns.empty() || cfg.primes_per_type < 1)
    throw InvalidInput("sweep: empty grid");
  SweepResult res = run_sweep(cfg);
  for (const auto& w : res.warnings) err << "warning: " << w << "\n";
  if (!o.json.empty()) write_file(o.json, sweep_report_json(res));
  if (!o.text.empty()) write_file(o.text, sweep_report_text(res));
  out << sweep_console_table(res);
  return res.pass() ? 0 : 1;
}

struct CongruenceOpts {
  std::string model = "heisenberg", config;
  u64 p = 3;
  int m = 1, N = 1;
  bool nonconstant = false;
  int K = 4;
  std::string json;
};

int cmd_congruence(const CongruenceOpts& o, std::ostream& out) {
  FiniteModel model;
  std::vector<IntMatrix> vgens;
  if (!o.config.empty()) {
    Json j = read_json(o.config);
    model = model_from_json(j);
    if (j.contains("vmodule"))
      for (const auto& g : j.at("vmodule")) vgens.push_back(int_matrix_from_json(g));
  } else {
    model = builtin_model(o.model, o.p, o.m);
    if (o.nonconstant) vgens = builtin_vmodule(o.model, o.p);
  }
  Json report;
  bool ok = true;
  out << "model " << model.name << "  p " << model.p << "  m " << model.m << "  |Gamma_S| " << model.gamma_s.order()
      << "  |Gamma_p| " << model.gamma_p.order() << "  |U_p| " << model.u_p.size() << "\n";
  if (o.nonconstant) {
    if (vgens.empty()) throw InvalidInput("nonconstant check needs a coefficient module");
    NonconstantReport r = nonconstant_check(model, vgens, o.K);
    report["nonconstant"] = to_json(r);
    out << "nonconstant: m' = " << r.m_prime << ", m = " << r.m;
    if (r.shrink) out << " -> shrink U_p (kernel of order " << r.kernel_order << ")\n";
    else out << " -> isomorphism " << (r.pass ? "PASS" : "FAIL") << "\n";
    ok = r.shrink || r.pass;
  } else {
    CongruenceReport c = verify_congruence_theorem(model, o.N);
    DecompositionReport dec = decompose_rational(model);
    QuotientCheck qc = quotient_map_details(model);
    report["congruence"] = to_json(c);
    report["decomposition"] = to_json(dec);
    report["quotient_map"] = to_json(qc);
    out << "Z: " << c.z_count << " points, " << c.orbit_count << " U-orbits, U_p-action "
        << (c.free_action ? "free" : "not free") << "\n";
    out << "lengths: left " << c.left_length << ", right " << c.right_length << "; Phi bijective "
        << (c.iso_bijective ? "yes" : "no") << "\n";
    for (const auto& op : c.operators)
      out << "  T" << op.gamma << " (" << op.cosets << " cosets): " << (op.commutes ? "equal" : "DIFFER") << "\n";
    out << "congruence (N=" << c.N << "): " << (c.pass ? "PASS" : "FAIL") << "\n";
    out << "rational decomposition:";
    for (const auto& comp : dec.components) out << " k=" << comp.k << ":" << comp.rank << "x" << comp.degree;
    out << "  total " << dec.rational_dimension << (dec.consistent ? " (consistent)" : " (INCONSISTENT)") << "\n";
    out << "quotient map: |M(U,A_m)/(T-1)| = " << qc.source_size << ", |M(U,A_m/(T-1))| = " << qc.target_size
        << ", surjective " << (qc.surjective ? "yes" : "no") << " -> " << (qc.isomorphism ? "isomorphism" : "not an isomorphism")
        << "\n";
    ok = c.pass && dec.consistent;
  }
  report["pass"] = ok;
  if (!o.json.empty()) write_file(o.json, report.dump(2) + "\n");
  return ok ? 0 : 1;
}

struct CuspOpts {
  u64 p = 5;
  int n = 0, m = 1, K = 8;
  long long x = -1;
  int samples = 20;
  u64 seed = 7;
  std::string json;
};

int cmd_cusp(const CuspOpts& o, std::ostream& out) {
  const int n = o.n ? o.n : o.m + 2;
  EllipticSeed seed = elliptic_seed(o.p, o.K);
  out << "seed: eps " << seed.epsilon << ", <Y_1, L_0> valuation " << seed.pairing_valuation << ", residue disc "
      << seed.residue_discriminant << (seed.discriminant_nonsquare ? " nonsquare" : " SQUARE") << " -> "
      << (seed.pass ? "PASS" : "FAIL") << "\n";
  LambdaChar lc = lambda_character(seed, n, o.m, 100);
  out << "lambda_{" << n << "," << o.m << "}: " << lc.generator_pairs << " generator pairs, " << lc.random_pairs
      << " random pairs, homomorphism " << (lc.homomorphism ? "yes" : "NO") << ", surjective "
      << (lc.surjective ? "yes" : "NO") << "\n";
  std::vector<u64> xs;
  if (o.x >= 0) xs.push_back(static_cast<u64>(o.x));
  else xs = x_classes(o.p, o.m);
  CuspReport cr = cusp_integral_check(seed, n, o.m, xs, cusp_samples(seed, n, o.samples, o.seed));
  size_t zeros = 0;
  for (const auto& row : cr.rows) zeros += row.zero ? 1 : 0;
  out << "cusp sums: " << cr.samples << " samples x 2 parabolics x " << xs.size() << " x-classes, " << zeros << "/"
      << cr.rows.size() << " exactly zero, " << cr.nonempty_supports << " nonempty supports -> "
      << (cr.pass ? "PASS" : "FAIL") << "\n";
  bool fourier_ok = true;
  Json fourier = Json::array();
  for (u64 x : xs) {
    FourierReport fr = fourier_support_check(seed, o.m, x);
    fourier_ok = fourier_ok && fr.pass;
    fourier.push_back(to_json(fr));
  }
  out << "fourier support: " << xs.size() << " x-classes -> " << (fourier_ok ? "PASS" : "FAIL") << "\n";
  bool ok = seed.pass && lc.homomorphism && lc.surjective && cr.pass && fourier_ok;
  if (!o.json.empty()) {
    Json j{{"seed", to_json(seed)}, {"lambda", to_json(lc)}, {"cusp", to_json(cr)}, {"fourier", fourier}, {"pass", ok}};
    write_file(o.json, j.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

struct DepthOpts {
  std::string r;
  u64 p = 3;
  int e_F = 1, jump_den = 1, rank = 1;
  std::string offset = "0";
  bool torus = false;
  u64 q = 0;
  int e = 1, m = 1, K = 0;
  std::string json;
};

int cmd_depth(const DepthOpts& o, std::ostream& out) {
  Json report;
  bool ok = true;
  if (!o.r.empty()) {
    FilteredLattice lat;
    lat.p = o.p;
    lat.rank = o.rank;
    lat.offset = parse_rational(o.offset);
    lat.jump_den = o.jump_den;
    lat.e_F = o.e_F;
    Rational r = parse_rational(o.r);
    ImageOrder io = character_image_order(r, lat);
    report["image_order"] = to_json(io);
    out << "r " << to_string(r) << "  s_min " << to_string(io.s_min) << "  image order " << io.order << " = p^"
        << io.exponent;
    if (io.in_window) out << "  (window m = " << io.window_m << ")";
    out << "\n";
    ok = ok && io.bound_ok;
  }
  if (o.torus) {
    LevelMap lm = torus_power_filtration(o.q ? o.q : o.p, o.e, o.m, o.K ? o.K : 2 * o.m + 2);
    report["torus"] = to_json(lm);
    out << "torus level map to Z/" << lm.p << "^" << lm.m << ": image order " << lm.image_order() << ", surjective "
        << (lm.surjective() ? "yes" : "no") << ", homomorphism table " << (lm.table_verified ? "verified" : "NOT verified")
        << "\n";
    ok = ok && lm.surjective() && lm.table_verified;
  }
  if (o.r.empty() && !o.torus) throw InvalidInput("depth: give --r or --torus");
  report["pass"] = ok;
  if (!o.json.empty()) write_file(o.json, report.dump(2) + "\n");
  return ok ? 0 : 1;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"forge: exact verification of toral data, level maps, congruences and cusp forms", "forge"};
  app.require_subcommand(1);

  BuildOpts bo;
  auto* build = app.add_subcommand("build", "build a generic element and verify it");
  build->add_option("--type", bo.type, "root system type, e.g. E6")->required();
  build->add_option("--p", bo.p, "residue characteristic")->required();
  build->add_option("--q", bo.q, "residue field size (default p)");
  build->add_option("--n", bo.n, "depth window parameter");
  build->add_flag("--ramified", bo.ramified, "prefer the ramified construction");
  build->add_flag("--unramified", bo.unramified, "prefer the unramified construction");
  build->add_option("--delta", bo.delta, "diagram automorphism: trivial, involution, triality");
  build->add_option("-o,--output", bo.output, "datum JSON output");
  build->add_option("--json", bo.json, "report JSON output");

  std::string vpath, vjson;
  auto* verify = app.add_subcommand("verify", "re-verify a datum file");
  verify->add_option("datum", vpath, "datum JSON")->required();
  verify->add_option("--json", vjson, "report JSON output");

  SweepOpts so;
  auto* sweep = app.add_subcommand("sweep", "build and verify over a grid of types and primes");
  sweep->add_option("--types", so.types, "comma list of types, or all");
  sweep->add_option("--max-rank", so.max_rank, "rank bound for --types all");
  sweep->add_option("--primes-per-type", so.primes_per_type, "smallest primes above Cox per type");
  sweep->add_option("--p", so.primes, "explicit comma list of primes");
  sweep->add_option("--q-powers", so.q_powers, "comma list of f with q = p^f");
  sweep->add_option("--n", so.ns, "comma list of n");
  sweep->add_option("--jobs", so.jobs, "worker threads (FORGE_JOBS overrides)");
  sweep->add_flag("--no-twist", so.no_twist, "skip twist checks");
  sweep->add_option("--json", so.json, "JSON report");
  sweep->add_option("--text", so.text, "text report");

  CongruenceOpts co;
  auto* cong = app.add_subcommand("congruence", "verify the congruence isomorphism on a finite model");
  cong->add_option("--model", co.model, "heisenberg, heisenberg-nonfree, heisenberg-zero, cyclic, cyclic-v, sign");
  cong->add_option("--config", co.config, "model JSON");
  cong->add_option("--p", co.p, "prime");
  cong->add_option("--m", co.m, "level exponent");
  cong->add_option("--N", co.N, "number of trivial summands");
  cong->add_flag("--nonconstant", co.nonconstant, "use the model's coefficient module");
  cong->add_option("--K", co.K, "precision of the coefficient module");
  cong->add_option("--json", co.json, "JSON report");

  CuspOpts cu;
  auto* cusp = app.add_subcommand("cusp", "elliptic seed, lambda character, cusp sums and Fourier support for sl_2");
  cusp->add_option("--p", cu.p, "odd prime >= 5");
  cusp->add_option("--n", cu.n, "congruence level (default m + 2)");
  cusp->add_option("--m", cu.m, "level exponent");
  cusp->add_option("--K", cu.K, "precision");
  cusp->add_option("--x", cu.x, "single x in O - P^m (default: all classes)");
  cusp->add_option("--samples", cu.samples, "number of sampled group elements");
  cusp->add_option("--seed", cu.seed, "sampling seed");
  cusp->add_option("--json", cu.json, "JSON report");

  DepthOpts dp;
  auto* depth = app.add_subcommand("depth", "character image orders and torus level maps");
  depth->add_option("--r", dp.r, "depth r as num/den");
  depth->add_option("--p", dp.p, "prime");
  depth->add_option("--e-F", dp.e_F, "ramification of F");
  depth->add_option("--jump-den", dp.jump_den, "jump denominator of the filtration");
  depth->add_option("--offset", dp.offset, "jump offset");
  depth->add_option("--rank", dp.rank, "lattice rank");
  depth->add_flag("--torus", dp.torus, "run the torus p-power filtration");
  depth->add_option("--q", dp.q, "residue field size for --torus");
  depth->add_option("--e", dp.e, "tame ramification for --torus");
  depth->add_option("--m", dp.m, "level exponent for --torus");
  depth->add_option("--K", dp.K, "precision for --torus");
  depth->add_option("--json", dp.json, "JSON report");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(bo, out);
    if (verify->parsed()) return cmd_verify(vpath, vjson, out);
    if (sweep->parsed()) return cmd_sweep(so, out, err);
    if (cong->parsed()) return cmd_congruence(co, out);
    if (cusp->parsed()) return cmd_cusp(cu, out);
    if (depth->parsed()) return cmd_depth(dp, out);
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

} // namespace forge
