#include "forge/serialize.hpp"

#include "forge/error.hpp"

namespace forge {

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("matrix: expected a nonempty array of rows");
  const int r = static_cast<int>(j.size());
  const int c = static_cast<int>(j.at(0).size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!j.at(i).is_array() || static_cast<int>(j.at(i).size()) != c) throw InvalidInput("matrix: ragged rows");
    for (int k = 0; k < c; ++k) m(i, k) = j.at(i).at(k).get<std::int64_t>();
  }
  return m;
}

Json to_json(const FFElem& x) { return Json(x.c); }

Json to_json(const FieldExtension& ext) {
  return Json{{"p", ext.p()}, {"f", ext.f()}, {"n", ext.n()}, {"modulus", ext.modulus()}};
}

Json to_json(const RootSystem& rs) {
  Json coroots = Json::array();
  for (const auto& c : rs.positive_coroots()) coroots.push_back(c.expansion);
  return Json{{"type", rs.type.name()},
              {"rank", rs.rank()},
              {"coxeter_number", coxeter_number(rs.type)},
              {"cartan", to_json(rs.cartan)},
              {"positive_coroots", coroots},
              {"highest_coroot", rs.highest_coroot().expansion}};
}

std::string to_string(ExtensionKind k) {
  switch (k) {
    case ExtensionKind::unramified: return "unramified";
    case ExtensionKind::ramified_quadratic: return "ramified_quadratic";
    case ExtensionKind::ramified_cubic: return "ramified_cubic";
  }
  return "unramified";
}

ExtensionKind parse_extension_kind(const std::string& s) {
  if (s == "unramified") return ExtensionKind::unramified;
  if (s == "ramified_quadratic") return ExtensionKind::ramified_quadratic;
  if (s == "ramified_cubic") return ExtensionKind::ramified_cubic;
  throw InvalidInput("unknown extension kind: " + s);
}

Json to_json(const ZeroToralDatum& d) {
  Json ext = to_json(d.ext.residue);
  ext["kind"] = to_string(d.ext.kind);
  Json coords = Json::array();
  for (const auto& c : d.coords) coords.push_back(to_json(c));
  Json j{{"type", d.rs.type.name()},
         {"case", d.case_label},
         {"p", d.p},
         {"q", d.q},
         {"n", d.n},
         {"ext", ext},
         {"depth", to_string(d.depth)},
         {"delta", d.delta.perm},
         {"cocycle", to_json(d.cocycle.matrix)}};
  if (d.cocycle.word) j["cocycle_word"] = *d.cocycle.word;
  j["twist"] = to_json(d.twist);
  j["coords"] = coords;
  return j;
}

namespace {

FFElem elem_from_json(const FieldExtension& k, const Json& j) {
  auto c = j.get<std::vector<u64>>();
  if (static_cast<int>(c.size()) > k.degree()) throw InvalidInput("datum: field element has too many coefficients");
  for (u64 v : c)
    if (v >= k.p()) throw InvalidInput("datum: field coefficient out of range");
  return k.from_coeffs(c);
}

} // namespace

ZeroToralDatum datum_from_json(const Json& j) {
  try {
    ZeroToralDatum d;
    RootSystemType t = RootSystemType::parse(j.at("type").get<std::string>());
    d.rs = build_root_system(t);
    d.case_label = j.value("case", std::string());
    d.p = j.at("p").get<u64>();
    d.q = j.at("q").get<u64>();
    d.n = j.at("n").get<int>();
    const Json& e = j.at("ext");
    u64 ep = e.at("p").get<u64>();
    if (ep != d.p) throw InvalidInput("datum: extension characteristic differs from p");
    FieldExtension k(ep, e.at("f").get<int>(), e.at("n").get<int>());
    if (k.q() != d.q) throw InvalidInput("datum: q differs from the residue field size");
    if (e.at("modulus").get<std::vector<u64>>() != k.modulus())
      throw InvalidInput("datum: extension modulus does not match the canonical one");
    d.ext = ExtensionSpec{parse_extension_kind(e.value("kind", std::string("unramified"))), k};
    d.depth = parse_rational(j.at("depth").get<std::string>());
    d.delta.perm = j.at("delta").get<std::vector<int>>();
    if (static_cast<int>(d.delta.perm.size()) != t.rank) throw InvalidInput("datum: delta has the wrong length");
    if (!preserves_cartan(d.rs, d.delta)) throw InvalidInput("datum: delta is not a diagram automorphism");
    d.cocycle.matrix = int_matrix_from_json(j.at("cocycle"));
    if (d.cocycle.matrix.rows() != t.rank || d.cocycle.matrix.cols() != t.rank)
      throw InvalidInput("datum: cocycle has the wrong shape");
    if (j.contains("cocycle_word")) d.cocycle.word = j.at("cocycle_word").get<std::vector<int>>();
    d.twist = elem_from_json(k, j.at("twist"));
    for (const auto& c : j.at("coords")) d.coords.push_back(elem_from_json(k, c));
    if (static_cast<int>(d.coords.size()) != t.rank) throw InvalidInput("datum: one coordinate per simple coroot");
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("datum JSON: ") + e.what());
  }
}

Json to_json(const GenericityReport& r) {
  Json coroots = Json::array();
  for (const auto& c : r.coroots)
    coroots.push_back(Json{{"coroot", c.expansion}, {"residue", to_json(c.residue)}, {"pass", c.pass}});
  Json descent = Json::array();
  for (const auto& d : r.descent)
    descent.push_back(Json{{"index", d.index}, {"lhs", to_json(d.lhs)}, {"rhs", to_json(d.rhs)}, {"pass", d.pass}});
  return Json{{"cocycle_permutes_coroots", r.cocycle_permutes_coroots},
              {"cocycle_elliptic", r.cocycle_elliptic},
              {"cocycle_order_divides_degree", r.cocycle_order_divides_degree},
              {"descent", descent},
              {"descent_pass", r.descent_pass()},
              {"genericity", coroots},
              {"genericity_pass", r.genericity_pass()},
              {"pass", r.pass()}};
}

Json to_json(const LevelMap& m) {
  Json gens = Json::array();
  for (size_t i = 0; i < m.labels.size(); ++i)
    gens.push_back(Json{{"label", m.labels[i]}, {"order", m.orders[i]}, {"image", m.images[i]}});
  return Json{{"target", "Z/" + std::to_string(m.p) + "^" + std::to_string(m.m)},
              {"generators", gens},
              {"domain_order", m.domain_order},
              {"well_defined", m.well_defined()},
              {"table_verified", m.table_verified},
              {"image_order", m.image_order()},
              {"surjective", m.surjective()}};
}

Json to_json(const ImageOrder& o) {
  return Json{{"order", o.order},   {"exponent", o.exponent},   {"s_min", to_string(o.s_min)}, {"t", o.t},
              {"in_window", o.in_window}, {"window_m", o.window_m}, {"bound_ok", o.bound_ok}};
}

Json to_json(const CongruenceReport& r, bool with_matrices) {
  Json ops = Json::array();
  for (const auto& op : r.operators) {
    Json o{{"gamma", op.gamma}, {"cosets", op.cosets}, {"commutes", op.commutes}};
    if (with_matrices) {
      o["left"] = to_json(op.left);
      o["right"] = to_json(op.right);
    }
    ops.push_back(o);
  }
  return Json{{"model", r.model},
              {"p", r.p},
              {"m", r.m},
              {"N", r.N},
              {"z_count", r.z_count},
              {"orbits", r.orbit_count},
              {"free_action", r.free_action},
              {"left_length", r.left_length},
              {"right_length", r.right_length},
              {"left_action_trivial", r.left_action_trivial},
              {"induced_action_trivial", r.induced_action_trivial},
              {"iso_bijective", r.iso_bijective},
              {"operators", ops},
              {"pass", r.pass}};
}

Json to_json(const DecompositionReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.components) comps.push_back(Json{{"k", c.k}, {"degree", c.degree}, {"rank", c.rank}});
  return Json{{"components", comps},
              {"rational_dimension", r.rational_dimension},
              {"trivial_dimension", r.trivial_dimension},
              {"consistent", r.consistent}};
}

Json to_json(const QuotientCheck& q) {
  return Json{{"surjective", q.surjective},
              {"source_size", q.source_size.str()},
              {"target_size", q.target_size.str()},
              {"isomorphism", q.isomorphism}};
}

Json to_json(const NonconstantReport& r) {
  Json j{{"m", r.m}, {"m_prime", r.m_prime}, {"shrink", r.shrink}};
  if (r.shrink) {
    j["signal"] = "shrink U_p";
    j["kernel_order"] = r.kernel_order;
  }
  if (r.congruence) j["congruence"] = to_json(*r.congruence, false);
  j["pass"] = r.pass;
  return j;
}

Json to_json(const CycloVec& v) {
  Json terms = Json::array();
  for (size_t e = 0; e < v.c.size(); ++e)
    if (v.c[e] != 0) terms.push_back(Json::array({e, v.c[e]}));
  return Json{{"order", cyclo_order(v)}, {"terms", terms}};
}

Json to_json(const EllipticSeed& s) {
  return Json{{"p", s.p},
              {"K", s.K},
              {"epsilon", s.epsilon},
              {"y1", Json{{"offset", s.y1.offset}, {"entries", s.y1.a}}},
              {"pairing_valuation", s.pairing_valuation},
              {"residue_discriminant", s.residue_discriminant},
              {"discriminant_nonsquare", s.discriminant_nonsquare},
              {"gram_unit", s.gram_unit},
              {"pass", s.pass}};
}

Json to_json(const LambdaChar& l) {
  return Json{{"p", l.p},
              {"n", l.n},
              {"m", l.m},
              {"K", l.K},
              {"generator_values", l.generator_values},
              {"generator_pairs", l.generator_pairs},
              {"random_pairs", l.random_pairs},
              {"homomorphism", l.homomorphism},
              {"surjective", l.surjective}};
}

Json to_json(const CuspReport& r, bool with_rows) {
  int zeros = 0;
  for (const auto& row : r.rows) zeros += row.zero ? 1 : 0;
  Json j{{"p", r.p},
         {"n", r.n},
         {"m", r.m},
         {"K", r.K},
         {"x_classes", r.xs.size()},
         {"samples", r.samples},
         {"nonempty_supports", r.nonempty_supports},
         {"sums", r.rows.size()},
         {"zero_sums", zeros}};
  if (with_rows) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
      rows.push_back(Json{{"sample", row.label},
                          {"parabolic", row.parabolic == Parabolic::upper ? "upper" : "lower"},
                          {"x", row.x},
                          {"support", row.support},
                          {"sum", to_json(row.sum)},
                          {"zero", row.zero}});
    j["rows"] = rows;
  }
  j["pass"] = r.pass;
  return j;
}

Json to_json(const FourierReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    Json jc{{"label", c.label},
            {"integral", c.integral},
            {"predicted", c.predicted_full ? "full" : "zero"},
            {"exact_ran", c.exact_ran}};
    if (c.exact_ran) {
      jc["exact_zero"] = c.exact_zero;
      jc["exact_value"] = c.exact_value;
    }
    jc["consistent"] = c.consistent;
    cases.push_back(jc);
  }
  return Json{{"p", r.p}, {"m", r.m}, {"K", r.K}, {"x", r.x}, {"exact_precision", r.exact_precision},
              {"cases", cases}, {"pass", r.pass}};
}

} // namespace forge
