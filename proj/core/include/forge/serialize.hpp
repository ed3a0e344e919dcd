#pragma once

#include "forge/congruence.hpp"
#include "forge/cuspcheck.hpp"
#include "forge/depthcalc.hpp"
#include "forge/toraldata.hpp"

#include <nlohmann/json.hpp>

namespace forge {

using Json = nlohmann::ordered_json;

Json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);
Json to_json(const FFElem& x);
Json to_json(const FieldExtension& ext);
Json to_json(const RootSystem& rs);
std::string to_string(ExtensionKind k);
ExtensionKind parse_extension_kind(const std::string& s);

Json to_json(const ZeroToralDatum& d);
// Rebuilds the datum, rejecting malformed input or a modulus that differs from the
// canonical one for (p, f, n).
ZeroToralDatum datum_from_json(const Json& j);

Json to_json(const GenericityReport& r);
Json to_json(const LevelMap& m);
Json to_json(const ImageOrder& o);
Json to_json(const CongruenceReport& r, bool with_matrices = true);
Json to_json(const DecompositionReport& r);
Json to_json(const QuotientCheck& q);
Json to_json(const NonconstantReport& r);
Json to_json(const CycloVec& v);
Json to_json(const EllipticSeed& s);
Json to_json(const LambdaChar& l);
Json to_json(const CuspReport& r, bool with_rows = true);
Json to_json(const FourierReport& r);

} // namespace forge
