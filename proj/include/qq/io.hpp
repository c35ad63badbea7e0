#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qq/classify.hpp"
#include "qq/gf.hpp"
#include "qq/iso.hpp"
#include "qq/quasigroup.hpp"

namespace qq {

using Json = nlohmann::json;

/// {p, k, modulus, q}
Json field_json(const FiniteField& f);

/// n lines of n comma-separated codes.
std::string table_csv(const Quasigroup& q);

/// {n, table} plus field {p, k, modulus}, a and b when the table has an origin.
Json table_json(const Quasigroup& q);

/// Inverse of table_json. The table must be an n x n Latin square; field, a
/// and b are optional but must appear together.
Quasigroup quasigroup_from_json(const Json& j);

Json flags_json(const VarietyFlags& v);
Json quadrangle_json(const Quadrangle& q);
Json certificate_json(const IsotopyCertificate& c);
Json semilinear_json(const SemilinearMap& m);
Json descriptor_json(const FiniteField& f, const AutDescriptor& d);
Json witness_json(const IsoWitness& w);

/// One block per line, codes separated by spaces.
std::string blocks_text(const std::vector<Block>& blocks);

}  // namespace qq
