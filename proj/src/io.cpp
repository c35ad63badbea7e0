#include "qq/io.hpp"

#include <sstream>

namespace qq {

Json field_json(const FiniteField& f) {
  return {{"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}, {"q", f.order()}};
}

std::string table_csv(const Quasigroup& q) {
  std::ostringstream out;
  for (Elem x = 0; x < q.order(); ++x) {
    for (Elem y = 0; y < q.order(); ++y) {
      if (y) out << ',';
      out << q(x, y);
    }
    out << '\n';
  }
  return out.str();
}

Json table_json(const Quasigroup& q) {
  Json rows = Json::array();
  for (Elem x = 0; x < q.order(); ++x) {
    Json row = Json::array();
    for (Elem y = 0; y < q.order(); ++y) row.push_back(q(x, y));
    rows.push_back(std::move(row));
  }
  Json j{{"n", q.order()}, {"table", std::move(rows)}};
  if (const auto& o = q.origin()) {
    j["field"] = {{"p", o->p}, {"k", o->k}, {"modulus", o->modulus}};
    j["a"] = o->a;
    j["b"] = o->b;
  }
  return j;
}

Quasigroup quasigroup_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<std::uint32_t>();
    const auto& rows = j.at("table");
    if (!rows.is_array() || rows.size() != n) throw ParamError("table must have n rows");
    Magma m{n, {}};
    m.table.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != n) throw ParamError("table rows must have n entries");
      for (const auto& e : row) m.table.push_back(e.get<Elem>());
    }
    std::optional<Origin> origin;
    const bool has_field = j.contains("field"), has_a = j.contains("a"), has_b = j.contains("b");
    if (has_field || has_a || has_b) {
      if (!(has_field && has_a && has_b)) throw ParamError("field, a and b must be given together");
      const auto& fj = j.at("field");
      Origin o;
      o.p = fj.at("p").get<unsigned>();
      o.k = fj.at("k").get<unsigned>();
      o.modulus = fj.at("modulus").get<std::vector<unsigned>>();
      o.a = j.at("a").get<Elem>();
      o.b = j.at("b").get<Elem>();
      const FiniteField f(o.p, o.k, o.modulus);
      if (f.order() != n) throw ParamError("field order does not match n");
      if (build_magma(f, o.a, o.b).table != m.table) throw ParamError("table does not match Q_{a,b}");
      origin = std::move(o);
    }
    return Quasigroup(std::move(m), std::move(origin));
  } catch (const Json::exception& e) {
    throw ParamError(std::string("malformed table JSON: ") + e.what());
  }
}

Json flags_json(const VarietyFlags& v) {
  return {{"medial", v.medial},
          {"left_distributive", v.left_distributive},
          {"right_distributive", v.right_distributive},
          {"commutative", v.commutative},
          {"flexible", v.flexible},
          {"semisymmetric", v.semisymmetric},
          {"steiner", v.steiner},
          {"netto", v.netto},
          {"group_isotopic", v.group_isotopic},
          {"provenance", v.provenance == VarietyFlags::Provenance::formula ? "formula" : "oracle"}};
}

Json quadrangle_json(const Quadrangle& q) {
  return {{"rows", q.rows}, {"cols", q.cols}, {"entries", q.entries}};
}

Json certificate_json(const IsotopyCertificate& c) {
  Json j{{"isotopic", c.isotopic}, {"source", c.source}};
  if (c.isotopic) {
    j["affine"] = {{"x", c.affine_x}, {"y", c.affine_y}};
  } else {
    j["quadrangles"] = {quadrangle_json(c.first), quadrangle_json(c.second)};
    if (c.witness) j["witness"] = {{"u", c.witness->first}, {"v", c.witness->second}};
  }
  return j;
}

Json semilinear_json(const SemilinearMap& m) {
  return {{"lambda", m.lambda}, {"frob", m.frob}, {"twist", m.twist}, {"mu", m.mu}};
}

Json descriptor_json(const FiniteField& f, const AutDescriptor& d) {
  Json gens = Json::array();
  for (const auto& g : d.generators) gens.push_back(semilinear_json(g));
  Json j{{"case", to_string(d.kind)},
         {"a", d.a},
         {"b", d.b},
         {"K", {{"p", f.characteristic()}, {"m", d.field.degree}}},
         {"order", d.order.str()},
         {"generators", std::move(gens)}};
  if (d.kind == AutCase::twisted) j["gamma"] = {{"p", f.characteristic()}, {"e", d.gamma_exponent}};
  if (!d.permutation_generators.empty()) j["permutation_generators"] = d.permutation_generators;
  if (!d.statement.empty()) j["statement"] = d.statement;
  return j;
}

Json witness_json(const IsoWitness& w) {
  Json j{{"swap", w.swap}, {"frob", w.frob}};
  if (w.linear_images) j["linear_images"] = *w.linear_images;
  if (w.permutation) j["permutation"] = *w.permutation;
  return j;
}

std::string blocks_text(const std::vector<Block>& blocks) {
  std::ostringstream out;
  for (const auto& b : blocks) out << b[0] << ' ' << b[1] << ' ' << b[2] << '\n';
  return out.str();
}

}  // namespace qq
