// qq: command-line front end for the quadratic quasigroup library.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "qq/io.hpp"
#include "qq/verify.hpp"

namespace {

using namespace qq;

enum Exit { ok = 0, non_isomorphic = 1, bad_field = 2, bad_params = 3, cap_exceeded = 4, disagreement = 5 };

struct FieldSpec {
  unsigned p = 0;
  unsigned k = 1;
  std::vector<unsigned> modulus;

  FiniteField make() const {
    if (modulus.empty()) return FiniteField(p, k);
    return FiniteField(p, k, modulus);
  }
};

void add_field_flags(CLI::App* cmd, FieldSpec& fs) {
  cmd->add_option("--p", fs.p, "characteristic")->required();
  cmd->add_option("--k", fs.k, "degree")->capture_default_str();
  cmd->add_option("--modulus", fs.modulus, "monic irreducible, constant term first")->delimiter(',');
}

void check_code(const FiniteField& f, Elem x, const char* name) {
  if (x >= f.order()) {
    throw ParamError(std::string(name) + "=" + std::to_string(x) + " is not an element code below " +
                     std::to_string(f.order()));
  }
}

void require_valid(const FiniteField& f, Elem a, Elem b) {
  check_code(f, a, "a");
  check_code(f, b, "b");
  if (const auto v = validate_params(f, a, b); !v) throw ParamError("invalid parameters: " + v.reason);
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_field(const FieldSpec& fs) {
  const auto f = fs.make();
  std::vector<Elem> squares;
  for (Elem x = 1; x < f.order(); ++x) {
    if (f.is_square(x)) squares.push_back(x);
  }
  Json j = field_json(f);
  j["nonsquare"] = f.nonsquare();
  j["nonsquare_pretty"] = f.pretty(f.nonsquare());
  j["squares"] = {{"count", squares.size()}, {"codes", squares}};
  j["minus_one_square"] = f.is_square(f.neg(1));
  emit(j);
  return ok;
}

int cmd_build(const FieldSpec& fs, Elem a, Elem b, const std::string& format, const std::string& out) {
  const auto f = fs.make();
  require_valid(f, a, b);
  const auto q = build_quadratic(f, a, b, Caps::from_env());
  write_out(out, format == "json" ? table_json(q).dump() + "\n" : table_csv(q));
  return ok;
}

int cmd_classify(const FieldSpec& fs, Elem a, Elem b, bool oracle) {
  const auto f = fs.make();
  require_valid(f, a, b);
  const auto formula = classify_params(f, a, b);
  Json j{{"field", field_json(f)}, {"a", a}, {"b", b}, {"formula", flags_json(formula)}};
  j["certificate"] = certificate_json(group_isotopy_certificate(f, a, b));
  if (!oracle) {
    emit(j);
    return ok;
  }
  const auto q = build_quadratic(f, a, b, Caps::from_env());
  const auto found = classify_oracle(q);
  j["oracle"] = flags_json(found);
  if (!formula.same_flags(found)) {
    j["disagreement"] = formula.differences(found);
    emit(j);
    return disagreement;
  }
  emit(j);
  return ok;
}

int cmd_iso(const FieldSpec& fs, Elem a, Elem b, Elem c, Elem d, bool oracle) {
  const auto f = fs.make();
  require_valid(f, a, b);
  require_valid(f, c, d);
  const auto w = iso_by_theorem(f, a, b, c, d);
  Json j{{"field", field_json(f)}, {"target", {a, b}}, {"source", {c, d}}, {"isomorphic", w.has_value()}};
  if (w) j["witness"] = witness_json(*w);
  if (oracle) {
    const auto caps = Caps::from_env();
    if (f.order() > caps.oracle_n) throw CapError("order exceeds the oracle cap (QQ_CAP_N)");
    const auto brute = iso_brute_force(build_quadratic(f, c, d, caps), build_quadratic(f, a, b, caps));
    j["oracle"] = brute.has_value();
    if (brute.has_value() != w.has_value()) {
      emit(j);
      return disagreement;
    }
  }
  if (!w) {
    j["result"] = "non-isomorphic";
    emit(j);
    return non_isomorphic;
  }
  emit(j);
  return ok;
}

int cmd_aut(const FieldSpec& fs, Elem a, Elem b, bool oracle) {
  const auto f = fs.make();
  require_valid(f, a, b);
  const auto d = aut_descriptor(f, a, b);
  Json j = descriptor_json(f, d);
  if (oracle) {
    const std::uint64_t n = aut_brute_force_count(build_quadratic(f, a, b), Caps::from_env());
    j["oracle_order"] = std::to_string(n);
    if (BigInt(n) != d.order) {
      emit(j);
      return disagreement;
    }
  }
  emit(j);
  return ok;
}

int cmd_classes(const FieldSpec& fs) {
  const auto f = fs.make();
  const auto reps = class_representatives(f);
  Json list = Json::array();
  for (const auto& [a, b] : reps) {
    list.push_back({{"a", a}, {"b", b}, {"case", to_string(aut_descriptor(f, a, b).kind)}});
  }
  emit({{"field", field_json(f)}, {"count", reps.size()}, {"representatives", list}});
  return ok;
}

int cmd_netto(const FieldSpec& fs, std::optional<Elem> a, std::optional<Elem> b, const std::string& format,
              const std::string& out) {
  const auto f = fs.make();
  std::optional<std::pair<Elem, Elem>> params;
  if (a || b) {
    if (!a || !b) throw ParamError("--a and --b must be given together");
    require_valid(f, *a, *b);
    if (!classify_params(f, *a, *b).steiner) throw ParamError("parameters do not give a Steiner quasigroup");
    params = std::pair{*a, *b};
  } else {
    params = netto_params(f);
  }
  Json j{{"field", field_json(f)}, {"exists", params.has_value()}};
  if (!params) {
    emit(j);
    return ok;
  }
  const auto blocks = netto_blocks(f, params->first, params->second);
  if (format == "text") {
    write_out(out, blocks_text(blocks));
    return ok;
  }
  j["a"] = params->first;
  j["b"] = params->second;
  j["netto"] = classify_params(f, params->first, params->second).netto;
  j["blocks"] = blocks.size();
  j["steiner_triple_system"] = is_steiner_triple_system(f.order(), blocks);
  if (!out.empty()) {
    write_out(out, blocks_text(blocks));
    j["blocks_file"] = out;
  }
  emit(j);
  return ok;
}

int cmd_verify(std::uint32_t max_q, std::uint32_t laws_to) {
  auto opt = max_q > 0 ? VerifyOptions::up_to(max_q) : VerifyOptions::defaults();
  opt.laws_to = laws_to;
  const auto report = run_verify(opt);
  emit(report.to_json());
  if (!report.all_pass()) return disagreement;
  if (report.any_capped()) return cap_exceeded;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic quasigroups over finite fields of odd order"};
  app.require_subcommand(1);

  FieldSpec fs;
  Elem a = 0, b = 0, c = 0, d = 0;
  std::optional<Elem> na, nb;
  bool oracle = false;
  std::string format = "csv", out;
  std::uint32_t max_q = 0, laws_to = 0;
  int jobs = 0;

  auto* field = app.add_subcommand("field", "field descriptor");
  add_field_flags(field, fs);

  auto* build = app.add_subcommand("build", "Cayley table of Q_{a,b}");
  add_field_flags(build, fs);
  build->add_option("--a", a)->required();
  build->add_option("--b", b)->required();
  build->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  build->add_option("--out", out, "output file, stdout when omitted");

  auto* classify = app.add_subcommand("classify", "variety flags and group-isotopy certificate");
  add_field_flags(classify, fs);
  classify->add_option("--a", a)->required();
  classify->add_option("--b", b)->required();
  classify->add_flag("--oracle", oracle, "also run the exhaustive law checks");

  auto* iso = app.add_subcommand("iso", "is Q_{c,d} isomorphic to Q_{a,b}");
  add_field_flags(iso, fs);
  iso->add_option("--a", a)->required();
  iso->add_option("--b", b)->required();
  iso->add_option("--c", c)->required();
  iso->add_option("--d", d)->required();
  iso->add_flag("--oracle", oracle, "also run the backtracking search");

  auto* aut = app.add_subcommand("aut", "automorphism group descriptor");
  add_field_flags(aut, fs);
  aut->add_option("--a", a)->required();
  aut->add_option("--b", b)->required();
  aut->add_flag("--oracle", oracle, "also count automorphisms by brute force");

  auto* classes = app.add_subcommand("classes", "isomorphism class representatives");
  add_field_flags(classes, fs);

  auto* netto = app.add_subcommand("netto", "Netto parameters and Steiner triple system");
  add_field_flags(netto, fs);
  netto->add_option("--a", na);
  netto->add_option("--b", nb);
  netto->add_option("--format", format, "json report or text blocks")->check(CLI::IsMember({"json", "text"}));
  netto->add_option("--out", out, "blocks file");

  auto* verify = app.add_subcommand("verify", "formula-versus-oracle sweep");
  verify->add_option("--max-q", max_q, "every odd prime power up to this order (default: 3..27 selection)");
  verify->add_option("--laws-to", laws_to, "two-variable laws and certificates up to this order");
  verify->add_option("--jobs", jobs, "OpenMP threads");

  CLI11_PARSE(app, argc, argv);
  if (jobs > 0) omp_set_num_threads(jobs);
  if (netto->parsed() && format == "csv") format = "json";

  try {
    if (field->parsed()) return cmd_field(fs);
    if (build->parsed()) return cmd_build(fs, a, b, format, out);
    if (classify->parsed()) return cmd_classify(fs, a, b, oracle);
    if (iso->parsed()) return cmd_iso(fs, a, b, c, d, oracle);
    if (aut->parsed()) return cmd_aut(fs, a, b, oracle);
    if (classes->parsed()) return cmd_classes(fs);
    if (netto->parsed()) return cmd_netto(fs, na, nb, format, out);
    if (verify->parsed()) return cmd_verify(max_q, laws_to);
  } catch (const FieldError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bad_field;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bad_params;
  } catch (const CapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cap_exceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return ok;
}
