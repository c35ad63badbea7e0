#include "qq/verify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include <omp.h>

namespace qq {
namespace {

FiniteField field_of(std::uint32_t q) {
  const auto pk = odd_prime_power(q);
  if (!pk) throw FieldError("not an odd prime power: " + std::to_string(q));
  return FiniteField(pk->first, pk->second);
}

std::string pair_str(Elem a, Elem b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

struct Outcome {
  std::uint64_t cases = 0;
  std::string failure;
  std::string note;

  bool fail(std::string msg) {
    if (failure.empty()) failure = std::move(msg);
    return false;
  }
};

bool maps_onto(const Quasigroup& from, const Quasigroup& to, const auto& psi) {
  for (Elem x = 0; x < from.order(); ++x) {
    for (Elem y = 0; y < from.order(); ++y) {
      if (psi(from(x, y)) != to(psi(x), psi(y))) return false;
    }
  }
  return true;
}

void check_latin(const FiniteField& f, Outcome& out) {
  const std::uint32_t n = f.order();
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      ++out.cases;
      const bool latin = is_latin(build_magma(f, a, b));
      const auto v = validate_params(f, a, b);
      if (latin != v.ok) {
        out.fail(pair_str(a, b) + ": latin=" + (latin ? "true" : "false") + " valid=" + (v.ok ? "true" : "false"));
        return;
      }
    }
  }
}

void check_isomorphism(const FiniteField& f, const VerifyOptions& opt, Exec exec, Outcome& out) {
  const auto pairs = valid_pairs(f);
  std::vector<Quasigroup> tables;
  for (const auto& [a, b] : pairs) tables.push_back(build_quadratic(f, a, b, opt.caps));
  std::uint64_t linear = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      ++out.cases;
      const auto [a, b] = pairs[i];
      const auto [c, d] = pairs[j];
      const auto theorem = iso_by_theorem(f, a, b, c, d);
      const auto brute = iso_brute_force(tables[j], tables[i], exec);
      if (brute && !is_isomorphism(tables[j], tables[i], *brute)) {
        out.fail(pair_str(c, d) + "->" + pair_str(a, b) + ": brute-force map fails verification");
        return;
      }
      if (theorem.has_value() != brute.has_value()) {
        out.fail(pair_str(c, d) + "->" + pair_str(a, b) + ": theorem=" + (theorem ? "iso" : "none") +
                 " brute=" + (brute ? "iso" : "none"));
        return;
      }
      if (theorem && theorem->linear_images) ++linear;
    }
  }
  if (linear > 0) out.note = std::to_string(linear) + " ordered pairs isomorphic only through F_3-linear maps";
}

void check_automorphisms(const FiniteField& f, const VerifyOptions& opt, Exec exec, Outcome& out) {
  for (const auto& [a, b] : valid_pairs(f)) {
    ++out.cases;
    const auto d = aut_descriptor(f, a, b);
    const auto q = build_quadratic(f, a, b, opt.caps);
    const std::uint64_t brute = aut_brute_force_count(q, opt.caps, exec);
    if (BigInt(brute) != d.order) {
      out.fail(pair_str(a, b) + ": brute=" + std::to_string(brute) + " descriptor=" + d.order.str() + " (" +
               to_string(d.kind) + ")");
      return;
    }
    if (d.order > opt.caps.aut_elements) continue;
    // Each element is verified against the table inside aut_elements, so a
    // distinct list of the same size is the brute-force set.
    const auto elems = aut_elements(f, d, opt.caps);
    std::set<Permutation> distinct;
    for (const auto& e : elems) distinct.insert(e.perm);
    if (distinct.size() != brute) {
      out.fail(pair_str(a, b) + ": " + std::to_string(distinct.size()) + " distinct enumerated maps, brute=" +
               std::to_string(brute));
      return;
    }
  }
}

void check_varieties(const FiniteField& f, bool all_laws, Exec exec, Outcome& out) {
  for (const auto& [a, b] : valid_pairs(f)) {
    ++out.cases;
    const auto formula = classify_params(f, a, b);
    const auto q = build_quadratic(f, a, b);
    if (all_laws) {
      const auto oracle = classify_oracle(q, exec);
      if (!formula.same_flags(oracle)) {
        std::string names;
        for (const auto& n : formula.differences(oracle)) names += (names.empty() ? "" : ",") + n;
        out.fail(pair_str(a, b) + ": formula and oracle differ on " + names);
        return;
      }
      for (const auto* v : {&formula, &oracle}) {
        if ((v->medial || v->commutative) && !v->flexible) {
          out.fail(pair_str(a, b) + ": medial or commutative without flexible");
          return;
        }
      }
    } else {
      const std::pair<Law, bool> laws[] = {{Law::commutative, formula.commutative},
                                          {Law::flexible, formula.flexible},
                                          {Law::semisymmetric, formula.semisymmetric}};
      for (const auto& [law, expect] : laws) {
        if (check_law(q, law, exec) != expect) {
          out.fail(pair_str(a, b) + ": " + to_string(law) + " formula=" + (expect ? "true" : "false"));
          return;
        }
      }
    }
  }
}

bool check_nearfield(const FiniteField& f, const VerifyOptions& opt, Outcome& out) {
  if (f.degree() % 2 != 0) return false;
  const unsigned half = f.half_degree();
  for (Elem a = 2; a < f.order(); ++a) {
    ++out.cases;
    if (build_nearfield_quasigroup(f, a, opt.caps) != build_quadratic(f, a, f.frobenius(a, half), opt.caps)) {
      out.fail("a=" + std::to_string(a) + ": nearfield table differs from Q_{a,a^r}");
      return true;
    }
  }
  return true;
}

void check_netto(const FiniteField& f, Outcome& out) {
  const unsigned p = f.characteristic();
  const bool predicted = p % 12 == 7 && f.degree() % 2 == 1;
  const auto np = netto_params(f);
  ++out.cases;
  if (np.has_value() != predicted) {
    out.fail(std::string("netto_params ") + (np ? "found" : "missing") + ", prediction " +
             (predicted ? "exists" : "none"));
    return;
  }
  for (const auto& [a, b] : valid_pairs(f)) {
    const auto flags = classify_params(f, a, b);
    if (!flags.steiner) continue;
    ++out.cases;
    const auto blocks = netto_blocks(f, a, b);
    const std::uint64_t expect = static_cast<std::uint64_t>(f.order()) * (f.order() - 1) / 6;
    if (blocks.size() != expect || !is_steiner_triple_system(f.order(), blocks)) {
      out.fail(pair_str(a, b) + ": blocks do not form a Steiner triple system");
      return;
    }
    const auto q = build_quadratic(f, a, b);
    for (const auto& blk : blocks) {
      if (q(blk[0], blk[1]) != blk[2]) {
        out.fail(pair_str(a, b) + ": block is not a line of the quasigroup");
        return;
      }
    }
  }
}

void check_properties(const FiniteField& f, const VerifyOptions& opt, Outcome& out) {
  const std::uint32_t n = f.order();
  const bool exhaustive = n <= 13;
  auto pairs = valid_pairs(f);
  std::mt19937 rng(n);
  if (!exhaustive) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(std::min<std::size_t>(pairs.size(), 12));
  }
  std::vector<Elem> shifts, squares, nonsquares;
  for (Elem t = 0; t < n; ++t) {
    if (exhaustive || t % 5 == 0) shifts.push_back(t);
    if (f.is_square(t) && (exhaustive || squares.size() < 4)) squares.push_back(t);
    if (f.is_nonsquare(t) && (exhaustive || nonsquares.size() < 4)) nonsquares.push_back(t);
  }
  for (const auto& [a, b] : pairs) {
    ++out.cases;
    const std::string at = pair_str(a, b);
    const auto q = build_quadratic(f, a, b, opt.caps);
    for (Elem x = 0; x < n; ++x) {
      if (q(x, x) != x) {
        out.fail(at + ": not idempotent at " + std::to_string(x));
        return;
      }
    }
    for (Elem t : shifts) {
      if (!maps_onto(q, q, [&](Elem x) { return f.add(x, t); })) {
        out.fail(at + ": translation by " + std::to_string(t) + " is not an automorphism");
        return;
      }
    }
    for (Elem c : squares) {
      if (!maps_onto(q, q, [&](Elem x) { return f.mul(c, x); })) {
        out.fail(at + ": scaling by square " + std::to_string(c) + " is not an automorphism");
        return;
      }
    }
    const auto swapped = build_quadratic(f, b, a, opt.caps);
    for (Elem z : nonsquares) {
      if (!maps_onto(q, swapped, [&](Elem x) { return f.mul(z, x); })) {
        out.fail(at + ": scaling by nonsquare " + std::to_string(z) + " does not reach Q_{b,a}");
        return;
      }
    }
    if (a != b) {
      const Elem z = f.nonsquare();
      for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
          if (x != y && f.mul(z, q(x, y)) == q(f.mul(z, x), f.mul(z, y))) {
            out.fail(at + ": nonsquare scaling respects the product at " + pair_str(x, y));
            return;
          }
        }
      }
    }
    Elem oa = f.sub(1, a), ob = f.sub(1, b);
    if (n % 4 == 3) std::swap(oa, ob);
    if (opposite(q) != build_quadratic(f, oa, ob, opt.caps)) {
      out.fail(at + ": opposite is not " + pair_str(oa, ob));
      return;
    }
    Elem ta = f.div(f.sub(a, 1), a), tb = f.div(f.sub(b, 1), b);
    if (f.chi(a) != f.chi(f.neg(1))) std::swap(ta, tb);
    if (translate(q) != build_quadratic(f, ta, tb, opt.caps)) {
      out.fail(at + ": translate is not " + pair_str(ta, tb));
      return;
    }
    for (unsigned j = 1; j < f.degree(); ++j) {
      const auto image = build_quadratic(f, f.frobenius(a, j), f.frobenius(b, j), opt.caps);
      if (!maps_onto(q, image, [&](Elem x) { return f.frobenius(x, j); })) {
        out.fail(at + ": Frobenius power " + std::to_string(j) + " does not transport the table");
        return;
      }
    }
  }
}

void check_subquasigroups(const FiniteField& f, const VerifyOptions& opt, Exec exec, Outcome& out) {
  for (const auto& [a, b] : valid_unordered_pairs(f)) {
    ++out.cases;
    const auto q = build_quadratic(f, a, b, opt.caps);
    if (!is_netto(f, a, b)) {
      const auto subs = minimal_subquasigroups(f, q, exec);
      const auto predicted = predicted_minimal_subquasigroups(f, a, b);
      std::vector<std::vector<Elem>> found;
      for (const auto& s : subs) {
        if (s.kind != SubqDescriptor::Kind::coset) {
          out.fail(pair_str(a, b) + ": minimal subquasigroup of size " + std::to_string(s.elements.size()) +
                   " is not a coset of a subfield");
          return;
        }
        found.push_back(s.elements);
      }
      if (!predicted || found != *predicted) {
        out.fail(pair_str(a, b) + ": minimal subquasigroups differ from the predicted coset family");
        return;
      }
    }
    const auto d = aut_descriptor(f, a, b);
    const bool special = d.kind != AutCase::generic;
    const bool two = is_two_transitive(f.order(), aut_brute_force(q, opt.caps, exec));
    if (two != special) {
      out.fail(pair_str(a, b) + ": 2-transitive=" + (two ? "true" : "false") + " case=" + to_string(d.kind));
      return;
    }
  }
}

void check_certificates(const FiniteField& f, Outcome& out) {
  for (const auto& [a, b] : valid_pairs(f)) {
    ++out.cases;
    const auto c = group_isotopy_certificate(f, a, b);
    if (c.isotopic != (a == b)) {
      out.fail(pair_str(a, b) + ": isotopic flag wrong");
      return;
    }
    if (a == b) continue;
    const auto q = build_quadratic(f, a, b);
    if (!violates_quadrangle_criterion(q, c.first, c.second)) {
      out.fail(pair_str(a, b) + ": quadrangles (" + c.source + ") do not violate the criterion");
      return;
    }
    if (f.order() > 9 && (!c.witness || !is_character_run_witness(f, c.witness->first, c.witness->second))) {
      out.fail(pair_str(a, b) + ": witness predicate fails");
      return;
    }
  }
  // Published witnesses.
  const std::uint32_t q = f.order();
  const std::pair<std::uint32_t, Elem> primes[] = {{11, 7},  {13, 6},  {17, 6},  {19, 13}, {23, 20},
                                                   {29, 11}, {31, 12}, {37, 14}, {41, 12}, {43, 19}};
  for (auto [p, u] : primes) {
    if (p == q && !is_character_run_witness(f, u, u - 1)) out.fail("published witness u=" + std::to_string(u));
  }
  if (q == 25) {
    for (Elem s = 0; s < q; ++s) {
      if (f.mul(s, s) != 2) continue;
      const Elem u = f.mul(2, s);
      if (!is_character_run_witness(f, u, f.sub(u, 1))) out.fail("published witness u=2*sqrt(2)");
    }
  }
  if (q == 27) {
    const FiniteField g(3, 3, std::vector<unsigned>{1, 2, 0, 1});
    if (!is_character_run_witness(g, 3, 18)) out.fail("published witness u=x, v=2x^2 over x^3+2x+1");
  }
}

}  // namespace

std::string to_string(Check c) {
  switch (c) {
    case Check::latin: return "latin";
    case Check::isomorphism: return "isomorphism";
    case Check::automorphisms: return "automorphisms";
    case Check::varieties: return "varieties";
    case Check::nearfield: return "nearfield";
    case Check::netto: return "netto";
    case Check::properties: return "properties";
    case Check::subquasigroups: return "subquasigroups";
    case Check::certificates: return "certificates";
  }
  return "?";
}

const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks{Check::latin,      Check::isomorphism, Check::automorphisms,
                                         Check::varieties,  Check::nearfield,   Check::netto,
                                         Check::properties, Check::subquasigroups, Check::certificates};
  return checks;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

VerifyOptions VerifyOptions::defaults() {
  VerifyOptions o;
  o.orders = {3, 5, 7, 9, 11, 13, 25, 27};
  o.caps = Caps::from_env();
  return o;
}

VerifyOptions VerifyOptions::up_to(std::uint32_t max_q) {
  VerifyOptions o;
  o.orders = odd_prime_powers(3, max_q);
  o.caps = Caps::from_env();
  return o;
}

bool VerifyReport::all_pass() const {
  return std::none_of(results.begin(), results.end(), [](const auto& r) { return r.status == Status::fail; });
}

bool VerifyReport::any_capped() const {
  return std::any_of(results.begin(), results.end(), [](const auto& r) { return r.capped; });
}

Json VerifyReport::to_json() const {
  Json matrix = Json::array();
  Json failures = Json::array();
  Json notes = Json::array();
  std::vector<std::uint32_t> orders;
  std::uint64_t cases = 0;
  for (const auto& r : results) {
    if (orders.empty() || orders.back() != r.q) {
      orders.push_back(r.q);
      matrix.push_back({{"q", r.q}});
    }
    matrix.back()[to_string(r.check)] = to_string(r.status);
    cases += r.cases;
    Json item{{"q", r.q}, {"check", to_string(r.check)}, {"detail", r.detail}};
    if (r.status == Status::fail) failures.push_back(std::move(item));
    else if (!r.detail.empty()) notes.push_back(std::move(item));
  }
  Json names = Json::array();
  for (Check c : all_checks()) names.push_back(to_string(c));
  return {{"orders", orders}, {"checks", names},       {"matrix", matrix}, {"failures", failures},
          {"notes", notes},   {"cases", cases},        {"all_pass", all_pass()}};
}

CheckResult run_check(std::uint32_t q, Check check, const VerifyOptions& opt) {
  CheckResult r;
  r.q = q;
  r.check = check;
  const Exec exec = opt.exec;
  try {
    const FiniteField f = field_of(q);
    const bool extension = std::find(opt.orders.begin(), opt.orders.end(), q) == opt.orders.end();
    Outcome out;
    bool applicable = true;
    const bool heavy = check == Check::isomorphism || check == Check::automorphisms || check == Check::subquasigroups;
    if (extension && heavy) {
      applicable = false;
      out.note = "oracle check runs only within the main order range";
    } else {
      switch (check) {
        case Check::latin: check_latin(f, out); break;
        case Check::isomorphism:
          if (q > opt.caps.oracle_n) throw CapError("order exceeds the oracle cap");
          check_isomorphism(f, opt, exec, out);
          break;
        case Check::automorphisms:
          if (q > opt.caps.oracle_n) throw CapError("order exceeds the oracle cap");
          check_automorphisms(f, opt, exec, out);
          break;
        case Check::varieties: check_varieties(f, !extension, exec, out); break;
        case Check::nearfield:
          applicable = check_nearfield(f, opt, out);
          if (!applicable) out.note = "order is not a square";
          break;
        case Check::netto: check_netto(f, out); break;
        case Check::properties: check_properties(f, opt, out); break;
        case Check::subquasigroups:
          if (q > opt.caps.oracle_n) throw CapError("order exceeds the oracle cap");
          check_subquasigroups(f, opt, exec, out);
          break;
        case Check::certificates: check_certificates(f, out); break;
      }
    }
    r.cases = out.cases;
    if (!out.failure.empty()) {
      r.status = Status::fail;
      r.detail = out.failure;
    } else {
      r.status = applicable ? Status::pass : Status::skipped;
      r.detail = out.note;
    }
  } catch (const CapError& e) {
    r.status = Status::skipped;
    r.capped = true;
    r.detail = e.what();
  } catch (const std::exception& e) {
    r.status = Status::fail;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

VerifyReport run_verify(const VerifyOptions& opt) {
  std::vector<std::uint32_t> orders = opt.orders;
  if (opt.laws_to > 0) {
    const std::uint32_t top = orders.empty() ? 0 : *std::max_element(orders.begin(), orders.end());
    for (std::uint32_t q : odd_prime_powers(top + 1, opt.laws_to)) orders.push_back(q);
  }
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

  std::vector<std::pair<std::uint32_t, Check>> items;
  for (std::uint32_t q : orders) {
    for (Check c : all_checks()) items.emplace_back(q, c);
  }
  VerifyReport report;
  report.results.resize(items.size());
  VerifyOptions inner = opt;
  if (opt.exec == Exec::parallel) inner.exec = Exec::serial;
  // Largest orders first so the long items start early.
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
#pragma omp parallel for schedule(dynamic, 1) if (opt.exec == Exec::parallel)
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto idx = order[i];
    report.results[idx] = run_check(items[idx].first, items[idx].second, inner);
  }
  return report;
}

}  // namespace qq
