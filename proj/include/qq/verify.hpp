#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qq/exec.hpp"
#include "qq/io.hpp"

namespace qq {

enum class Check {
  latin,          // Latin square iff the validity condition holds, over all (a, b)
  isomorphism,    // theorem witness iff brute-force isomorphism
  automorphisms,  // brute-force group order equals the descriptor order
  varieties,      // formula flags equal exhaustive law checks
  nearfield,      // nearfield quasigroup tables equal Q_{a,a^r}
  netto,          // Netto parameters exist exactly when predicted; blocks form an STS
  properties,     // basic table properties: idempotence, scalings, opposite, translate, Frobenius
  subquasigroups, // minimal subquasigroups match the coset forms; 2-transitivity
  certificates,   // quadrangle certificates violate the criterion; witnesses hold
};

std::string to_string(Check c);
const std::vector<Check>& all_checks();

struct VerifyOptions {
  std::vector<std::uint32_t> orders;  // odd prime powers to sweep
  /// Orders in (max order, laws_to] get two-variable laws only and skip the
  /// isomorphism, automorphism and subquasigroup oracles.
  std::uint32_t laws_to = 0;
  Caps caps;
  Exec exec = Exec::parallel;

  /// {3, 5, 7, 9, 11, 13, 25, 27}
  static VerifyOptions defaults();
  /// Every odd prime power up to max_q.
  static VerifyOptions up_to(std::uint32_t max_q);
};

enum class Status { pass, fail, skipped };
std::string to_string(Status s);

struct CheckResult {
  std::uint32_t q = 0;
  Check check = Check::latin;
  Status status = Status::pass;
  std::uint64_t cases = 0;  // items examined
  std::string detail;       // first counterexample or skip reason
  bool capped = false;      // skipped because an oracle cap was hit
};

struct VerifyReport {
  std::vector<CheckResult> results;  // ordered by (q, check)

  bool all_pass() const;
  bool any_capped() const;
  Json to_json() const;
};

/// Runs one check at one order.
CheckResult run_check(std::uint32_t q, Check check, const VerifyOptions& opt);

/// Every (order, check) item; items run concurrently under Exec::parallel.
VerifyReport run_verify(const VerifyOptions& opt);

}  // namespace qq
