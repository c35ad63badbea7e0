#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace qq {

/// Execution policy for the enumeration kernels. `serial` is the reference
/// loop; `parallel` splits the outer loop across OpenMP threads and merges
/// results in a deterministic order.
enum class Exec { serial, parallel };

/// Size limits shared by constructors and oracles.
struct Caps {
  std::uint32_t table_n = 4096;          // dense Cayley tables
  std::uint32_t oracle_n = 64;           // brute-force automorphism search
  std::uint64_t aut_elements = 1000000;  // explicit automorphism enumeration

  /// Defaults, with QQ_CAP_N overriding `oracle_n` when set.
  static Caps from_env() {
    Caps c;
    if (const char* v = std::getenv("QQ_CAP_N"); v != nullptr && *v != '\0') {
      c.oracle_n = static_cast<std::uint32_t>(std::stoul(v));
    }
    return c;
  }
};

}  // namespace qq
