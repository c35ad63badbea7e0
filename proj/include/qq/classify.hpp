#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qq/exec.hpp"
#include "qq/gf.hpp"
#include "qq/quasigroup.hpp"

namespace qq {

struct VarietyFlags {
  enum class Provenance { formula, oracle };

  bool medial = false;
  bool left_distributive = false;
  bool right_distributive = false;
  bool commutative = false;
  bool flexible = false;
  bool semisymmetric = false;
  bool steiner = false;
  bool netto = false;
  bool group_isotopic = false;
  Provenance provenance = Provenance::formula;

  /// Flag-by-flag comparison, provenance ignored.
  bool same_flags(const VarietyFlags& o) const;
  /// Names of flags that differ from `o`.
  std::vector<std::string> differences(const VarietyFlags& o) const;
};

/// Flags from the closed-form conditions on (a, b). Throws ParamError on
/// invalid parameters.
VarietyFlags classify_params(const FiniteField& f, Elem a, Elem b);

enum class Law { idempotent, medial, left_dist, right_dist, commutative, flexible, semisymmetric };

std::string to_string(Law law);
/// Number of free variables in the law.
int arity(Law law);

/// First violating assignment in lexicographic order of the variables
/// (x, y[, z[, u]]), or nullopt when the law holds.
std::optional<std::vector<Elem>> find_law_violation(const Quasigroup& q, Law law,
                                                    Exec exec = Exec::parallel);
bool check_law(const Quasigroup& q, Law law, Exec exec = Exec::parallel);

/// Associativity of the loop isotope x o y = (x/0) * (0\y). A quasigroup is
/// isotopic to a group exactly when this loop is a group.
bool is_group_isotope(const Quasigroup& q, Exec exec = Exec::parallel);

/// All flags by exhaustive checks on the table. Steiner is idempotent,
/// commutative and semisymmetric; Netto is Steiner and not medial.
VarietyFlags classify_oracle(const Quasigroup& q, Exec exec = Exec::parallel);

using Block = std::array<Elem, 3>;

/// Distinct roots of x^2 - x + 1 with chi(-1) = chi(a) = -1, smaller code
/// first; only for characteristic > 3.
std::optional<std::pair<Elem, Elem>> netto_params(const FiniteField& f);

/// Blocks of the Steiner triple system of a Steiner Q_{a,b}, each sorted,
/// list sorted. Throws ParamError unless the parameters are Steiner.
std::vector<Block> netto_blocks(const FiniteField& f, Elem a, Elem b);

/// Every unordered pair of distinct points in {0..n-1} lies in exactly one
/// block.
bool is_steiner_triple_system(std::uint32_t n, const std::vector<Block>& blocks);

/// 2x2 sub-rectangle of a Latin square.
struct Quadrangle {
  std::array<Elem, 2> rows{};
  std::array<Elem, 2> cols{};
  std::array<std::array<Elem, 2>, 2> entries{};
};

/// Either the affine witness x*y = (1-a)x + ay (a = b), or two quadrangles
/// agreeing in three corresponding entries and differing in the fourth.
struct IsotopyCertificate {
  bool isotopic = false;
  Elem affine_x = 0;  // 1 - a
  Elem affine_y = 0;  // a
  Quadrangle first;
  Quadrangle second;
  std::optional<std::pair<Elem, Elem>> witness;  // (u, v), q > 9
  std::string source;                            // affine | witness | table | transported | search
};

IsotopyCertificate group_isotopy_certificate(const FiniteField& f, Elem a, Elem b);

/// Re-reads both quadrangles from the table and checks they violate the
/// quadrangle criterion.
bool violates_quadrangle_criterion(const Quasigroup& q, const Quadrangle& first, const Quadrangle& second);

/// chi(u) = chi(v) = chi(u+1) = chi(v+1) = chi(u-1) = -1 and chi(v-1) = 1.
bool is_character_run_witness(const FiniteField& f, Elem u, Elem v);

/// First (u, v) in ascending code order satisfying the predicate above.
/// Throws ParamError for q <= 9.
std::pair<Elem, Elem> find_character_run_witness(const FiniteField& f);

/// Exhaustive search for a violating quadrangle pair.
std::optional<std::pair<Quadrangle, Quadrangle>> search_quadrangle_violation(const Quasigroup& q);

}  // namespace qq
