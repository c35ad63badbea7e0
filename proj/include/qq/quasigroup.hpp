#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qq/exec.hpp"
#include "qq/gf.hpp"

namespace qq {

/// Result of checking a and b against the quasigroup condition
/// chi(a) = chi(b) != 0 and chi(1-a) = chi(1-b) != 0.
struct Validity {
  bool ok = false;
  std::string reason;  // empty when ok
  explicit operator bool() const { return ok; }
};

Validity validate_params(const FiniteField& f, Elem a, Elem b);

/// Dense n x n operation table with no structural guarantee.
struct Magma {
  std::uint32_t n = 0;
  std::vector<Elem> table;  // row-major, table[x * n + y] = x*y

  Elem at(Elem x, Elem y) const { return table[static_cast<std::size_t>(x) * n + y]; }
};

bool is_latin(const Magma& m);

/// Where a table came from: field description plus the pair (a, b).
struct Origin {
  unsigned p = 0;
  unsigned k = 0;
  std::vector<unsigned> modulus;
  Elem a = 0;
  Elem b = 0;
};

/// A finite quasigroup on {0, ..., n-1}, held as its Cayley table together with
/// both division tables.
class Quasigroup {
 public:
  /// Throws ParamError unless `m` is a Latin square.
  explicit Quasigroup(Magma m, std::optional<Origin> origin = std::nullopt);

  std::uint32_t order() const { return n_; }
  Elem mul(Elem x, Elem y) const { return table_[idx(x, y)]; }
  Elem operator()(Elem x, Elem y) const { return mul(x, y); }
  /// The y with x*y = z.
  Elem ldiv(Elem x, Elem z) const { return ldiv_[idx(x, z)]; }
  /// The x with x*y = z.
  Elem rdiv(Elem z, Elem y) const { return rdiv_[idx(z, y)]; }

  const std::vector<Elem>& table() const { return table_; }
  const std::optional<Origin>& origin() const { return origin_; }
  Magma magma() const { return {n_, table_}; }

  /// Tables compare equal regardless of provenance.
  friend bool operator==(const Quasigroup& l, const Quasigroup& r) { return l.table_ == r.table_; }

 private:
  std::size_t idx(Elem x, Elem y) const { return static_cast<std::size_t>(x) * n_ + y; }

  std::uint32_t n_;
  std::vector<Elem> table_;
  std::vector<Elem> ldiv_;
  std::vector<Elem> rdiv_;
  std::optional<Origin> origin_;
};

/// x*y = x + a(y-x) if chi(y-x) >= 0, else x + b(y-x), for arbitrary a, b.
Magma build_magma(const FiniteField& f, Elem a, Elem b, const Caps& caps = {});

/// Q_{a,b}. Throws ParamError naming the failed clause for invalid (a, b).
Quasigroup build_quadratic(const FiniteField& f, Elem a, Elem b, const Caps& caps = {});

/// x o y = y * x.
Quasigroup opposite(const Quasigroup& q);
/// z (x) x = y  iff  x * y = z.
Quasigroup translate(const Quasigroup& q);

/// Quadratic nearfield product on a field of square order r^2:
/// xy if chi(x) >= 0, x * y^r otherwise.
Elem nearfield_product(const FiniteField& f, Elem x, Elem y);

/// x *_c y = x + (y - x) o c over the quadratic nearfield.
Quasigroup build_nearfield_quasigroup(const FiniteField& f, Elem c, const Caps& caps = {});

/// Netto parameters: char > 3, a + b = ab = 1, chi(a) = chi(-1) = -1.
bool is_netto(const FiniteField& f, Elem a, Elem b);

enum class ClosureOps { multiply, multiply_and_divide };

/// Smallest subquasigroup containing `generators`, sorted. For a finite
/// quasigroup both variants give the same set.
std::vector<Elem> subquasigroup_closure(const Quasigroup& q, std::span<const Elem> generators,
                                        ClosureOps ops = ClosureOps::multiply_and_divide);

/// A subquasigroup labelled by a coset form scale * base + shift.
struct SubqDescriptor {
  enum class Kind { trivial, coset, unmatched };

  Kind kind = Kind::unmatched;
  Elem scale = 0;
  Subfield base;
  Elem shift = 0;
  std::vector<Elem> elements;
};

std::string to_string(SubqDescriptor::Kind k);

/// Matches a subset of F against the forms lambda*K' + mu with K' a subfield.
/// shift is the smallest element, scale the smallest nonzero element of
/// (set - shift).
SubqDescriptor describe_subset(const FiniteField& f, std::span<const Elem> elements);

/// Brute-force minimal subquasigroups (closures of all pairs, kept when every
/// pair inside generates the whole set), sorted by element list. Each is
/// matched to its coset form unless `q` has no quadratic origin or is Netto,
/// in which case the descriptors are `unmatched`.
std::vector<SubqDescriptor> minimal_subquasigroups(const FiniteField& f, const Quasigroup& q,
                                                   Exec exec = Exec::parallel);

/// The minimal subquasigroups predicted from the subfields generated by a, b
/// and {a, b} alone, as sorted element lists. nullopt for Netto parameters or
/// when no structural case applies.
std::optional<std::vector<std::vector<Elem>>> predicted_minimal_subquasigroups(const FiniteField& f,
                                                                               Elem a, Elem b);

/// Some i in {0, 1} such that every pair of distinct x, y in B generates a
/// subquasigroup of order |K_i| lying inside B; K_0, K_1 are the subfields
/// generated by a and by b.
bool is_saturated(const FiniteField& f, const Quasigroup& q, std::span<const Elem> set);

}  // namespace qq
