#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qq/exec.hpp"
#include "qq/gf.hpp"
#include "qq/quasigroup.hpp"

namespace qq {

using BigInt = boost::multiprecision::cpp_int;

/// Point map of a quasigroup on {0..n-1}: perm[x] is the image of x.
using Permutation = std::vector<Elem>;

/// x -> lambda * (x^(gamma^t))^(p^frob) + mu with t = twist and
/// gamma = p^gamma_exponent.
struct SemilinearMap {
  Elem lambda = 1;
  unsigned frob = 0;
  bool twist = false;
  unsigned gamma_exponent = 0;
  Elem mu = 0;

  Elem apply(const FiniteField& f, Elem x) const;
  Permutation permutation(const FiniteField& f) const;

  friend bool operator==(const SemilinearMap&, const SemilinearMap&) = default;
};

/// outer o inner, renormalised so that the field-automorphism part is
/// split into a twist (when gamma_exponent > 0) and a Frobenius power.
SemilinearMap compose(const FiniteField& f, const SemilinearMap& outer, const SemilinearMap& inner);
SemilinearMap inverse(const FiniteField& f, const SemilinearMap& m);

/// x -> sigma(x) + mu with sigma K-linear, given by the images of a K-basis.
struct AffineLinearMap {
  std::vector<Elem> basis_images;
  Elem mu = 0;
};

/// Coordinates of F over a subfield K in the basis 1, g, ..., g^(d-1), g the
/// primitive element of F.
class SubfieldBasis {
 public:
  SubfieldBasis(const FiniteField& f, Subfield k);

  const Subfield& base() const { return k_; }
  const std::vector<Elem>& basis() const { return basis_; }
  unsigned dimension() const { return static_cast<unsigned>(basis_.size()); }
  /// Coordinates of x (elements of K).
  const std::vector<Elem>& coords(Elem x) const { return coords_[x]; }
  /// sum_i c_i * images_i.
  Elem combine(const FiniteField& f, const std::vector<Elem>& c, const std::vector<Elem>& images) const;

 private:
  Subfield k_;
  std::vector<Elem> basis_;
  std::vector<std::vector<Elem>> coords_;
};

Permutation affine_linear_permutation(const FiniteField& f, const SubfieldBasis& basis,
                                      const AffineLinearMap& m);

enum class AutCase { generic, medial, twisted, fano };
std::string to_string(AutCase c);

/// Structure of Aut(Q_{a,b}).
struct AutDescriptor {
  AutCase kind = AutCase::generic;
  Elem a = 0;
  Elem b = 0;
  Subfield field;  // generated by {a, b}
  unsigned gamma_exponent = 0;  // twisted: gamma = p^gamma_exponent
  BigInt order;
  std::vector<SemilinearMap> generators;          // generic, twisted
  std::vector<Permutation> permutation_generators;  // fano
  std::string statement;                            // medial
};

/// Case detection (fano, medial, twisted, generic, in that order) with the
/// exact order of the group. The Fano case runs the brute-force oracle for
/// its generators.
AutDescriptor aut_descriptor(const FiniteField& f, Elem a, Elem b);

/// One automorphism: its structured form and its point map.
struct AutElement {
  std::variant<SemilinearMap, AffineLinearMap, std::monostate> form;
  Permutation perm;
};

/// Every automorphism exactly once, each verified against the table.
/// Throws CapError when the order exceeds caps.aut_elements.
std::vector<AutElement> aut_elements(const FiniteField& f, const AutDescriptor& d, const Caps& caps = {});

/// psi(x*y) = psi(x) o psi(y) for all x, y, with psi a bijection.
bool is_isomorphism(const Quasigroup& from, const Quasigroup& to, const Permutation& psi);

/// Backtracking isomorphism search. Every target of 0 is tried; the map is
/// extended along a generating sequence of `from` and forced through the
/// closure. Returns the first isomorphism in search order.
std::optional<Permutation> iso_brute_force(const Quasigroup& from, const Quasigroup& to,
                                           Exec exec = Exec::parallel);

/// All automorphisms by the same search, sorted. Throws CapError when the
/// order exceeds caps.oracle_n.
std::vector<Permutation> aut_brute_force(const Quasigroup& q, const Caps& caps = Caps::from_env(),
                                         Exec exec = Exec::parallel);

/// Number of automorphisms without storing them.
std::uint64_t aut_brute_force_count(const Quasigroup& q, const Caps& caps = Caps::from_env(),
                                    Exec exec = Exec::parallel);

/// Transitive, and the stabiliser of 0 is transitive on the other points.
bool is_two_transitive(std::uint32_t n, const std::vector<Permutation>& group);

/// The map takes Q_{c,d} onto Q_{a,b}: x -> alpha(x), or x -> zeta*alpha(x)
/// when swap is set, alpha = x^(p^frob). At order 9 the map may instead be
/// F_3-linear and not semilinear over F_9; `linear_images` then holds the
/// images of the basis 1, x.
struct IsoWitness {
  bool swap = false;
  unsigned frob = 0;
  std::optional<std::vector<Elem>> linear_images;
  std::optional<Permutation> permutation;
};

/// First (frob, swap) in lexicographic order with
/// {a, b} = {c^(p^frob), d^(p^frob)}, matching (a, b) = (c', d') for
/// swap = false and (d', c') for swap = true. Over F_9 the three twisted
/// parameter orbits form one isomorphism class; when no (frob, swap) matches
/// there, the first F_3-linear isomorphism by basis images is returned. The
/// explicit point map is attached after verification against both tables.
std::optional<IsoWitness> iso_by_theorem(const FiniteField& f, Elem a, Elem b, Elem c, Elem d);

/// {a, b} = {alpha(c), alpha(d)} for some alpha in Aut(F), with no exceptions.
bool same_parameter_orbit(const FiniteField& f, Elem a, Elem b, Elem c, Elem d);

/// x -> lambda*x + mu taking s to u and t to v. Throws ParamError when
/// chi(s-t) != chi(u-v).
SemilinearMap affine_map_between_pairs(const FiniteField& f, Elem s, Elem t, Elem u, Elem v);

/// All valid (a, b), a <= b by code.
std::vector<std::pair<Elem, Elem>> valid_unordered_pairs(const FiniteField& f);
/// All valid ordered (a, b).
std::vector<std::pair<Elem, Elem>> valid_pairs(const FiniteField& f);

/// One representative per isomorphism class of valid unordered pairs: the
/// smallest (a, b) with a <= b. Classes are Aut(F)-orbits except over F_9,
/// where the twisted orbits merge.
std::vector<std::pair<Elem, Elem>> class_representatives(const FiniteField& f);

}  // namespace qq
