#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qq/errors.hpp"

namespace qq {

/// Field elements are integer codes in [0, q): the base-p digits, constant
/// term first, are the coefficients of the residue polynomial. Codes 0 and 1
/// are the additive and multiplicative identities. The same integers index
/// rows and columns of Cayley tables.
using Elem = std::uint32_t;

/// x -> x^(p^exponent).
struct FieldAutomorphism {
  unsigned exponent = 0;

  friend bool operator==(const FieldAutomorphism&, const FieldAutomorphism&) = default;
};

/// A subfield F_{p^m} of F, stored as its sorted element list.
struct Subfield {
  unsigned degree = 0;
  std::uint32_t order = 0;
  std::vector<Elem> elements;

  bool contains(Elem x) const;
  friend bool operator==(const Subfield& l, const Subfield& r) { return l.degree == r.degree; }
};

enum class ArithOp { add, sub, mul, div, inv, neg, pow };

/// GF(p^k) for odd p, with table-backed quadratic character.
///
/// Immutable after construction; every query is a pure function of the field
/// and its inputs, so one instance can be shared by parallel workers.
class FiniteField {
 public:
  /// Largest order accepted; the character table is dense.
  static constexpr std::uint32_t kMaxOrder = 1'000'000;
  /// exp/log tables are built up to this order.
  static constexpr std::uint32_t kLogTableOrder = 1u << 16;

  /// Builds GF(p^k). Without a modulus the lexicographically smallest monic
  /// irreducible of degree k is used, coefficients compared from the constant
  /// term upwards. A supplied modulus is [c0, ..., ck] with ck = 1.
  FiniteField(unsigned p, unsigned k, std::optional<std::vector<unsigned>> modulus = std::nullopt);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const;
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, std::uint64_t e) const;

  /// Quadratic character: 0 at 0, 1 on nonzero squares, -1 otherwise.
  int chi(Elem x) const { return chi_[x]; }
  bool is_square(Elem x) const { return chi_[x] == 1; }
  bool is_nonsquare(Elem x) const { return chi_[x] == -1; }

  /// Smallest-coded nonsquare.
  Elem nonsquare() const { return nonsquare_; }
  /// Smallest-coded generator of the multiplicative group.
  Elem primitive() const { return primitive_; }

  /// x^(p^j), 0 <= j < k.
  Elem frobenius(Elem x, unsigned j) const;
  Elem apply(FieldAutomorphism a, Elem x) const { return frobenius(x, a.exponent); }

  /// Image of an integer under Z -> F_p -> F.
  Elem from_int(long long v) const;
  Elem from_coeffs(std::span<const unsigned> coeffs) const;
  std::vector<unsigned> coeffs(Elem x) const;
  /// "c0+c1*x+..." for logs.
  std::string pretty(Elem x) const;

  /// Degree over F_p of the smallest subfield containing x.
  unsigned element_degree(Elem x) const;
  /// The unique subfield of degree m; m must divide k.
  Subfield subfield(unsigned m) const;
  /// Smallest subfield containing every element of s.
  Subfield subfield_generated_by(std::span<const Elem> s) const;
  /// Gal(F | K): exponents m*t for t = 0 .. k/m - 1.
  std::vector<FieldAutomorphism> galois_group_over(const Subfield& sub) const;

  /// For q = r^2: the exponent e with r = p^e. Throws ParamError otherwise.
  unsigned half_degree() const;

  friend bool operator==(const FiniteField& l, const FiniteField& r) {
    return l.p_ == r.p_ && l.k_ == r.k_ && l.modulus_ == r.modulus_;
  }

 private:
  Elem mul_poly(Elem x, Elem y) const;
  Elem pow_poly(Elem x, std::uint64_t e) const;

  unsigned p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<unsigned> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i, i = 0..k
  std::vector<Elem> neg_;
  std::vector<Elem> exp_;  // 2(q-1) entries when q <= kLogTableOrder
  std::vector<std::uint32_t> log_;
  std::vector<Elem> frob_;  // x -> x^p
  std::vector<signed char> chi_;
  Elem nonsquare_ = 0;
  Elem primitive_ = 0;
};

/// Validating factory mirroring the constructor.
FiniteField construct_field(unsigned p, unsigned k,
                            std::optional<std::vector<unsigned>> modulus = std::nullopt);

/// One arithmetic operation by name. `pow` takes the exponent as the second
/// operand; unary ops ignore it.
Elem arith(const FiniteField& f, ArithOp op, Elem x, Elem y = 0);

bool is_prime(std::uint64_t n);
/// Some (p, k) with q = p^k, p odd prime; nullopt otherwise.
std::optional<std::pair<unsigned, unsigned>> odd_prime_power(std::uint64_t q);
/// All odd prime powers in [lo, hi], ascending.
std::vector<std::uint32_t> odd_prime_powers(std::uint32_t lo, std::uint32_t hi);

/// Monic polynomial over F_p, ascending coefficients. Irreducibility by trial
/// division against all monic polynomials of degree <= deg/2.
bool is_irreducible(std::span<const unsigned> poly, unsigned p);

}  // namespace qq
