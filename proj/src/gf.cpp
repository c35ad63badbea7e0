#include "qq/gf.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qq {
namespace {

// Remainder of a modulo monic b over F_p (ascending coefficients).
std::vector<unsigned> poly_rem(std::vector<unsigned> a, std::span<const unsigned> b, unsigned p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i < db; ++i) {
        a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<unsigned, unsigned>> odd_prime_power(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) return std::nullopt;
  for (std::uint64_t p = 3; p <= q; p += 2) {
    if (q % p != 0) continue;
    // p is the smallest prime factor.
    unsigned k = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) return std::nullopt;
    return std::make_pair(static_cast<unsigned>(p), k);
  }
  return std::nullopt;
}

std::vector<std::uint32_t> odd_prime_powers(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = std::max<std::uint32_t>(lo, 3); q <= hi; ++q) {
    if (odd_prime_power(q)) out.push_back(q);
  }
  return out;
}

bool is_irreducible(std::span<const unsigned> poly, unsigned p) {
  const std::size_t deg = poly.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    std::vector<unsigned> div(d + 1, 0);
    div[d] = 1;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::uint64_t v = t;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<unsigned>(v % p);
        v /= p;
      }
      auto r = poly_rem(std::vector<unsigned>(poly.begin(), poly.end()), div, p);
      if (std::all_of(r.begin(), r.end(), [](unsigned c) { return c == 0; })) return false;
    }
  }
  return true;
}

bool Subfield::contains(Elem x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

FiniteField::FiniteField(unsigned p, unsigned k, std::optional<std::vector<unsigned>> modulus)
    : p_(p), k_(k) {
  if (p % 2 == 0 || !is_prime(p)) {
    throw FieldError("characteristic " + std::to_string(p) + " is not an odd prime");
  }
  if (k == 0) throw FieldError("extension degree must be at least 1");
  std::uint64_t q = 1;
  pow_p_.push_back(1);
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw FieldError("field order exceeds " + std::to_string(kMaxOrder));
    }
    pow_p_.push_back(static_cast<std::uint32_t>(q));
  }
  q_ = static_cast<std::uint32_t>(q);

  if (modulus) {
    const auto& m = *modulus;
    if (m.size() != k + 1 || m.back() != 1) {
      throw FieldError("modulus must be monic of degree " + std::to_string(k));
    }
    if (std::any_of(m.begin(), m.end(), [p](unsigned c) { return c >= p; })) {
      throw FieldError("modulus coefficients must lie in [0, p)");
    }
    if (!is_irreducible(m, p)) throw FieldError("modulus is reducible");
    modulus_ = m;
  } else {
    // Enumerate (c0, ..., c_{k-1}) in lexicographic order, c0 most significant.
    std::vector<unsigned> m(k + 1, 0);
    m[k] = 1;
    for (std::uint32_t t = 0; t < q_; ++t) {
      std::uint32_t v = t;
      for (unsigned i = k; i-- > 0;) {
        m[i] = v % p;
        v /= p;
      }
      if (is_irreducible(m, p)) {
        modulus_ = m;
        break;
      }
    }
  }

  neg_.resize(q_);
  for (Elem x = 0; x < q_; ++x) {
    Elem r = 0;
    Elem v = x;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((p_ - v % p_) % p_) * pow_p_[i];
      v /= p_;
    }
    neg_[x] = r;
  }

  // Primitive element, then log tables.
  const auto factors = prime_factors(q_ - 1);
  for (Elem g = 1; g < q_; ++g) {
    bool ok = true;
    for (auto r : factors) {
      if (pow_poly(g, (q_ - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      primitive_ = g;
      break;
    }
  }
  if (q_ <= kLogTableOrder) {
    exp_.resize(2 * (q_ - 1));
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      exp_[i + q_ - 1] = x;
      log_[x] = i;
      x = mul_poly(x, primitive_);
    }
  }

  frob_.resize(q_);
  for (Elem x = 0; x < q_; ++x) frob_[x] = pow(x, p_);

  chi_.assign(q_, -1);
  chi_[0] = 0;
  for (Elem y = 1; y < q_; ++y) chi_[mul(y, y)] = 1;
  nonsquare_ = static_cast<Elem>(std::find(chi_.begin(), chi_.end(), -1) - chi_.begin());
}

Elem FiniteField::add(Elem x, Elem y) const {
  if (k_ == 1) {
    const Elem s = x + y;
    return s >= p_ ? s - p_ : s;
  }
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    const unsigned d = (x % p_ + y % p_) % p_;
    r += d * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return r;
}

Elem FiniteField::sub(Elem x, Elem y) const { return add(x, neg_[y]); }

Elem FiniteField::neg(Elem x) const { return neg_[x]; }

Elem FiniteField::mul_poly(Elem x, Elem y) const {
  if (k_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(x) * y % p_);
  std::vector<unsigned> a(k_), b(k_), r(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    a[i] = x % p_;
    b[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  for (unsigned i = 0; i < k_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
  }
  r = poly_rem(std::move(r), modulus_, p_);
  Elem out = 0;
  for (unsigned i = 0; i < k_; ++i) out += r[i] * pow_p_[i];
  return out;
}

Elem FiniteField::pow_poly(Elem x, std::uint64_t e) const {
  Elem result = 1;
  while (e) {
    if (e & 1) result = mul_poly(result, x);
    x = mul_poly(x, x);
    e >>= 1;
  }
  return result;
}

Elem FiniteField::mul(Elem x, Elem y) const {
  if (x == 0 || y == 0) return 0;
  if (!log_.empty()) return exp_[log_[x] + log_[y]];
  return mul_poly(x, y);
}

Elem FiniteField::inv(Elem x) const {
  if (x == 0) throw std::domain_error("inverse of zero");
  if (!log_.empty()) return exp_[(q_ - 1 - log_[x]) % (q_ - 1)];
  return pow_poly(x, q_ - 2);
}

Elem FiniteField::pow(Elem x, std::uint64_t e) const {
  if (e == 0) return 1;
  if (x == 0) return 0;
  if (!log_.empty()) {
    return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[x]) * (e % (q_ - 1))) % (q_ - 1))];
  }
  return pow_poly(x, e);
}

Elem FiniteField::frobenius(Elem x, unsigned j) const {
  if (j >= k_) throw ParamError("Frobenius exponent must be below the extension degree");
  for (unsigned i = 0; i < j; ++i) x = frob_[x];
  return x;
}

Elem FiniteField::from_int(long long v) const {
  const long long r = ((v % static_cast<long long>(p_)) + p_) % p_;
  return static_cast<Elem>(r);
}

Elem FiniteField::from_coeffs(std::span<const unsigned> coeffs) const {
  if (coeffs.size() > k_) throw ParamError("too many coefficients");
  Elem r = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) r += (coeffs[i] % p_) * pow_p_[i];
  return r;
}

std::vector<unsigned> FiniteField::coeffs(Elem x) const {
  std::vector<unsigned> c(k_);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = x % p_;
    x /= p_;
  }
  return c;
}

std::string FiniteField::pretty(Elem x) const {
  const auto c = coeffs(x);
  std::string out;
  for (unsigned i = 0; i < k_; ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

unsigned FiniteField::element_degree(Elem x) const {
  for (unsigned d = 1; d <= k_; ++d) {
    if (k_ % d != 0) continue;
    Elem y = x;
    for (unsigned i = 0; i < d; ++i) y = frob_[y];
    if (y == x) return d;
  }
  return k_;
}

Subfield FiniteField::subfield(unsigned m) const {
  if (m == 0 || k_ % m != 0) throw ParamError("subfield degree must divide the extension degree");
  Subfield s{m, pow_p_[m], {}};
  s.elements.reserve(s.order);
  for (Elem x = 0; x < q_; ++x) {
    Elem y = x;
    for (unsigned i = 0; i < m; ++i) y = frob_[y];
    if (y == x) s.elements.push_back(x);
  }
  return s;
}

Subfield FiniteField::subfield_generated_by(std::span<const Elem> s) const {
  unsigned m = 1;
  for (Elem x : s) m = std::lcm(m, element_degree(x));
  return subfield(m);
}

std::vector<FieldAutomorphism> FiniteField::galois_group_over(const Subfield& sub) const {
  if (sub.degree == 0 || k_ % sub.degree != 0) throw ParamError("not a subfield of this field");
  std::vector<FieldAutomorphism> out;
  for (unsigned t = 0; t < k_ / sub.degree; ++t) out.push_back({sub.degree * t});
  return out;
}

unsigned FiniteField::half_degree() const {
  if (k_ % 2 != 0) throw ParamError("field order is not the square of a prime power");
  return k_ / 2;
}

FiniteField construct_field(unsigned p, unsigned k, std::optional<std::vector<unsigned>> modulus) {
  return FiniteField(p, k, std::move(modulus));
}

Elem arith(const FiniteField& f, ArithOp op, Elem x, Elem y) {
  switch (op) {
    case ArithOp::add: return f.add(x, y);
    case ArithOp::sub: return f.sub(x, y);
    case ArithOp::mul: return f.mul(x, y);
    case ArithOp::div: return f.div(x, y);
    case ArithOp::inv: return f.inv(x);
    case ArithOp::neg: return f.neg(x);
    case ArithOp::pow: return f.pow(x, y);
  }
  throw std::logic_error("unknown arithmetic op");
}

}  // namespace qq
