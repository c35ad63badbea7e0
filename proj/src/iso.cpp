#include "qq/iso.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace qq {
namespace {

constexpr Elem kNone = std::numeric_limits<Elem>::max();

// Total field-automorphism exponent of a semilinear map.
unsigned total_exponent(const FiniteField& f, const SemilinearMap& m) {
  return (m.frob + (m.twist ? m.gamma_exponent : 0)) % f.degree();
}

SemilinearMap normalised(const FiniteField& f, Elem lambda, unsigned exponent, unsigned gamma, Elem mu) {
  SemilinearMap r;
  r.lambda = lambda;
  r.mu = mu;
  r.gamma_exponent = gamma;
  exponent %= f.degree();
  if (gamma > 0 && exponent % (2 * gamma) == gamma) {
    r.twist = true;
    r.frob = (exponent + f.degree() - gamma) % f.degree();
  } else {
    r.frob = exponent;
  }
  return r;
}

// Smallest-coded square generating the subgroup of nonzero squares.
Elem square_generator(const FiniteField& f) {
  const std::uint64_t target = (f.order() - 1) / 2;
  for (Elem x = 1; x < f.order(); ++x) {
    if (!f.is_square(x)) continue;
    std::uint64_t ord = 1;
    Elem y = x;
    while (y != 1) {
      y = f.mul(y, x);
      ++ord;
    }
    if (ord == target) return x;
  }
  return 1;
}

bool is_automorphism_checked(const Quasigroup& q, const Permutation& psi) {
  const std::uint32_t n = q.order();
  constexpr std::uint64_t kSamples = 100000;
  if (n <= 64 || static_cast<std::uint64_t>(n) * n <= kSamples) return is_isomorphism(q, q, psi);
  std::mt19937 rng(12345);
  std::uniform_int_distribution<Elem> pick(0, n - 1);
  for (std::uint64_t i = 0; i < kSamples; ++i) {
    const Elem x = pick(rng);
    const Elem y = pick(rng);
    if (psi[q(x, y)] != q(psi[x], psi[y])) return false;
  }
  return true;
}

// Extends partial maps from -> to along a generating sequence of `from`,
// forcing images through products.
class MapSearch {
 public:
  MapSearch(const Quasigroup& from, const Quasigroup& to)
      : from_(from), to_(to), n_(from.order()), img_(n_, kNone), used_(n_, 0) {
    std::vector<Elem> gens{0};
    auto span = subquasigroup_closure(from_, gens, ClosureOps::multiply);
    while (span.size() < n_) {
      Elem next = 0;
      while (std::binary_search(span.begin(), span.end(), next)) ++next;
      gens.push_back(next);
      span = subquasigroup_closure(from_, gens, ClosureOps::multiply);
    }
    gens_ = std::move(gens);
    domain_.reserve(n_);
  }

  // Calls visit(img) for each isomorphism with img[gens[0]] = t0 until visit
  // returns false. Returns false if stopped early.
  template <class Visit>
  bool run(Elem t0, Visit&& visit) {
    return step(0, t0, visit);
  }

 private:
  template <class Visit>
  bool step(std::size_t depth, Elem target, Visit& visit) {
    const std::size_t save = domain_.size();
    bool keep_going = true;
    if (assign(gens_[depth], target) && propagate(save)) {
      if (depth + 1 == gens_.size()) {
        keep_going = visit(static_cast<const Permutation&>(img_));
      } else {
        for (Elem t = 0; t < n_ && keep_going; ++t) {
          if (!used_[t]) keep_going = step(depth + 1, t, visit);
        }
      }
    }
    undo(save);
    return keep_going;
  }

  bool assign(Elem x, Elem w) {
    if (used_[w]) return false;
    img_[x] = w;
    used_[w] = 1;
    domain_.push_back(x);
    return true;
  }

  bool check(Elem x, Elem y) {
    const Elem z = from_(x, y);
    const Elem w = to_(img_[x], img_[y]);
    if (img_[z] == kNone) return assign(z, w);
    return img_[z] == w;
  }

  bool propagate(std::size_t start) {
    for (std::size_t i = start; i < domain_.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        if (!check(domain_[i], domain_[j]) || !check(domain_[j], domain_[i])) return false;
      }
    }
    return true;
  }

  void undo(std::size_t save) {
    while (domain_.size() > save) {
      const Elem x = domain_.back();
      domain_.pop_back();
      used_[img_[x]] = 0;
      img_[x] = kNone;
    }
  }

  const Quasigroup& from_;
  const Quasigroup& to_;
  std::uint32_t n_;
  std::vector<Elem> gens_;
  Permutation img_;
  std::vector<char> used_;
  std::vector<Elem> domain_;
};

void check_oracle_cap(std::uint32_t n, const Caps& caps) {
  if (n > caps.oracle_n) {
    throw CapError("brute-force order " + std::to_string(n) + " exceeds cap " + std::to_string(caps.oracle_n));
  }
}

std::vector<Permutation> group_closure(const std::vector<Permutation>& gens, std::size_t n) {
  Permutation id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<Elem>(i);
  std::set<Permutation> seen{id};
  std::deque<Permutation> work{id};
  while (!work.empty()) {
    Permutation g = std::move(work.front());
    work.pop_front();
    for (const auto& h : gens) {
      Permutation gh(n);
      for (std::size_t i = 0; i < n; ++i) gh[i] = h[g[i]];
      if (seen.insert(gh).second) work.push_back(std::move(gh));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

Elem SemilinearMap::apply(const FiniteField& f, Elem x) const {
  if (twist) x = f.frobenius(x, gamma_exponent);
  x = f.frobenius(x, frob);
  return f.add(f.mul(lambda, x), mu);
}

Permutation SemilinearMap::permutation(const FiniteField& f) const {
  Permutation p(f.order());
  for (Elem x = 0; x < f.order(); ++x) p[x] = apply(f, x);
  return p;
}

SemilinearMap compose(const FiniteField& f, const SemilinearMap& outer, const SemilinearMap& inner) {
  const unsigned eo = total_exponent(f, outer);
  const unsigned ei = total_exponent(f, inner);
  const Elem lambda = f.mul(outer.lambda, f.frobenius(inner.lambda, eo));
  const Elem mu = f.add(f.mul(outer.lambda, f.frobenius(inner.mu, eo)), outer.mu);
  const unsigned gamma = std::max(outer.gamma_exponent, inner.gamma_exponent);
  return normalised(f, lambda, eo + ei, gamma, mu);
}

SemilinearMap inverse(const FiniteField& f, const SemilinearMap& m) {
  const unsigned e = total_exponent(f, m);
  const unsigned back = (f.degree() - e) % f.degree();
  const Elem inv_lambda = f.inv(m.lambda);
  const Elem lambda = f.frobenius(inv_lambda, back);
  const Elem mu = f.neg(f.frobenius(f.mul(m.mu, inv_lambda), back));
  return normalised(f, lambda, back, m.gamma_exponent, mu);
}

SubfieldBasis::SubfieldBasis(const FiniteField& f, Subfield k) : k_(std::move(k)) {
  const unsigned d = f.degree() / k_.degree;
  Elem g = 1;
  for (unsigned i = 0; i < d; ++i) {
    basis_.push_back(g);
    g = f.mul(g, f.primitive());
  }
  coords_.assign(f.order(), {});
  std::vector<std::size_t> digit(d, 0);
  const std::size_t kk = k_.elements.size();
  for (;;) {
    std::vector<Elem> c(d);
    Elem x = 0;
    for (unsigned i = 0; i < d; ++i) {
      c[i] = k_.elements[digit[i]];
      x = f.add(x, f.mul(c[i], basis_[i]));
    }
    coords_[x] = std::move(c);
    unsigned i = 0;
    while (i < d && ++digit[i] == kk) digit[i++] = 0;
    if (i == d) break;
  }
}

Elem SubfieldBasis::combine(const FiniteField& f, const std::vector<Elem>& c,
                            const std::vector<Elem>& images) const {
  Elem x = 0;
  for (std::size_t i = 0; i < c.size(); ++i) x = f.add(x, f.mul(c[i], images[i]));
  return x;
}

Permutation affine_linear_permutation(const FiniteField& f, const SubfieldBasis& basis,
                                      const AffineLinearMap& m) {
  Permutation p(f.order());
  for (Elem x = 0; x < f.order(); ++x) {
    p[x] = f.add(basis.combine(f, basis.coords(x), m.basis_images), m.mu);
  }
  return p;
}

std::string to_string(AutCase c) {
  switch (c) {
    case AutCase::generic: return "generic";
    case AutCase::medial: return "medial";
    case AutCase::twisted: return "twisted";
    case AutCase::fano: return "fano";
  }
  return "?";
}

AutDescriptor aut_descriptor(const FiniteField& f, Elem a, Elem b) {
  if (auto v = validate_params(f, a, b); !v) throw ParamError("invalid parameters: " + v.reason);
  AutDescriptor d;
  d.a = a;
  d.b = b;
  const Elem ab[2] = {a, b};
  d.field = f.subfield_generated_by(ab);
  const BigInt q = f.order();
  const unsigned m = d.field.degree;
  const unsigned gal = f.degree() / m;

  auto add_generic_generators = [&] {
    for (unsigned i = 0; i < f.degree(); ++i) {
      std::vector<unsigned> c(i + 1, 0);
      c[i] = 1;
      d.generators.push_back({1, 0, false, 0, f.from_coeffs(c)});
    }
    if (const Elem s = square_generator(f); s != 1) d.generators.push_back({s, 0, false, 0, 0});
    if (gal > 1) d.generators.push_back({1, m, false, 0, 0});
  };

  const bool fano = f.order() == 7 && ((a == 3 && b == 5) || (a == 5 && b == 3));
  if (fano) {
    d.kind = AutCase::fano;
    d.order = 168;
    const Quasigroup qg = build_quadratic(f, a, b);
    const auto all = aut_brute_force(qg, Caps{}, Exec::serial);
    std::vector<Permutation> gens;
    std::size_t reached = 1;
    for (const auto& p : all) {
      if (reached == all.size()) break;
      auto trial = gens;
      trial.push_back(p);
      const auto span = group_closure(trial, f.order());
      if (span.size() > reached) {
        gens = std::move(trial);
        reached = span.size();
      }
    }
    d.permutation_generators = std::move(gens);
    return d;
  }
  if (a == b) {
    d.kind = AutCase::medial;
    const BigInt kq = d.field.order;
    BigInt order = q;
    BigInt ki = 1;
    for (unsigned i = 0; i < gal; ++i) {
      order *= (q - ki);
      ki *= kq;
    }
    d.order = order;
    d.statement = "all maps x -> sigma(x) + mu with sigma a bijective K-linear map of F, K of order " +
                  std::to_string(d.field.order);
    return d;
  }
  if (m % 2 == 0 && f.frobenius(a, m / 2) == b) {
    d.kind = AutCase::twisted;
    d.gamma_exponent = m / 2;
    d.order = q * (q - 1) * gal;
    add_generic_generators();
    d.generators.push_back({f.nonsquare(), 0, true, d.gamma_exponent, 0});
    return d;
  }
  d.kind = AutCase::generic;
  d.order = q * (q - 1) / 2 * gal;
  add_generic_generators();
  return d;
}

std::vector<AutElement> aut_elements(const FiniteField& f, const AutDescriptor& d, const Caps& caps) {
  if (d.order > caps.aut_elements) {
    throw CapError("automorphism group order " + d.order.str() + " exceeds cap " +
                   std::to_string(caps.aut_elements));
  }
  const Quasigroup q = build_quadratic(f, d.a, d.b);
  std::vector<AutElement> out;
  out.reserve(static_cast<std::size_t>(d.order));
  const std::uint32_t n = f.order();

  switch (d.kind) {
    case AutCase::fano: {
      for (auto& p : aut_brute_force(q, Caps{}, Exec::serial)) out.push_back({std::monostate{}, std::move(p)});
      break;
    }
    case AutCase::generic:
    case AutCase::twisted: {
      const auto gal = f.galois_group_over(d.field);
      for (bool twisted : {false, true}) {
        if (twisted && d.kind != AutCase::twisted) break;
        for (Elem lambda = 1; lambda < n; ++lambda) {
          if (f.is_square(lambda) == twisted) continue;
          for (const auto& alpha : gal) {
            for (Elem mu = 0; mu < n; ++mu) {
              SemilinearMap m{lambda, alpha.exponent, twisted, d.gamma_exponent, mu};
              out.push_back({m, m.permutation(f)});
            }
          }
        }
      }
      break;
    }
    case AutCase::medial: {
      const SubfieldBasis basis(f, d.field);
      const unsigned dim = basis.dimension();
      // Images of the basis, chosen one at a time outside the span so far.
      std::vector<Elem> images;
      std::vector<std::vector<char>> spans{std::vector<char>(n, 0)};
      spans[0][0] = 1;
      auto recurse = [&](auto&& self) -> void {
        if (images.size() == dim) {
          for (Elem mu = 0; mu < n; ++mu) {
            AffineLinearMap m{images, mu};
            out.push_back({m, affine_linear_permutation(f, basis, m)});
          }
          return;
        }
        const std::size_t top = spans.size() - 1;
        for (Elem v = 1; v < n; ++v) {
          if (spans[top][v]) continue;
          std::vector<char> next(n, 0);
          for (Elem s = 0; s < n; ++s) {
            if (!spans[top][s]) continue;
            for (Elem c : d.field.elements) next[f.add(s, f.mul(c, v))] = 1;
          }
          images.push_back(v);
          spans.push_back(std::move(next));
          self(self);
          spans.pop_back();
          images.pop_back();
        }
      };
      recurse(recurse);
      break;
    }
  }
  for (const auto& e : out) {
    if (!is_automorphism_checked(q, e.perm)) {
      throw std::logic_error("enumerated map is not an automorphism of Q_{" + std::to_string(d.a) + "," +
                             std::to_string(d.b) + "}");
    }
  }
  return out;
}

bool is_isomorphism(const Quasigroup& from, const Quasigroup& to, const Permutation& psi) {
  const std::uint32_t n = from.order();
  if (to.order() != n || psi.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (Elem x : psi) {
    if (x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      if (psi[from(x, y)] != to(psi[x], psi[y])) return false;
    }
  }
  return true;
}

std::optional<Permutation> iso_brute_force(const Quasigroup& from, const Quasigroup& to, Exec exec) {
  if (from.order() != to.order()) throw ParamError("quasigroup orders differ");
  const std::uint32_t n = from.order();
  auto search_from = [&](Elem t0) -> std::optional<Permutation> {
    MapSearch s(from, to);
    std::optional<Permutation> found;
    s.run(t0, [&](const Permutation& p) {
      found = p;
      return false;
    });
    return found;
  };
  if (exec == Exec::serial) {
    for (Elem t0 = 0; t0 < n; ++t0) {
      if (auto p = search_from(t0)) return p;
    }
    return std::nullopt;
  }
  std::vector<std::optional<Permutation>> results(n);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t0 = 0; t0 < static_cast<std::int64_t>(n); ++t0) {
    std::int64_t current;
#pragma omp atomic read
    current = best;
    if (t0 > current) continue;
    results[t0] = search_from(static_cast<Elem>(t0));
    if (results[t0]) {
#pragma omp critical(qq_iso_best)
      best = std::min(best, t0);
    }
  }
  if (best == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return results[best];
}

std::vector<Permutation> aut_brute_force(const Quasigroup& q, const Caps& caps, Exec exec) {
  check_oracle_cap(q.order(), caps);
  const std::uint32_t n = q.order();
  std::vector<std::vector<Permutation>> parts(n);
  auto collect = [&](Elem t0) {
    MapSearch s(q, q);
    s.run(t0, [&](const Permutation& p) {
      parts[t0].push_back(p);
      return true;
    });
  };
  if (exec == Exec::serial) {
    for (Elem t0 = 0; t0 < n; ++t0) collect(t0);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t t0 = 0; t0 < static_cast<std::int64_t>(n); ++t0) collect(static_cast<Elem>(t0));
  }
  std::vector<Permutation> all;
  for (auto& part : parts) {
    for (auto& p : part) all.push_back(std::move(p));
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::uint64_t aut_brute_force_count(const Quasigroup& q, const Caps& caps, Exec exec) {
  check_oracle_cap(q.order(), caps);
  const std::uint32_t n = q.order();
  std::uint64_t total = 0;
  auto count_from = [&](Elem t0) {
    MapSearch s(q, q);
    std::uint64_t c = 0;
    s.run(t0, [&](const Permutation&) {
      ++c;
      return true;
    });
    return c;
  };
  if (exec == Exec::serial) {
    for (Elem t0 = 0; t0 < n; ++t0) total += count_from(t0);
  } else {
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
    for (std::int64_t t0 = 0; t0 < static_cast<std::int64_t>(n); ++t0) total += count_from(static_cast<Elem>(t0));
  }
  return total;
}

bool is_two_transitive(std::uint32_t n, const std::vector<Permutation>& group) {
  if (n < 2) return true;
  std::vector<char> orbit0(n, 0), stab_orbit(n, 0);
  for (const auto& g : group) {
    orbit0[g[0]] = 1;
    if (g[0] == 0) stab_orbit[g[1]] = 1;
  }
  const auto transitive = std::count(orbit0.begin(), orbit0.end(), 1) == static_cast<long>(n);
  const auto stab = std::count(stab_orbit.begin(), stab_orbit.end(), 1) == static_cast<long>(n - 1);
  return transitive && stab;
}

bool same_parameter_orbit(const FiniteField& f, Elem a, Elem b, Elem c, Elem d) {
  for (unsigned j = 0; j < f.degree(); ++j) {
    const Elem cj = f.frobenius(c, j);
    const Elem dj = f.frobenius(d, j);
    if ((a == cj && b == dj) || (a == dj && b == cj)) return true;
  }
  return false;
}

std::optional<IsoWitness> iso_by_theorem(const FiniteField& f, Elem a, Elem b, Elem c, Elem d) {
  if (auto v = validate_params(f, a, b); !v) throw ParamError("invalid parameters (a,b): " + v.reason);
  if (auto v = validate_params(f, c, d); !v) throw ParamError("invalid parameters (c,d): " + v.reason);
  const std::uint32_t n = f.order();
  for (unsigned j = 0; j < f.degree(); ++j) {
    const Elem cj = f.frobenius(c, j);
    const Elem dj = f.frobenius(d, j);
    for (bool swap : {false, true}) {
      const bool match = swap ? (a == dj && b == cj) : (a == cj && b == dj);
      if (!match) continue;
      IsoWitness w{swap, j, std::nullopt, std::nullopt};
      Permutation p(n);
      for (Elem x = 0; x < n; ++x) {
        const Elem y = f.frobenius(x, j);
        p[x] = swap ? f.mul(f.nonsquare(), y) : y;
      }
      if (!is_isomorphism(build_quadratic(f, c, d), build_quadratic(f, a, b), p)) {
        throw std::logic_error("isomorphism witness failed verification");
      }
      w.permutation = std::move(p);
      return w;
    }
  }
  if (n != 9 || a == b || c == d) return std::nullopt;

  // F_9: every non-medial pair is twisted, and F_3-linear maps join the
  // three parameter orbits.
  const Quasigroup from = build_quadratic(f, c, d);
  const Quasigroup to = build_quadratic(f, a, b);
  for (Elem u = 1; u < n; ++u) {
    for (Elem v = 1; v < n; ++v) {
      if (f.element_degree(f.div(v, u)) == 1) continue;  // dependent
      Permutation p(n);
      for (Elem y = 0; y < n; ++y) {
        const auto cf = f.coeffs(y);
        p[y] = f.add(f.mul(cf[0], u), f.mul(cf[1], v));
      }
      if (!is_isomorphism(from, to, p)) continue;
      IsoWitness w;
      w.linear_images = std::vector<Elem>{u, v};
      w.permutation = std::move(p);
      return w;
    }
  }
  return std::nullopt;
}

SemilinearMap affine_map_between_pairs(const FiniteField& f, Elem s, Elem t, Elem u, Elem v) {
  if (f.chi(f.sub(s, t)) != f.chi(f.sub(u, v))) throw ParamError("chi(s-t) != chi(u-v)");
  if (s == t) return {1, 0, false, 0, f.sub(u, s)};
  const Elem den = f.inv(f.sub(s, t));
  const Elem lambda = f.mul(f.sub(u, v), den);
  const Elem mu = f.mul(f.sub(f.mul(v, s), f.mul(u, t)), den);
  return {lambda, 0, false, 0, mu};
}

std::vector<std::pair<Elem, Elem>> valid_pairs(const FiniteField& f) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem a = 0; a < f.order(); ++a) {
    for (Elem b = 0; b < f.order(); ++b) {
      if (validate_params(f, a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::pair<Elem, Elem>> valid_unordered_pairs(const FiniteField& f) {
  auto all = valid_pairs(f);
  std::erase_if(all, [](const auto& p) { return p.first > p.second; });
  return all;
}

std::vector<std::pair<Elem, Elem>> class_representatives(const FiniteField& f) {
  std::set<std::pair<Elem, Elem>> reps;
  for (const auto& [a, b] : valid_unordered_pairs(f)) {
    std::pair<Elem, Elem> best{a, b};
    for (unsigned j = 1; j < f.degree(); ++j) {
      Elem x = f.frobenius(a, j);
      Elem y = f.frobenius(b, j);
      if (x > y) std::swap(x, y);
      best = std::min(best, std::make_pair(x, y));
    }
    reps.insert(best);
  }
  if (f.order() == 9) {
    // The twisted orbits are a single class.
    const auto first = std::find_if(reps.begin(), reps.end(), [](const auto& r) { return r.first != r.second; });
    if (first != reps.end()) {
      const auto keep = *first;
      std::erase_if(reps, [&](const auto& r) { return r.first != r.second && r != keep; });
    }
  }
  return {reps.begin(), reps.end()};
}

}  // namespace qq
