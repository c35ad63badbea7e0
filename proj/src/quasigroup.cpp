#include "qq/quasigroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qq {
namespace {

void check_table_cap(std::uint32_t n, const Caps& caps) {
  if (n > caps.table_n) {
    throw CapError("table order " + std::to_string(n) + " exceeds cap " + std::to_string(caps.table_n));
  }
}

Origin origin_of(const FiniteField& f, Elem a, Elem b) {
  return {f.characteristic(), f.degree(), f.modulus(), a, b};
}

// Elements of lambda*K + mu over all lambda in `scales`, mu in F.
void add_cosets(const FiniteField& f, const Subfield& k, const std::vector<Elem>& scales,
                std::set<std::vector<Elem>>& out) {
  std::vector<Elem> s(k.elements.size());
  for (Elem lambda : scales) {
    for (Elem mu = 0; mu < f.order(); ++mu) {
      for (std::size_t i = 0; i < k.elements.size(); ++i) {
        s[i] = f.add(f.mul(lambda, k.elements[i]), mu);
      }
      auto sorted = s;
      std::sort(sorted.begin(), sorted.end());
      out.insert(std::move(sorted));
    }
  }
}

bool all_squares(const FiniteField& f, const Subfield& k) {
  return std::all_of(k.elements.begin(), k.elements.end(), [&](Elem x) { return f.chi(x) >= 0; });
}

}  // namespace

Validity validate_params(const FiniteField& f, Elem a, Elem b) {
  const auto q = f.order();
  if (a >= q || b >= q) return {false, "element out of range"};
  const Elem one_a = f.sub(1, a);
  const Elem one_b = f.sub(1, b);
  if (f.chi(a) == 0) return {false, "chi(a)=0"};
  if (f.chi(one_a) == 0) return {false, "chi(1-a)=0"};
  if (f.chi(b) == 0) return {false, "chi(b)=0"};
  if (f.chi(one_b) == 0) return {false, "chi(1-b)=0"};
  if (f.chi(a) != f.chi(b)) return {false, "chi(a)!=chi(b)"};
  if (f.chi(one_a) != f.chi(one_b)) return {false, "chi(1-a)!=chi(1-b)"};
  return {true, ""};
}

bool is_latin(const Magma& m) {
  const std::uint32_t n = m.n;
  if (m.table.size() != static_cast<std::size_t>(n) * n) return false;
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::uint32_t x = 0; x < n; ++x) {
    ++stamp;
    for (std::uint32_t y = 0; y < n; ++y) {
      const Elem v = m.at(x, y);
      if (v >= n || seen[v] == stamp) return false;
      seen[v] = stamp;
    }
  }
  for (std::uint32_t y = 0; y < n; ++y) {
    ++stamp;
    for (std::uint32_t x = 0; x < n; ++x) {
      const Elem v = m.at(x, y);
      if (seen[v] == stamp) return false;
      seen[v] = stamp;
    }
  }
  return true;
}

Quasigroup::Quasigroup(Magma m, std::optional<Origin> origin)
    : n_(m.n), table_(std::move(m.table)), origin_(std::move(origin)) {
  if (!is_latin({n_, table_})) throw ParamError("table is not a Latin square");
  ldiv_.resize(table_.size());
  rdiv_.resize(table_.size());
  for (Elem x = 0; x < n_; ++x) {
    for (Elem y = 0; y < n_; ++y) {
      const Elem z = table_[idx(x, y)];
      ldiv_[idx(x, z)] = y;
      rdiv_[idx(z, y)] = x;
    }
  }
}

Magma build_magma(const FiniteField& f, Elem a, Elem b, const Caps& caps) {
  const std::uint32_t n = f.order();
  check_table_cap(n, caps);
  Magma m{n, std::vector<Elem>(static_cast<std::size_t>(n) * n)};
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const Elem d = f.sub(y, x);
      const Elem c = f.chi(d) >= 0 ? a : b;
      m.table[static_cast<std::size_t>(x) * n + y] = f.add(x, f.mul(c, d));
    }
  }
  return m;
}

Quasigroup build_quadratic(const FiniteField& f, Elem a, Elem b, const Caps& caps) {
  if (auto v = validate_params(f, a, b); !v) {
    throw ParamError("invalid parameters: " + v.reason);
  }
  return Quasigroup(build_magma(f, a, b, caps), origin_of(f, a, b));
}

Quasigroup opposite(const Quasigroup& q) {
  const auto n = q.order();
  Magma m{n, std::vector<Elem>(static_cast<std::size_t>(n) * n)};
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) m.table[static_cast<std::size_t>(x) * n + y] = q(y, x);
  }
  return Quasigroup(std::move(m));
}

Quasigroup translate(const Quasigroup& q) {
  const auto n = q.order();
  Magma m{n, std::vector<Elem>(static_cast<std::size_t>(n) * n)};
  for (Elem z = 0; z < n; ++z) {
    for (Elem x = 0; x < n; ++x) m.table[static_cast<std::size_t>(z) * n + x] = q.ldiv(x, z);
  }
  return Quasigroup(std::move(m));
}

Elem nearfield_product(const FiniteField& f, Elem x, Elem y) {
  const unsigned half = f.half_degree();
  if (f.chi(x) >= 0) return f.mul(x, y);
  return f.mul(x, f.frobenius(y, half));
}

Quasigroup build_nearfield_quasigroup(const FiniteField& f, Elem c, const Caps& caps) {
  f.half_degree();
  if (c == 0 || c == 1 || c >= f.order()) throw ParamError("nearfield parameter must lie outside {0, 1}");
  const std::uint32_t n = f.order();
  check_table_cap(n, caps);
  Magma m{n, std::vector<Elem>(static_cast<std::size_t>(n) * n)};
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      m.table[static_cast<std::size_t>(x) * n + y] = f.add(x, nearfield_product(f, f.sub(y, x), c));
    }
  }
  return Quasigroup(std::move(m));
}

bool is_netto(const FiniteField& f, Elem a, Elem b) {
  if (f.characteristic() <= 3 || a == b) return false;
  const Elem minus_one = f.neg(1);
  return f.add(a, b) == 1 && f.mul(a, b) == 1 && f.chi(a) == -1 && f.chi(minus_one) == -1;
}

std::vector<Elem> subquasigroup_closure(const Quasigroup& q, std::span<const Elem> generators,
                                        ClosureOps ops) {
  std::vector<char> in(q.order(), 0);
  std::vector<Elem> members;
  auto push = [&](Elem e) {
    if (!in[e]) {
      in[e] = 1;
      members.push_back(e);
    }
  };
  for (Elem g : generators) push(g);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Elem x = members[i];
      const Elem y = members[j];
      push(q(x, y));
      push(q(y, x));
      if (ops == ClosureOps::multiply_and_divide) {
        push(q.ldiv(x, y));
        push(q.ldiv(y, x));
        push(q.rdiv(x, y));
        push(q.rdiv(y, x));
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::string to_string(SubqDescriptor::Kind k) {
  switch (k) {
    case SubqDescriptor::Kind::trivial: return "trivial";
    case SubqDescriptor::Kind::coset: return "coset";
    case SubqDescriptor::Kind::unmatched: return "unmatched";
  }
  return "unmatched";
}

SubqDescriptor describe_subset(const FiniteField& f, std::span<const Elem> elements) {
  SubqDescriptor d;
  d.elements.assign(elements.begin(), elements.end());
  std::sort(d.elements.begin(), d.elements.end());
  d.elements.erase(std::unique(d.elements.begin(), d.elements.end()), d.elements.end());
  if (d.elements.size() <= 1) {
    d.kind = SubqDescriptor::Kind::trivial;
    d.shift = d.elements.empty() ? 0 : d.elements.front();
    return d;
  }
  const auto size = d.elements.size();
  unsigned m = 0;
  for (unsigned j = 1; j <= f.degree(); ++j) {
    std::uint64_t order = 1;
    for (unsigned i = 0; i < j; ++i) order *= f.characteristic();
    if (order == size && f.degree() % j == 0) m = j;
  }
  if (m == 0) return d;

  const Elem mu = d.elements.front();
  std::vector<Elem> diff;
  diff.reserve(size);
  for (Elem x : d.elements) diff.push_back(f.sub(x, mu));
  std::sort(diff.begin(), diff.end());
  const Elem lambda = diff[1];  // diff[0] == 0

  const Elem inv = f.inv(lambda);
  std::vector<Elem> scaled;
  scaled.reserve(size);
  for (Elem x : diff) scaled.push_back(f.mul(inv, x));
  std::sort(scaled.begin(), scaled.end());

  Subfield base = f.subfield(m);
  if (scaled != base.elements) return d;
  d.kind = SubqDescriptor::Kind::coset;
  d.scale = lambda;
  d.shift = mu;
  d.base = std::move(base);
  return d;
}

std::vector<SubqDescriptor> minimal_subquasigroups(const FiniteField& f, const Quasigroup& q, Exec exec) {
  const std::uint32_t n = q.order();
  std::vector<std::pair<Elem, Elem>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
  }
  std::vector<std::vector<Elem>> closures(pairs.size());
  const auto count = static_cast<std::int64_t>(pairs.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
      const Elem g[2] = {pairs[i].first, pairs[i].second};
      closures[i] = subquasigroup_closure(q, g, ClosureOps::multiply);
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      const Elem g[2] = {pairs[i].first, pairs[i].second};
      closures[i] = subquasigroup_closure(q, g, ClosureOps::multiply);
    }
  }

  // Minimal iff every pair inside generates the whole set.
  std::map<std::vector<Elem>, bool> candidates;
  for (const auto& c : closures) candidates.emplace(c, true);
  std::vector<std::uint32_t> pair_index(static_cast<std::size_t>(n) * n, 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pair_index[static_cast<std::size_t>(pairs[i].first) * n + pairs[i].second] = static_cast<std::uint32_t>(i);
  }
  for (auto& [set, minimal] : candidates) {
    for (std::size_t i = 0; i < set.size() && minimal; ++i) {
      for (std::size_t j = i + 1; j < set.size(); ++j) {
        if (closures[pair_index[static_cast<std::size_t>(set[i]) * n + set[j]]] != set) {
          minimal = false;
          break;
        }
      }
    }
  }

  const bool match = q.origin().has_value() && !is_netto(f, q.origin()->a, q.origin()->b) &&
                     f.order() == n;
  std::vector<SubqDescriptor> out;
  for (const auto& [set, minimal] : candidates) {
    if (!minimal) continue;
    if (match) {
      out.push_back(describe_subset(f, set));
    } else {
      SubqDescriptor d;
      d.elements = set;
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::optional<std::vector<std::vector<Elem>>> predicted_minimal_subquasigroups(const FiniteField& f,
                                                                               Elem a, Elem b) {
  if (is_netto(f, a, b)) return std::nullopt;
  const Elem ab[2] = {a, b};
  const Subfield k = f.subfield_generated_by(ab);
  const Subfield k0 = f.subfield_generated_by(std::span<const Elem>(&a, 1));
  const Subfield k1 = f.subfield_generated_by(std::span<const Elem>(&b, 1));
  const bool sq0 = all_squares(f, k0);
  const bool sq1 = all_squares(f, k1);

  std::vector<Elem> squares, nonsquares, all;
  for (Elem x = 1; x < f.order(); ++x) {
    (f.is_square(x) ? squares : nonsquares).push_back(x);
    all.push_back(x);
  }
  std::set<std::vector<Elem>> sets;
  if (sq0 && sq1) {
    // Square multiples of K_0, nonsquare multiples of K_1.
    add_cosets(f, k0, squares, sets);
    add_cosets(f, k1, nonsquares, sets);
  } else if (!sq0 && !sq1) {
    add_cosets(f, k, all, sets);
  } else if (sq1) {
    add_cosets(f, k1, nonsquares, sets);
  } else {
    add_cosets(f, k0, squares, sets);
  }
  return std::vector<std::vector<Elem>>(sets.begin(), sets.end());
}

bool is_saturated(const FiniteField& f, const Quasigroup& q, std::span<const Elem> set) {
  if (!q.origin()) throw ParamError("saturation needs a quadratic quasigroup");
  const Elem a = q.origin()->a;
  const Elem b = q.origin()->b;
  const std::uint32_t orders[2] = {
      f.subfield_generated_by(std::span<const Elem>(&a, 1)).order,
      f.subfield_generated_by(std::span<const Elem>(&b, 1)).order,
  };
  std::vector<Elem> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::vector<Elem>> closures;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const Elem g[2] = {sorted[i], sorted[j]};
      closures.push_back(subquasigroup_closure(q, g, ClosureOps::multiply));
    }
  }
  for (std::uint32_t order : orders) {
    const bool ok = std::all_of(closures.begin(), closures.end(), [&](const std::vector<Elem>& s) {
      return s.size() == order && std::includes(sorted.begin(), sorted.end(), s.begin(), s.end());
    });
    if (ok) return true;
  }
  return false;
}

}  // namespace qq
