#include "qq/classify.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace qq {
namespace {

// True when the law holds for this particular assignment.
bool law_holds(const Quasigroup& q, Law law, Elem x, Elem y, Elem z, Elem u) {
  switch (law) {
    case Law::idempotent: return q(x, x) == x;
    case Law::commutative: return q(x, y) == q(y, x);
    case Law::flexible: return q(x, q(y, x)) == q(q(x, y), x);
    case Law::semisymmetric: return q(q(x, y), x) == y;
    case Law::left_dist: return q(x, q(y, z)) == q(q(x, y), q(x, z));
    case Law::right_dist: return q(q(x, y), z) == q(q(x, z), q(y, z));
    case Law::medial: return q(q(x, y), q(z, u)) == q(q(x, z), q(y, u));
  }
  return false;
}

// First violation with the given leading variable.
std::optional<std::vector<Elem>> violation_at(const Quasigroup& q, Law law, Elem x) {
  const std::uint32_t n = q.order();
  const int vars = arity(law);
  const Elem ny = vars >= 2 ? n : 1;
  const Elem nz = vars >= 3 ? n : 1;
  const Elem nu = vars >= 4 ? n : 1;
  for (Elem y = 0; y < ny; ++y) {
    for (Elem z = 0; z < nz; ++z) {
      for (Elem u = 0; u < nu; ++u) {
        if (!law_holds(q, law, x, y, z, u)) {
          std::vector<Elem> t{x, y, z, u};
          t.resize(static_cast<std::size_t>(vars));
          return t;
        }
      }
    }
  }
  return std::nullopt;
}

// Whether the element is fixed by some Aut(F) image relation; returns the
// exponent j with (a, b) = (b0^(p^j) ...) handled by the caller.
std::optional<unsigned> frobenius_relating(const FiniteField& f, Elem a, Elem b, Elem a0, Elem b0) {
  for (unsigned j = 0; j < f.degree(); ++j) {
    if (f.frobenius(a0, j) == a && f.frobenius(b0, j) == b) return j;
  }
  return std::nullopt;
}

struct Transport {
  unsigned frob = 0;
  bool scale = false;      // multiply by the canonical nonsquare after Frobenius
  bool transpose = false;  // target is the opposite of the image
};

Elem transport_point(const FiniteField& f, const Transport& t, Elem x) {
  x = f.frobenius(x, t.frob);
  return t.scale ? f.mul(f.nonsquare(), x) : x;
}

Quadrangle transport(const FiniteField& f, const Transport& t, const Quadrangle& in) {
  Quadrangle out;
  for (int i = 0; i < 2; ++i) {
    out.rows[i] = transport_point(f, t, in.rows[i]);
    out.cols[i] = transport_point(f, t, in.cols[i]);
    for (int j = 0; j < 2; ++j) out.entries[i][j] = transport_point(f, t, in.entries[i][j]);
  }
  if (t.transpose) {
    std::swap(out.rows, out.cols);
    std::swap(out.entries[0][1], out.entries[1][0]);
  }
  return out;
}

// Isomorphisms Q_{a0,b0} -> Q_{a,b} of the form x -> alpha(x) or
// x -> zeta*alpha(x).
std::optional<Transport> isomorphism_transport(const FiniteField& f, Elem a, Elem b, Elem a0, Elem b0) {
  if (auto j = frobenius_relating(f, a, b, a0, b0)) return Transport{*j, false, false};
  if (auto j = frobenius_relating(f, b, a, a0, b0)) return Transport{*j, true, false};
  return std::nullopt;
}

Quadrangle read_quadrangle(const Quasigroup& q, std::array<Elem, 2> rows, std::array<Elem, 2> cols) {
  Quadrangle r{rows, cols, {}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.entries[i][j] = q(rows[i], cols[j]);
  }
  return r;
}

}  // namespace

bool VarietyFlags::same_flags(const VarietyFlags& o) const { return differences(o).empty(); }

std::vector<std::string> VarietyFlags::differences(const VarietyFlags& o) const {
  std::vector<std::string> out;
  auto cmp = [&](const char* name, bool l, bool r) {
    if (l != r) out.emplace_back(name);
  };
  cmp("medial", medial, o.medial);
  cmp("left_distributive", left_distributive, o.left_distributive);
  cmp("right_distributive", right_distributive, o.right_distributive);
  cmp("commutative", commutative, o.commutative);
  cmp("flexible", flexible, o.flexible);
  cmp("semisymmetric", semisymmetric, o.semisymmetric);
  cmp("steiner", steiner, o.steiner);
  cmp("netto", netto, o.netto);
  cmp("group_isotopic", group_isotopic, o.group_isotopic);
  return out;
}

VarietyFlags classify_params(const FiniteField& f, Elem a, Elem b) {
  if (auto v = validate_params(f, a, b); !v) throw ParamError("invalid parameters: " + v.reason);
  const bool equal = a == b;
  const bool q3mod4 = f.order() % 4 == 3;
  const bool sum_one = f.add(a, b) == 1;
  const Elem one_a = f.sub(1, a);
  const Elem minus_one = f.neg(1);

  VarietyFlags r;
  r.provenance = VarietyFlags::Provenance::formula;
  r.medial = r.left_distributive = r.right_distributive = r.group_isotopic = equal;
  r.commutative = sum_one && (q3mod4 || equal);
  r.flexible = equal || (f.chi(a) == 1 && f.chi(one_a) == 1) || (sum_one && q3mod4);
  const bool sixth_root = f.add(f.sub(f.mul(a, a), a), 1) == 0;
  r.semisymmetric = sixth_root && (equal || sum_one);
  if (f.characteristic() == 3) {
    r.steiner = equal && a == minus_one;
  } else {
    r.steiner = sum_one && f.mul(a, b) == 1 && f.chi(a) == -1 && f.chi(minus_one) == -1;
  }
  r.netto = r.steiner && f.characteristic() > 3;
  return r;
}

std::string to_string(Law law) {
  switch (law) {
    case Law::idempotent: return "idempotent";
    case Law::medial: return "medial";
    case Law::left_dist: return "left_dist";
    case Law::right_dist: return "right_dist";
    case Law::commutative: return "commutative";
    case Law::flexible: return "flexible";
    case Law::semisymmetric: return "semisymmetric";
  }
  return "?";
}

int arity(Law law) {
  switch (law) {
    case Law::idempotent: return 1;
    case Law::commutative:
    case Law::flexible:
    case Law::semisymmetric: return 2;
    case Law::left_dist:
    case Law::right_dist: return 3;
    case Law::medial: return 4;
  }
  return 0;
}

std::optional<std::vector<Elem>> find_law_violation(const Quasigroup& q, Law law, Exec exec) {
  const std::uint32_t n = q.order();
  if (exec == Exec::serial) {
    for (Elem x = 0; x < n; ++x) {
      if (auto v = violation_at(q, law, x)) return v;
    }
    return std::nullopt;
  }
  // Smallest leading variable with a violation; threads skip rows above it.
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(n); ++x) {
    std::int64_t current;
#pragma omp atomic read
    current = best;
    if (x > current) continue;
    if (violation_at(q, law, static_cast<Elem>(x))) {
#pragma omp critical(qq_law_best)
      best = std::min(best, x);
    }
  }
  if (best == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return violation_at(q, law, static_cast<Elem>(best));
}

bool check_law(const Quasigroup& q, Law law, Exec exec) { return !find_law_violation(q, law, exec); }

bool is_group_isotope(const Quasigroup& q, Exec exec) {
  const std::uint32_t n = q.order();
  std::vector<Elem> left(n), right(n);
  for (Elem x = 0; x < n; ++x) {
    left[x] = q.rdiv(x, 0);
    right[x] = q.ldiv(0, x);
  }
  auto loop = [&](Elem x, Elem y) { return q(left[x], right[y]); };
  auto row_ok = [&](Elem x) {
    for (Elem y = 0; y < n; ++y) {
      const Elem xy = loop(x, y);
      for (Elem z = 0; z < n; ++z) {
        if (loop(xy, z) != loop(x, loop(y, z))) return false;
      }
    }
    return true;
  };
  if (exec == Exec::serial) {
    for (Elem x = 0; x < n; ++x) {
      if (!row_ok(x)) return false;
    }
    return true;
  }
  bool ok = true;
#pragma omp parallel for schedule(dynamic, 1) reduction(&& : ok)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(n); ++x) {
    ok = ok && row_ok(static_cast<Elem>(x));
  }
  return ok;
}

VarietyFlags classify_oracle(const Quasigroup& q, Exec exec) {
  VarietyFlags r;
  r.provenance = VarietyFlags::Provenance::oracle;
  r.medial = check_law(q, Law::medial, exec);
  r.left_distributive = check_law(q, Law::left_dist, exec);
  r.right_distributive = check_law(q, Law::right_dist, exec);
  r.commutative = check_law(q, Law::commutative, exec);
  r.flexible = check_law(q, Law::flexible, exec);
  r.semisymmetric = check_law(q, Law::semisymmetric, exec);
  r.steiner = check_law(q, Law::idempotent, exec) && r.commutative && r.semisymmetric;
  r.netto = r.steiner && !r.medial;
  r.group_isotopic = is_group_isotope(q, exec);
  return r;
}

std::optional<std::pair<Elem, Elem>> netto_params(const FiniteField& f) {
  if (f.characteristic() <= 3) return std::nullopt;
  if (f.chi(f.neg(1)) != -1) return std::nullopt;
  std::vector<Elem> roots;
  for (Elem x = 0; x < f.order(); ++x) {
    if (f.add(f.sub(f.mul(x, x), x), 1) == 0) roots.push_back(x);
  }
  if (roots.size() != 2) return std::nullopt;
  const Elem a = roots[0];
  const Elem b = roots[1];
  if (!is_netto(f, a, b)) return std::nullopt;
  return std::make_pair(a, b);
}

std::vector<Block> netto_blocks(const FiniteField& f, Elem a, Elem b) {
  const auto flags = classify_params(f, a, b);
  if (!flags.steiner) throw ParamError("parameters do not give a Steiner quasigroup");
  std::set<Block> blocks;
  const std::uint32_t n = f.order();
  for (Elem u = 0; u < n; ++u) {
    for (Elem v = 0; v < n; ++v) {
      if (u == v) continue;
      Elem w;
      if (flags.netto) {
        if (f.chi(f.sub(v, u)) != 1) continue;
        w = f.add(f.mul(a, v), f.mul(b, u));
      } else {
        w = f.neg(f.add(u, v));
      }
      Block blk{u, v, w};
      std::sort(blk.begin(), blk.end());
      blocks.insert(blk);
    }
  }
  return {blocks.begin(), blocks.end()};
}

bool is_steiner_triple_system(std::uint32_t n, const std::vector<Block>& blocks) {
  std::vector<std::uint8_t> cover(static_cast<std::size_t>(n) * n, 0);
  for (const auto& blk : blocks) {
    for (Elem e : blk) {
      if (e >= n) return false;
    }
    if (blk[0] == blk[1] || blk[1] == blk[2] || blk[0] == blk[2]) return false;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const Elem x = std::min(blk[i], blk[j]);
        const Elem y = std::max(blk[i], blk[j]);
        if (++cover[static_cast<std::size_t>(x) * n + y] > 1) return false;
      }
    }
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = x + 1; y < n; ++y) {
      if (cover[static_cast<std::size_t>(x) * n + y] != 1) return false;
    }
  }
  return true;
}

bool is_character_run_witness(const FiniteField& f, Elem u, Elem v) {
  return f.chi(u) == -1 && f.chi(v) == -1 && f.chi(f.add(u, 1)) == -1 && f.chi(f.add(v, 1)) == -1 &&
         f.chi(f.sub(u, 1)) == -1 && f.chi(f.sub(v, 1)) == 1;
}

std::pair<Elem, Elem> find_character_run_witness(const FiniteField& f) {
  if (f.order() <= 9) throw ParamError("character-run witness needs q > 9");
  const std::uint32_t n = f.order();
  for (Elem u = 0; u < n; ++u) {
    if (f.chi(u) != -1 || f.chi(f.add(u, 1)) != -1 || f.chi(f.sub(u, 1)) != -1) continue;
    for (Elem v = 0; v < n; ++v) {
      if (is_character_run_witness(f, u, v)) return {u, v};
    }
  }
  throw std::logic_error("no character-run witness in field of order " + std::to_string(n));
}

bool violates_quadrangle_criterion(const Quasigroup& q, const Quadrangle& first, const Quadrangle& second) {
  const std::uint32_t n = q.order();
  for (const auto* quad : {&first, &second}) {
    for (int i = 0; i < 2; ++i) {
      if (quad->rows[i] >= n || quad->cols[i] >= n) return false;
      for (int j = 0; j < 2; ++j) {
        if (q(quad->rows[i], quad->cols[j]) != quad->entries[i][j]) return false;
      }
    }
  }
  int agree = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) agree += first.entries[i][j] == second.entries[i][j];
  }
  return agree == 3;
}

std::optional<std::pair<Quadrangle, Quadrangle>> search_quadrangle_violation(const Quasigroup& q) {
  const std::uint32_t n = q.order();
  for (Elem r1 = 0; r1 < n; ++r1) {
    for (Elem r2 = 0; r2 < n; ++r2) {
      if (r2 == r1) continue;
      for (Elem c1 = 0; c1 < n; ++c1) {
        for (Elem c2 = 0; c2 < n; ++c2) {
          if (c2 == c1) continue;
          const Elem e11 = q(r1, c1), e12 = q(r1, c2), e21 = q(r2, c1), e22 = q(r2, c2);
          for (Elem s1 = 0; s1 < n; ++s1) {
            if (s1 == r1) continue;
            // Three agreeing corners fix the second quadrangle.
            const Elem d1 = q.ldiv(s1, e11);
            const Elem d2 = q.ldiv(s1, e12);
            const Elem s2 = q.rdiv(e21, d1);
            if (q(s2, d2) != e22) {
              return std::make_pair(read_quadrangle(q, {r1, r2}, {c1, c2}),
                                    read_quadrangle(q, {s1, s2}, {d1, d2}));
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

IsotopyCertificate group_isotopy_certificate(const FiniteField& f, Elem a, Elem b) {
  if (auto v = validate_params(f, a, b); !v) throw ParamError("invalid parameters: " + v.reason);
  IsotopyCertificate cert;
  if (a == b) {
    cert.isotopic = true;
    cert.affine_x = f.sub(1, a);
    cert.affine_y = a;
    cert.source = "affine";
    return cert;
  }
  const Quasigroup q = build_quadratic(f, a, b);
  const std::uint32_t order = f.order();

  if (order > 9) {
    const auto [u, v] = find_character_run_witness(f);
    cert.witness = std::make_pair(u, v);
    auto rows_for = [&](Elem w) {
      const Elem r0 = f.neg(f.mul(b, w));
      return std::array<Elem, 2>{r0, f.add(r0, 1)};
    };
    auto cols_for = [&](Elem w) {
      const Elem c0 = f.sub(w, f.mul(b, w));
      return std::array<Elem, 2>{c0, f.add(c0, 1)};
    };
    cert.first = read_quadrangle(q, rows_for(u), cols_for(u));
    cert.second = read_quadrangle(q, rows_for(v), cols_for(v));
    cert.source = "witness";
    return cert;
  }

  // Orders 7 and 9: the quadrangles of Q_{3,5} over F_7 and of
  // Q_{1+i,1+2i} over F_9 = F_3[i], i^2 = -1. With modulus x^2 + 1 the root
  // i has code 3, so c0 + c1*i has code c0 + 3*c1.
  Elem a0 = 0, b0 = 0;
  Quadrangle base1, base2;
  if (order == 7 && f.degree() == 1) {
    a0 = 3;
    b0 = 5;
    base1 = {{0, 1}, {0, 1}, {{{0, 3}, {3, 1}}}};
    base2 = {{2, 4}, {6, 5}, {{{0, 3}, {3, 0}}}};
  } else if (order == 9 && f.modulus() == std::vector<unsigned>{1, 0, 1}) {
    a0 = 4;  // 1+i
    b0 = 7;  // 1+2i
    base1 = {{1, 4}, {1, 6}, {{{1, 2}, {2, 1}}}};        // rows 1, 1+i; cols 1, 2i
    base2 = {{7, 3}, {5, 8}, {{{1, 2}, {2, 0}}}};        // rows 1+2i, i; cols 2+i, 2+2i
  }
  if (a0 != 0) {
    std::optional<Transport> t = isomorphism_transport(f, a, b, a0, b0);
    if (!t) {
      // Opposite of Q_{a,b} is Q_{1-a,1-b} (q = 1 mod 4) or Q_{1-b,1-a}.
      Elem oa = f.sub(1, a), ob = f.sub(1, b);
      if (order % 4 == 3) std::swap(oa, ob);
      t = isomorphism_transport(f, oa, ob, a0, b0);
      if (t) t->transpose = true;
    }
    if (t) {
      const Quadrangle c1 = transport(f, *t, base1);
      const Quadrangle c2 = transport(f, *t, base2);
      if (violates_quadrangle_criterion(q, c1, c2)) {
        cert.first = c1;
        cert.second = c2;
        const bool identity = t->frob == 0 && !t->scale && !t->transpose;
        cert.source = identity ? "table" : "transported";
        return cert;
      }
    }
  }
  auto found = search_quadrangle_violation(q);
  if (!found) throw std::logic_error("non-affine quadratic quasigroup satisfies the quadrangle criterion");
  cert.first = found->first;
  cert.second = found->second;
  cert.source = "search";
  return cert;
}

}  // namespace qq
