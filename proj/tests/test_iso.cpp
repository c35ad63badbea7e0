#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "qq/classify.hpp"
#include "qq/iso.hpp"

namespace qq {
namespace {

FiniteField field_of(std::uint32_t q) {
  const auto [p, k] = *odd_prime_power(q);
  return FiniteField(p, k);
}

Permutation compose_perm(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) out[x] = outer[inner[x]];
  return out;
}

Permutation invert_perm(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) out[p[x]] = static_cast<Elem>(x);
  return out;
}

// |AGL_d(K)| with |K| = s.
BigInt agl_order(BigInt s, unsigned d) {
  BigInt sd = 1;
  for (unsigned i = 0; i < d; ++i) sd *= s;
  BigInt order = sd, si = 1;
  for (unsigned i = 0; i < d; ++i) {
    order *= sd - si;
    si *= s;
  }
  return order;
}

TEST(Descriptor, Examples) {
  FiniteField f7(7, 1);
  const auto fano = aut_descriptor(f7, 3, 5);
  EXPECT_EQ(fano.kind, AutCase::fano);
  EXPECT_EQ(fano.order, 168);
  EXPECT_FALSE(fano.permutation_generators.empty());

  FiniteField f9(3, 2);
  const auto tw = aut_descriptor(f9, 4, 7);
  EXPECT_EQ(tw.kind, AutCase::twisted);
  EXPECT_EQ(tw.field.order, 9u);
  EXPECT_EQ(tw.gamma_exponent, 1u);
  EXPECT_EQ(tw.order, 72);

  const auto med = aut_descriptor(f9, 2, 2);
  EXPECT_EQ(med.kind, AutCase::medial);
  EXPECT_EQ(med.field.order, 3u);
  EXPECT_EQ(med.order, 432);
  EXPECT_EQ(med.order, agl_order(3, 2));
  EXPECT_FALSE(med.statement.empty());

  FiniteField f11(11, 1);
  const auto gen = aut_descriptor(f11, 2, 6);
  EXPECT_EQ(gen.kind, AutCase::generic);
  EXPECT_EQ(gen.order, 55);
  EXPECT_EQ(to_string(AutCase::twisted), "twisted");
  EXPECT_THROW(aut_descriptor(f11, 0, 6), ParamError);

  FiniteField f27(3, 3);
  EXPECT_EQ(aut_descriptor(f27, 2, 2).order, agl_order(3, 3));
  FiniteField f81(3, 4);
  EXPECT_EQ(aut_descriptor(f81, 2, 2).order, agl_order(3, 4));
}

TEST(Descriptor, GeneratorsGenerateAndVerify) {
  for (std::uint32_t q : {9u, 11u, 25u, 27u}) {
    const auto f = field_of(q);
    for (const auto& [a, b] : valid_unordered_pairs(f)) {
      const auto d = aut_descriptor(f, a, b);
      if (d.kind == AutCase::medial) continue;
      const auto qq = build_quadratic(f, a, b);
      std::set<Permutation> group{Permutation(q)};
      std::iota(const_cast<Permutation&>(*group.begin()).begin(), const_cast<Permutation&>(*group.begin()).end(), 0);
      std::vector<Permutation> gens;
      for (const auto& g : d.generators) {
        gens.push_back(g.permutation(f));
        ASSERT_TRUE(is_isomorphism(qq, qq, gens.back()));
      }
      for (const auto& g : d.permutation_generators) gens.push_back(g);
      std::vector<Permutation> frontier(group.begin(), group.end());
      while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& x : frontier) {
          for (const auto& g : gens) {
            auto y = compose_perm(g, x);
            if (group.insert(y).second) next.push_back(std::move(y));
          }
        }
        frontier = std::move(next);
      }
      ASSERT_EQ(BigInt(group.size()), d.order) << q << " " << a << " " << b;
    }
  }
}

TEST(Elements, Counts) {
  FiniteField f11(11, 1);
  const auto gen = aut_elements(f11, aut_descriptor(f11, 2, 6));
  EXPECT_EQ(gen.size(), 55u);

  FiniteField f9(3, 2);
  const auto tw = aut_elements(f9, aut_descriptor(f9, 4, 7));
  ASSERT_EQ(tw.size(), 72u);
  int twisted = 0;
  for (const auto& e : tw) twisted += std::get<SemilinearMap>(e.form).twist;
  EXPECT_EQ(twisted, 36);

  const auto med = aut_elements(f9, aut_descriptor(f9, 2, 2));
  ASSERT_EQ(med.size(), 432u);
  std::set<std::vector<Elem>> linear;
  for (const auto& e : med) {
    const auto& m = std::get<AffineLinearMap>(e.form);
    if (m.mu == 0) linear.insert(m.basis_images);
  }
  EXPECT_EQ(linear.size(), 48u);

  for (const auto* list : {&gen, &tw, &med}) {
    std::set<Permutation> distinct;
    for (const auto& e : *list) distinct.insert(e.perm);
    EXPECT_EQ(distinct.size(), list->size());
  }

  FiniteField f7(7, 1);
  const auto fano = aut_elements(f7, aut_descriptor(f7, 3, 5));
  EXPECT_EQ(fano.size(), 168u);
  EXPECT_TRUE(std::holds_alternative<std::monostate>(fano.front().form));
}

TEST(Elements, Cap) {
  FiniteField f27(3, 3);
  Caps caps;
  caps.aut_elements = 1000;
  EXPECT_THROW(aut_elements(f27, aut_descriptor(f27, 2, 2), caps), CapError);
}

TEST(Elements, SubsetOfBruteForce) {
  for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u}) {
    const auto f = field_of(q);
    for (const auto& [a, b] : valid_pairs(f)) {
      const auto brute = aut_brute_force(build_quadratic(f, a, b));
      const auto elems = aut_elements(f, aut_descriptor(f, a, b));
      ASSERT_EQ(elems.size(), brute.size());
      for (const auto& e : elems) ASSERT_TRUE(std::binary_search(brute.begin(), brute.end(), e.perm));
    }
  }
}

TEST(Elements, GroupAxioms) {
  FiniteField f9(3, 2);
  for (auto [a, b] : {std::pair<Elem, Elem>{2, 2}, {4, 7}}) {
    const auto elems = aut_elements(f9, aut_descriptor(f9, a, b));
    std::set<Permutation> set;
    for (const auto& e : elems) set.insert(e.perm);
    for (const auto& x : elems) {
      ASSERT_TRUE(set.count(invert_perm(x.perm)));
      for (const auto& y : elems) ASSERT_TRUE(set.count(compose_perm(x.perm, y.perm)));
    }
  }
  std::mt19937 rng(1);
  for (std::uint32_t q : {25u, 49u, 81u}) {
    const auto f = field_of(q);
    const auto pairs = valid_unordered_pairs(f);
    for (int t = 0; t < 4; ++t) {
      const auto [a, b] = pairs[rng() % pairs.size()];
      const auto d = aut_descriptor(f, a, b);
      if (d.order > 20000) continue;
      const auto elems = aut_elements(f, d);
      std::set<Permutation> set;
      for (const auto& e : elems) set.insert(e.perm);
      ASSERT_EQ(BigInt(set.size()), d.order);
      for (int i = 0; i < 300; ++i) {
        const auto& x = elems[rng() % elems.size()].perm;
        const auto& y = elems[rng() % elems.size()].perm;
        ASSERT_TRUE(set.count(compose_perm(x, y)));
        ASSERT_TRUE(set.count(invert_perm(x)));
      }
    }
  }
}

TEST(Semilinear, ComposeAndInverse) {
  std::mt19937 rng(9);
  for (std::uint32_t q : {9u, 25u, 81u}) {
    const auto f = field_of(q);
    const unsigned half = f.degree() / 2;
    std::uniform_int_distribution<Elem> pick(0, q - 1);
    for (int i = 0; i < 200; ++i) {
      auto random_map = [&] {
        SemilinearMap m;
        do m.lambda = pick(rng); while (m.lambda == 0);
        m.frob = rng() % f.degree();
        m.twist = rng() % 2;
        m.gamma_exponent = half;
        m.mu = pick(rng);
        return m;
      };
      const auto g = random_map(), h = random_map();
      EXPECT_EQ(compose(f, g, h).permutation(f), compose_perm(g.permutation(f), h.permutation(f)));
      EXPECT_EQ(inverse(f, g).permutation(f), invert_perm(g.permutation(f)));
    }
  }
}

TEST(Semilinear, SubfieldBasisRoundTrip) {
  FiniteField f81(3, 4);
  for (unsigned m : {1u, 2u}) {
    const SubfieldBasis basis(f81, f81.subfield(m));
    EXPECT_EQ(basis.dimension(), 4 / m);
    for (Elem x = 0; x < 81; ++x) EXPECT_EQ(basis.combine(f81, basis.coords(x), basis.basis()), x);
  }
}

TEST(BruteForce, OrdersMatchDescriptor) {
  FiniteField f7(7, 1);
  EXPECT_EQ(aut_brute_force(build_quadratic(f7, 3, 5)).size(), 168u);
  FiniteField f9(3, 2);
  EXPECT_EQ(aut_brute_force(build_quadratic(f9, 4, 7)).size(), 72u);
  EXPECT_EQ(aut_brute_force(build_quadratic(f9, 2, 2)).size(), 432u);
  FiniteField f11(11, 1);
  const auto g = aut_brute_force(build_quadratic(f11, 2, 6));
  EXPECT_EQ(g.size(), 55u);
  Permutation id(11);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_TRUE(std::binary_search(g.begin(), g.end(), id));

  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u}) {
    const auto f = field_of(q);
    for (const auto& [a, b] : valid_pairs(f)) {
      const auto d = aut_descriptor(f, a, b);
      const auto qq = build_quadratic(f, a, b);
      ASSERT_EQ(BigInt(aut_brute_force_count(qq)), d.order) << q << " " << a << " " << b;
      ASSERT_EQ(aut_brute_force_count(qq, Caps{}, Exec::serial), aut_brute_force_count(qq, Caps{}, Exec::parallel));
    }
  }
}

TEST(BruteForce, NettoOrdersAreGeneric) {
  for (std::uint32_t q : {19u, 31u, 43u}) {
    FiniteField f(q, 1);
    const auto [a, b] = *netto_params(f);
    const auto d = aut_descriptor(f, a, b);
    EXPECT_EQ(d.kind, AutCase::generic);
    EXPECT_EQ(BigInt(aut_brute_force_count(build_quadratic(f, a, b))), d.order);
    EXPECT_EQ(d.order, q * (q - 1) / 2);
  }
}

TEST(BruteForce, Cap) {
  FiniteField f9(3, 2);
  Caps caps;
  caps.oracle_n = 8;
  EXPECT_THROW(aut_brute_force(build_quadratic(f9, 2, 2), caps), CapError);
  EXPECT_THROW(aut_brute_force_count(build_quadratic(f9, 2, 2), caps), CapError);
}

TEST(BruteForce, TwoTransitiveExactlyInSpecialCases) {
  for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u, 25u}) {
    const auto f = field_of(q);
    for (const auto& [a, b] : valid_unordered_pairs(f)) {
      const auto d = aut_descriptor(f, a, b);
      if (d.order > 20000) continue;
      const bool special = d.kind != AutCase::generic;
      ASSERT_EQ(is_two_transitive(q, aut_brute_force(build_quadratic(f, a, b))), special) << q << " " << a << " " << b;
    }
  }
}

TEST(Iso, TheoremExamples) {
  FiniteField f7(7, 1);
  const auto w = iso_by_theorem(f7, 3, 5, 5, 3);
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->swap);
  EXPECT_EQ(w->frob, 0u);
  ASSERT_TRUE(w->permutation);
  EXPECT_TRUE(is_isomorphism(build_quadratic(f7, 5, 3), build_quadratic(f7, 3, 5), *w->permutation));
  EXPECT_FALSE(iso_by_theorem(f7, 3, 5, 2, 2));
  EXPECT_THROW(iso_by_theorem(f7, 3, 5, 0, 1), ParamError);

  FiniteField f9(3, 2);
  const auto w9 = iso_by_theorem(f9, 4, 7, 7, 4);
  ASSERT_TRUE(w9);
  EXPECT_EQ(w9->frob, 0u);
  EXPECT_TRUE(w9->swap);
  // The cube map alone also works: (1+i)^3 = 1+2i.
  Permutation cube(9);
  for (Elem x = 0; x < 9; ++x) cube[x] = f9.pow(x, 3);
  EXPECT_TRUE(is_isomorphism(build_quadratic(f9, 7, 4), build_quadratic(f9, 4, 7), cube));
}

TEST(Iso, OrderNineTwistedClassesMerge) {
  FiniteField f9(3, 2);
  EXPECT_FALSE(same_parameter_orbit(f9, 4, 7, 3, 6));
  // 1 -> 1, i -> 2+i carries Q_{1+i,1+2i} onto Q_{i,2i}.
  Permutation linear(9);
  for (Elem x = 0; x < 9; ++x) {
    const auto c = f9.coeffs(x);
    linear[x] = f9.add(c[0], f9.mul(c[1], 5));
  }
  EXPECT_TRUE(is_isomorphism(build_quadratic(f9, 4, 7), build_quadratic(f9, 3, 6), linear));
  const auto w = iso_by_theorem(f9, 3, 6, 4, 7);
  ASSERT_TRUE(w);
  ASSERT_TRUE(w->linear_images);
  EXPECT_TRUE(is_isomorphism(build_quadratic(f9, 4, 7), build_quadratic(f9, 3, 6), *w->permutation));
  EXPECT_FALSE(iso_by_theorem(f9, 3, 6, 2, 2));
  EXPECT_EQ(class_representatives(f9).size(), 5u);  // four medial, one twisted
  // No such merging at the other orders of the same shape.
  FiniteField f25(5, 2), f49(7, 2);
  for (const auto* f : {&f25, &f49}) {
    for (const auto& [a, b] : valid_unordered_pairs(*f)) {
      for (const auto& [c, d] : valid_unordered_pairs(*f)) {
        if ((a + b + c + d) % 7 != 0) continue;
        const auto t = iso_by_theorem(*f, a, b, c, d);
        ASSERT_EQ(t.has_value(), same_parameter_orbit(*f, a, b, c, d));
        if (t) ASSERT_FALSE(t->linear_images);
      }
    }
  }
}

TEST(Iso, BruteForceExamples) {
  FiniteField f7(7, 1);
  const auto q = build_quadratic(f7, 3, 5);
  const auto self = iso_brute_force(q, q);
  ASSERT_TRUE(self);
  Permutation id(7);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_EQ(*self, id);
  const auto swap = iso_brute_force(q, build_quadratic(f7, 5, 3));
  ASSERT_TRUE(swap);
  EXPECT_TRUE(is_isomorphism(q, build_quadratic(f7, 5, 3), *swap));
  EXPECT_FALSE(iso_brute_force(q, build_quadratic(f7, 2, 2)));
  EXPECT_THROW(iso_brute_force(q, build_quadratic(FiniteField(5, 1), 2, 2)), ParamError);
}

TEST(Iso, OracleEquivalenceSmall) {
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u}) {
    const auto f = field_of(q);
    const auto pairs = valid_pairs(f);
    std::vector<Quasigroup> tables;
    for (const auto& [a, b] : pairs) tables.push_back(build_quadratic(f, a, b));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        const bool theorem = iso_by_theorem(f, pairs[i].first, pairs[i].second, pairs[j].first, pairs[j].second)
                                 .has_value();
        const auto brute = iso_brute_force(tables[j], tables[i]);
        ASSERT_EQ(theorem, brute.has_value()) << q << " (" << pairs[i].first << "," << pairs[i].second << ") ("
                                               << pairs[j].first << "," << pairs[j].second << ")";
        if (brute) ASSERT_TRUE(is_isomorphism(tables[j], tables[i], *brute));
      }
    }
  }
}

TEST(Iso, SerialMatchesParallel) {
  FiniteField f(5, 2);
  const auto pairs = valid_pairs(f);
  for (std::size_t i = 0; i < pairs.size(); i += 3) {
    const auto x = build_quadratic(f, pairs[i].first, pairs[i].second);
    const auto y = build_quadratic(f, pairs[i].second, pairs[i].first);
    ASSERT_EQ(iso_brute_force(x, y, Exec::serial), iso_brute_force(x, y, Exec::parallel));
  }
}

TEST(Affine, Examples) {
  FiniteField f7(7, 1);
  const auto id = affine_map_between_pairs(f7, 2, 5, 2, 5);
  EXPECT_EQ(id.lambda, 1u);
  EXPECT_EQ(id.mu, 0u);
  const auto m = affine_map_between_pairs(f7, 0, 1, 0, 2);
  EXPECT_EQ(m.lambda, 2u);
  EXPECT_EQ(m.mu, 0u);
  EXPECT_THROW(affine_map_between_pairs(f7, 0, 1, 0, 3), ParamError);
  const auto t = affine_map_between_pairs(f7, 4, 4, 6, 6);
  EXPECT_EQ(t.apply(f7, 4), 6u);
}

TEST(Affine, IsAutomorphismEverywhere) {
  FiniteField f13(13, 1);
  const auto pairs = valid_pairs(f13);
  for (Elem s = 0; s < 13; ++s) {
    for (Elem t = 0; t < 13; t += 4) {
      for (Elem u = 0; u < 13; u += 3) {
        for (Elem v = 0; v < 13; ++v) {
          if (f13.chi(f13.sub(s, t)) != f13.chi(f13.sub(u, v))) continue;
          if ((s == t) != (u == v)) continue;
          const auto m = affine_map_between_pairs(f13, s, t, u, v);
          ASSERT_EQ(m.apply(f13, s), u);
          ASSERT_EQ(m.apply(f13, t), v);
          ASSERT_TRUE(f13.is_square(m.lambda));
        }
      }
    }
  }
  const auto m = affine_map_between_pairs(f13, 1, 3, 5, 7);
  for (const auto& [a, b] : pairs) {
    const auto q = build_quadratic(f13, a, b);
    ASSERT_TRUE(is_isomorphism(q, q, m.permutation(f13)));
  }
}

TEST(Classes, Representatives) {
  FiniteField f3(3, 1);
  EXPECT_EQ(class_representatives(f3), (std::vector<std::pair<Elem, Elem>>{{2, 2}}));
  FiniteField f7(7, 1);
  EXPECT_EQ(class_representatives(f7), valid_unordered_pairs(f7));

  for (std::uint32_t q : {9u, 25u, 27u}) {
    const auto f = field_of(q);
    const auto pairs = valid_pairs(f);
    std::vector<Quasigroup> tables;
    for (const auto& [a, b] : pairs) tables.push_back(build_quadratic(f, a, b));
    std::vector<std::size_t> reps;  // one table index per brute-force class
    for (std::size_t i = 0; i < tables.size(); ++i) {
      bool seen = false;
      for (std::size_t r : reps) {
        if (iso_brute_force(tables[r], tables[i])) {
          seen = true;
          break;
        }
      }
      if (!seen) reps.push_back(i);
    }
    EXPECT_EQ(class_representatives(f).size(), reps.size()) << q;
  }
}

}  // namespace
}  // namespace qq
