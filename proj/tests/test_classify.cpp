#include <gtest/gtest.h>

#include <set>

#include "qq/classify.hpp"

namespace qq {
namespace {

FiniteField field_of(std::uint32_t q) {
  const auto [p, k] = *odd_prime_power(q);
  return FiniteField(p, k);
}

std::vector<std::pair<Elem, Elem>> all_valid(const FiniteField& f) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem a = 0; a < f.order(); ++a) {
    for (Elem b = 0; b < f.order(); ++b) {
      if (validate_params(f, a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

// Positions agree in exactly three of four corners once the first corner of
// each quadrangle is read from the table.
bool quadrangle_oracle(const Quasigroup& q, const Quadrangle& s, const Quadrangle& t) {
  int agree = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (q(s.rows[i], s.cols[j]) != s.entries[i][j] || q(t.rows[i], t.cols[j]) != t.entries[i][j]) return false;
      agree += s.entries[i][j] == t.entries[i][j];
    }
  }
  return agree == 3;
}

TEST(Formula, Examples) {
  FiniteField f7(7, 1);
  const auto v = classify_params(f7, 3, 5);
  EXPECT_TRUE(v.steiner && v.netto && v.commutative && v.semisymmetric);
  EXPECT_FALSE(v.medial || v.group_isotopic || v.left_distributive);
  EXPECT_EQ(v.provenance, VarietyFlags::Provenance::formula);

  for (std::uint32_t q : {5u, 9u, 13u}) {
    const auto f = field_of(q);
    for (auto [a, b] : all_valid(f)) {
      if (a != b) continue;
      const auto m = classify_params(f, a, b);
      EXPECT_TRUE(m.medial && m.left_distributive && m.right_distributive && m.group_isotopic && m.flexible);
    }
  }

  FiniteField f3(3, 1);
  const auto s = classify_params(f3, 2, 2);
  EXPECT_TRUE(s.steiner);
  EXPECT_FALSE(s.netto);

  FiniteField f11(11, 1);
  EXPECT_FALSE(classify_params(f11, 2, 6).commutative);
  EXPECT_THROW(classify_params(f11, 0, 6), ParamError);
}

TEST(Oracle, Examples) {
  FiniteField f7(7, 1);
  const auto q = build_quadratic(f7, 3, 5);
  EXPECT_TRUE(check_law(q, Law::idempotent));
  EXPECT_TRUE(check_law(q, Law::semisymmetric));
  FiniteField f11(11, 1);
  const auto q11 = build_quadratic(f11, 2, 6);
  EXPECT_FALSE(check_law(q11, Law::commutative));

  // First violation in lexicographic order, by a direct scan.
  std::vector<Elem> expect;
  for (Elem x = 0; x < 11 && expect.empty(); ++x) {
    for (Elem y = 0; y < 11 && expect.empty(); ++y) {
      if (q11(x, y) != q11(y, x)) expect = {x, y};
    }
  }
  EXPECT_EQ(find_law_violation(q11, Law::commutative), expect);
  EXPECT_EQ(find_law_violation(q11, Law::commutative, Exec::serial), expect);
  EXPECT_EQ(arity(Law::medial), 4);
  EXPECT_EQ(to_string(Law::left_dist), "left_dist");
}

TEST(Oracle, SerialMatchesParallel) {
  FiniteField f(3, 3);
  for (auto [a, b] : all_valid(f)) {
    if ((a + b) % 5 != 0) continue;
    const auto q = build_quadratic(f, a, b);
    for (Law law : {Law::medial, Law::left_dist, Law::right_dist, Law::flexible, Law::semisymmetric}) {
      ASSERT_EQ(find_law_violation(q, law, Exec::serial), find_law_violation(q, law, Exec::parallel));
    }
    ASSERT_EQ(is_group_isotope(q, Exec::serial), is_group_isotope(q, Exec::parallel));
  }
}

TEST(Oracle, AgreesWithFormulaAllLaws) {
  for (std::uint32_t q : odd_prime_powers(3, 27)) {
    const auto f = field_of(q);
    for (auto [a, b] : all_valid(f)) {
      const auto formula = classify_params(f, a, b);
      const auto oracle = classify_oracle(build_quadratic(f, a, b));
      EXPECT_EQ(oracle.provenance, VarietyFlags::Provenance::oracle);
      ASSERT_TRUE(formula.same_flags(oracle)) << "q=" << q << " a=" << a << " b=" << b << " differ: "
                                              << formula.differences(oracle).front();
      for (const auto& v : {formula, oracle}) {
        if (v.medial || v.commutative) ASSERT_TRUE(v.flexible);
        if (v.steiner) ASSERT_TRUE(v.commutative && v.semisymmetric);
        if (v.netto) ASSERT_TRUE(v.steiner && a != b);
        ASSERT_EQ(v.medial, v.group_isotopic);
      }
    }
  }
}

TEST(Oracle, TwoVariableLawsTo49) {
  for (std::uint32_t q : odd_prime_powers(29, 49)) {
    const auto f = field_of(q);
    for (auto [a, b] : all_valid(f)) {
      const auto formula = classify_params(f, a, b);
      const auto qq = build_quadratic(f, a, b);
      ASSERT_EQ(formula.commutative, check_law(qq, Law::commutative)) << q << " " << a << " " << b;
      ASSERT_EQ(formula.flexible, check_law(qq, Law::flexible)) << q << " " << a << " " << b;
      ASSERT_EQ(formula.semisymmetric, check_law(qq, Law::semisymmetric)) << q << " " << a << " " << b;
    }
  }
}

TEST(Oracle, DifferencesNamesFlags) {
  VarietyFlags x, y;
  y.flexible = true;
  EXPECT_EQ(x.differences(y), std::vector<std::string>{"flexible"});
  EXPECT_FALSE(x.same_flags(y));
}

TEST(Netto, Params) {
  FiniteField f7(7, 1);
  EXPECT_EQ(netto_params(f7), std::make_pair(3u, 5u));
  EXPECT_FALSE(netto_params(FiniteField(13, 1)));
  EXPECT_FALSE(netto_params(FiniteField(7, 2)));
  std::vector<std::uint32_t> found;
  for (std::uint32_t q : odd_prime_powers(3, 50)) {
    const auto f = field_of(q);
    if (const auto np = netto_params(f)) {
      found.push_back(q);
      for (Elem r : {np->first, np->second}) EXPECT_EQ(f.add(f.sub(f.mul(r, r), r), 1), 0u);
      EXPECT_TRUE(classify_params(f, np->first, np->second).netto);
    }
  }
  EXPECT_EQ(found, (std::vector<std::uint32_t>{7, 19, 31, 43}));
}

TEST(Netto, Blocks) {
  FiniteField f7(7, 1);
  const auto fano = netto_blocks(f7, 3, 5);
  EXPECT_EQ(fano.size(), 7u);
  EXPECT_TRUE(is_steiner_triple_system(7, fano));
  FiniteField f19(19, 1);
  const auto [a, b] = *netto_params(f19);
  const auto blocks = netto_blocks(f19, a, b);
  EXPECT_EQ(blocks.size(), 57u);
  EXPECT_TRUE(is_steiner_triple_system(19, blocks));
  const auto q = build_quadratic(f19, a, b);
  for (const auto& blk : blocks) EXPECT_EQ(q(blk[0], blk[1]), blk[2]);
  FiniteField f3(3, 1);
  EXPECT_EQ(netto_blocks(f3, 2, 2), (std::vector<Block>{{0, 1, 2}}));
  FiniteField f27(3, 3);
  const auto affine = netto_blocks(f27, 2, 2);
  EXPECT_EQ(affine.size(), 117u);
  EXPECT_TRUE(is_steiner_triple_system(27, affine));
  EXPECT_THROW(netto_blocks(FiniteField(11, 1), 2, 6), ParamError);
}

TEST(Netto, SteinerCheckRejects) {
  EXPECT_FALSE(is_steiner_triple_system(7, {{0, 1, 2}}));
  EXPECT_FALSE(is_steiner_triple_system(3, {{0, 1, 2}, {0, 1, 2}}));
  EXPECT_FALSE(is_steiner_triple_system(3, {{0, 0, 1}}));
}

TEST(Witness, PublishedVectors) {
  const std::pair<std::uint32_t, Elem> primes[] = {{11, 7},  {13, 6},  {17, 6},  {19, 13}, {23, 20},
                                                   {29, 11}, {31, 12}, {37, 14}, {41, 12}, {43, 19}};
  for (auto [q, u] : primes) {
    FiniteField f(q, 1);
    EXPECT_TRUE(is_character_run_witness(f, u, u - 1)) << q;
  }
  FiniteField f25(5, 2);
  int roots = 0;
  for (Elem s = 0; s < 25; ++s) {
    if (f25.mul(s, s) != 2) continue;
    ++roots;
    const Elem u = f25.mul(2, s);
    EXPECT_TRUE(is_character_run_witness(f25, u, f25.sub(u, 1)));
  }
  EXPECT_EQ(roots, 2);
  FiniteField f27(3, 3, std::vector<unsigned>{1, 2, 0, 1});
  EXPECT_TRUE(is_character_run_witness(f27, 3, 18));
}

TEST(Witness, SearchIsFirstHit) {
  EXPECT_THROW(find_character_run_witness(FiniteField(3, 2)), ParamError);
  EXPECT_THROW(find_character_run_witness(FiniteField(7, 1)), ParamError);
  for (std::uint32_t q : odd_prime_powers(11, 125)) {
    const auto f = field_of(q);
    std::optional<std::pair<Elem, Elem>> first;
    for (Elem u = 0; u < q && !first; ++u) {
      for (Elem v = 0; v < q && !first; ++v) {
        const bool ok = f.chi(u) == -1 && f.chi(v) == -1 && f.chi(f.add(u, 1)) == -1 && f.chi(f.add(v, 1)) == -1 &&
                        f.chi(f.sub(u, 1)) == -1 && f.chi(f.sub(v, 1)) == 1;
        if (ok) first = std::make_pair(u, v);
      }
    }
    ASSERT_TRUE(first) << q;
    EXPECT_EQ(find_character_run_witness(f), *first) << q;
  }
}

TEST(Certificate, SmallOrders) {
  FiniteField f7(7, 1);
  const auto c = group_isotopy_certificate(f7, 3, 5);
  EXPECT_FALSE(c.isotopic);
  EXPECT_EQ(c.source, "table");
  EXPECT_EQ(c.first.rows, (std::array<Elem, 2>{0, 1}));
  EXPECT_EQ(c.first.cols, (std::array<Elem, 2>{0, 1}));
  EXPECT_EQ(c.second.rows, (std::array<Elem, 2>{2, 4}));
  EXPECT_EQ(c.second.cols, (std::array<Elem, 2>{6, 5}));
  EXPECT_EQ(c.first.entries, (std::array<std::array<Elem, 2>, 2>{{{0, 3}, {3, 1}}}));
  EXPECT_EQ(c.second.entries, (std::array<std::array<Elem, 2>, 2>{{{0, 3}, {3, 0}}}));
  EXPECT_TRUE(quadrangle_oracle(build_quadratic(f7, 3, 5), c.first, c.second));

  FiniteField f9(3, 2);
  const auto c9 = group_isotopy_certificate(f9, 4, 7);
  EXPECT_EQ(c9.source, "table");
  EXPECT_EQ(c9.first.rows, (std::array<Elem, 2>{1, 4}));
  EXPECT_EQ(c9.second.rows, (std::array<Elem, 2>{7, 3}));
  EXPECT_EQ(c9.first.cols, (std::array<Elem, 2>{1, 6}));
  EXPECT_EQ(c9.second.cols, (std::array<Elem, 2>{5, 8}));
  EXPECT_EQ(c9.first.entries, (std::array<std::array<Elem, 2>, 2>{{{1, 2}, {2, 1}}}));
  EXPECT_EQ(c9.second.entries, (std::array<std::array<Elem, 2>, 2>{{{1, 2}, {2, 0}}}));
  for (auto [a, b] : all_valid(f9)) {
    if (a == b) continue;
    const auto s = group_isotopy_certificate(f9, a, b).source;
    EXPECT_TRUE(s == "table" || s == "transported" || s == "search") << s;
  }

  const auto same = group_isotopy_certificate(f7, 2, 2);
  EXPECT_TRUE(same.isotopic);
  EXPECT_EQ(same.affine_x, f7.sub(1, 2));
  EXPECT_EQ(same.affine_y, 2u);
}

TEST(Certificate, WitnessLayout) {
  FiniteField f11(11, 1);
  const Elem a = 2, b = 6;
  const auto c = group_isotopy_certificate(f11, a, b);
  ASSERT_TRUE(c.witness);
  const auto [u, v] = *c.witness;
  EXPECT_TRUE(is_character_run_witness(f11, u, v));
  EXPECT_EQ(c.first.rows[0], f11.neg(f11.mul(b, u)));
  EXPECT_EQ(c.first.cols[0], f11.sub(u, f11.mul(b, u)));
  const Elem one_minus_b = f11.sub(1, b);
  EXPECT_EQ(c.first.entries, (std::array<std::array<Elem, 2>, 2>{{{0, b}, {one_minus_b, 1}}}));
  const Elem fourth = f11.add(f11.sub(1, a), f11.mul(f11.sub(a, b), v));
  EXPECT_EQ(c.second.entries, (std::array<std::array<Elem, 2>, 2>{{{0, b}, {fourth, 1}}}));
  EXPECT_NE(fourth, one_minus_b);
}

TEST(Certificate, EveryNonMedialPair) {
  for (std::uint32_t q : {7u, 9u, 11u, 13u, 25u, 27u, 49u}) {
    const auto f = field_of(q);
    for (auto [a, b] : all_valid(f)) {
      const auto c = group_isotopy_certificate(f, a, b);
      ASSERT_EQ(c.isotopic, a == b);
      if (a == b) continue;
      const auto qq = build_quadratic(f, a, b);
      ASSERT_TRUE(quadrangle_oracle(qq, c.first, c.second)) << q << " " << a << " " << b << " " << c.source;
      ASSERT_TRUE(violates_quadrangle_criterion(qq, c.first, c.second));
      if (q > 9) {
        ASSERT_TRUE(c.witness);
        ASSERT_TRUE(is_character_run_witness(f, c.witness->first, c.witness->second));
      }
    }
  }
}

TEST(Certificate, ExhaustiveSearch) {
  FiniteField f7(7, 1);
  const auto q = build_quadratic(f7, 3, 5);
  const auto found = search_quadrangle_violation(q);
  ASSERT_TRUE(found);
  EXPECT_TRUE(quadrangle_oracle(q, found->first, found->second));
  EXPECT_FALSE(search_quadrangle_violation(build_quadratic(f7, 2, 2)));
}

TEST(GroupIsotope, MatchesMedial) {
  for (std::uint32_t q : {7u, 9u, 11u, 13u}) {
    const auto f = field_of(q);
    for (auto [a, b] : all_valid(f)) {
      ASSERT_EQ(is_group_isotope(build_quadratic(f, a, b)), a == b);
    }
  }
}

}  // namespace
}  // namespace qq
