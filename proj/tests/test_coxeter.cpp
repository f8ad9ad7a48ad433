#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace orthoscalar;

namespace {

const CoxeterWord bc{Letter::Bullet, Letter::Circle};

SubspaceSystem line_triple() {
  return SubspaceSystem(2, {span_of({vec({1, 0})}), span_of({vec({0, 1})}), span_of({vec({1, 1})})});
}

GramMatrix thm_gram() {
  Matrix g(2, 2);
  g << 0.75, -0.25, -0.25, 0.75;
  return GramMatrix(g);
}

UnitarizedSystem unitarized_triple() {
  return UnitarizedSystem::certify(line_triple().with_gram(thm_gram()), WeightVector{1, {0.75, 0.75, 0.5}});
}

UnitarizedSystem base_d4(const WeightVector& chi) {
  const SubspaceSystem s(1, {zero_subspace(1), zero_subspace(1), zero_subspace(1), full_subspace(1)}, GramMatrix::identity(1));
  return UnitarizedSystem::certify(s, chi);
}

RationalWeights random_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
  const auto r = [&] { return Rational(num(rng), den(rng)); };
  return RationalWeights{r(), {r(), r(), r(), r()}};
}

double traces_gap(const UnitarizedSystem& a, const UnitarizedSystem& b) {
  const auto pa = a.projections();
  const auto pb = b.projections();
  return max_abs_difference(word_trace_invariants(std::span<const Matrix>(pa), 4),
                            word_trace_invariants(std::span<const Matrix>(pb), 4));
}

}  // namespace

TEST(CoxeterMaps, Examples) {
  EXPECT_EQ(c_circle(DimensionVector{2, {1, 1, 1, 1}}), (DimensionVector{2, {1, 1, 1, 1}}));
  EXPECT_EQ(c_circle(DimensionVector{1, {0, 0, 0, 1}}), (DimensionVector{0, {0, 0, 0, 1}}));
  EXPECT_EQ(c_circle(DimensionVector{5, {2, 2, 2, 2}}), (DimensionVector{3, {2, 2, 2, 2}}));
  EXPECT_EQ(c_bullet(DimensionVector{1, {0, 0, 0, 1}}), (DimensionVector{1, {1, 1, 1, 0}}));
  EXPECT_EQ(c_bullet(DimensionVector{2, {1, 1, 1, 1}}), (DimensionVector{2, {1, 1, 1, 1}}));
}

TEST(CoxeterMaps, Involutions) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const RationalWeights w = random_rational(rng);
    EXPECT_EQ(c_circle(c_circle(w)), w);
    EXPECT_EQ(c_bullet(c_bullet(w)), w);
  }
}

TEST(ApplyWord, AnchorAndExamples) {
  EXPECT_EQ(apply_word(pair_power(2), DimensionVector{1, {0, 0, 0, 1}}), (DimensionVector{3, {1, 1, 1, 2}}));
  EXPECT_EQ(apply_word(bc, DimensionVector{1, {0, 0, 0, 1}}), (DimensionVector{2, {1, 1, 1, 0}}));
  // stepwise: (3;1,1,1,1) -b-> (3;2,2,2,2) -o-> (5;2,2,2,2) -b-> (5;3,3,3,3) -o-> (7;3,3,3,3)
  EXPECT_EQ(apply_word(pair_power(2), DimensionVector{3, {1, 1, 1, 1}}), (DimensionVector{7, {3, 3, 3, 3}}));
  EXPECT_TRUE(apply_word({}, DimensionVector{3, {1, 1, 1, 1}}) == (DimensionVector{3, {1, 1, 1, 1}}));
}

TEST(ApplyWord, DualAndInverseWords) {
  Rng rng(6);
  const CoxeterWord w{Letter::Bullet, Letter::Circle, Letter::Circle, Letter::Bullet, Letter::Circle};
  EXPECT_EQ(to_string(dual_word(w)), "obbob");
  EXPECT_EQ(to_string(inverse_word(w)), "oboob");
  for (int t = 0; t < 50; ++t) {
    const RationalWeights a = random_rational(rng);
    EXPECT_EQ(apply_word(inverse_word(w), apply_word(w, a)), a);
  }
}

TEST(ApplyWord, PairWordPreservesForms) {
  Rng rng(7);
  std::uniform_int_distribution<std::int64_t> entry(-20, 20);
  for (int t = 0; t < 500; ++t) {
    const DimensionVector d{entry(rng), {entry(rng), entry(rng), entry(rng), entry(rng)}};
    const DimensionVector e = apply_word(bc, d);
    EXPECT_EQ(def_form(e), def_form(d));
    EXPECT_EQ(tits_form(e), tits_form(d));
    const RationalWeights r = random_rational(rng);
    EXPECT_EQ(def_form(apply_word(bc, r)), def_form(r));
  }
}

TEST(ClosedForms, Examples) {
  EXPECT_EQ(closed_form_iterate(ClosedFormVariant::EvenPair, 1, DimensionVector{3, {1, 1, 1, 1}}), (DimensionVector{7, {3, 3, 3, 3}}));
  const DimensionVector a{3, {1, 0, 2, 1}};
  EXPECT_EQ(closed_form_iterate(ClosedFormVariant::EvenPair, 0, a), a);
  // (c.c°) c. once: def = 2, so ((def + a0); (def + a_i)).
  EXPECT_EQ(closed_form_iterate(ClosedFormVariant::OddPairThenBullet, 0, a), (DimensionVector{5, {3, 2, 4, 3}}));
  EXPECT_EQ(apply_word(closed_form_word(ClosedFormVariant::OddPairThenBullet, 0), a), (DimensionVector{5, {3, 2, 4, 3}}));
  EXPECT_THROW(closed_form_iterate(ClosedFormVariant::EvenPair, -1, a), Error);
  EXPECT_THROW(closed_form_iterate(ClosedFormVariant::EvenPair, 1, DimensionVector{1, {1}}), Error);
}

TEST(ClosedForms, MatchIteratedMapsExactly) {
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const RationalWeights a = random_rational(rng);
    for (auto variant : all_closed_form_variants) {
      for (std::int64_t m = 0; m <= 8; ++m) {
        EXPECT_EQ(closed_form_iterate(variant, m, a), apply_word(closed_form_word(variant, m), a))
            << static_cast<int>(variant) << " m=" << m;
      }
    }
  }
}

TEST(ParseFunctorWord, Letters) {
  EXPECT_EQ(to_string(parse_functor_word("b o")), "bo");
  EXPECT_EQ(to_string(parse_functor_word("+-")), "obbo");
  EXPECT_EQ(to_string(parse_functor_word("")), "");
  EXPECT_THROW(parse_functor_word("bx"), Error);
}

TEST(FunctorBullet, LineTriple) {
  const UnitarizedSystem s = unitarized_triple();
  const UnitarizedSystem t = functor_bullet(s);
  EXPECT_EQ(t.character(), (WeightVector{1, {0.75, 0.75, 0.5}}));
  EXPECT_LT(t.residual(), 1e-10);
  EXPECT_EQ(dimension_vector(t.system()), c_bullet(dimension_vector(s.system())));
  EXPECT_LT(oracle::orthoscalar_residual(t.system(), t.gram().matrix(), t.character()), 1e-10);
}

TEST(FunctorBullet, TwiceIsIdentityUpToUnitaryEquivalence) {
  const UnitarizedSystem s = unitarized_triple();
  const UnitarizedSystem t = functor_bullet(functor_bullet(s));
  EXPECT_EQ(t.character(), s.character());
  EXPECT_LT(traces_gap(s, t), 1e-9);
}

TEST(FunctorBullet, NonpositiveHead) {
  // Weights on zero subspaces are free, so the new head 0.9 - 1 can be negative.
  const UnitarizedSystem s = base_d4(WeightVector{1, {-0.5, 0.2, 0.2, 1}});
  try {
    functor_bullet(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonpositiveHead);
  }
}

TEST(FunctorCircle, AnnihilatesOneDimensionalBase) {
  const UnitarizedSystem s = base_d4(WeightVector{1, {0.3, 0.4, 0.5, 1}});
  try {
    functor_circle(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Annihilated);
  }
}

TEST(FunctorCircle, ThreeFullLines) {
  const double a1 = 0.2, a2 = 0.3, a3 = 0.4, s = a1 + a2 + a3;
  const SubspaceSystem base(1, {full_subspace(1), full_subspace(1), full_subspace(1), zero_subspace(1)}, GramMatrix::identity(1));
  const UnitarizedSystem in = UnitarizedSystem::certify(base, WeightVector{s, {a1, a2, a3, 0.7}});
  const UnitarizedSystem out = functor_circle(in);
  EXPECT_EQ(dimension_vector(out.system()), (DimensionVector{2, {1, 1, 1, 0}}));
  EXPECT_TRUE(is_brick(out.system()));
  EXPECT_EQ(out.character(), (WeightVector{s, {s - a1, s - a2, s - a3, s - 0.7}}));
  EXPECT_LT(oracle::orthoscalar_residual(out.system(), out.gram().matrix(), out.character()), 1e-10);
}

TEST(FunctorMinus, FromD4Base) {
  const UnitarizedSystem s = base_d4(WeightVector{1, {0.3, 0.4, 0.5, 1}});
  const UnitarizedSystem t = functor_minus(s);
  EXPECT_EQ(dimension_vector(t.system()), apply_word(bc, dimension_vector(s.system())));
  EXPECT_EQ(dimension_vector(t.system()), (DimensionVector{2, {1, 1, 1, 0}}));
  EXPECT_TRUE(is_brick(t.system()));
  EXPECT_EQ(t.character(), apply_word(dual_word(bc), s.character()));
  EXPECT_LT(t.residual(), 1e-10);

  const UnitarizedSystem back = functor_plus(t);
  EXPECT_EQ(dimension_vector(back.system()), dimension_vector(s.system()));
  EXPECT_LT(traces_gap(s, back), 1e-9);
}

TEST(FunctorMinus, PlusUndoesMinusOnLongerChains) {
  // def = -0.02 keeps every character along the chain admissible.
  const UnitarizedSystem base = base_d4(WeightVector{1, {0.34, 0.33, 0.35, 1}});
  UnitarizedSystem s = base;
  for (int k = 1; k <= 4; ++k) {
    s = functor_minus(s);
    EXPECT_EQ(dimension_vector(s.system()), apply_word(pair_power(k), DimensionVector{1, {0, 0, 0, 1}}));
    EXPECT_TRUE(is_brick(s.system()));
    EXPECT_LT(s.residual(), 1e-8);
  }
  const UnitarizedSystem round = functor_plus(functor_minus(s));
  EXPECT_LT(traces_gap(s, round), 1e-9);
  UnitarizedSystem down = s;
  for (int k = 0; k < 4; ++k) down = functor_plus(down);
  EXPECT_LT(traces_gap(base, down), 1e-9);
}

TEST(ApplyFunctorWord, MatchesComposites) {
  const UnitarizedSystem s = base_d4(WeightVector{1, {0.34, 0.33, 0.35, 1}});
  const UnitarizedSystem a = apply_functor_word(s, parse_functor_word("--"));
  const UnitarizedSystem b = functor_minus(functor_minus(s));
  EXPECT_EQ(dimension_vector(a.system()), (DimensionVector{3, {1, 1, 1, 2}}));
  EXPECT_LT(traces_gap(a, b), 1e-12);
}
