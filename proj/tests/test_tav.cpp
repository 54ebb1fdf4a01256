#include <gtest/gtest.h>

#include "support.hpp"

using namespace tropjac;
using namespace testing_support;

namespace {

ThetaCover example() { return {{1, 1, 1}, {1, 1, 1}, {2, 1, 1}, {}}; }

IntegralTorus theta_jac() { return IntegralTorus(RatMatrix{{2, 1}, {1, 2}}); }

} // namespace

TEST(Polarization, RejectsIndefinite) {
  EXPECT_FALSE(is_polarization(theta_jac(), IntMatrix{{1, 0}, {0, -1}}));
  EXPECT_THROW(PolarizedVariety(IntegralTorus::circle(1), {IntMatrix{{-1}}}), Error);
  EXPECT_TRUE(is_polarization(theta_jac(), IntMatrix::identity(2)));
}

TEST(Polarization, Type) {
  PolarizedVariety pv(IntegralTorus(RatMatrix{{1, 0}, {0, 3}}), {IntMatrix{{3, 0}, {0, 1}}});
  EXPECT_EQ(polarization_type(pv), (IntVector{1, 3}));
}

TEST(Polarization, DualOfNonPrincipal) {
  PolarizedVariety pv(IntegralTorus(RatMatrix{{1, 0}, {0, 1}}), {IntMatrix{{1, 0}, {0, 3}}});
  EXPECT_EQ(dual_polarization(pv).zeta, (IntMatrix{{3, 0}, {0, 1}}));
  // dual of a principal polarization is principal
  EXPECT_EQ(dual_polarization(principally_polarized(theta_jac())).zeta, IntMatrix::identity(2));
}

TEST(Polarization, CircleMultiplication) {
  // pull-back of the principal polarization along [d] on a circle is [d^2]
  auto c = IntegralTorus::circle(5);
  for (int d = 1; d <= 5; ++d) {
    auto m = TorusMorphism::multiplication(c, d);
    EXPECT_EQ(pullback_polarization(m, {IntMatrix{{1}}}).zeta, (IntMatrix{{d * d}}));
  }
}

TEST(Polarization, PushThenPullAlongFreeIsogeny) {
  // C(3) -> C(3/2), kernel generated by 3/2
  TorusMorphism m(IntegralTorus::circle(3), IntegralTorus::circle(make_rat(3, 2)), IntMatrix{{1}}, IntMatrix{{2}});
  EXPECT_EQ(kernel_component_count(m), 2);
  Polarization pushed = pushforward_polarization(m, {IntMatrix{{1}}});
  EXPECT_TRUE(is_polarization(m.target(), pushed.zeta));
  EXPECT_EQ(pullback_polarization(m, pushed).zeta, (IntMatrix{{4}}));
}

TEST(Polarization, IdentityPushIsTrivial) {
  PolarizedVariety pv(IntegralTorus(RatMatrix{{1, 0}, {0, 1}}), {IntMatrix{{1, 0}, {0, 3}}});
  EXPECT_EQ(pushforward_polarization(TorusMorphism::identity(pv.torus()), pv.pol()), pv.pol());
}

TEST(Polarization, ExamplePullbackIsDegreeTimesPrincipal) {
  auto pull = pullback_morphism(example());
  EXPECT_EQ(pullback_polarization(pull, {IntMatrix::identity(2)}).zeta, (IntMatrix{{2}}));
}

TEST(Polarization, NotFiniteRejected) {
  try {
    pullback_polarization(pushforward_morphism(example()), {IntMatrix{{1}}});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFinite);
  }
}

TEST(Polarization, PolarizedIsogeny) {
  auto t = theta_jac();
  EXPECT_TRUE(is_polarized_isogeny(TorusMorphism::identity(t), {IntMatrix::identity(2)}, {IntMatrix::identity(2)}));
  EXPECT_FALSE(is_polarized_isogeny(TorusMorphism::multiplication(t, 2), {IntMatrix::identity(2)},
                                    {IntMatrix::identity(2)}));
}

TEST(ExactSequences, ExampleInclusionThenPushforward) {
  auto push = pushforward_morphism(example());
  auto k = kernel0(push);
  EXPECT_TRUE(check_exact_sequence(k.inclusion, push));
  ExactSequence s(k.inclusion, push);
  auto d = dualize_sequence(s);
  EXPECT_TRUE(check_exact_sequence(d.f(), d.g()));
  EXPECT_EQ(d.f(), dual_morphism(push));
}

TEST(ExactSequences, DisconnectedKernelIsNotExact) {
  DumbbellCover c{{1, 1, 1}, {2, 2}, {1, 1}, {}};
  auto push = pushforward_morphism(c);
  auto k = kernel0(push);
  EXPECT_FALSE(check_exact_sequence(k.inclusion, push));
  try {
    ExactSequence s(k.inclusion, push);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotExact);
  }
}

TEST(FiniteQuotient, CircleByTwoTorsion) {
  auto pv = principally_polarized(IntegralTorus::circle(3));
  auto q = quotient_by_finite_subgroup(pv, std::vector<RatVector>{{make_rat(3, 2)}});
  EXPECT_EQ(q.quotient.torus().pairing(), (RatMatrix{{make_rat(3, 2)}}));
  EXPECT_EQ(q.isogeny.f_sharp(), (IntMatrix{{1}}));
  EXPECT_EQ(q.isogeny.f_hash(), (IntMatrix{{2}}));
  EXPECT_TRUE(classify(q.isogeny).isogeny);
  EXPECT_EQ(kernel_component_count(q.isogeny), 2);
}

TEST(FiniteQuotient, TrivialSubgroup) {
  auto pv = principally_polarized(theta_jac());
  auto q = quotient_by_finite_subgroup(pv, std::vector<RatVector>{{2, 1}});
  EXPECT_TRUE(same_lattice(LatticeBasis(to_int(q.quotient.torus().pairing())), LatticeBasis(IntMatrix{{2, 1}, {1, 2}})));
  EXPECT_EQ(kernel_component_count(q.isogeny), 1);
  EXPECT_TRUE(q.isogeny_is_polarized);
}

TEST(FiniteQuotient, SplittingKernelRecoversJacobian) {
  auto split = splitting_isogeny(CoverData{example()});
  PolarizedVariety src(split.phi.source(), pullback_polarization(split.phi, {IntMatrix::identity(2)}));
  auto q = quotient_by_finite_subgroup(src, split.kernel_points);
  EXPECT_EQ(kernel_component_count(q.isogeny), 2);
  auto h = factor_through_projection(q.isogeny, split.phi);
  ASSERT_TRUE(h);
  // what remains of phi is injective; it is a dilation of degree 2, not an isomorphism
  EXPECT_EQ(compose(*h, q.isogeny), split.phi);
  EXPECT_TRUE(classify(*h).injective && classify(*h).isogeny);
  EXPECT_EQ(kernel_component_count(*h), 1);
  EXPECT_EQ(abs(determinant(h->f_sharp())), 2);
  EXPECT_FALSE(is_invertible(*h));
}

TEST(FiniteQuotient, NonRationalGeneratorRejected) {
  auto pv = principally_polarized(IntegralTorus::circle(3));
  try {
    quotient_by_finite_subgroup(pv, std::vector<std::vector<std::string>>{{"0.5"}});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotTorsion);
  }
  auto q = quotient_by_finite_subgroup(pv, std::vector<std::vector<std::string>>{{"1"}});
  EXPECT_EQ(q.quotient.torus().pairing(), (RatMatrix{{1}}));
}

TEST(SubvarietyQuotient, JacobianByComplement) {
  auto push = pushforward_morphism(example());
  auto k = kernel0(push);
  auto q = quotient_by_subvariety(principally_polarized(theta_jac()), k.inclusion);
  EXPECT_EQ(q.quotient.torus().pairing(), (RatMatrix{{3}}));
  EXPECT_EQ(kernel_component_count(q.projection), 1);
  EXPECT_TRUE(check_exact_sequence(k.inclusion, q.projection));
}

TEST(SubvarietyQuotient, JacobianByPullbackImage) {
  auto im = image(pullback_morphism(example()));
  auto q = quotient_by_subvariety(principally_polarized(theta_jac()), im.inclusion);
  EXPECT_EQ(q.quotient.torus().pairing(), (RatMatrix{{1}}));
}
