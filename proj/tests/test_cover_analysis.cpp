#include <gtest/gtest.h>

#include "support.hpp"

using namespace tropjac;
using namespace testing_support;

namespace {

ThetaCover example() { return {{1, 1, 1}, {1, 1, 1}, {2, 1, 1}, {}}; }

} // namespace

TEST(Pushforward, ExampleMatrices) {
  auto f = pushforward_morphism(example());
  EXPECT_EQ(f.universal(), (IntMatrix{{2, -1}}));
  EXPECT_EQ(f.f_hash(), (IntMatrix{{1, 0}}));
  EXPECT_EQ(f.target().pairing(), (RatMatrix{{3}}));
}

TEST(Pushforward, FormulaMatchesGenericRoute) {
  for (auto &c : corpus(80, 40)) {
    auto g = to_general(c);
    ASSERT_EQ(pushforward_morphism(c), generic_pushforward(g)) << describe(c);
  }
}

TEST(Pushforward, PullbackIsDual) {
  auto c = example();
  EXPECT_EQ(pullback_morphism(c), dual_morphism(pushforward_morphism(c)));
}

TEST(KernelLength, Example) {
  EXPECT_EQ(kernel_length(example()), 1);
  EXPECT_EQ(kernel_length(to_general(example())), 1);
}

TEST(KernelLength, FormulaMatchesTorusRoute) {
  for (auto &c : corpus(80, 40))
    ASSERT_EQ(kernel_length(c), kernel_length(to_general(c))) << describe(c);
}

TEST(KernelLength, IndependentOfBezoutSolution) {
  // v ranges over solutions of a Bezout identity; shifting v by f_sharp keeps the length
  for (auto &cd : corpus(60, 30)) {
    auto push = pushforward_morphism(cd);
    IntVector fs = push.f_sharp().col(0);
    Rat base = kernel_length(cd);
    for (int k = -3; k <= 3; ++k) {
      std::visit(
          [&](const auto &c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (!std::is_same_v<T, GeneralCircleCover>) {
              IntVector v;
              if constexpr (std::is_same_v<T, ThetaCover>) {
                auto eg = ext_gcd(c.d[1], c.d[0]);
                v = {eg.x, eg.y};
              } else {
                auto eg = ext_gcd(c.d[1], -c.d[0]);
                v = {eg.x, eg.y};
              }
              Int g = gcd_of({fs[0], fs[1]});
              IntVector shifted{v[0] + k * fs[0] / g, v[1] + k * fs[1] / g};
              ASSERT_EQ(kernel_length_with(c, shifted), base) << describe(cd);
            }
          },
          cd);
    }
  }
}

TEST(Gamma, Example) {
  GammaData g = quotient_and_gamma(example());
  EXPECT_EQ(g.l_tilde, 3);
  EXPECT_EQ(g.a_sharp, 1);
  EXPECT_EQ(g.a_hash, 1);
  EXPECT_EQ(quotient_and_gamma(to_general(example())), g);
}

TEST(Gamma, FormulaMatchesStein) {
  for (auto &c : corpus(80, 40))
    ASSERT_EQ(quotient_and_gamma(c), quotient_and_gamma(to_general(c))) << describe(c);
}

TEST(ComponentCount, DisconnectedDumbbell) {
  DumbbellCover c{{1, 1, 1}, {2, 2}, {1, 1}, {}};
  EXPECT_EQ(target_length(c), make_rat(1, 2));
  EXPECT_EQ(component_count(c), 2);
  EXPECT_EQ(quotient_and_gamma(c).a_hash, 2);
}

TEST(ComponentCount, MatchesCosetOracle) {
  for (auto &c : corpus(80, 40)) {
    auto f = pushforward_morphism(c);
    Int n = std::visit([](const auto &x) { return component_count(x); }, c);
    ASSERT_EQ(n, brute_force_coset_count(f.f_hash())) << describe(c);
    ASSERT_EQ(n, determinantal_divisor(f.f_hash())) << describe(c);
  }
}

TEST(PullbackKernel, ExampleIsTrivial) {
  auto k = pullback_kernel(example());
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0].position, 0);
  EXPECT_EQ(k[0].order, 1);
}

TEST(PullbackKernel, DumbbellWithDoubledLoops) {
  DumbbellCover c{{2, 2, 1}, {1, 1}, {2, 2}, {}};
  auto k = pullback_kernel(c);
  ASSERT_EQ(k.size(), 2u);
  EXPECT_EQ(k[0], (TorsionDivisor{0, 1}));
  EXPECT_EQ(k[1].position, target_length(c) / 2);
  EXPECT_EQ(k[1].order, 2);
}

TEST(PullbackKernel, SubEdgeValues) {
  auto g = to_general(example());
  for (auto &s : q_gamma(g, make_rat(1, 2))) {
    EXPECT_LT(s.from, s.to);
    EXPECT_GE(s.value, 0);
  }
}

TEST(PullbackKernel, MatchesOracles) {
  for (auto &c : corpus(60, 30)) {
    auto k = pullback_kernel(to_general(c));
    ASSERT_EQ(k, brute_force_pullback_kernel(to_general(c))) << describe(c);
    auto t = torus_pullback_kernel(c);
    ASSERT_EQ(k.size(), t.size()) << describe(c);
    for (std::size_t i = 0; i < k.size(); ++i)
      ASSERT_EQ(k[i].position, t[i]) << describe(c);
  }
}

TEST(Optimality, Verdicts) {
  auto v = is_optimal(example());
  EXPECT_TRUE(v.kernel_connected);
  EXPECT_FALSE(v.dumbbell_gcd_free);

  auto nv = is_optimal(DumbbellCover{{1, 1, 1}, {2, 2}, {1, 1}, {}});
  EXPECT_FALSE(nv.kernel_connected);
  EXPECT_EQ(nv.component_count, 2);
  EXPECT_TRUE(nv.note.empty());

  auto dv = is_optimal(DumbbellCover{{2, 2, 1}, {1, 1}, {2, 2}, {}});
  EXPECT_TRUE(dv.kernel_connected);
  ASSERT_TRUE(dv.dumbbell_gcd_free);
  EXPECT_FALSE(*dv.dumbbell_gcd_free);
  EXPECT_FALSE(dv.note.empty());

  auto tv = is_optimal(ThetaCover{{1, 1, 1}, {1, 1, 1}, {4, 2, 2}, {}});
  EXPECT_TRUE(tv.kernel_connected);
  EXPECT_FALSE(tv.dumbbell_gcd_free);
  EXPECT_FALSE(tv.note.empty());
  EXPECT_TRUE(is_optimal(example()).note.empty());
}

TEST(Factorization, ThroughItself) {
  auto f = factor_pushforward(example(), example());
  ASSERT_TRUE(f);
  EXPECT_EQ(f->a_sharp, 1);
  EXPECT_EQ(f->a_hash, 1);
  EXPECT_TRUE(is_invertible(f->isogeny));
}

TEST(Factorization, DoubledDilations) {
  ThetaCover big{{1, 1, 1}, {1, 1, 1}, {4, 2, 2}, {}};
  auto f = factor_pushforward(big, example());
  ASSERT_TRUE(f);
  EXPECT_EQ(f->a_sharp, 2);
  EXPECT_EQ(f->a_hash, 1);
  EXPECT_EQ(f->isogeny.source().pairing(), (RatMatrix{{target_length(example())}}));
  EXPECT_EQ(compose(f->isogeny, pushforward_morphism(example())), pushforward_morphism(big));
  // the other direction does not factor
  EXPECT_FALSE(factor_pushforward(example(), big));
}

TEST(Factorization, DifferentKernelsDoNotFactor) {
  ThetaCover a{{1, 1, 4}, {1, 1, 2}, {2, 1, 1}, {}};
  ThetaCover b{{1, 1, 4}, {1, 1, 1}, {5, 4, 1}, {}};
  ASSERT_TRUE(validate_cover(a).valid());
  ASSERT_TRUE(validate_cover(b).valid());
  EXPECT_FALSE(factor_pushforward(a, b));
}

TEST(Factorization, SourceMismatch) {
  ThetaCover other{{1, 1, 4}, {1, 1, 2}, {2, 1, 1}, {}};
  try {
    factor_pushforward(example(), other);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::SourceMismatch);
  }
}
