#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bicusp/bicuspid.hpp"
#include "bicusp/mat2.hpp"
#include "test_support.hpp"

using namespace bicusp;
using bicusp::ts::Rng;

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Independent float check of the normalization constraints.
bool feasible_point(const Params& p, double area_bound) {
  const double r = 2.0 * area_bound / std::sqrt(3.0);
  return std::abs(p.a) >= 1.0 && std::abs(p.a) <= std::abs(p.b) && std::abs(p.b) <= r &&
         std::abs(p.c) <= std::abs(p.b) && p.a.real() >= 0.0 && p.a.imag() >= 0.0 && p.b.imag() >= 0.0;
}

ParamBox box_of(RealInterval are, RealInterval aim, RealInterval bre, RealInterval bim, RealInterval cre,
                RealInterval cim) {
  ParamBox b;
  b.coords = {are, aim, bre, bim, cre, cim};
  return b;
}

}  // namespace

TEST(Generators, FreeExampleMatricesAreExact) {
  const Params p{4.0, {1.0, kSqrt3}, 2.0};
  const GeneratorTriple g = gens_from_params(p);
  EXPECT_EQ(g.alpha.m12, ComplexInterval(4.0));
  EXPECT_EQ(g.beta.m12, ComplexInterval(std::complex<double>(1.0, kSqrt3)));
  EXPECT_EQ(g.gamma.m11, ComplexInterval(2.0));
  EXPECT_EQ(g.gamma.m12, ComplexInterval(-1.0));
  EXPECT_EQ(g.gamma.m21, ComplexInterval(1.0));
  EXPECT_EQ(g.gamma.m22, ComplexInterval(0.0));
  EXPECT_TRUE(g.alpha.m21.is_point() && g.alpha.m11.is_point());
  EXPECT_EQ(abs_bounds(g.gamma.m21), RealInterval(1.0));
  for (const auto* M : {&g.alpha, &g.beta, &g.gamma}) EXPECT_TRUE(M->det().contains(std::complex<double>(1.0)));
}

TEST(Generators, PointMatricesLieInBoxMatrices) {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const ParamBox box = ts::random_box(rng, 5.0, 0.5);
    const Params p = ts::sample(rng, box);
    const GeneratorTriple G = gens_from_params(box);
    const GeneratorTriple g = gens_from_params(p);
    ASSERT_TRUE(G.alpha.contains(g.alpha));
    ASSERT_TRUE(G.beta.contains(g.beta));
    ASSERT_TRUE(G.gamma.contains(g.gamma));
  }
}

TEST(ParamSpace, TranslationBounds) {
  const auto two_pi = param_space(2 * std::numbers::pi);
  ASSERT_TRUE(two_pi);
  EXPECT_NEAR((*two_pi)[Coord::BIm].hi(), 4 * std::numbers::pi / kSqrt3, 1e-12);
  EXPECT_NEAR((*two_pi)[Coord::BIm].hi(), 7.2552, 1e-4);

  const auto six = param_space(6.0);
  ASSERT_TRUE(six);
  EXPECT_NEAR((*six)[Coord::BRe].hi(), 4 * kSqrt3, 1e-12);
  EXPECT_NEAR((*six)[Coord::BRe].hi(), 6.9282, 1e-4);
  EXPECT_GE((*six)[Coord::BRe].hi(), 4 * kSqrt3);  // outward rounded

  const auto& box = *six;
  EXPECT_EQ(box[Coord::ARe].lo(), 0.0);
  EXPECT_EQ(box[Coord::AIm].lo(), 0.0);
  EXPECT_EQ(box[Coord::BIm].lo(), 0.0);
  EXPECT_EQ(box[Coord::BRe].lo(), -box[Coord::BRe].hi());
  EXPECT_EQ(box[Coord::CIm].lo(), -box[Coord::CIm].hi());
  EXPECT_TRUE(box.path.empty());
}

TEST(ParamSpace, DegenerateAndInvalidAreas) {
  EXPECT_FALSE(param_space(kSqrt3 / 2));
  EXPECT_FALSE(param_space(0.5));
  EXPECT_THROW(param_space(0.0), std::invalid_argument);
  EXPECT_THROW(param_space(-1.0), std::invalid_argument);
  EXPECT_THROW(param_space(NAN), std::invalid_argument);
}

TEST(ParamSpace, ShrinksMonotonically) {
  double prev_hi = 0.0;
  for (double A = 1.0; A <= 12.0; A += 0.25) {
    const auto small = param_space(A);
    const auto big = param_space(A + 0.25);
    ASSERT_TRUE(small && big);
    for (int i = 0; i < kNumCoords; ++i) ASSERT_TRUE(big->coords[i].contains(small->coords[i]));
    EXPECT_GT((*small)[Coord::BRe].hi(), prev_hi);
    prev_hi = (*small)[Coord::BRe].hi();
  }
}

TEST(Feasibility, Examples) {
  const double A = 4 * kSqrt3;
  const ParamBox short_a = box_of({0.2, 0.5}, 0.0, {-1, 1}, {2, 3}, {0, 1}, {0, 1});
  EXPECT_EQ(box_in_param_space(short_a, A), Feasibility::Outside);

  // The free example as written has |a| = 4 > |b| = 2, which is outside the
  // normal form; with alpha and beta exchanged it is inside.
  EXPECT_EQ(box_in_param_space(ParamBox::point({4.0, {1.0, kSqrt3}, 2.0}), A), Feasibility::Outside);
  EXPECT_EQ(box_in_param_space(ParamBox::point({{1.0, kSqrt3}, 4.0, 2.0}), A), Feasibility::Inside);

  const ParamBox straddle = box_of({0.9, 1.1}, 0.0, {0, 0.5}, {3, 3.5}, {0, 1}, {0, 1});
  EXPECT_EQ(box_in_param_space(straddle, A), Feasibility::Straddles);

  const ParamBox neg_im_b = box_of({1, 1.1}, 0.0, {0, 0.5}, {-3, -2}, {0, 1}, {0, 1});
  EXPECT_EQ(box_in_param_space(neg_im_b, A), Feasibility::Outside);

  const ParamBox too_long_b = box_of({1, 1.1}, 0.0, {0, 0.5}, {9, 10}, {0, 1}, {0, 1});
  EXPECT_EQ(box_in_param_space(too_long_b, A), Feasibility::Outside);
}

TEST(Feasibility, OptionalLatticeReduction) {
  // Re(b/a) = 0.9: allowed by the base constraints, pruned by the reduction.
  const ParamBox box = ParamBox::point({1.0, {0.9, 3.0}, 0.5});
  EXPECT_EQ(box_in_param_space(box, 6.0), Feasibility::Inside);
  EXPECT_EQ(box_in_param_space(box, 6.0, {.lattice_reduction = true}), Feasibility::Outside);
  const ParamBox reduced = ParamBox::point({1.0, {0.3, 3.0}, 0.5});
  EXPECT_EQ(box_in_param_space(reduced, 6.0, {.lattice_reduction = true}), Feasibility::Inside);
}

TEST(Feasibility, VerdictsAreSoundAgainstSampling) {
  Rng rng(12);
  const double A = 6.0;
  int outside = 0, inside = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const ParamBox box = ts::random_box(rng, 4.0, 0.6);
    const Feasibility f = box_in_param_space(box, A);
    if (f == Feasibility::Straddles) continue;
    (f == Feasibility::Outside ? outside : inside)++;
    for (int s = 0; s < 200; ++s) {
      const Params p = ts::sample(rng, box);
      ASSERT_EQ(feasible_point(p, A), f == Feasibility::Inside) << "trial " << trial;
    }
  }
  EXPECT_GT(outside, 100);
  EXPECT_GT(inside, 10);
}

TEST(Normalization, DiagonalRotationMovesGammaLowerLeft) {
  // Conjugating by diag(l, 1/l) with |l| = 1 scales gamma's lower-left entry
  // by l^-2, so the normal form leaves no rotation freedom to make a real.
  const std::complex<double> lambda = std::polar(1.0, 0.3);
  const Mat2 D{lambda, 0.0, 0.0, 1.0 / lambda};
  const Mat2 gamma{std::complex<double>(0.5, 0.2), -1.0, 1.0, 0.0};
  const Mat2 rotated = D * gamma * D.inverse();
  EXPECT_GT(std::abs(rotated.y - 1.0), 0.1);
  EXPECT_NEAR(std::abs(rotated.y), 1.0, 1e-15);
}
