#include <gtest/gtest.h>

#include <cmath>

#include "bicusp/interval.hpp"
#include "test_support.hpp"

using namespace bicusp;
using bicusp::ts::Rng;

namespace {

RealInterval widen(const RealInterval& x, int ulps) {
  return RealInterval::unchecked(detail::down(x.lo(), ulps), detail::up(x.hi(), ulps));
}

bool contains_ld(const RealInterval& X, long double v) { return X.lo() <= v && v <= X.hi(); }

}  // namespace

TEST(RealInterval, RejectsInvalidBounds) {
  EXPECT_THROW(RealInterval(2.0, 1.0), std::invalid_argument);
  EXPECT_THROW(RealInterval(0.0, NAN), std::invalid_argument);
  EXPECT_THROW(RealInterval(-INFINITY, 0.0), std::invalid_argument);
}

TEST(RealInterval, ExactAdditionIsNotInflated) {
  EXPECT_EQ(RealInterval(1, 2) + RealInterval(3, 4), RealInterval(4, 6));
  EXPECT_EQ(RealInterval(1, 2) - RealInterval(3, 4), RealInterval(-3, -1));
  EXPECT_EQ(-RealInterval(1, 2), RealInterval(-2, -1));
}

TEST(RealInterval, MultiplicationSignCases) {
  EXPECT_EQ(RealInterval(-1, 2) * RealInterval(3, 3), RealInterval(-3, 6));
  EXPECT_EQ(RealInterval(-2, -1) * RealInterval(-3, 4), RealInterval(-8, 6));
  EXPECT_EQ(RealInterval(0, 0) * RealInterval(-1e300, 1e300), RealInterval(0, 0));
}

TEST(RealInterval, InexactResultsAreWidenedOutward) {
  const RealInterval third = RealInterval(1.0) * RealInterval(1.0 / 3.0);
  EXPECT_TRUE(third.is_point());  // exact product of representable values
  const RealInterval s = RealInterval(0.1) + RealInterval(0.2);
  EXPECT_LT(s.lo(), 0.1 + 0.2);
  EXPECT_GT(s.hi(), 0.1 + 0.2);
  EXPECT_TRUE(contains_ld(s, 0.1L + 0.2L));
  const RealInterval p = RealInterval(0.1) * RealInterval(0.3);
  EXPECT_TRUE(contains_ld(p, static_cast<long double>(0.1) * static_cast<long double>(0.3)));
}

TEST(RealInterval, RandomContainment) {
  Rng rng(1);
  for (int trial = 0; trial < 100000; ++trial) {
    const RealInterval X = ts::random_interval(rng), Y = ts::random_interval(rng);
    const long double x = ts::sample(rng, X), y = ts::sample(rng, Y);
    ASSERT_TRUE(contains_ld(X + Y, x + y));
    ASSERT_TRUE(contains_ld(X - Y, x - y));
    ASSERT_TRUE(contains_ld(X * Y, x * y)) << X << " * " << Y;
    ASSERT_TRUE(contains_ld(-X, -x));
    ASSERT_TRUE(contains_ld(sqr(X), x * x));
  }
}

TEST(RealInterval, MonotoneUnderRefinement) {
  Rng rng(2);
  for (int trial = 0; trial < 20000; ++trial) {
    const RealInterval X = ts::random_interval(rng), Y = ts::random_interval(rng);
    const double x1 = ts::sample(rng, X), x2 = ts::sample(rng, X);
    const double y1 = ts::sample(rng, Y), y2 = ts::sample(rng, Y);
    const RealInterval Xs(std::min(x1, x2), std::max(x1, x2)), Ys(std::min(y1, y2), std::max(y1, y2));
    // A child endpoint product may be inexact where the parent's is exact, so
    // allow the inflation slack.
    ASSERT_TRUE(widen(X + Y, 2).contains(Xs + Ys));
    ASSERT_TRUE(widen(X * Y, 2).contains(Xs * Ys));
    ASSERT_LE((Xs * Ys).width(), widen(X * Y, 2).width());
  }
}

TEST(ComplexInterval, MultiplicationExamples) {
  const ComplexInterval z{RealInterval(0.3, 0.7), RealInterval(-1.1, 2.9)};
  EXPECT_EQ(ComplexInterval(1.0) * z, z);
  const ComplexInterval i{RealInterval(0.0), RealInterval(1.0)};
  const ComplexInterval minus_one = i * i;
  EXPECT_TRUE(minus_one.contains(std::complex<double>(-1.0, 0.0)));
  EXPECT_EQ(minus_one, ComplexInterval(-1.0));
}

TEST(ComplexInterval, RandomContainment) {
  Rng rng(3);
  for (int trial = 0; trial < 100000; ++trial) {
    const ComplexInterval X = ts::random_rect(rng), Y = ts::random_rect(rng);
    const std::complex<long double> x(ts::sample(rng, X.re), ts::sample(rng, X.im));
    const std::complex<long double> y(ts::sample(rng, Y.re), ts::sample(rng, Y.im));
    const ComplexInterval P = X * Y;
    const std::complex<long double> p = x * y;
    ASSERT_TRUE(contains_ld(P.re, p.real()) && contains_ld(P.im, p.imag()));
    const ComplexInterval S = X + Y;
    ASSERT_TRUE(contains_ld(S.re, (x + y).real()) && contains_ld(S.im, (x + y).imag()));
    ASSERT_TRUE(conj(X).contains(std::complex<double>(static_cast<double>(x.real()), -static_cast<double>(x.imag()))));
  }
}

TEST(AbsBounds, Examples) {
  EXPECT_EQ(abs_bounds({RealInterval(3.0), RealInterval(4.0)}), RealInterval(5.0));
  const RealInterval around_origin = abs_bounds({RealInterval(-1, 1), RealInterval(-1, 1)});
  EXPECT_EQ(around_origin.lo(), 0.0);
  EXPECT_GE(around_origin.hi(), std::sqrt(2.0));
  EXPECT_LE(around_origin.hi(), std::sqrt(2.0) * (1 + 1e-15));
  EXPECT_EQ(abs_bounds({RealInterval(0.4, 0.6), RealInterval(0.0)}), RealInterval(0.4, 0.6));
}

TEST(AbsBounds, LowerBoundZeroIffOriginContained) {
  Rng rng(4);
  for (int trial = 0; trial < 100000; ++trial) {
    const ComplexInterval Z = ts::random_rect(rng, 2.0);
    const RealInterval A = abs_bounds(Z);
    ASSERT_EQ(A.lo() == 0.0, Z.contains_zero());
    const std::complex<long double> z(ts::sample(rng, Z.re), ts::sample(rng, Z.im));
    ASSERT_TRUE(contains_ld(A, std::abs(z)));
  }
  // tiny rectangles away from the origin still get a positive lower bound
  const ComplexInterval tiny{RealInterval(1e-200, 2e-200), RealInterval(1e-200, 2e-200)};
  EXPECT_GT(abs_bounds(tiny).lo(), 0.0);
}

namespace {

IntervalMatrix translation_matrix(const ComplexInterval& t) {
  return {ComplexInterval(1.0), t, ComplexInterval(0.0), ComplexInterval(1.0)};
}

}  // namespace

TEST(IntervalMatrix, Examples) {
  Rng rng5(5);
  const IntervalMatrix A{ts::random_rect(rng5), ComplexInterval(2.0), ComplexInterval(-1.5),
                         ComplexInterval(0.25)};
  EXPECT_EQ(IntervalMatrix::identity() * A, A);

  const ComplexInterval a(std::complex<double>(4.0, 0.0)), b(std::complex<double>(1.0, 1.7320508075688772));
  const IntervalMatrix ab = translation_matrix(a) * translation_matrix(b);
  EXPECT_EQ(ab, translation_matrix(a + b));

  // gamma^2 = [[c^2 - 1, -c], [c, -1]]
  const ComplexInterval c(std::complex<double>(2.0, 0.5));
  const IntervalMatrix gamma{c, ComplexInterval(-1.0), ComplexInterval(1.0), ComplexInterval(0.0)};
  const IntervalMatrix g2 = gamma * gamma;
  const std::complex<double> cc(2.0, 0.5);
  EXPECT_TRUE(g2.m11.contains(cc * cc - 1.0));
  EXPECT_TRUE(g2.m12.contains(-cc));
  EXPECT_TRUE(g2.m21.contains(cc));
  EXPECT_TRUE(g2.m22.contains(std::complex<double>(-1.0)));
}

TEST(IntervalMatrix, AdjugateInverse) {
  EXPECT_EQ(inverse_sl2(IntervalMatrix::identity()), IntervalMatrix::identity());
  const ComplexInterval a(std::complex<double>(1.25, -3.5));
  EXPECT_EQ(inverse_sl2(translation_matrix(a)), translation_matrix(-a));

  const ComplexInterval c{RealInterval(1.9, 2.1), RealInterval(-0.1, 0.1)};
  const IntervalMatrix gamma{c, ComplexInterval(-1.0), ComplexInterval(1.0), ComplexInterval(0.0)};
  const IntervalMatrix inv = inverse_sl2(gamma);
  EXPECT_EQ(inv.m11, ComplexInterval(0.0));
  EXPECT_EQ(inv.m12, ComplexInterval(1.0));
  EXPECT_EQ(inv.m21, ComplexInterval(-1.0));
  EXPECT_EQ(inv.m22, c);
  const IntervalMatrix prod = gamma * inv;
  EXPECT_TRUE(prod.contains(IntervalMatrix::identity()));
}

TEST(IntervalMatrix, RandomProductContainment) {
  Rng rng(6);
  for (int trial = 0; trial < 100000; ++trial) {
    IntervalMatrix A{ts::random_rect(rng, 3), ts::random_rect(rng, 3), ts::random_rect(rng, 3),
                     ts::random_rect(rng, 3)};
    IntervalMatrix B{ts::random_rect(rng, 3), ts::random_rect(rng, 3), ts::random_rect(rng, 3),
                     ts::random_rect(rng, 3)};
    using C = std::complex<long double>;
    auto s = [&](const ComplexInterval& z) { return C(ts::sample(rng, z.re), ts::sample(rng, z.im)); };
    const C a11 = s(A.m11), a12 = s(A.m12), a21 = s(A.m21), a22 = s(A.m22);
    const C b11 = s(B.m11), b12 = s(B.m12), b21 = s(B.m21), b22 = s(B.m22);
    const IntervalMatrix P = A * B;
    auto in = [](const ComplexInterval& Z, C v) { return contains_ld(Z.re, v.real()) && contains_ld(Z.im, v.imag()); };
    ASSERT_TRUE(in(P.m11, a11 * b11 + a12 * b21));
    ASSERT_TRUE(in(P.m12, a11 * b12 + a12 * b22));
    ASSERT_TRUE(in(P.m21, a21 * b11 + a22 * b21));
    ASSERT_TRUE(in(P.m22, a21 * b12 + a22 * b22));
  }
}

TEST(IntervalMatrix, DeterminantOfRandomSl2WordsContainsOne) {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::complex<double> a(ts::uniform(rng, -5, 5), ts::uniform(rng, -5, 5));
    const std::complex<double> b(ts::uniform(rng, -5, 5), ts::uniform(rng, -5, 5));
    const std::complex<double> c(ts::uniform(rng, -5, 5), ts::uniform(rng, -5, 5));
    const IntervalMatrix gens[3] = {translation_matrix(a), translation_matrix(b),
                                    {ComplexInterval(c), ComplexInterval(-1.0), ComplexInterval(1.0), ComplexInterval(0.0)}};
    IntervalMatrix M;
    const int len = std::uniform_int_distribution<int>(1, 10)(rng);
    for (int i = 0; i < len; ++i) {
      const IntervalMatrix& g = gens[std::uniform_int_distribution<int>(0, 2)(rng)];
      M = M * (std::uniform_int_distribution<int>(0, 1)(rng) ? g : inverse_sl2(g));
    }
    ASSERT_TRUE(M.det().contains(std::complex<double>(1.0, 0.0))) << "trial " << trial;
  }
}
