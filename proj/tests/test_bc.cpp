#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ringspec/bc.hpp"
#include "ringspec/error.hpp"

using namespace ringspec;
using std::numbers::pi;

namespace {

double triple_gap(const InvariantTriple& a, const InvariantTriple& b) { return triple_distance(a, b); }

}  // namespace

TEST(FromMatrix, Examples) {
  const UnitaryBC id = UnitaryBC::from_matrix(Mat2::identity());
  EXPECT_NEAR(id.eta(), 0.0, 1e-15);
  EXPECT_NEAR(id.m0(), 1.0, 1e-15);

  const UnitaryBC pp = UnitaryBC::from_matrix(Mat2{0.0, -1.0, -1.0, 0.0});
  EXPECT_NEAR(pp.eta(), pi / 2, 1e-15);
  EXPECT_NEAR(pp.m0(), 0.0, 1e-15);
  EXPECT_NEAR(pp.m()[0], 1.0, 1e-15);
  EXPECT_NEAR(pp.m()[1], 0.0, 1e-15);
  EXPECT_NEAR(pp.m()[2], 0.0, 1e-15);

  const UnitaryBC q = UnitaryBC::from_matrix(std::polar(1.0, pi / 4) * Mat2::identity());
  EXPECT_NEAR(q.eta(), pi / 4, 1e-15);
  EXPECT_NEAR(q.m0(), 1.0, 1e-15);
}

TEST(FromMatrix, RejectsNonUnitary) {
  EXPECT_THROW(UnitaryBC::from_matrix(Mat2{1.0, 1.0, 0.0, 1.0}), NonUnitaryError);
  try {
    UnitaryBC::from_matrix(2.0 * Mat2::identity());
  } catch (const NonUnitaryError& e) {
    EXPECT_GT(e.residual(), 1.0);
  }
}

TEST(FromChart, S3Constraint) {
  EXPECT_THROW(UnitaryBC::from_chart(0.1, 1.0, {0.1, 0.0, 0.0}), BcValidationError);
  EXPECT_NO_THROW(UnitaryBC::from_chart(0.1, 1.0, {0.0, 0.0, 0.0}));
}

TEST(UnitaryBC, ChartInvariants) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 10000; ++i) {
    const UnitaryBC u = oracle::random_bc(rng);
    const Mat2& m = u.matrix();
    ASSERT_LT(unitarity_residual(m), 1e-12);
    ASSERT_NEAR(u.m0() * u.m0() + u.m()[0] * u.m()[0] + u.m()[1] * u.m()[1] + u.m()[2] * u.m()[2], 1.0, 1e-12);
    ASSERT_GE(u.eta(), 0.0);
    ASSERT_LT(u.eta(), pi);
    ASSERT_LT(distance(m, chart_matrix(u.eta(), u.m0(), u.m())), 1e-12);
    const InvariantTriple t = u.triple();
    const cplx ph = std::polar(1.0, u.eta());
    ASSERT_LT(std::abs(t.detU - ph * ph), 1e-12);
    ASSERT_LT(std::abs(t.trU - 2.0 * ph * u.m0()), 1e-12);
    ASSERT_LT(std::abs(t.trUsx - 2.0 * kI * ph * u.m()[0]), 1e-12);
    // from_matrix on its own matrix is the identity on the chart.
    const UnitaryBC again = UnitaryBC::from_matrix(m);
    ASSERT_NEAR(again.eta(), u.eta(), 1e-12);
    ASSERT_NEAR(again.m0(), u.m0(), 1e-12);
  }
}

TEST(UnitaryBC, ChartFold) {
  // eta + pi with flipped (m0, m) is the same matrix and folds back.
  const UnitaryBC a = UnitaryBC::from_matrix(chart_matrix(0.4 + pi, -0.6, {-0.8, 0.0, 0.0}));
  EXPECT_NEAR(a.eta(), 0.4, 1e-14);
  EXPECT_NEAR(a.m0(), 0.6, 1e-14);
  EXPECT_NEAR(a.m()[0], 0.8, 1e-14);
}

TEST(NamedFamily, Examples) {
  const UnitaryBC qp = named_family(Family::qp, 0.0);
  EXPECT_LT(distance(qp.matrix(), Mat2{0.0, kI, -kI, 0.0}), 1e-15);
  EXPECT_LT(triple_gap(qp.triple(), {-1.0, 0.0, 0.0}), 1e-15);

  const UnitaryBC pp = named_family(Family::pp, 0.0);
  EXPECT_LT(distance(pp.matrix(), Mat2{0.0, -1.0, -1.0, 0.0}), 1e-15);
  EXPECT_LT(triple_gap(pp.triple(), {-1.0, 0.0, -2.0}), 1e-15);

  EXPECT_LT(distance(named_family(Family::parity, 0.0, 0.0).matrix(), Mat2::identity()), 1e-15);
  EXPECT_LT(distance(named_family(Family::robin, 0.7).matrix(), std::polar(1.0, 0.7) * Mat2::identity()), 1e-15);
}

TEST(NamedFamily, AlphaReducedModTwoPi) {
  for (auto f : {Family::robin, Family::pp, Family::qp, Family::chiral, Family::dpp})
    EXPECT_LT(distance(named_family(f, 0.3).matrix(), named_family(f, 0.3 + 4 * pi).matrix()), 1e-13);
}

TEST(NamedFamily, QuasiPeriodicTripleIsConstant) {
  for (double a = 0.0; a < 2 * pi; a += 0.1)
    EXPECT_LT(triple_gap(named_family(Family::qp, a).triple(), {-1.0, 0.0, 0.0}), 1e-14) << a;
}

TEST(NamedFamily, UnknownName) { EXPECT_THROW(family_from_name("nope"), BcParseError); }

TEST(ConjugateOrbit, Examples) {
  for (double a : {0.0, 0.5, 2.0})
    for (double l : {0.0, 0.3, 1.7}) {
      const UnitaryBC got = conjugate_orbit(named_family(Family::qp, a), l);
      EXPECT_LT(distance(got.matrix(), named_family(Family::qp, a - 2 * l).matrix()), 1e-14);
    }
  std::mt19937_64 rng(11);
  const UnitaryBC u = oracle::random_bc(rng);
  EXPECT_LT(distance(conjugate_orbit(u, 0.0).matrix(), u.matrix()), 1e-15);
  const UnitaryBC par = named_family(Family::parity, 0.3, 1.1);
  EXPECT_LT(distance(conjugate_orbit(par, 1.234).matrix(), par.matrix()), 1e-14);
}

TEST(ConjugateOrbit, PiPeriodic) {
  std::mt19937_64 rng(12);
  const UnitaryBC u = oracle::random_bc(rng);
  EXPECT_LT(distance(conjugate_orbit(u, 0.4 + pi).matrix(), conjugate_orbit(u, 0.4).matrix()), 1e-14);
}

TEST(ConjugateOrbit, TripleInvariant) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> lam(-10.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const UnitaryBC u = oracle::random_bc(rng);
    ASSERT_LT(triple_gap(conjugate_orbit(u, lam(rng)).triple(), u.triple()), 1e-12);
  }
}

TEST(ParitySymmetry, Examples) {
  EXPECT_TRUE(is_parity_symmetric(named_family(Family::robin, 0.4)));
  EXPECT_TRUE(is_parity_symmetric(named_family(Family::parity, 0.3, 1.1)));
  const UnitaryBC qp = named_family(Family::qp, pi / 2);
  EXPECT_LT(distance(qp.matrix(), Mat2{-1.0, 0.0, 0.0, 1.0}), 1e-15);
  EXPECT_FALSE(is_parity_symmetric(qp));
  const Mat2 comm = qp.matrix() * Mat2::sigma_x() - Mat2::sigma_x() * qp.matrix();
  EXPECT_NEAR(comm.frobenius_norm(), 2.0 * std::sqrt(2.0), 1e-14);
}

TEST(ParitySymmetry, MatchesOrbitStationarity) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> uni(0.0, 2 * pi);
  for (int i = 0; i < 2000; ++i) {
    // Alternate random U with members of the parity family.
    const UnitaryBC u = i % 2 ? oracle::random_bc(rng) : named_family(Family::parity, uni(rng) / 2, uni(rng));
    double worst = 0.0;
    for (double l : {0.1, 0.7, 2.3}) worst = std::max(worst, distance(conjugate_orbit(u, l).matrix(), u.matrix()));
    ASSERT_EQ(is_parity_symmetric(u), worst < 10 * kParityTol) << i;
  }
}

TEST(ParitySymmetry, FamilyIsExactlyTheCommutant) {
  // Every sx-commuting U is a U(eta, theta): U = a I + b sx with |a+b| = |a-b| = 1.
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> uni(0.0, 2 * pi);
  for (int i = 0; i < 1000; ++i) {
    const double p = uni(rng), q = uni(rng);
    const cplx a = 0.5 * (std::polar(1.0, p) + std::polar(1.0, q));
    const cplx b = 0.5 * (std::polar(1.0, p) - std::polar(1.0, q));
    const UnitaryBC u = UnitaryBC::from_matrix(a * Mat2::identity() + b * Mat2::sigma_x());
    ASSERT_TRUE(is_parity_symmetric(u));
    ASSERT_LT(std::abs(u.m()[1]) + std::abs(u.m()[2]), 1e-12);
  }
}
