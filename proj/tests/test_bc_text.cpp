#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ringspec/bc_text.hpp"
#include "ringspec/error.hpp"

using namespace ringspec;

TEST(ParseBc, NamedFamilies) {
  EXPECT_LT(distance(parse_bc("robin:alpha=0.7").matrix(), named_family(Family::robin, 0.7).matrix()), 1e-15);
  EXPECT_LT(distance(parse_bc("qp:alpha=0").matrix(), named_family(Family::qp, 0.0).matrix()), 1e-15);
  EXPECT_LT(distance(parse_bc("pp: alpha = 1.5").matrix(), named_family(Family::pp, 1.5).matrix()), 1e-15);
  EXPECT_LT(distance(parse_bc("dpp:alpha=1").matrix(), named_family(Family::dpp, 1.0).matrix()), 1e-15);
  EXPECT_LT(distance(parse_bc("chiral:alpha=2").matrix(), named_family(Family::chiral, 2.0).matrix()), 1e-15);
  EXPECT_LT(distance(parse_bc("parity:eta=0.3,theta=1.1").matrix(), named_family(Family::parity, 0.3, 1.1).matrix()),
            1e-15);
}

TEST(ParseBc, ChartAndMatrix) {
  const UnitaryBC u = parse_bc("u2:eta=0,m0=1,m1=0,m2=0,m3=0");
  EXPECT_LT(distance(u.matrix(), Mat2::identity()), 1e-15);
  const UnitaryBC m = parse_bc("mat:0,0,-1,0,-1,0,0,0");
  EXPECT_LT(distance(m.matrix(), Mat2{0.0, -1.0, -1.0, 0.0}), 1e-15);
  const UnitaryBC sp = parse_bc("mat: 0 0  0 1  0 1  0 0");
  EXPECT_LT(distance(sp.matrix(), kI * Mat2::sigma_x()), 1e-15);
}

TEST(ParseBc, MalformedText) {
  for (const char* bad : {"", "robin", "robin:", "robin:alpha=", "robin:alpha=x", "robin:beta=1",
                          "robin:alpha=1,alpha=2", "robin:alpha=1,extra=2", "nope:alpha=1", "mat:1,0,0",
                          "u2:eta=0,m0=1,m1=0,m2=0", "parity:eta=1", "qp:alpha=1e400"})
    EXPECT_THROW(parse_bc(bad), BcParseError) << bad;
}

TEST(ParseBc, ConstraintViolations) {
  EXPECT_THROW(parse_bc("u2:eta=0,m0=1,m1=0.1,m2=0,m3=0"), BcValidationError);
  EXPECT_THROW(parse_bc("mat:1,0,1,0,0,0,1,0"), NonUnitaryError);
  // Within the 1e-9 S^3 tolerance.
  EXPECT_NO_THROW(parse_bc("u2:eta=0,m0=1.0000000001,m1=0,m2=0,m3=0"));
}

TEST(FormatBc, RoundTripIsExact) {
  std::mt19937_64 rng(20);
  for (int i = 0; i < 2000; ++i) {
    const UnitaryBC u = oracle::random_bc(rng);
    const UnitaryBC v = parse_bc(format_bc(u));
    ASSERT_LT(distance(u.matrix(), v.matrix()), 1e-15) << format_bc(u);
  }
}
