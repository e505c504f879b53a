#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "ring_spectra");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ringspec::cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<double> values(const json& j) {
  std::vector<double> v;
  for (const auto& e : j.at("eigenvalues"))
    for (int m = 0; m < e.at("multiplicity").get<int>(); ++m) v.push_back(e.at("value").get<double>());
  return v;
}

}  // namespace

TEST(CliSpectrum, QuasiPeriodicJson) {
  const Outcome r = run({"spectrum", "--theory", "schrod", "--bc", "qp:alpha=0", "--window", "0", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("theory"), "schrod");
  EXPECT_EQ(j.at("bc"), "qp:alpha=0");
  EXPECT_EQ(j.at("units"), "dimensionless");
  EXPECT_EQ(j.at("window"), json::array({0.0, 500.0}));
  EXPECT_EQ(j.at("meta").at("version"), "0.1.0");
  EXPECT_GT(j.at("meta").at("grid_points").get<int>(), 1000);
  EXPECT_EQ(j.at("meta").at("tolerances").at("tol_residual"), 1e-9);
  const auto v = values(j);
  const auto want = oracle::qp_levels(500.0);
  ASSERT_EQ(v.size(), want.size());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_LT(std::abs(v[i] - want[i]) / want[i], 1e-10);
}

TEST(CliSpectrum, DiracPseudoPeriodic) {
  const Outcome r = run({"spectrum", "--theory", "dirac", "--bc", "dpp:alpha=0", "--mu0", "1", "--window", "-10", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto v = values(json::parse(r.out));
  const auto want = oracle::dirac_pp_levels(0.0, 1.0, -10.0, 10.0);
  ASSERT_EQ(v.size(), want.size());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], want[i], 1e-9);
}

TEST(CliSpectrum, MassMode) {
  const Outcome r = run({"spectrum", "--theory", "dirac", "--bc", "u2:eta=0,m0=1,m1=0,m2=0,m3=0", "--mu0", "1",
                     "--window", "0.5", "1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j.at("eigenvalues").size(), 1u);
  EXPECT_EQ(j.at("eigenvalues")[0].at("value"), 1.0);
  EXPECT_EQ(j.at("eigenvalues")[0].at("multiplicity"), 1);
}

TEST(CliSpectrum, JsonRoundTripIsBitExact) {
  const Outcome r = run({"spectrum", "--theory", "dirac", "--bc", "u2:eta=0.4,m0=0.5,m1=0.5,m2=0.5,m3=0.5", "--window",
                     "-12", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.dump(2) + "\n", r.out);
  for (const auto& e : j.at("eigenvalues")) {
    const double v = e.at("value").get<double>();
    EXPECT_EQ(json::parse(json(v).dump()).get<double>(), v);
  }
}

TEST(CliSpectrum, Csv) {
  const Outcome r = run({"spectrum", "--theory", "schrod", "--bc", "qp:alpha=0", "--window", "0", "100", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int data = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      EXPECT_FALSE(header);
      continue;
    }
    if (!header) {
      EXPECT_EQ(line, "value,multiplicity,residual");
      header = true;
      continue;
    }
    ++data;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2);
  }
  EXPECT_TRUE(header);
  EXPECT_EQ(data, 3);  // pi^2/4, 9 pi^2/4, 25 pi^2/4; the next level is past 100
  EXPECT_NE(r.out.find("\n2.46740110027233"), std::string::npos);
}

TEST(CliSpectrum, PhysicalUnits) {
  // L = 2, hbar = c = 1, mass = 0.5: mu0 = 1 and E = mu / 2.
  const Outcome r = run({"spectrum", "--theory", "dirac", "--bc", "dpp:alpha=1", "--units", "physical", "--L", "2",
                     "--mass", "0.5", "--window", "-5", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("meta").at("mu0"), 1.0);
  const auto v = values(j);
  const auto want = oracle::dirac_pp_levels(1.0, 1.0, -10.0, 10.0);
  ASSERT_EQ(v.size(), want.size());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], 0.5 * want[i], 1e-9);

  const Outcome s = run({"spectrum", "--theory", "schrod", "--bc", "qp:alpha=0", "--units", "physical", "--mass", "0.5",
                     "--window", "0", "100"});
  ASSERT_EQ(s.code, 0) << s.err;
  // e = 2 m E L^2 / hbar^2 = E here.
  EXPECT_NEAR(values(json::parse(s.out)).front(), oracle::pi * oracle::pi / 4, 1e-10);
  EXPECT_EQ(run({"spectrum", "--theory", "schrod", "--bc", "qp:alpha=0", "--units", "physical", "--window", "0", "1"})
                .code,
            1);
}

TEST(CliSpectrum, DeterministicAcrossRunsAndThreads) {
  const std::vector<std::string> args{"spectrum", "--theory", "schrod", "--bc",
                                      "u2:eta=1,m0=0.6,m1=0,m2=0.8,m3=0", "--window", "-40", "900"};
  ::setenv("RING_SPECTRA_THREADS", "1", 1);
  const Outcome a = run(args);
  ::setenv("RING_SPECTRA_THREADS", "7", 1);
  const Outcome b = run(args);
  ::unsetenv("RING_SPECTRA_THREADS");
  const Outcome c = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(CliSpectrum, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "ringspec_cli_test.json";
  const Outcome r = run({"spectrum", "--theory", "schrod", "--bc", "qp:alpha=0", "--window", "0", "50", "--out",
                     path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  const json j = json::parse(f);
  EXPECT_EQ(j.at("eigenvalues").size(), 2u);
  std::filesystem::remove(path);
}

TEST(CliExitCodes, BadInput) {
  EXPECT_EQ(run({"spectrum", "--bc", "robin:alpha=x"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--bc", "nonsense"}).code, 2);
  EXPECT_EQ(run({"spectrum", "--bc", "u2:eta=0,m0=1,m1=1,m2=0,m3=0"}).code, 3);
  const Outcome nu = run({"classify", "--bc", "mat:1,0,1,0,0,0,1,0"});
  EXPECT_EQ(nu.code, 3);
  EXPECT_NE(nu.err.find("not unitary"), std::string::npos);
  EXPECT_EQ(run({"spectrum", "--bc", "qp:alpha=0", "--window", "5", "1"}).code, 1);
  EXPECT_EQ(run({"spectrum", "--bc", "qp:alpha=0", "--density", "10"}).code, 1);
  EXPECT_EQ(run({"spectrum", "--bc", "qp:alpha=0", "--theory", "klein-gordon"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}

TEST(CliExitCodes, NumericalFailure) {
  // An impossible residual bound rejects every candidate.
  const Outcome r = run({"spectrum", "--theory", "schrod", "--bc", "qp:alpha=0", "--window", "0", "10",
                     "--tol-residual", "1e-300"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("2.467"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliClassify, Examples) {
  const Outcome r = run({"classify", "--bc", "robin:alpha=1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out).at("parity_symmetric").get<bool>());

  const Outcome q = run({"classify", "--bc", "qp:alpha=0.7"});
  ASSERT_EQ(q.code, 0);
  const json j = json::parse(q.out);
  EXPECT_FALSE(j.at("parity_symmetric").get<bool>());
  EXPECT_EQ(j.at("orbit_samples").size(), 15u);
  EXPECT_NEAR(j.at("invariant_triple").at("detU")[0].get<double>(), -1.0, 1e-14);
  EXPECT_NEAR(j.at("invariant_triple").at("detU")[1].get<double>(), 0.0, 1e-14);
  EXPECT_EQ(j.at("canonical_tag").at("detU"), json::array({-1.0, 0.0}));
  const auto first = ringspec::parse_bc(j.at("orbit_samples")[0].at("bc").get<std::string>());
  EXPECT_LT(ringspec::distance(first.matrix(), ringspec::named_family(ringspec::Family::qp, 0.7 - oracle::pi / 4).matrix()),
            1e-14);
}

TEST(CliOrbit, AllEqual) {
  const Outcome r = run({"orbit", "--theory", "dirac", "--bc", "u2:eta=0.3,m0=0.6,m1=0,m2=0,m3=0.8", "--window", "-10",
                     "10", "--lambdas", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("all_equal").get<bool>());
  ASSERT_EQ(j.at("orbit").size(), 6u);
  EXPECT_EQ(j.at("orbit")[0].at("lambda"), 0.0);
  EXPECT_EQ(j.at("orbit")[0].at("spectrum").size(), j.at("orbit")[5].at("spectrum").size());
}

TEST(CliHelp, ListsDefaults) {
  const Outcome r = run({"spectrum", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--tol-root"), std::string::npos);
  EXPECT_NE(r.out.find("1e-12"), std::string::npos);
  EXPECT_NE(r.out.find("1024"), std::string::npos);
}
