#ifndef RINGSPEC_ACCEPTANCE_HPP
#define RINGSPEC_ACCEPTANCE_HPP

// The acceptance suite. Shared by the ringspec_acceptance test binary and the
// `verify` subcommand of the CLI. Every check prints one TAP line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ringspec/dirac.hpp"
#include "ringspec/iso.hpp"
#include "ringspec/roots.hpp"
#include "ringspec/schrod.hpp"
#include "ringspec/triple.hpp"

namespace ringspec::acceptance {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

/// Maximum |a_i - b_i| over expanded root lists; infinity when counts differ.
inline double list_gap(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

inline Vec2 random_vec(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
}

/// Random degree-4 polynomial or three-term trigonometric spinor, with its
/// exact derivative.
inline std::pair<SpinorFn, SpinorFn> random_spinor(std::mt19937_64& rng, bool trig) {
  if (!trig) {
    std::array<Vec2, 5> c;
    for (auto& v : c) v = random_vec(rng);
    SpinorFn f = [c](double x) {
      Vec2 r{0.0, 0.0};
      for (int j = 4; j >= 0; --j)
        for (int i = 0; i < 2; ++i) r[i] = r[i] * x + c[j][i];
      return r;
    };
    SpinorFn df = [c](double x) {
      Vec2 r{0.0, 0.0};
      for (int j = 4; j >= 1; --j)
        for (int i = 0; i < 2; ++i) r[i] = r[i] * x + double(j) * c[j][i];
      return r;
    };
    return {f, df};
  }
  std::uniform_real_distribution<double> om(-12.0, 12.0);
  std::array<Vec2, 3> c;
  std::array<double, 3> w;
  for (int j = 0; j < 3; ++j) {
    c[j] = random_vec(rng);
    w[j] = om(rng);
  }
  SpinorFn f = [c, w](double x) {
    Vec2 r{0.0, 0.0};
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 2; ++i) r[i] += c[j][i] * std::exp(kI * (w[j] * x));
    return r;
  };
  SpinorFn df = [c, w](double x) {
    Vec2 r{0.0, 0.0};
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 2; ++i) r[i] += kI * w[j] * c[j][i] * std::exp(kI * (w[j] * x));
    return r;
  };
  return {f, df};
}

inline CliffordRep random_rep(std::mt19937_64& rng) {
  const Mat2 v = oracle::random_bc(rng).matrix();
  return CliffordRep::dirac().conjugated(v);
}

}  // namespace detail

// 1. Quasi-periodic Schroedinger spectrum.
inline CheckResult check_qp_spectrum() {
  const auto expect = oracle::qp_levels(500.0);
  double worst = 0.0;
  bool counts = expect.size() == 7;
  for (const Mat2& m : {quasi_periodic_matrix(0.0), quasi_periodic_matrix(oracle::pi / 2),
                        pseudo_periodic_matrix(oracle::pi / 2)}) {
    const auto s = find_spectrum(SchrodKernel{}, UnitaryBC::from_matrix(m), Window{0.0, 500.0}, {});
    const auto v = s.values();
    counts = counts && v.size() == expect.size();
    for (std::size_t i = 0; i < std::min(v.size(), expect.size()); ++i)
      worst = std::max(worst, std::abs(v[i] - expect[i]) / expect[i]);
  }
  CheckResult r{1, "quasi-periodic Schroedinger levels pi^2 (n+1/2)^2"};
  r.pass = counts && worst < 1e-10;
  r.detail = detail::fmt("max rel err %.2e", worst);
  return r;
}

// 2. Isospectral orbit equality.
inline CheckResult check_orbit_equality() {
  std::mt19937_64 rng(2024);
  const double mu0 = 1.0;
  const Window wd{-10.0 * mu0, 10.0 * mu0};
  const Window ws{-50.0, 150.0};
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    const UnitaryBC u = oracle::random_bc(rng);
    const auto d0 = find_spectrum(DiracKernel{mu0}, u, wd, {});
    const auto s0 = find_spectrum(SchrodKernel{}, u, ws, {});
    for (double lambda : {0.37, 1.2, 2.9}) {
      const UnitaryBC ul = conjugate_orbit(u, lambda);
      for (const auto& cmp : {compare_spectra(d0, find_spectrum(DiracKernel{mu0}, ul, wd, {}), 1e-8),
                              compare_spectra(s0, find_spectrum(SchrodKernel{}, ul, ws, {}), 1e-8)}) {
        failures += !cmp.equal;
        worst = std::max(worst, cmp.count_a == cmp.count_b ? cmp.max_pairwise_gap
                                                           : std::numeric_limits<double>::infinity());
      }
    }
  }
  CheckResult r{2, "isospectral orbit equality, both theories"};
  r.pass = failures == 0;
  r.detail = detail::fmt("300 comparisons, %d unequal, max gap %.2e", failures, worst);
  return r;
}

// 3. Pointwise invariance of F along the orbit.
inline CheckResult check_pointwise_invariance() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> lam(0.0, oracle::pi);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const UnitaryBC u = oracle::random_bc(rng);
    const UnitaryBC ul = conjugate_orbit(u, lam(rng));
    const DiracKernel dk{1.0};
    const SchrodKernel sk{};
    for (int j = 0; j < 2000; ++j) {
      const double mu = -20.0 + 40.0 * j / 1999.0;
      const double e = -100.0 + 500.0 * j / 1999.0;
      worst = std::max(worst, std::abs(dk.value(mu, u) - dk.value(mu, ul)));
      worst = std::max(worst, std::abs(sk.value(e, u) - sk.value(e, ul)));
    }
  }
  CheckResult r{3, "pointwise F_U = F_{U_lambda}"};
  r.pass = worst < 1e-12;
  r.detail = detail::fmt("max |dF| %.2e", worst);
  return r;
}

// 4. Mass-mode criterion equivalence.
inline CheckResult check_mass_modes() {
  std::mt19937_64 rng(4242);
  int mismatches = 0, positives = 0, total = 0;
  for (double mu0 : {0.5, 1.0, 5.0}) {
    std::vector<UnitaryBC> us;
    for (int i = 0; i < 200; ++i) us.push_back(oracle::random_bc(rng));
    for (int sign : {1, -1})
      for (int i = 0; i < 20; ++i) us.push_back(oracle::bc_with_mass_mode(rng, sign, mu0));
    const DiracKernel k{mu0};
    for (const auto& u : us)
      for (int sign : {1, -1}) {
        const bool root = std::abs(k.value(sign * mu0, u)) < 1e-9;
        const bool member = mass_mode_membership(u, sign, mu0, 1e-10);
        mismatches += root != member;
        positives += member;
        ++total;
      }
  }
  CheckResult r{4, "mass-mode criterion equivalence"};
  r.pass = mismatches == 0 && positives >= 120;
  r.detail = detail::fmt("%d cases, %d members, %d mismatches", total, positives, mismatches);
  return r;
}

// 5. Dual-path kernel agreement and det A+- closed form.
inline CheckResult check_dual_path() {
  double worst_b = 0.0, worst_det = 0.0;
  int points = 0;
  for (double mu0 : {0.0, 0.5, 1.0, 5.0}) {
    for (int j = 0; j < 2500; ++j) {
      const double mu = -30.0 + 60.0 * (j + 0.5) / 2500.0;
      const DiracPoint p = DiracPoint::make(mu, mu0);
      if (p.is_mass_mode()) continue;
      ++points;
      worst_b = std::max(worst_b, distance(kernel_at(p).B, boundary_matrix_from_Apm(p)));
      const auto [ap, am] = build_Apm(p);
      const auto [dp, dm] = det_Apm_closed(p);
      worst_det = std::max(worst_det, std::abs(ap.det() - dp) / std::abs(dp));
      worst_det = std::max(worst_det, std::abs(am.det() - dm) / std::abs(dm));
    }
  }
  CheckResult r{5, "closed-form B vs A-A+^-1, det A+- closed form"};
  r.pass = worst_b < 1e-11 && worst_det < 1e-10;
  r.detail = detail::fmt("%d points, |dB| %.2e, det rel %.2e", points, worst_b, worst_det);
  return r;
}

// 6. Unitarity of B and unimodularity of cD, including deep in the gap.
inline CheckResult check_unitarity() {
  double worst_u = 0.0, worst_c = 0.0;
  for (double mu0 : {0.5, 1.0, 5.0, 100.0, 500.0}) {
    for (int j = 0; j <= 4000; ++j) {
      const double mu = -2.0 * mu0 - 20.0 + (4.0 * mu0 + 40.0) * j / 4000.0;
      const DiracPoint p = DiracPoint::make(mu, mu0);
      const KernelValue kv = coefficients(p);
      worst_u = std::max(worst_u, unitarity_residual(kv.B));
      worst_c = std::max(worst_c, std::abs(std::abs(kv.cD) - 1.0));
    }
  }
  for (int j = 0; j <= 10000; ++j) {
    const double e = -250000.0 + 250400.0 * j / 10000.0;
    const SchrodCoefficients sc = schrod_coefficients(SchrodPoint::make(e));
    worst_u = std::max(worst_u, unitarity_residual(sc.B));
    worst_c = std::max(worst_c, std::abs(std::abs(sc.c) - 1.0));
  }
  CheckResult r{6, "unitarity of B and |c| = 1, kappa up to 500"};
  r.pass = worst_u < 1e-10 && worst_c < 1e-12;
  r.detail = detail::fmt("||B^+B-I|| %.2e, ||c|-1| %.2e", worst_u, worst_c);
  return r;
}

// 7. Continuity of B at the gap edges, from both sides of both edges.
inline CheckResult check_gap_edges() {
  double min_order = std::numeric_limits<double>::infinity();
  const std::array<double, 3> deltas{1e-2, 1e-3, 1e-4};
  for (double mu0 : {0.5, 1.0, 5.0})
    for (double edge : {mu0, -mu0})
      for (double side : {1.0, -1.0}) {
        const Mat2 b0 = boundary_matrix(DiracPoint::make(edge, mu0));
        // Least-squares slope of log ||dB|| against log delta.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (double d : deltas) {
          const double x = std::log10(d);
          const double y = std::log10(distance(boundary_matrix(DiracPoint::make(edge + side * d, mu0)), b0));
          sx += x;
          sy += y;
          sxx += x * x;
          sxy += x * y;
        }
        const double order = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
        min_order = std::min(min_order, std::isfinite(order) ? order : -1.0);
      }
  CheckResult r{7, "gap-edge continuity of B"};
  r.pass = min_order >= 0.99;
  r.detail = detail::fmt("min observed order %.4f", min_order);
  return r;
}

// 8. Dirac pseudo-periodic plane-wave oracle.
inline CheckResult check_dirac_pp() {
  double worst = 0.0;
  bool counts = true;
  for (double alpha : {0.0, 1.0}) {
    const Window w{-15.0, 15.0};
    const auto s = find_spectrum(DiracKernel{1.0}, UnitaryBC::from_matrix(dirac_pseudo_periodic_matrix(alpha)), w, {});
    const auto got = s.values();
    const auto want = oracle::dirac_pp_levels(alpha, 1.0, w.lo, w.hi);
    counts = counts && got.size() == want.size();
    worst = std::max(worst, detail::list_gap(got, want));
  }
  CheckResult r{8, "Dirac pseudo-periodic plane-wave levels"};
  r.pass = counts && worst < 1e-9;
  r.detail = detail::fmt("max err %.2e", worst);
  return r;
}

// 9. Boundary-form identity by quadrature.
inline CheckResult check_boundary_form() {
  std::mt19937_64 rng(909);
  const std::array<CliffordRep, 3> reps{CliffordRep::dirac(),
                                        CliffordRep::make(Mat2::sigma_y(), Mat2::sigma_z()),
                                        detail::random_rep(rng)};
  double worst = 0.0;
  for (const auto& rep : reps)
    for (int i = 0; i < 20; ++i) {
      const auto [f1, d1] = detail::random_spinor(rng, i % 2 == 1);
      const auto [f2, d2] = detail::random_spinor(rng, i % 4 >= 2);
      const auto chk = boundary_form_check(rep, sample_spinor(f1, d1), sample_spinor(f2, d2));
      worst = std::max(worst, chk.residual);
    }
  CheckResult r{9, "boundary-triple identity"};
  r.pass = worst < 1e-8;
  r.detail = detail::fmt("60 pairs, max residual %.2e", worst);
  return r;
}

// 10. Representation independence of spectra.
inline CheckResult check_representations() {
  std::mt19937_64 rng(1010);
  const double mu0 = 1.0;
  const Window w{-10.0, 10.0};
  const CliffordRep dirac = CliffordRep::dirac();
  const std::array<CliffordRep, 3> reps{dirac, CliffordRep::make(Mat2::sigma_y(), Mat2::sigma_z()),
                                        detail::random_rep(rng)};
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const UnitaryBC u = oracle::random_bc(rng);
    const auto ref = find_spectrum(DiracKernel{mu0}, u, w, {}).values();
    for (const auto& rep : reps) {
      const auto got = find_spectrum(RepKernel{rep, mu0}, transform_bc(u, dirac, rep), w, {}).values();
      worst = std::max(worst, detail::list_gap(ref, got));
    }
  }
  CheckResult r{10, "representation independence of spectra"};
  r.pass = worst < 1e-8;
  r.detail = detail::fmt("max gap %.2e", worst);
  return r;
}

// 11. Grid-refinement stability.
inline CheckResult check_grid_refinement() {
  std::mt19937_64 rng(1111);
  double worst = 0.0;
  int count_changes = 0;
  SearchOptions coarse, fine;
  fine.density = 2 * coarse.density;
  for (int i = 0; i < 50; ++i) {
    const UnitaryBC u = oracle::random_bc(rng);
    const auto a = find_spectrum(DiracKernel{1.0}, u, Window{-10.0, 10.0}, coarse).values();
    const auto b = find_spectrum(DiracKernel{1.0}, u, Window{-10.0, 10.0}, fine).values();
    const auto c = find_spectrum(SchrodKernel{}, u, Window{-50.0, 150.0}, coarse).values();
    const auto d = find_spectrum(SchrodKernel{}, u, Window{-50.0, 150.0}, fine).values();
    count_changes += (a.size() != b.size()) + (c.size() != d.size());
    if (a.size() == b.size()) worst = std::max(worst, detail::list_gap(a, b));
    if (c.size() == d.size()) worst = std::max(worst, detail::list_gap(c, d));
  }
  CheckResult r{11, "grid-refinement stability"};
  r.pass = count_changes == 0 && worst < 1e-10;
  r.detail = detail::fmt("count changes %d, max shift %.2e", count_changes, worst);
  return r;
}

struct TimedCheck {
  std::function<CheckResult()> run;
  double budget_seconds;  // infinity when the criterion has no runtime bound
};

inline std::vector<TimedCheck> all_checks() {
  const double none = std::numeric_limits<double>::infinity();
  return {{check_qp_spectrum, 1.0},          {check_orbit_equality, 60.0},
          {check_pointwise_invariance, none}, {check_mass_modes, none},
          {check_dual_path, none},            {check_unitarity, none},
          {check_gap_edges, none},            {check_dirac_pp, 5.0},
          {check_boundary_form, none},        {check_representations, none},
          {check_grid_refinement, none}};
}

/// Runs every check, printing TAP lines as they finish. Returns true iff all
/// pass. A check that throws is reported as a failure.
inline bool run_suite(std::ostream& out, std::vector<CheckResult>* results = nullptr) {
  const auto checks = all_checks();
  out << "1.." << checks.size() << "\n" << std::flush;
  bool all = true;
  int id = 0;
  for (const auto& c : checks) {
    ++id;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {id, "check " + std::to_string(id), false, std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > c.budget_seconds) {
      r.pass = false;
      r.detail += detail::fmt(", over budget %.0f s", c.budget_seconds);
    }
    all = all && r.pass;
    out << (r.pass ? "ok " : "not ok ") << r.id << " - " << r.name << " # " << r.detail
        << detail::fmt(" (%.2f s)", r.seconds) << "\n"
        << std::flush;
    if (results) results->push_back(r);
  }
  return all;
}

}  // namespace ringspec::acceptance

#endif  // RINGSPEC_ACCEPTANCE_HPP
