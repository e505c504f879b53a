#ifndef RINGSPEC_ACCEPTANCE_ORACLES_HPP
#define RINGSPEC_ACCEPTANCE_ORACLES_HPP

// Reference computations for tests and the acceptance suite. Nothing here
// goes through the library kernels or the root finder.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "ringspec/bc.hpp"
#include "ringspec/matalg.hpp"

namespace oracle {

using ringspec::cplx;
using ringspec::Mat2;
inline constexpr double pi = std::numbers::pi;

/// det(M - N) by the cofactor rule on the explicit difference.
inline cplx cofactor_det_difference(const Mat2& m, const Mat2& n) {
  const cplx a = m.e[0] - n.e[0], b = m.e[1] - n.e[1], c = m.e[2] - n.e[2], d = m.e[3] - n.e[3];
  return a * d - b * c;
}

inline Mat2 random_matrix(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Mat2 m;
  for (auto& z : m.e) z = cplx(g(rng), g(rng));
  return m;
}

/// Random eta in [0, pi) and a uniform point on S^3.
inline ringspec::UnitaryBC random_bc(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> eta(0.0, pi);
  std::normal_distribution<double> g;
  double v[4];
  double n = 0.0;
  do {
    n = 0.0;
    for (double& x : v) {
      x = g(rng);
      n += x * x;
    }
  } while (n < 1e-6);
  n = std::sqrt(n);
  return ringspec::UnitaryBC::from_chart(eta(rng), v[0] / n, {v[1] / n, v[2] / n, v[3] / n});
}

/// A U that satisfies the mass-mode condition m1 + sin(eta) = mu0 (m0 -+ cos eta).
inline ringspec::UnitaryBC bc_with_mass_mode(std::mt19937_64& rng, int sign, double mu0) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (;;) {
    const double eta = pi * uni(rng);
    const double m0 = 2.0 * uni(rng) - 1.0;
    const double m1 = mu0 * (m0 - sign * std::cos(eta)) - std::sin(eta);
    const double rest = 1.0 - m0 * m0 - m1 * m1;
    if (rest < 0.0) continue;
    const double phi = 2.0 * pi * uni(rng);
    const double r = std::sqrt(rest);
    return ringspec::UnitaryBC::from_chart(eta, m0, {m1, r * std::cos(phi), r * std::sin(phi)});
  }
}

/// All sign changes of f on (a, b], located by bisection on a uniform scan.
inline std::vector<double> scalar_roots(const std::function<double(double)>& f, double a, double b,
                                        int n = 200000) {
  std::vector<double> out;
  double xl = a, fl = f(a);
  for (int i = 1; i <= n; ++i) {
    const double xr = a + (b - a) * i / n;
    const double fr = f(xr);
    if (fr == 0.0) {
      out.push_back(xr);
    } else if (fl != 0.0 && std::signbit(fl) != std::signbit(fr)) {
      double l = xl, r = xr, vl = fl;
      for (int it = 0; it < 200 && r - l > 1e-15 * std::max(1.0, std::abs(l)); ++it) {
        const double m = 0.5 * (l + r);
        const double vm = f(m);
        if (std::signbit(vm) == std::signbit(vl)) {
          l = m;
          vl = vm;
        } else {
          r = m;
        }
      }
      out.push_back(0.5 * (l + r));
    }
    xl = xr;
    fl = fr;
  }
  return out;
}

/// Plane-wave spectrum of the Dirac pseudo-periodic condition with phase
/// e^{i alpha}: mu = +-sqrt((2 pi n + alpha)^2 + mu0^2), n in Z. Sorted, with
/// degenerate values repeated.
inline std::vector<double> dirac_pp_levels(double alpha, double mu0, double lo, double hi) {
  std::vector<double> out;
  for (int n = -200; n <= 200; ++n) {
    const double p = 2.0 * pi * n + alpha;
    const double mu = std::sqrt(p * p + mu0 * mu0);
    for (double v : {mu, -mu})
      if (v > lo && v <= hi) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Quasi-periodic Schroedinger levels e_n = pi^2 (n + 1/2)^2.
inline std::vector<double> qp_levels(double hi) {
  std::vector<double> out;
  for (int n = 0;; ++n) {
    const double e = pi * pi * (n + 0.5) * (n + 0.5);
    if (e > hi) break;
    out.push_back(e);
  }
  return out;
}

/// Robin levels in (lo, hi] from the parity-decoupled secular equations with
/// C = cot(alpha/2). For e = q^2 > 0: q sin(q/2) = C cos(q/2) (even) and
/// q cos(q/2) = -C sin(q/2) (odd). For e = -kappa^2 < 0: kappa tanh(kappa/2) = -C
/// (even) and kappa = -C tanh(kappa/2) (odd). Requires lo < 0 < hi.
inline std::vector<double> robin_levels(double alpha, double lo, double hi) {
  const double c = 1.0 / std::tan(0.5 * alpha);
  auto even = [c](double q) { return q * std::sin(0.5 * q) - c * std::cos(0.5 * q); };
  auto odd = [c](double q) { return q * std::cos(0.5 * q) + c * std::sin(0.5 * q); };
  auto even_neg = [c](double k) { return k * std::tanh(0.5 * k) + c; };
  auto odd_neg = [c](double k) { return k + c * std::tanh(0.5 * k); };
  std::vector<double> out;
  for (double q : scalar_roots(even, 1e-3, std::sqrt(hi))) out.push_back(q * q);
  for (double q : scalar_roots(odd, 1e-3, std::sqrt(hi))) out.push_back(q * q);
  for (double k : scalar_roots(even_neg, 1e-3, std::sqrt(-lo))) out.push_back(-k * k);
  for (double k : scalar_roots(odd_neg, 1e-3, std::sqrt(-lo))) out.push_back(-k * k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle

#endif  // RINGSPEC_ACCEPTANCE_ORACLES_HPP
