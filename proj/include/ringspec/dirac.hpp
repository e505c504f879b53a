#ifndef RINGSPEC_DIRAC_HPP
#define RINGSPEC_DIRAC_HPP

// Spectral kernel of the free 1D Dirac operator on the ring with a junction,
// in the Dirac representation (alpha, beta) = (sx, sz).
//
// Everything is dimensionless: mu = eps L is the energy, mu0 = eps0 L the
// mass, and kL the wavenumber. With
//   D(mu) = mu sin(kL) - i kL cos(kL)
// the boundary matrix is B = aD I + bD sx where
//   aD = mu0 sin(kL) / D,   bD = -i kL / D,   cD = det B = aD^2 - bD^2,
// and the spectral function is
//   F(mu) = det U - aD tr U + bD tr(U sx) + cD = det(B - U).
//
// Internally the ratios are rewritten in terms of s = sin(kL)/kL and
// c = cos(kL), which are entire in kL^2. Inside the gap (kL = i kappa) both
// are normalized by cosh(kappa), so nothing overflows for large kappa and the
// mass modes kL = 0 are removable.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ringspec/bc.hpp"
#include "ringspec/error.hpp"
#include "ringspec/kernel.hpp"
#include "ringspec/matalg.hpp"

namespace ringspec {

/// Ring length, particle mass and the constants hbar, c (any consistent unit
/// system). Only the products mu = E L/(hbar c) and mu0 = m c L/hbar matter.
struct PhysicalConfig {
  double L = 1.0;
  double mass = 0.0;
  double hbar = 1.0;
  double c = 1.0;

  void validate() const {
    if (!(L > 0.0) || !(hbar > 0.0) || !(c > 0.0) || !(mass >= 0.0) || !std::isfinite(L) ||
        !std::isfinite(mass) || !std::isfinite(hbar) || !std::isfinite(c))
      throw std::invalid_argument("PhysicalConfig: need L, hbar, c > 0 and mass >= 0");
  }
  double mu0() const { return mass * c * L / hbar; }
  double dirac_mu(double energy) const { return energy * L / (hbar * c); }
  double dirac_energy(double mu) const { return mu * hbar * c / L; }
  /// e = 2 m E L^2 / hbar^2 (needs mass > 0)
  double schrod_e(double energy) const { return 2.0 * mass * energy * L * L / (hbar * hbar); }
  double schrod_energy(double e) const { return e * hbar * hbar / (2.0 * mass * L * L); }
};

enum class DiracRegime { above_gap, below_gap, inside_gap, mass_mode_plus, mass_mode_minus };

struct DiracPoint {
  double mu = 0.0;
  double mu0 = 0.0;
  DiracRegime regime = DiracRegime::above_gap;

  /// Classifies mu against the gap. Points within 1e-12 max(1, mu0) of
  /// +-mu0 snap onto the mass mode (only when mu0 > 0).
  static DiracPoint make(double mu, double mu0) {
    if (!(mu0 >= 0.0) || !std::isfinite(mu0) || !std::isfinite(mu))
      throw RegimeError("DiracPoint: need finite mu and mu0 >= 0");
    const double snap = 1e-12 * std::max(1.0, mu0);
    if (mu0 > 0.0 && std::abs(mu - mu0) < snap) return {mu0, mu0, DiracRegime::mass_mode_plus};
    if (mu0 > 0.0 && std::abs(mu + mu0) < snap) return {-mu0, mu0, DiracRegime::mass_mode_minus};
    if (std::abs(mu) < mu0) return {mu, mu0, DiracRegime::inside_gap};
    return {mu, mu0, mu >= 0.0 ? DiracRegime::above_gap : DiracRegime::below_gap};
  }

  bool is_mass_mode() const {
    return regime == DiracRegime::mass_mode_plus || regime == DiracRegime::mass_mode_minus;
  }
};

/// kL: real sqrt(mu^2 - mu0^2) outside the gap, +i sqrt(mu0^2 - mu^2) inside.
inline cplx wavenumber(const DiracPoint& p) {
  if (p.is_mass_mode()) throw RegimeError("wavenumber: mass modes have k = 0, use mass_mode_B");
  const double a = std::abs(p.mu);
  const double k = std::sqrt(std::abs((a - p.mu0) * (a + p.mu0)));
  return p.regime == DiracRegime::inside_gap ? cplx(0.0, k) : cplx(k, 0.0);
}

struct KernelValue {
  cplx aD;
  cplx bD;
  cplx cD;
  Mat2 B;
};

namespace detail {

// s = sin(kL)/kL, c = cos(kL), n = 1 outside the gap;
// s = tanh(kappa)/kappa, c = 1, n = sech(kappa) inside.
struct GapTerms {
  double s, c, n;
};

inline double sinc(double x) { return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }
inline double tanhc(double x) {
  return std::abs(x) < 1e-4 ? 1.0 - x * x / 3.0 : std::tanh(x) / x;
}

inline GapTerms gap_terms(const DiracPoint& p) {
  const double a = std::abs(p.mu);
  const double k = std::sqrt(std::abs((a - p.mu0) * (a + p.mu0)));
  if (p.regime == DiracRegime::inside_gap) return {tanhc(k), 1.0, 1.0 / std::cosh(k)};
  if (p.is_mass_mode()) return {1.0, 1.0, 1.0};
  return {sinc(k), std::cos(k), 1.0};
}

inline KernelValue assemble(cplx aD, cplx bD, cplx cD) {
  return {aD, bD, cD, Mat2{aD, bD, bD, aD}};
}

}  // namespace detail

inline constexpr double kPoleTol = 1e-13;

/// Closed-form (aD, bD, cD, B) away from the mass modes. Throws RegimeError
/// for mass modes and PoleError if the denominator vanishes numerically.
inline KernelValue kernel_at(const DiracPoint& p) {
  if (p.is_mass_mode()) throw RegimeError("kernel_at: mass mode, use mass_mode_B");
  const auto [s, c, n] = detail::gap_terms(p);
  const cplx den(p.mu * s, -c);
  if (std::abs(den) < kPoleTol * (std::abs(p.mu * s) + std::abs(c)))
    throw PoleError("Dirac kernel: vanishing denominator", p.mu);
  const cplx aD = p.mu0 * s / den;
  const cplx bD = -kI * n / den;
  const cplx cD = (p.mu0 * p.mu0 * s * s + n * n) / (den * den);
  return detail::assemble(aD, bD, cD);
}

/// The same coefficients evaluated literally with a complex wavenumber. Used
/// to cross-check the normalized form; overflows for kappa beyond ~700.
inline KernelValue kernel_at_complex(const DiracPoint& p) {
  const cplx k = wavenumber(p);
  const cplx sk = std::sin(k), ck = std::cos(k);
  const cplx den = p.mu * sk - kI * k * ck;
  if (std::abs(den) < kPoleTol * (std::abs(p.mu) + std::abs(k)))
    throw PoleError("Dirac kernel: vanishing denominator", p.mu);
  const cplx aD = p.mu0 * sk / den;
  const cplx bD = -kI * k / den;
  const cplx cD = (p.mu * sk + kI * k * ck) / den;
  return detail::assemble(aD, bD, cD);
}

/// B(+-mu0) = +-1/(mu0 -+ i) [[mu0, -i], [-i, mu0]].
inline Mat2 mass_mode_B(int sign, double mu0) {
  if (!(mu0 > 0.0)) throw RegimeError("mass_mode_B: needs mu0 > 0");
  if (sign != 1 && sign != -1) throw RegimeError("mass_mode_B: sign must be +1 or -1");
  const cplx pre = double(sign) / cplx(mu0, -double(sign));
  return pre * Mat2{mu0, -kI, -kI, mu0};
}

/// Boundary-value matrices A+-(mu) on the plane-wave basis
/// (e^{ikx}, r e^{ikx}), (e^{-ikx}, -r e^{-ikx}) with r = kL/(mu + mu0).
/// r equals the principal root sqrt((mu-mu0)/(mu+mu0)) above and inside the
/// gap and its negative below the gap.
inline std::pair<Mat2, Mat2> build_Apm(const DiracPoint& p) {
  if (p.is_mass_mode()) throw RegimeError("build_Apm: mass mode");
  if (p.mu + p.mu0 == 0.0) throw RegimeError("build_Apm: mu = -mu0");
  const cplx k = wavenumber(p);
  const cplx r = k / (p.mu + p.mu0);
  const cplx em = std::exp(-0.5 * kI * k), ep = std::exp(0.5 * kI * k);
  const Mat2 plus{em * (1.0 - r), ep * (1.0 + r), ep * (1.0 + r), em * (1.0 - r)};
  const Mat2 minus{em * (1.0 + r), ep * (1.0 - r), ep * (1.0 - r), em * (1.0 + r)};
  return {plus, minus};
}

/// det A+- = -4i/(mu+mu0) [mu sin kL -+ i kL cos kL].
inline std::pair<cplx, cplx> det_Apm_closed(const DiracPoint& p) {
  const cplx k = wavenumber(p);
  const cplx pre = -4.0 * kI / (p.mu + p.mu0);
  const cplx sk = p.mu * std::sin(k), ck = kI * k * std::cos(k);
  return {pre * (sk - ck), pre * (sk + ck)};
}

/// B = A- A+^{-1} from the boundary-value matrices.
inline Mat2 boundary_matrix_from_Apm(const DiracPoint& p) {
  const auto [plus, minus] = build_Apm(p);
  return minus * plus.inverse();
}

/// (aD, bD, cD, B) at any point, the mass modes included.
inline KernelValue coefficients(const DiracPoint& p) {
  if (p.is_mass_mode()) {
    const Mat2 b = mass_mode_B(p.regime == DiracRegime::mass_mode_plus ? 1 : -1, p.mu0);
    return {b(0, 0), b(0, 1), b.det(), b};
  }
  return kernel_at(p);
}

inline Mat2 boundary_matrix(const DiracPoint& p) { return coefficients(p).B; }

/// F = det U - aD tr U + bD tr(U sx) + cD.
inline cplx spectral_value(const DiracPoint& p, const UnitaryBC& u) {
  const KernelValue kv = coefficients(p);
  const InvariantTriple t = u.triple();
  return t.detU - kv.aD * t.trU + kv.bD * t.trUsx + kv.cD;
}

/// F assembled as det(B - U) through the trace identity.
inline cplx spectral_value_det(const DiracPoint& p, const UnitaryBC& u) {
  return det2x2_difference(boundary_matrix(p), u.matrix());
}

/// Mass mode mu = sign * mu0 is an eigenvalue iff
/// m1 + sin(eta) = mu0 (m0 -+ cos(eta)).
inline double mass_mode_defect(const UnitaryBC& u, int sign, double mu0) {
  return u.m()[0] + std::sin(u.eta()) - mu0 * (u.m0() - double(sign) * std::cos(u.eta()));
}

inline bool mass_mode_membership(const UnitaryBC& u, int sign, double mu0, double tol = 1e-10) {
  if (sign != 1 && sign != -1) throw RegimeError("mass_mode_membership: sign must be +-1");
  if (!(mu0 >= 0.0)) throw RegimeError("mass_mode_membership: needs mu0 >= 0");
  return std::abs(mass_mode_defect(u, sign, mu0)) < tol;
}

/// SpectralKernel adapter for the root finder.
struct DiracKernel {
  static constexpr Theory theory = Theory::dirac;
  double mu0 = 0.0;

  Mat2 boundary(double mu) const { return boundary_matrix(DiracPoint::make(mu, mu0)); }
  cplx value(double mu, const UnitaryBC& u) const {
    return spectral_value(DiracPoint::make(mu, mu0), u);
  }
  std::vector<double> mandatory_nodes() const {
    if (mu0 > 0.0) return {-mu0, mu0};
    return {};
  }
};

}  // namespace ringspec

#endif  // RINGSPEC_DIRAC_HPP
