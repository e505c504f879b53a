#ifndef RINGSPEC_SCHROD_HPP
#define RINGSPEC_SCHROD_HPP

// Spectral kernel of the free Schroedinger operator -d^2/dx^2 on the ring
// with a junction. Dimensionless energy e = 2 m E L^2 / hbar^2, so the
// wavenumber is q = sqrt(e) in units of 1/L and x runs over [-1/2, 1/2].
//
// Boundary data (with L0 = L):
//   Psi+- = ( -psi'(-1/2) +- i psi(-1/2),  psi'(1/2) +- i psi(1/2) ).
//
// B = A- A+^{-1} is diagonal in the parity basis (1, +-1)/sqrt(2):
//   B = a I + b sx,  a = (rho_e + rho_o)/2,  b = (rho_e - rho_o)/2,  c = rho_e rho_o
// with the even/odd channel phases
//   rho_e = (e sg + i C) / (e sg - i C),   rho_o = (C - i sg) / (C + i sg),
//   C = cos(q/2),  sg = sin(q/2)/q.
// C and sg are entire in e; for e < 0 they are normalized by cosh(kappa/2).

#include <cmath>
#include <utility>
#include <vector>

#include "ringspec/bc.hpp"
#include "ringspec/error.hpp"
#include "ringspec/kernel.hpp"
#include "ringspec/matalg.hpp"

namespace ringspec {

enum class SchrodRegime { positive, zero, negative };

struct SchrodPoint {
  double e = 0.0;
  SchrodRegime regime = SchrodRegime::zero;

  static SchrodPoint make(double e) {
    if (!std::isfinite(e)) throw RegimeError("SchrodPoint: non-finite energy");
    return {e, e > 0.0 ? SchrodRegime::positive
                       : (e < 0.0 ? SchrodRegime::negative : SchrodRegime::zero)};
  }
};

/// A+- whose columns are Psi+- of the two basis solutions:
/// (e^{iqx}, e^{-iqx}) for e > 0, (1, x) for e = 0, and
/// (cosh(kx), sinh(kx)/k) / cosh(k/2) for e < 0.
inline std::pair<Mat2, Mat2> schrod_boundary_map(const SchrodPoint& p) {
  auto build = [](auto&& column_entries) {
    std::pair<Mat2, Mat2> out;
    for (int sign : {+1, -1}) {
      Mat2& a = sign > 0 ? out.first : out.second;
      for (int col = 0; col < 2; ++col) {
        const auto [psi_l, dpsi_l, psi_r, dpsi_r] = column_entries(col);
        a(0, col) = -dpsi_l + double(sign) * kI * psi_l;
        a(1, col) = dpsi_r + double(sign) * kI * psi_r;
      }
    }
    return out;
  };
  using Col = std::array<cplx, 4>;  // psi(-1/2), psi'(-1/2), psi(1/2), psi'(1/2)

  switch (p.regime) {
    case SchrodRegime::positive: {
      const double q = std::sqrt(p.e);
      const cplx em = std::polar(1.0, -0.5 * q), ep = std::polar(1.0, 0.5 * q);
      return build([&](int col) -> Col {
        if (col == 0) return {em, kI * q * em, ep, kI * q * ep};
        return {ep, -kI * q * ep, em, -kI * q * em};
      });
    }
    case SchrodRegime::zero:
      return build([](int col) -> Col {
        if (col == 0) return {1.0, 0.0, 1.0, 0.0};
        return {-0.5, 1.0, 0.5, 1.0};
      });
    case SchrodRegime::negative: {
      const double kappa = std::sqrt(-p.e);
      const double t = std::tanh(0.5 * kappa);
      const double t_over_k = kappa < 1e-4 ? 0.5 - kappa * kappa / 24.0 : t / kappa;
      return build([&](int col) -> Col {
        if (col == 0) return {1.0, -kappa * t, 1.0, kappa * t};
        return {-t_over_k, 1.0, t_over_k, 1.0};
      });
    }
  }
  throw RegimeError("schrod_boundary_map: bad regime");
}

/// B from the matrix path; PoleError when A+ is numerically singular.
inline Mat2 schrod_boundary_matrix_from_map(const SchrodPoint& p) {
  const auto [plus, minus] = schrod_boundary_map(p);
  if (std::abs(plus.det()) < 1e-14 * plus.max_abs() * plus.max_abs())
    throw PoleError("Schroedinger kernel: A+ is singular", p.e);
  return minus * plus.inverse();
}

struct SchrodCoefficients {
  cplx a, b, c;
  cplx rho_even, rho_odd;
  Mat2 B;
};

/// Closed-form a(e), b(e), c(e).
inline SchrodCoefficients schrod_coefficients(const SchrodPoint& p) {
  double C = 1.0, sg = 0.5, esg = 0.0;
  if (p.regime == SchrodRegime::positive) {
    const double q = std::sqrt(p.e);
    C = std::cos(0.5 * q);
    sg = q < 1e-4 ? 0.5 - q * q / 48.0 : std::sin(0.5 * q) / q;
    esg = p.e * sg;
  } else if (p.regime == SchrodRegime::negative) {
    const double kappa = std::sqrt(-p.e);
    const double t = std::tanh(0.5 * kappa);
    sg = kappa < 1e-4 ? 0.5 - kappa * kappa / 24.0 : t / kappa;
    esg = p.e * sg;
  }
  const cplx rho_e = cplx(esg, C) / cplx(esg, -C);
  const cplx rho_o = cplx(C, -sg) / cplx(C, sg);
  const cplx a = 0.5 * (rho_e + rho_o);
  const cplx b = 0.5 * (rho_e - rho_o);
  return {a, b, rho_e * rho_o, rho_e, rho_o, Mat2{a, b, b, a}};
}

inline Mat2 schrod_boundary_matrix(const SchrodPoint& p) { return schrod_coefficients(p).B; }

/// F_U(e) = det(B(e) - U) through the trace identity.
inline cplx schrod_spectral_value(const SchrodPoint& p, const UnitaryBC& u) {
  return det2x2_difference(schrod_boundary_matrix(p), u.matrix());
}

/// F_U(e) = det U - a tr U + b tr(U sx) + c.
inline cplx schrod_spectral_value_triple(const SchrodPoint& p, const UnitaryBC& u) {
  const auto k = schrod_coefficients(p);
  const InvariantTriple t = u.triple();
  return t.detU - k.a * t.trU + k.b * t.trUsx + k.c;
}

/// F_U(e) with B taken from A- A+^{-1}.
inline cplx schrod_spectral_value_matrix_path(const SchrodPoint& p, const UnitaryBC& u) {
  return det2x2_difference(schrod_boundary_matrix_from_map(p), u.matrix());
}

struct SchrodKernel {
  static constexpr Theory theory = Theory::schrod;

  Mat2 boundary(double e) const { return schrod_boundary_matrix(SchrodPoint::make(e)); }
  cplx value(double e, const UnitaryBC& u) const {
    return schrod_spectral_value_triple(SchrodPoint::make(e), u);
  }
  std::vector<double> mandatory_nodes() const { return {0.0}; }
};

}  // namespace ringspec

#endif  // RINGSPEC_SCHROD_HPP
