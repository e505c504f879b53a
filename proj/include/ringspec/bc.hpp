#ifndef RINGSPEC_BC_HPP
#define RINGSPEC_BC_HPP

// The U(2) boundary-condition space at the junction: chart
// U = e^{i eta}(m0 I + i m.sigma), named families, conjugation orbits and the
// parity-symmetric subfamily.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "ringspec/error.hpp"
#include "ringspec/matalg.hpp"

namespace ringspec {

/// det U, tr U, tr(U sigma_x): the only data the spectral function sees.
struct InvariantTriple {
  cplx detU;
  cplx trU;
  cplx trUsx;
};

inline InvariantTriple invariant_triple(const Mat2& u) {
  // tr(U sx) = U01 + U10
  return {u.det(), u.trace(), u(0, 1) + u(1, 0)};
}

inline double triple_distance(const InvariantTriple& a, const InvariantTriple& b) {
  return std::max({std::abs(a.detU - b.detU), std::abs(a.trU - b.trU),
                   std::abs(a.trUsx - b.trUsx)});
}

/// e^{i eta}(m0 I + i m.sigma)
inline Mat2 chart_matrix(double eta, double m0, const std::array<double, 3>& m) {
  const cplx ph = std::polar(1.0, eta);
  return ph * Mat2{cplx(m0, m[2]), cplx(m[1], m[0]), cplx(-m[1], m[0]), cplx(m0, -m[2])};
}

/// A self-adjoint boundary condition Psi_- = U Psi_+, stored together with
/// its canonical chart (eta in [0, pi)).
class UnitaryBC {
 public:
  static constexpr double kUnitarityTol = 1e-10;

  /// Throws NonUnitaryError if ||M^dagger M - I||_F >= 1e-10.
  static UnitaryBC from_matrix(const Mat2& m) {
    if (!m.finite()) throw NonUnitaryError("boundary matrix has non-finite entries", INFINITY);
    if (const double r = unitarity_residual(m); !(r < kUnitarityTol))
      throw NonUnitaryError("boundary matrix is not unitary", r);

    constexpr double pi = std::numbers::pi;
    double eta = 0.5 * std::arg(m.det());  // (-pi/2, pi/2]
    const PauliCoeffs p = pauli_decompose(std::polar(1.0, -eta) * m);
    double m0 = p.c0.real();
    std::array<double, 3> mv{p.c1.imag(), p.c2.imag(), p.c3.imag()};
    if (eta < 0.0) {
      eta += pi;
      m0 = -m0;
      for (auto& x : mv) x = -x;
    }
    if (eta >= pi) eta -= pi;
    // Project back onto S^3; the input is unitary to 1e-10 only.
    const double n = std::hypot(m0, std::hypot(mv[0], mv[1], mv[2]));
    m0 /= n;
    for (auto& x : mv) x /= n;

    UnitaryBC bc;
    bc.eta_ = eta;
    bc.m0_ = m0;
    bc.m_ = mv;
    bc.matrix_ = chart_matrix(eta, m0, mv);
    return bc;
  }

  /// Chart constructor; the S^3 constraint is checked to `s3_tol`.
  static UnitaryBC from_chart(double eta, double m0, const std::array<double, 3>& m,
                              double s3_tol = 1e-9) {
    const double r = std::abs(m0 * m0 + m[0] * m[0] + m[1] * m[1] + m[2] * m[2] - 1.0);
    if (!(r < s3_tol)) throw BcValidationError("(m0, m) violates the S^3 constraint", r);
    const double n = std::hypot(m0, std::hypot(m[0], m[1], m[2]));
    return from_matrix(chart_matrix(eta, m0 / n, {m[0] / n, m[1] / n, m[2] / n}));
  }

  const Mat2& matrix() const { return matrix_; }
  double eta() const { return eta_; }
  double m0() const { return m0_; }
  const std::array<double, 3>& m() const { return m_; }
  InvariantTriple triple() const { return invariant_triple(matrix_); }

 private:
  UnitaryBC() = default;

  Mat2 matrix_ = Mat2::identity();
  double eta_ = 0.0;
  double m0_ = 1.0;
  std::array<double, 3> m_{};
};

// ---------------------------------------------------------------------------
// Named families. alpha is reduced mod 2pi.

enum class Family { robin, pp, qp, chiral, dpp, parity };

inline double reduce_angle(double a) {
  constexpr double tau = 2.0 * std::numbers::pi;
  double r = std::fmod(a, tau);
  if (r < 0.0) r += tau;
  return r;
}

inline Mat2 robin_matrix(double alpha) {
  const cplx p = std::polar(1.0, reduce_angle(alpha));
  return {p, 0.0, 0.0, p};
}
inline Mat2 pseudo_periodic_matrix(double alpha) {
  alpha = reduce_angle(alpha);
  return {0.0, -std::polar(1.0, -alpha), -std::polar(1.0, alpha), 0.0};
}
inline Mat2 quasi_periodic_matrix(double alpha) {
  alpha = reduce_angle(alpha);
  const double s = std::sin(alpha), c = std::cos(alpha);
  return {-s, kI * c, -kI * c, s};
}
/// Dirac chiral family; same matrix as Robin, different physical reading.
inline Mat2 chiral_matrix(double alpha) { return robin_matrix(alpha); }
/// Dirac pseudo-periodic family: phi(L/2) = e^{i alpha} phi(-L/2), same for chi.
inline Mat2 dirac_pseudo_periodic_matrix(double alpha) {
  alpha = reduce_angle(alpha);
  return {0.0, std::polar(1.0, -alpha), std::polar(1.0, alpha), 0.0};
}
/// U(eta, theta) = e^{i(eta I + theta sx)}
inline Mat2 parity_matrix(double eta, double theta) {
  const cplx ph = std::polar(1.0, eta);
  return ph * Mat2{std::cos(theta), kI * std::sin(theta), kI * std::sin(theta), std::cos(theta)};
}

inline UnitaryBC named_family(Family f, double alpha, double theta = 0.0) {
  switch (f) {
    case Family::robin: return UnitaryBC::from_matrix(robin_matrix(alpha));
    case Family::pp: return UnitaryBC::from_matrix(pseudo_periodic_matrix(alpha));
    case Family::qp: return UnitaryBC::from_matrix(quasi_periodic_matrix(alpha));
    case Family::chiral: return UnitaryBC::from_matrix(chiral_matrix(alpha));
    case Family::dpp: return UnitaryBC::from_matrix(dirac_pseudo_periodic_matrix(alpha));
    case Family::parity: return UnitaryBC::from_matrix(parity_matrix(alpha, theta));
  }
  throw BcParseError("unknown boundary-condition family");
}

inline Family family_from_name(std::string_view name) {
  if (name == "robin") return Family::robin;
  if (name == "pp") return Family::pp;
  if (name == "qp") return Family::qp;
  if (name == "chiral") return Family::chiral;
  if (name == "dpp") return Family::dpp;
  if (name == "parity") return Family::parity;
  throw BcParseError("unknown boundary-condition family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

/// e^{i lambda sx}
inline Mat2 sigma_x_rotation(double lambda) {
  const double c = std::cos(lambda), s = std::sin(lambda);
  return {c, kI * s, kI * s, c};
}

/// U_lambda = e^{i lambda sx} U e^{-i lambda sx}. Preserves the invariant
/// triple, hence the spectrum.
inline UnitaryBC conjugate_orbit(const UnitaryBC& u, double lambda) {
  return UnitaryBC::from_matrix(sigma_x_rotation(lambda) * u.matrix() *
                                sigma_x_rotation(-lambda));
}

inline constexpr double kParityTol = 1e-10;

/// True iff U commutes with sigma_x, i.e. U = U(eta, theta) for some chart.
inline bool is_parity_symmetric(const UnitaryBC& u, double tol = kParityTol) {
  const Mat2& m = u.matrix();
  const Mat2 sx = Mat2::sigma_x();
  return (m * sx - sx * m).frobenius_norm() < tol;
}

}  // namespace ringspec

#endif  // RINGSPEC_BC_HPP
