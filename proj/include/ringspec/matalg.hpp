#ifndef RINGSPEC_MATALG_HPP
#define RINGSPEC_MATALG_HPP

// 2x2 complex matrix algebra: Pauli basis, determinant/trace identities and
// the eigendecomposition of U(2) matrices.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "ringspec/error.hpp"

namespace ringspec {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

/// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<cplx, 4> e{};

  constexpr Mat2() = default;
  constexpr Mat2(cplx a, cplx b, cplx c, cplx d) : e{a, b, c, d} {}

  constexpr cplx& operator()(int r, int c) { return e[2 * r + c]; }
  constexpr const cplx& operator()(int r, int c) const { return e[2 * r + c]; }

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
  static constexpr Mat2 sigma_y() { return {0.0, -kI, kI, 0.0}; }
  static constexpr Mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }

  cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
  cplx trace() const { return e[0] + e[3]; }
  Mat2 adjoint() const {
    return {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])};
  }
  Mat2 inverse() const {
    const cplx d = det();
    return {e[3] / d, -e[1] / d, -e[2] / d, e[0] / d};
  }
  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : e) s += std::norm(z);
    return std::sqrt(s);
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : e) m = std::max(m, std::abs(z));
    return m;
  }
  bool finite() const {
    for (const auto& z : e)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  Mat2& operator+=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) e[i] += o.e[i];
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) e[i] -= o.e[i];
    return *this;
  }
  Mat2& operator*=(cplx s) {
    for (auto& z : e) z *= s;
    return *this;
  }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(Mat2 a, cplx s) { return a *= s; }
inline Mat2 operator*(cplx s, Mat2 a) { return a *= s; }
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
          a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
}

using Vec2 = std::array<cplx, 2>;

inline Vec2 operator*(const Mat2& a, const Vec2& v) {
  return {a.e[0] * v[0] + a.e[1] * v[1], a.e[2] * v[0] + a.e[3] * v[1]};
}
/// <u|v>, conjugate-linear in the first slot.
inline cplx inner(const Vec2& u, const Vec2& v) {
  return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}
inline double norm(const Vec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }
/// |u><v|
inline Mat2 outer(const Vec2& u, const Vec2& v) {
  return {u[0] * std::conj(v[0]), u[0] * std::conj(v[1]), u[1] * std::conj(v[0]),
          u[1] * std::conj(v[1])};
}

inline double distance(const Mat2& a, const Mat2& b) { return (a - b).frobenius_norm(); }

/// ||W^dagger W - I||_F
inline double unitarity_residual(const Mat2& w) {
  return distance(w.adjoint() * w, Mat2::identity());
}

/// det(M - N) through the trace identity
/// det(M-N) = det M + det N + tr(MN) - tr M tr N.
inline cplx det2x2_difference(const Mat2& m, const Mat2& n) {
  return m.det() + n.det() + (m * n).trace() - m.trace() * n.trace();
}

/// Coefficients of M = c0 I + c1 sx + c2 sy + c3 sz.
struct PauliCoeffs {
  cplx c0, c1, c2, c3;
  Mat2 rebuild() const {
    return c0 * Mat2::identity() + c1 * Mat2::sigma_x() + c2 * Mat2::sigma_y() +
           c3 * Mat2::sigma_z();
  }
};

inline PauliCoeffs pauli_decompose(const Mat2& m) {
  return {0.5 * (m.e[0] + m.e[3]), 0.5 * (m.e[1] + m.e[2]), 0.5 * kI * (m.e[1] - m.e[2]),
          0.5 * (m.e[0] - m.e[3])};
}

/// Reduce an angle to (-pi, pi]; exactly -pi maps to +pi.
inline double wrap_phase(double x) {
  constexpr double pi = std::numbers::pi;
  double r = std::remainder(x, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

struct UnitaryEigen {
  std::array<double, 2> phases{};
  std::array<Vec2, 2> vectors{};

  Mat2 reconstruct() const {
    return std::polar(1.0, phases[0]) * outer(vectors[0], vectors[0]) +
           std::polar(1.0, phases[1]) * outer(vectors[1], vectors[1]);
  }
};

namespace detail {

// Writes W = e^{i delta}(w0 I + i w.sigma) with real w0, w.
struct SU2Split {
  double delta;
  double w0;
  std::array<double, 3> w;
};

inline SU2Split su2_split(const Mat2& wm) {
  const double delta = 0.5 * std::arg(wm.det());
  const PauliCoeffs p = pauli_decompose(std::polar(1.0, -delta) * wm);
  // c_j = i w_j for the SU(2) part.
  return {delta, p.c0.real(), {p.c1.imag(), p.c2.imag(), p.c3.imag()}};
}

}  // namespace detail

inline constexpr double kUnitaryInputTol = 1e-10;

/// Eigenphases only; skips the eigenvector construction used by
/// unitary_eigen. Phases are delta +/- atan2(|w|, w0).
inline std::array<double, 2> unitary_eigenphases(const Mat2& wm) {
  const auto s = detail::su2_split(wm);
  const double wn = std::hypot(s.w[0], s.w[1], s.w[2]);
  const double phi = std::atan2(wn, s.w0);
  return {wrap_phase(s.delta + phi), wrap_phase(s.delta - phi)};
}

inline UnitaryEigen unitary_eigen(const Mat2& wm) {
  if (const double r = unitarity_residual(wm); !(r < kUnitaryInputTol))
    throw NonUnitaryError("unitary_eigen: input is not unitary", r);

  const auto s = detail::su2_split(wm);
  const double wn = std::hypot(s.w[0], s.w[1], s.w[2]);
  const double phi = std::atan2(wn, s.w0);

  UnitaryEigen out;
  out.phases = {wrap_phase(s.delta + phi), wrap_phase(s.delta - phi)};
  if (wn < 1e-15) {
    out.vectors = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
    return out;
  }
  // +1 eigenvector of n.sigma gets the phase delta + phi.
  const double nx = s.w[0] / wn, ny = s.w[1] / wn, nz = s.w[2] / wn;
  Vec2 v;
  if (nz > -0.5)
    v = {1.0 + nz, cplx(nx, ny)};
  else
    v = {cplx(nx, -ny), 1.0 - nz};
  const double vn = norm(v);
  v = {v[0] / vn, v[1] / vn};
  out.vectors = {v, Vec2{-std::conj(v[1]), std::conj(v[0])}};
  return out;
}

}  // namespace ringspec

#endif  // RINGSPEC_MATALG_HPP
