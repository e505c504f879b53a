#ifndef RINGSPEC_TRIPLE_HPP
#define RINGSPEC_TRIPLE_HPP

// Boundary-triple machinery for H = -i alpha d/dx + mu0 beta on [-1/2, 1/2]
// (hbar = c = L = 1) in an arbitrary Clifford representation (alpha, beta).
//
// With alpha_n(+-1/2) = +-alpha and its normalized eigenvectors e+-(s),
//   Gamma+- Psi = ( <e-+|Psi(-1/2)>, <e+-|Psi(+1/2)> ),
// and the boundary form satisfies
//   Lambda(Psi1, Psi2) / (-i) = <G- Psi1|G- Psi2> - <G+ Psi1|G+ Psi2>.

#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "ringspec/bc.hpp"
#include "ringspec/error.hpp"
#include "ringspec/kernel.hpp"
#include "ringspec/matalg.hpp"

namespace ringspec {

/// A pair of Hermitian, anticommuting involutions.
class CliffordRep {
 public:
  static constexpr double kTol = 1e-12;

  static CliffordRep make(const Mat2& alpha, const Mat2& beta) {
    const Mat2 id = Mat2::identity();
    const double err = std::max({distance(alpha, alpha.adjoint()), distance(beta, beta.adjoint()),
                                 (alpha * beta + beta * alpha).frobenius_norm(),
                                 distance(alpha * alpha, id), distance(beta * beta, id)});
    if (!(err < 1e-10)) throw InvalidRepresentation("(alpha, beta) is not a Clifford pair");
    return CliffordRep(alpha, beta);
  }
  /// The Dirac (standard) representation (sx, sz).
  static CliffordRep dirac() { return CliffordRep(Mat2::sigma_x(), Mat2::sigma_z()); }

  /// Largest violation of hermiticity, anticommutation and involution.
  double defect() const {
    const Mat2 id = Mat2::identity();
    return std::max({distance(alpha_, alpha_.adjoint()), distance(beta_, beta_.adjoint()),
                     (alpha_ * beta_ + beta_ * alpha_).frobenius_norm(),
                     distance(alpha_ * alpha_, id), distance(beta_ * beta_, id)});
  }

  const Mat2& alpha() const { return alpha_; }
  const Mat2& beta() const { return beta_; }

  /// (V alpha V^dagger, V beta V^dagger) for unitary V.
  CliffordRep conjugated(const Mat2& v) const {
    return make(v * alpha_ * v.adjoint(), v * beta_ * v.adjoint());
  }

 private:
  CliffordRep(const Mat2& a, const Mat2& b) : alpha_(a), beta_(b) {}
  Mat2 alpha_, beta_;
};

enum class Side { left, right };  // x = -L/2, x = +L/2

struct BoundaryEigvecs {
  Vec2 plus, minus;
};

namespace detail {

// Unit vector in the range of the Hermitian projector p, with the first
// non-negligible component real and positive.
inline Vec2 projector_column(const Mat2& p) {
  const double n0 = std::hypot(std::abs(p(0, 0)), std::abs(p(1, 0)));
  const double n1 = std::hypot(std::abs(p(0, 1)), std::abs(p(1, 1)));
  Vec2 v = n0 >= n1 ? Vec2{p(0, 0) / n0, p(1, 0) / n0} : Vec2{p(0, 1) / n1, p(1, 1) / n1};
  const cplx lead = std::abs(v[0]) > 1e-12 ? v[0] : v[1];
  const cplx ph = std::conj(lead) / std::abs(lead);
  return {v[0] * ph, v[1] * ph};
}

inline BoundaryEigvecs eigvecs_of(const Mat2& a) {
  const Mat2 id = Mat2::identity();
  return {projector_column(0.5 * (id + a)), projector_column(0.5 * (id - a))};
}

}  // namespace detail

/// Eigenvectors e+-(s) of alpha_n(s) = +-alpha for eigenvalues +-1.
inline BoundaryEigvecs boundary_eigvecs(const CliffordRep& rep, Side side) {
  const BoundaryEigvecs ev = detail::eigvecs_of(rep.alpha());
  if (side == Side::right) return ev;
  return {ev.minus, ev.plus};
}

/// Samples of Psi and Psi' on [-1/2, 1/2]. The grid carries both endpoints
/// (zero quadrature weight) and the interior composite Gauss-Legendre nodes.
struct SpinorSample {
  std::vector<double> x;
  std::vector<double> weight;
  std::vector<Vec2> psi;
  std::vector<Vec2> dpsi;

  const Vec2& left() const { return psi.front(); }
  const Vec2& right() const { return psi.back(); }
};

using SpinorFn = std::function<Vec2(double)>;

/// Composite Gauss-Legendre with `panels` x 16 nodes (256 by default).
inline SpinorSample sample_spinor(const SpinorFn& psi, const SpinorFn& dpsi, int panels = 16) {
  using Rule = boost::math::quadrature::gauss<double, 16>;
  const auto& absc = Rule::abscissa();
  const auto& wts = Rule::weights();

  SpinorSample s;
  auto push = [&](double x, double w) {
    s.x.push_back(x);
    s.weight.push_back(w);
    s.psi.push_back(psi(x));
    s.dpsi.push_back(dpsi(x));
  };
  push(-0.5, 0.0);
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -0.5 + h * (p + 0.5), half = 0.5 * h;
    // abscissa() holds the non-negative half of the symmetric rule.
    for (std::size_t i = absc.size(); i-- > 0;)
      if (absc[i] != 0.0) push(mid - half * absc[i], half * wts[i]);
    for (std::size_t i = 0; i < absc.size(); ++i) push(mid + half * absc[i], half * wts[i]);
  }
  push(0.5, 0.0);
  return s;
}

struct GammaPair {
  Vec2 minus, plus;
};

/// (Gamma- Psi, Gamma+ Psi).
inline GammaPair gamma_maps(const CliffordRep& rep, const Vec2& psi_left, const Vec2& psi_right) {
  const BoundaryEigvecs l = boundary_eigvecs(rep, Side::left);
  const BoundaryEigvecs r = boundary_eigvecs(rep, Side::right);
  return {{inner(l.minus, psi_left), inner(r.minus, psi_right)},
          {inner(l.plus, psi_left), inner(r.plus, psi_right)}};
}

inline GammaPair gamma_maps(const CliffordRep& rep, const SpinorSample& s) {
  return gamma_maps(rep, s.left(), s.right());
}

struct BoundaryFormCheck {
  cplx bulk;      // Lambda / (-i) by quadrature
  cplx boundary;  // <G- 1|G- 2> - <G+ 1|G+ 2>
  double residual;
};

/// Evaluates Lambda(Psi1, Psi2) = <H Psi1|Psi2> - <Psi1|H Psi2> by
/// quadrature and compares it with the boundary-data expression.
inline BoundaryFormCheck boundary_form_check(const CliffordRep& rep, const SpinorSample& s1,
                                             const SpinorSample& s2, double mu0 = 1.0) {
  if (s1.x != s2.x) throw std::invalid_argument("boundary_form_check: samples on different grids");
  auto apply_h = [&](const Vec2& psi, const Vec2& dpsi) {
    const Vec2 ad = rep.alpha() * dpsi;
    const Vec2 bp = rep.beta() * psi;
    return Vec2{-kI * ad[0] + mu0 * bp[0], -kI * ad[1] + mu0 * bp[1]};
  };
  cplx lambda = 0.0;
  for (std::size_t i = 0; i < s1.x.size(); ++i) {
    if (s1.weight[i] == 0.0) continue;
    lambda += s1.weight[i] * (inner(apply_h(s1.psi[i], s1.dpsi[i]), s2.psi[i]) -
                              inner(s1.psi[i], apply_h(s2.psi[i], s2.dpsi[i])));
  }
  const GammaPair g1 = gamma_maps(rep, s1), g2 = gamma_maps(rep, s2);
  const cplx boundary = inner(g1.minus, g2.minus) - inner(g1.plus, g2.plus);
  const cplx bulk = lambda / (-kI);
  return {bulk, boundary, std::abs(bulk - boundary)};
}

// ---------------------------------------------------------------------------
// Representation changes.

namespace detail {

using Vec3 = std::array<double, 3>;

inline Vec3 pauli_vector(const Mat2& h) {
  const PauliCoeffs p = pauli_decompose(h);
  return {p.c1.real(), p.c2.real(), p.c3.real()};
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// SU(2) element for the rotation R: V (v.sigma) V^dagger = (R v).sigma.
inline Mat2 lift_rotation(const std::array<Vec3, 3>& r) {  // r[row][col]
  const double tr = r[0][0] + r[1][1] + r[2][2];
  double w, x, y, z;
  if (tr > 0.0) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    w = 0.25 * s;
    x = (r[2][1] - r[1][2]) / s;
    y = (r[0][2] - r[2][0]) / s;
    z = (r[1][0] - r[0][1]) / s;
  } else if (r[0][0] > r[1][1] && r[0][0] > r[2][2]) {
    const double s = 2.0 * std::sqrt(1.0 + r[0][0] - r[1][1] - r[2][2]);
    w = (r[2][1] - r[1][2]) / s;
    x = 0.25 * s;
    y = (r[0][1] + r[1][0]) / s;
    z = (r[0][2] + r[2][0]) / s;
  } else if (r[1][1] > r[2][2]) {
    const double s = 2.0 * std::sqrt(1.0 + r[1][1] - r[0][0] - r[2][2]);
    w = (r[0][2] - r[2][0]) / s;
    x = (r[0][1] + r[1][0]) / s;
    y = 0.25 * s;
    z = (r[1][2] + r[2][1]) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r[2][2] - r[0][0] - r[1][1]);
    w = (r[1][0] - r[0][1]) / s;
    x = (r[0][2] + r[2][0]) / s;
    y = (r[1][2] + r[2][1]) / s;
    z = 0.25 * s;
  }
  return Mat2{cplx(w, -z), cplx(-y, -x), cplx(y, -x), cplx(w, z)};
}

}  // namespace detail

/// Unitary V with V alpha V^dagger = alpha~ and V beta V^dagger = beta~.
/// Built from the SO(3) rotation taking (a, b, a x b) to (a~, b~, a~ x b~);
/// the global phase makes the largest-magnitude entry real positive.
inline Mat2 representation_transform(const CliffordRep& from, const CliffordRep& to) {
  using detail::Vec3;
  const Vec3 a = detail::pauli_vector(from.alpha()), b = detail::pauli_vector(from.beta());
  const Vec3 at = detail::pauli_vector(to.alpha()), bt = detail::pauli_vector(to.beta());
  const std::array<Vec3, 3> f{a, b, detail::cross(a, b)};
  const std::array<Vec3, 3> g{at, bt, detail::cross(at, bt)};
  std::array<Vec3, 3> r{};  // R = G F^T with frames as columns
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int c = 0; c < 3; ++c) r[i][j] += g[c][i] * f[c][j];
  Mat2 v = detail::lift_rotation(r);

  std::size_t big = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (std::abs(v.e[i]) > std::abs(v.e[big]) + 1e-12) big = i;
  v *= std::conj(v.e[big]) / std::abs(v.e[big]);
  return v;
}

/// The boundary matrix describing the same self-adjoint extension after the
/// change of representation `from` -> `to`: Gamma~- = U~ Gamma~+ with
/// U~ = D- U D+^dagger, where D+- collect the phases between V e+- and e~+-.
inline Mat2 transform_bc_matrix(const Mat2& u, const CliffordRep& from, const CliffordRep& to) {
  const Mat2 v = representation_transform(from, to);
  const BoundaryEigvecs e = boundary_eigvecs(from, Side::right);
  const BoundaryEigvecs et = boundary_eigvecs(to, Side::right);
  const cplx ph_plus = inner(v * e.plus, et.plus);
  const cplx ph_minus = inner(v * e.minus, et.minus);
  const Mat2 d_plus{std::conj(ph_minus), 0.0, 0.0, std::conj(ph_plus)};
  const Mat2 d_minus{std::conj(ph_plus), 0.0, 0.0, std::conj(ph_minus)};
  return d_minus * u * d_plus.adjoint();
}

inline UnitaryBC transform_bc(const UnitaryBC& u, const CliffordRep& from, const CliffordRep& to) {
  return UnitaryBC::from_matrix(transform_bc_matrix(u.matrix(), from, to));
}

/// Spectral kernel in an arbitrary representation, built from the transfer
/// matrix exp(i alpha (mu - mu0 beta)) = cos(k) + sin(k)/k * i alpha (mu - mu0 beta)
/// and the Gamma maps of that representation.
struct RepKernel {
  static constexpr Theory theory = Theory::dirac;
  CliffordRep rep = CliffordRep::dirac();
  double mu0 = 0.0;

  /// T/scale with T = exp(i alpha (mu - mu0 beta)); scale is cosh(kappa)
  /// inside the gap and 1 elsewhere.
  Mat2 transfer(double mu) const { return propagate(mu).first; }

  Mat2 boundary(double mu) const {
    const auto [t, start_scale] = propagate(mu);
    // Column j is the Gamma image of the solution with Psi(-1/2) = unit vector j,
    // both ends carrying the same 1/scale factor.
    Mat2 a_plus, a_minus;
    for (int j = 0; j < 2; ++j) {
      const Vec2 start = j == 0 ? Vec2{start_scale, 0.0} : Vec2{0.0, start_scale};
      const Vec2 end = t * (j == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0});
      const GammaPair g = gamma_maps(rep, start, end);
      a_plus(0, j) = g.plus[0];
      a_plus(1, j) = g.plus[1];
      a_minus(0, j) = g.minus[0];
      a_minus(1, j) = g.minus[1];
    }
    return a_minus * a_plus.inverse();
  }
  cplx value(double mu, const UnitaryBC& u) const {
    return det2x2_difference(boundary(mu), u.matrix());
  }
  std::vector<double> mandatory_nodes() const {
    if (mu0 > 0.0) return {-mu0, mu0};
    return {};
  }

 private:
  // (T/scale, 1/scale)
  std::pair<Mat2, double> propagate(double mu) const {
    const Mat2 gen = kI * rep.alpha() * (mu * Mat2::identity() - mu0 * rep.beta());
    const double k2 = mu * mu - mu0 * mu0;
    const double k = std::sqrt(std::abs(k2));
    if (k2 >= 0.0) {
      const double s = k < 1e-4 ? 1.0 - k * k / 6.0 : std::sin(k) / k;
      return {std::cos(k) * Mat2::identity() + s * gen, 1.0};
    }
    const double s = k < 1e-4 ? 1.0 - k * k / 3.0 : std::tanh(k) / k;
    return {Mat2::identity() + s * gen, 1.0 / std::cosh(k)};
  }
};

}  // namespace ringspec

#endif  // RINGSPEC_TRIPLE_HPP
