#ifndef RINGSPEC_ISO_HPP
#define RINGSPEC_ISO_HPP

// Isospectrality services. Every U not commuting with sx generates a U(1)
// family U_lambda = e^{i lambda sx} U e^{-i lambda sx} of boundary conditions
// with one common spectrum; parity-symmetric U(eta, theta) are fixed points.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ringspec/bc.hpp"
#include "ringspec/parallel.hpp"
#include "ringspec/roots.hpp"

namespace ringspec {

struct OrbitSample {
  double lambda;
  UnitaryBC bc;
};

struct IsoClassification {
  bool parity_symmetric = false;
  std::vector<OrbitSample> orbit_samples;
  InvariantTriple invariant_triple{};
  InvariantTriple canonical_tag{};  // components rounded to 1e-10
};

/// Rounds to the nearest multiple of 1e-10 (negative zero folded to zero).
inline double round_tag(double x) {
  const double r = std::round(x * 1e10) / 1e10;
  return r == 0.0 ? 0.0 : r;
}

inline InvariantTriple canonical_tag(const InvariantTriple& t) {
  auto rc = [](cplx z) { return cplx(round_tag(z.real()), round_tag(z.imag())); };
  return {rc(t.detU), rc(t.trU), rc(t.trUsx)};
}

/// Orbit samples at lambda = 2 pi k / n, k = 1..n-1 (n = 16 gives k pi / 8).
inline IsoClassification classify(const UnitaryBC& u, int samples = 16) {
  if (samples < 2) throw std::invalid_argument("classify: need at least 2 orbit samples");
  IsoClassification c;
  c.parity_symmetric = is_parity_symmetric(u);
  for (int k = 1; k < samples; ++k) {
    const double lambda = 2.0 * std::numbers::pi * k / samples;
    c.orbit_samples.push_back({lambda, conjugate_orbit(u, lambda)});
  }
  c.invariant_triple = u.triple();
  c.canonical_tag = canonical_tag(c.invariant_triple);
  return c;
}

struct SpectrumComparison {
  bool equal = false;
  double max_pairwise_gap = 0.0;  // over the common prefix of sorted roots
  std::size_t count_a = 0, count_b = 0;
};

/// Sorted greedy matching of the two root lists, multiplicities expanded.
inline SpectrumComparison compare_spectra(const SpectrumSlice& a, const SpectrumSlice& b, double tol) {
  if (a.theory != b.theory || !(a.window == b.window))
    throw std::invalid_argument("compare_spectra: slices differ in window or theory");
  const auto va = a.values(), vb = b.values();
  SpectrumComparison out;
  out.count_a = va.size();
  out.count_b = vb.size();
  for (std::size_t i = 0; i < std::min(va.size(), vb.size()); ++i)
    out.max_pairwise_gap = std::max(out.max_pairwise_gap, std::abs(va[i] - vb[i]));
  out.equal = va.size() == vb.size() && out.max_pairwise_gap < tol;
  return out;
}

struct OrbitSpectrum {
  double lambda;
  UnitaryBC bc;
  SpectrumSlice spectrum;
};

struct OrbitReport {
  std::vector<OrbitSpectrum> members;  // members[0] is lambda = 0
  bool all_equal = false;
  double max_gap = 0.0;
};

/// Spectra along the orbit at lambda = k pi / n, k = 0..n-1, computed in
/// parallel over lambda and compared against the lambda = 0 member.
template <SpectralKernel K>
OrbitReport orbit_spectra(const K& k, const UnitaryBC& u, const Window& w, int n,
                          const SearchOptions& opt, double tol = 1e-8) {
  if (n < 1) throw std::invalid_argument("orbit_spectra: need at least one sample");
  std::vector<double> lambdas(n);
  for (int i = 0; i < n; ++i) lambdas[i] = std::numbers::pi * i / n;

  std::vector<std::optional<OrbitSpectrum>> slots(n);
  SearchOptions inner = opt;
  inner.threads = 1;
  parallel_for(
      std::size_t(n), opt.threads,
      [&](std::size_t i) {
        const UnitaryBC ul = conjugate_orbit(u, lambdas[i]);
        slots[i] = OrbitSpectrum{lambdas[i], ul, find_spectrum(k, ul, w, inner)};
      },
      1);

  OrbitReport rep;
  rep.all_equal = true;
  for (auto& s : slots) rep.members.push_back(std::move(*s));
  for (std::size_t i = 1; i < rep.members.size(); ++i) {
    const auto cmp = compare_spectra(rep.members[0].spectrum, rep.members[i].spectrum, tol);
    rep.all_equal = rep.all_equal && cmp.equal;
    rep.max_gap = std::max(rep.max_gap, cmp.count_a == cmp.count_b
                                            ? cmp.max_pairwise_gap
                                            : std::numeric_limits<double>::infinity());
  }
  return rep;
}

}  // namespace ringspec

#endif  // RINGSPEC_ISO_HPP
