#ifndef RINGSPEC_ROOTS_HPP
#define RINGSPEC_ROOTS_HPP

// Spectrum extraction in a window. Since B(x) and U are unitary,
//   det(B - U) = 0  <=>  W(x) = B(x) U^dagger has eigenvalue 1,
// so eigenvalues are the points where an eigenphase of W crosses 0 mod 2pi.
// The two eigenphases are tracked on a dense grid, every crossing is
// bracketed and bisected, and each root is re-verified against |F|.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringspec/bc.hpp"
#include "ringspec/dirac.hpp"
#include "ringspec/error.hpp"
#include "ringspec/kernel.hpp"
#include "ringspec/matalg.hpp"
#include "ringspec/parallel.hpp"
#include "ringspec/schrod.hpp"

namespace ringspec {

/// Half-open energy window (lo, hi].
struct Window {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x > lo && x <= hi; }
  double length() const { return hi - lo; }
  friend bool operator==(const Window&, const Window&) = default;
};

struct SearchOptions {
  int density = 1024;          // grid nodes per unit of length 2 pi
  double tol_root = 1e-12;     // relative bisection width, times max(1, |x|)
  double tol_residual = 1e-9;  // |F| bound for an accepted root
  double separation = 1e-8;    // relative distance below which roots merge
  unsigned threads = default_thread_count();

  void validate() const {
    if (density < 64) throw std::invalid_argument("SearchOptions: density must be >= 64");
    if (!(tol_root > 0.0) || !(tol_residual > 0.0) || !(separation > 0.0))
      throw std::invalid_argument("SearchOptions: tolerances must be positive");
  }
};

enum class RootMethod { bisection, grid_node };

inline std::string_view to_string(RootMethod m) {
  return m == RootMethod::bisection ? "bisection" : "grid_node";
}

struct Root {
  double x = 0.0;
  int multiplicity = 1;
  double residual = 0.0;
  RootMethod method = RootMethod::bisection;
};

struct ExcludedInterval {
  double lo, hi;
};

struct SpectrumSlice {
  Theory theory = Theory::dirac;
  Window window;
  std::vector<Root> roots;
  std::size_t grid_points = 0;
  std::vector<ExcludedInterval> excluded;  // around unresolvable poles
  std::vector<Root> rejected;              // candidates failing the residual check
  std::vector<std::string> warnings;

  bool ok() const { return excluded.empty() && rejected.empty(); }
  /// Roots expanded by multiplicity.
  std::vector<double> values() const {
    std::vector<double> out;
    for (const auto& r : roots)
      for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.x);
    return out;
  }
  double max_residual() const {
    double m = 0.0;
    for (const auto& r : roots) m = std::max(m, r.residual);
    return m;
  }
};

/// Eigenphases of W = B U^dagger along a grid. `tracks` are unwrapped so that
/// consecutive values differ by the minimal angular displacement; `wraps`
/// lists (node, track) pairs where the wrapped phase jumped across +-pi.
struct PhaseProfile {
  std::vector<double> grid;
  std::vector<std::array<double, 2>> wrapped;
  std::vector<std::array<double, 2>> tracks;
  std::vector<bool> missing;
  std::vector<std::pair<std::size_t, int>> wraps;
};

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kNodeTol = 1e-12;

template <SpectralKernel K>
bool phases_at(const K& k, const Mat2& u_dag, double x, std::array<double, 2>& out) {
  try {
    out = unitary_eigenphases(k.boundary(x) * u_dag);
    return std::isfinite(out[0]) && std::isfinite(out[1]);
  } catch (const PoleError&) {
    return false;
  }
}

inline double level_offset(double t) { return t - kTwoPi * std::round(t / kTwoPi); }

inline void build_tracks(PhaseProfile& p) {
  const std::size_t n = p.grid.size();
  p.tracks.assign(n, {0.0, 0.0});
  p.wraps.clear();
  bool started = false;
  for (std::size_t j = 0; j < n; ++j) {
    if (p.missing[j]) {
      started = false;
      continue;
    }
    const auto& cur = p.wrapped[j];
    if (!started) {
      p.tracks[j] = cur;
      started = true;
      continue;
    }
    const auto& prev = p.tracks[j - 1];
    const double direct = std::abs(wrap_phase(cur[0] - prev[0])) + std::abs(wrap_phase(cur[1] - prev[1]));
    const double swapped = std::abs(wrap_phase(cur[1] - prev[0])) + std::abs(wrap_phase(cur[0] - prev[1]));
    const std::array<double, 2> assigned =
        swapped < direct ? std::array<double, 2>{cur[1], cur[0]} : cur;
    for (int t = 0; t < 2; ++t) {
      const double d = wrap_phase(assigned[t] - prev[t]);
      p.tracks[j][t] = prev[t] + d;
      const double before = wrap_phase(prev[t]);
      if (std::abs(before + d) > std::numbers::pi) p.wraps.emplace_back(j, t);
    }
  }
}

}  // namespace detail

/// Pre: grid strictly increasing. Points where the kernel reports a pole are
/// marked missing and break the tracks.
template <SpectralKernel K>
PhaseProfile eigenphase_profile(const K& k, const UnitaryBC& u, std::span<const double> grid,
                                unsigned threads = default_thread_count()) {
  for (std::size_t j = 1; j < grid.size(); ++j)
    if (!(grid[j] > grid[j - 1])) throw std::invalid_argument("eigenphase_profile: grid not increasing");
  PhaseProfile p;
  p.grid.assign(grid.begin(), grid.end());
  p.wrapped.assign(grid.size(), {0.0, 0.0});
  std::vector<char> miss(grid.size(), 0);
  const Mat2 u_dag = u.matrix().adjoint();
  parallel_for(grid.size(), threads, [&](std::size_t j) {
    miss[j] = detail::phases_at(k, u_dag, grid[j], p.wrapped[j]) ? 0 : 1;
  });
  p.missing.assign(miss.begin(), miss.end());
  detail::build_tracks(p);
  return p;
}

/// Uniform grid with `density` nodes per 2 pi, plus the kernel's mandatory
/// nodes (gap edges, e = 0). A mandatory node replaces the nearest interior
/// uniform node when it is closer than a quarter step.
inline std::vector<double> make_grid(const Window& w, int density, const std::vector<double>& mandatory) {
  const auto n_int = static_cast<std::size_t>(
      std::max(1.0, std::ceil(w.length() * double(density) / detail::kTwoPi)));
  const double h = w.length() / double(n_int);
  std::vector<double> g(n_int + 1);
  for (std::size_t i = 0; i <= n_int; ++i) g[i] = w.lo + h * double(i);
  g.back() = w.hi;
  for (double m : mandatory) {
    if (!(m > w.lo && m < w.hi)) continue;
    const auto j = static_cast<std::size_t>(std::llround((m - w.lo) / h));
    if (j >= 1 && j < n_int && std::abs(g[j] - m) < 0.25 * h) {
      g[j] = m;
    } else if (std::find(g.begin(), g.end(), m) == g.end()) {
      g.insert(std::upper_bound(g.begin(), g.end(), m), m);
    }
  }
  return g;
}

namespace detail {

template <SpectralKernel K>
class RootSearch {
 public:
  RootSearch(const K& k, const UnitaryBC& u, const SearchOptions& opt)
      : k_(k), u_(u), u_dag_(u.matrix().adjoint()), opt_(opt) {}

  /// Grid-node roots and bracketed crossings of one profile.
  void scan(const PhaseProfile& p, int depth) {
    const std::size_t n = p.grid.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (p.missing[j]) continue;
      int at_node = 0;
      for (int t = 0; t < 2; ++t)
        if (std::abs(level_offset(p.tracks[j][t])) < kNodeTol) ++at_node;
      if (at_node > 0) candidates_.push_back({p.grid[j], at_node, 0.0, RootMethod::grid_node});
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (p.missing[j] || p.missing[j + 1]) continue;
      int crossings = 0;
      for (int t = 0; t < 2; ++t) {
        const double a = p.tracks[j][t], b = p.tracks[j + 1][t];
        if (std::abs(level_offset(a)) < kNodeTol || std::abs(level_offset(b)) < kNodeTol) continue;
        const double lo = std::min(a, b), hi = std::max(a, b);
        crossings += int(std::floor(hi / kTwoPi) - std::ceil(lo / kTwoPi) + 1.0);
      }
      if (crossings > 0)
        refine(p.grid[j], p.grid[j + 1], p.wrapped[j], p.wrapped[j + 1], crossings, depth);
    }
  }

  std::vector<Root>& candidates() { return candidates_; }
  std::vector<std::string>& warnings() { return warnings_; }

 private:
  std::array<double, 2> phases(double x) const {
    std::array<double, 2> out{};
    if (!phases_at(k_, u_dag_, x, out)) throw PoleError("pole inside a bracket", x);
    return out;
  }

  // Both eigenphases near 0: the sorted phases are continuous selectors.
  // Otherwise the phase closest to 0 is.
  enum class Selector { low, high, closest };

  static double select(const std::array<double, 2>& th, Selector s) {
    switch (s) {
      case Selector::low: return std::min(th[0], th[1]);
      case Selector::high: return std::max(th[0], th[1]);
      case Selector::closest: return std::abs(th[0]) <= std::abs(th[1]) ? th[0] : th[1];
    }
    return th[0];
  }

  double bisect(double l, double r, double fl, double fr, Selector s) const {
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (l + r);
      if (r - l <= opt_.tol_root * std::max(1.0, std::abs(m)) || m <= l || m >= r) break;
      const double fm = select(phases(m), s);
      if (fm == 0.0) return m;
      if (std::signbit(fm) == std::signbit(fl)) {
        l = m;
        fl = fm;
      } else {
        r = m;
        fr = fm;
      }
    }
    // The phase is smooth and monotone on the final bracket.
    const double x = l - fl * (r - l) / (fr - fl);
    return std::isfinite(x) ? std::clamp(x, l, r) : 0.5 * (l + r);
  }

  void refine(double l, double r, const std::array<double, 2>& tl, const std::array<double, 2>& tr,
              int crossings, int depth) {
    constexpr double half_pi = 0.5 * std::numbers::pi;
    const bool both_near_zero = std::abs(tl[0]) < half_pi && std::abs(tl[1]) < half_pi &&
                                std::abs(tr[0]) < half_pi && std::abs(tr[1]) < half_pi;
    std::vector<Selector> sels;
    if (both_near_zero)
      sels = {Selector::low, Selector::high};
    else
      sels = {Selector::closest};

    std::vector<Root> found;
    for (Selector s : sels) {
      const double fl = select(tl, s), fr = select(tr, s);
      if (std::signbit(fl) != std::signbit(fr) && fl != 0.0 && fr != 0.0)
        found.push_back({bisect(l, r, fl, fr, s), 1, 0.0, RootMethod::bisection});
    }
    if (int(found.size()) == crossings) {
      candidates_.insert(candidates_.end(), found.begin(), found.end());
      return;
    }
    if (depth >= 4) {
      warnings_.push_back("unresolved bracket (" + std::to_string(l) + ", " + std::to_string(r) +
                          "): expected " + std::to_string(crossings) + " crossings, isolated " +
                          std::to_string(found.size()));
      candidates_.insert(candidates_.end(), found.begin(), found.end());
      return;
    }
    // Ambiguous bracket: rescan it on a finer local grid.
    constexpr int kSub = 16;
    std::vector<double> sub(kSub + 1);
    for (int i = 0; i <= kSub; ++i) sub[i] = l + (r - l) * double(i) / kSub;
    sub.back() = r;
    PhaseProfile p;
    p.grid = sub;
    p.wrapped.resize(sub.size());
    p.missing.assign(sub.size(), false);
    for (std::size_t i = 0; i < sub.size(); ++i) p.wrapped[i] = i == 0 ? tl : (i == kSub ? tr : phases(sub[i]));
    build_tracks(p);
    // Interior node hits only; the endpoints were handled by the caller.
    RootSearch nested(k_, u_, opt_);
    nested.scan(p, depth + 1);
    for (const auto& c : nested.candidates())
      if (c.method == RootMethod::bisection || (c.x > l && c.x < r)) candidates_.push_back(c);
    warnings_.insert(warnings_.end(), nested.warnings().begin(), nested.warnings().end());
  }

  const K& k_;
  const UnitaryBC& u_;
  Mat2 u_dag_;
  const SearchOptions& opt_;
  std::vector<Root> candidates_;
  std::vector<std::string> warnings_;
};

// Pulls the boundary of a run of pole nodes towards the pole.
template <SpectralKernel K>
double closest_good_point(const K& k, const Mat2& u_dag, double good, double bad) {
  std::array<double, 2> tmp{};
  for (int it = 0; it < 60; ++it) {
    const double m = 0.5 * (good + bad);
    if (m == good || m == bad) break;
    if (phases_at(k, u_dag, m, tmp))
      good = m;
    else
      bad = m;
  }
  return good;
}

}  // namespace detail

/// All eigenvalues in the half-open window, with multiplicities.
template <SpectralKernel K>
SpectrumSlice find_spectrum(const K& k, const UnitaryBC& u, const Window& w,
                            const SearchOptions& opt = {}) {
  opt.validate();
  if (!std::isfinite(w.lo) || !std::isfinite(w.hi) || !(w.lo < w.hi))
    throw std::invalid_argument("find_spectrum: window must be finite with lo < hi");

  SpectrumSlice slice;
  slice.theory = K::theory;
  slice.window = w;

  std::vector<double> grid = make_grid(w, opt.density, k.mandatory_nodes());
  PhaseProfile prof = eigenphase_profile(k, u, grid, opt.threads);

  // Shrink every run of pole nodes to the smallest excluded interval.
  if (std::find(prof.missing.begin(), prof.missing.end(), true) != prof.missing.end()) {
    const Mat2 u_dag = u.matrix().adjoint();
    std::vector<double> extra;
    for (std::size_t j = 0; j < grid.size();) {
      if (!prof.missing[j]) {
        ++j;
        continue;
      }
      std::size_t e = j;
      while (e + 1 < grid.size() && prof.missing[e + 1]) ++e;
      double lo = w.lo, hi = w.hi;
      if (j > 0) lo = detail::closest_good_point(k, u_dag, grid[j - 1], grid[j]);
      if (e + 1 < grid.size()) hi = detail::closest_good_point(k, u_dag, grid[e + 1], grid[e]);
      if (j > 0 && lo > grid[j - 1]) extra.push_back(lo);
      if (e + 1 < grid.size() && hi < grid[e + 1]) extra.push_back(hi);
      slice.excluded.push_back({lo, hi});
      j = e + 1;
    }
    grid.insert(grid.end(), extra.begin(), extra.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    prof = eigenphase_profile(k, u, grid, opt.threads);
  }
  slice.grid_points = grid.size();

  detail::RootSearch<K> search(k, u, opt);
  search.scan(prof, 0);
  auto& cand = search.candidates();
  std::sort(cand.begin(), cand.end(), [](const Root& a, const Root& b) { return a.x < b.x; });

  std::vector<Root> merged;
  for (const auto& c : cand) {
    if (!merged.empty() &&
        c.x - merged.back().x < opt.separation * std::max(1.0, std::abs(c.x))) {
      Root& m = merged.back();
      // Prefer the exact grid node as the representative.
      if (c.method == RootMethod::grid_node) {
        m.x = c.x;
        m.method = RootMethod::grid_node;
      }
      m.multiplicity += c.multiplicity;
    } else {
      merged.push_back(c);
    }
  }
  for (auto& r : merged) {
    if (!w.contains(r.x)) continue;
    r.residual = std::abs(k.value(r.x, u));
    if (r.multiplicity > 2) {
      slice.warnings.push_back("multiplicity " + std::to_string(r.multiplicity) + " at " +
                               std::to_string(r.x) + " exceeds the 2x2 bound");
    }
    if (r.residual < opt.tol_residual)
      slice.roots.push_back(r);
    else
      slice.rejected.push_back(r);
  }
  slice.warnings.insert(slice.warnings.end(), search.warnings().begin(), search.warnings().end());
  return slice;
}

/// Builds the kernel for `theory`. `mu0` is ignored for Schroedinger.
inline SpectrumSlice find_spectrum(const UnitaryBC& u, const Window& w, Theory theory, double mu0,
                                   const SearchOptions& opt = {}) {
  if (theory == Theory::dirac) return find_spectrum(DiracKernel{mu0}, u, w, opt);
  return find_spectrum(SchrodKernel{}, u, w, opt);
}

}  // namespace ringspec

#endif  // RINGSPEC_ROOTS_HPP
