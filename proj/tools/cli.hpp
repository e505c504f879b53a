#ifndef RINGSPEC_TOOLS_CLI_HPP
#define RINGSPEC_TOOLS_CLI_HPP

// ring_spectra command line: spectrum, classify, orbit, verify.
//
// Exit codes: 0 ok, 1 usage or configuration error, 2 malformed boundary
// condition text, 3 boundary condition violating unitarity or the S^3
// constraint, 4 numerical failure (unresolved pole interval or rejected root).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance.hpp"
#include "ringspec/bc_text.hpp"
#include "ringspec/dirac.hpp"
#include "ringspec/error.hpp"
#include "ringspec/iso.hpp"
#include "ringspec/roots.hpp"
#include "ringspec/schrod.hpp"

namespace ringspec::cli {

inline constexpr const char* kVersion = "0.1.0";

enum Exit { ok = 0, usage = 1, checks_failed = 1, bad_bc_text = 2, bad_bc_value = 3, numerical = 4 };

struct RunConfig {
  std::string theory = "dirac";
  std::string bc_spec;
  std::vector<double> window{0.0, 10.0};
  std::string units = "dimensionless";
  PhysicalConfig physical;
  double mu0 = 1.0;
  int density = 1024;
  double tol_root = 1e-12;
  double tol_residual = 1e-9;
  double separation = 1e-8;
  std::string format = "json";
  std::string out;
  int lambdas = 16;

  Theory theory_enum() const { return theory == "schrod" ? Theory::schrod : Theory::dirac; }
  bool physical_units() const { return units == "physical"; }

  /// mu0 actually used: from the mass in physical units, else --mu0.
  double effective_mu0() const { return physical_units() ? physical.mu0() : mu0; }

  SearchOptions search() const {
    SearchOptions o;
    o.density = density;
    o.tol_root = tol_root;
    o.tol_residual = tol_residual;
    o.separation = separation;
    o.validate();
    return o;
  }

  /// Window converted to kernel variables (mu or e).
  Window kernel_window() const {
    if (window.size() != 2 || !(window[0] < window[1]) || !std::isfinite(window[0]) ||
        !std::isfinite(window[1]))
      throw std::invalid_argument("window needs MIN < MAX, both finite");
    if (!physical_units()) return {window[0], window[1]};
    physical.validate();
    if (theory_enum() == Theory::schrod) {
      if (!(physical.mass > 0.0)) throw std::invalid_argument("physical Schroedinger units need --mass > 0");
      return {physical.schrod_e(window[0]), physical.schrod_e(window[1])};
    }
    return {physical.dirac_mu(window[0]), physical.dirac_mu(window[1])};
  }

  /// Kernel variable back to the chosen output units.
  double to_output(double x) const {
    if (!physical_units()) return x;
    return theory_enum() == Theory::schrod ? physical.schrod_energy(x) : physical.dirac_energy(x);
  }
};

using json = nlohmann::ordered_json;

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json triple_json(const InvariantTriple& t) {
  return {{"detU", complex_json(t.detU)}, {"trU", complex_json(t.trU)}, {"trUsx", complex_json(t.trUsx)}};
}

inline json eigenvalues_json(const RunConfig& cfg, const SpectrumSlice& s) {
  json arr = json::array();
  for (const auto& r : s.roots)
    arr.push_back({{"value", cfg.to_output(r.x)}, {"multiplicity", r.multiplicity}, {"residual", r.residual}});
  return arr;
}

inline json header_json(const RunConfig& cfg) {
  json j;
  j["theory"] = to_string(cfg.theory_enum());
  j["bc"] = cfg.bc_spec;
  j["window"] = json::array({cfg.window[0], cfg.window[1]});
  j["units"] = cfg.units;
  return j;
}

inline json meta_json(const RunConfig& cfg, const UnitaryBC& u, std::size_t grid_points) {
  json m;
  m["grid_points"] = grid_points;
  m["tolerances"] = {{"tol_root", cfg.tol_root},
                     {"tol_residual", cfg.tol_residual},
                     {"separation", cfg.separation},
                     {"density", cfg.density}};
  if (cfg.theory_enum() == Theory::dirac) m["mu0"] = cfg.effective_mu0();
  if (cfg.physical_units())
    m["physical"] = {{"L", cfg.physical.L}, {"mass", cfg.physical.mass}, {"hbar", cfg.physical.hbar}, {"c", cfg.physical.c}};
  m["bc_canonical"] = format_bc(u);
  m["version"] = kVersion;
  return m;
}

template <SpectralKernel K>
SpectrumSlice run_search(const K& k, const UnitaryBC& u, const RunConfig& cfg) {
  return find_spectrum(k, u, cfg.kernel_window(), cfg.search());
}

inline SpectrumSlice spectrum_for(const UnitaryBC& u, const RunConfig& cfg) {
  if (cfg.theory_enum() == Theory::schrod) return run_search(SchrodKernel{}, u, cfg);
  return run_search(DiracKernel{cfg.effective_mu0()}, u, cfg);
}

/// Reports unresolved intervals and rejected candidates; true when clean.
inline bool report_failures(const SpectrumSlice& s, const RunConfig& cfg, std::ostream& err) {
  for (const auto& x : s.excluded)
    err << "error: unresolved pole interval (" << cfg.to_output(x.lo) << ", " << cfg.to_output(x.hi) << "]\n";
  for (const auto& r : s.rejected)
    err << "error: candidate root at " << cfg.to_output(r.x) << " failed the residual check (|F| = " << r.residual
        << ")\n";
  for (const auto& w : s.warnings) err << "warning: " << w << "\n";
  return s.ok();
}

inline std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string spectrum_csv(const RunConfig& cfg, const UnitaryBC& u, const SpectrumSlice& s) {
  std::ostringstream o;
  o << "# theory=" << to_string(cfg.theory_enum()) << "\n";
  o << "# bc=" << cfg.bc_spec << "\n";
  o << "# bc_canonical=" << format_bc(u) << "\n";
  o << "# window=(" << g17(cfg.window[0]) << "," << g17(cfg.window[1]) << "]\n";
  o << "# units=" << cfg.units << "\n";
  if (cfg.theory_enum() == Theory::dirac) o << "# mu0=" << g17(cfg.effective_mu0()) << "\n";
  o << "# grid_points=" << s.grid_points << "\n";
  o << "# tol_root=" << g17(cfg.tol_root) << " tol_residual=" << g17(cfg.tol_residual) << "\n";
  o << "# version=" << kVersion << "\n";
  o << "value,multiplicity,residual\n";
  for (const auto& r : s.roots) o << g17(cfg.to_output(r.x)) << "," << r.multiplicity << "," << g17(r.residual) << "\n";
  return o.str();
}

inline int emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.out.empty()) {
    out << text;
    return Exit::ok;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) {
    err << "error: cannot open " << cfg.out << " for writing\n";
    return Exit::usage;
  }
  f << text;
  return Exit::ok;
}

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const UnitaryBC u = parse_bc(cfg.bc_spec);
  const SpectrumSlice s = spectrum_for(u, cfg);
  if (!report_failures(s, cfg, err)) return Exit::numerical;
  if (cfg.format == "csv") return emit(cfg, spectrum_csv(cfg, u, s), out, err);
  json j = header_json(cfg);
  j["eigenvalues"] = eigenvalues_json(cfg, s);
  j["meta"] = meta_json(cfg, u, s.grid_points);
  return emit(cfg, j.dump(2) + "\n", out, err);
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const UnitaryBC u = parse_bc(cfg.bc_spec);
  const IsoClassification c = classify(u, cfg.lambdas);
  json j;
  j["bc"] = cfg.bc_spec;
  j["bc_canonical"] = format_bc(u);
  j["parity_symmetric"] = c.parity_symmetric;
  j["invariant_triple"] = triple_json(c.invariant_triple);
  j["canonical_tag"] = triple_json(c.canonical_tag);
  json orbit = json::array();
  for (const auto& s : c.orbit_samples) orbit.push_back({{"lambda", s.lambda}, {"bc", format_bc(s.bc)}});
  j["orbit_samples"] = orbit;
  j["version"] = kVersion;
  return emit(cfg, j.dump(2) + "\n", out, err);
}

inline int cmd_orbit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const UnitaryBC u = parse_bc(cfg.bc_spec);
  const Window w = cfg.kernel_window();
  const SearchOptions opt = cfg.search();
  const OrbitReport rep = cfg.theory_enum() == Theory::schrod
                              ? orbit_spectra(SchrodKernel{}, u, w, cfg.lambdas, opt)
                              : orbit_spectra(DiracKernel{cfg.effective_mu0()}, u, w, cfg.lambdas, opt);
  bool clean = true;
  for (const auto& m : rep.members) clean = report_failures(m.spectrum, cfg, err) && clean;
  if (!clean) return Exit::numerical;

  json j = header_json(cfg);
  j["all_equal"] = rep.all_equal;
  j["max_gap"] = rep.max_gap;
  json members = json::array();
  for (const auto& m : rep.members)
    members.push_back({{"lambda", m.lambda},
                       {"bc", format_bc(m.bc)},
                       {"spectrum", eigenvalues_json(cfg, m.spectrum)}});
  j["orbit"] = members;
  j["meta"] = meta_json(cfg, u, rep.members.front().spectrum.grid_points);
  return emit(cfg, j.dump(2) + "\n", out, err);
}

inline int cmd_verify(std::ostream& out) {
  return acceptance::run_suite(out) ? Exit::ok : Exit::checks_failed;
}

inline void add_common(CLI::App* sub, RunConfig& cfg, bool with_window) {
  sub->add_option("--bc", cfg.bc_spec, "boundary condition, e.g. qp:alpha=0 or u2:eta=,m0=,m1=,m2=,m3=")->required();
  sub->add_option("--theory", cfg.theory, "dirac or schrod")
      ->check(CLI::IsMember({"dirac", "schrod"}))
      ->capture_default_str();
  if (!with_window) return;
  sub->add_option("--window", cfg.window, "search window (MIN, MAX]")->expected(2)->capture_default_str();
  sub->add_option("--mu0", cfg.mu0, "dimensionless mass mu0 = m c L / hbar (Dirac)")->capture_default_str();
  sub->add_option("--units", cfg.units, "dimensionless or physical")
      ->check(CLI::IsMember({"dimensionless", "physical"}))
      ->capture_default_str();
  sub->add_option("--L", cfg.physical.L, "ring length (physical units)")->capture_default_str();
  sub->add_option("--mass", cfg.physical.mass, "particle mass (physical units)")->capture_default_str();
  sub->add_option("--hbar", cfg.physical.hbar, "reduced Planck constant (physical units)")->capture_default_str();
  sub->add_option("--c", cfg.physical.c, "speed of light (physical units)")->capture_default_str();
  sub->add_option("--density", cfg.density, "grid nodes per 2 pi of window (>= 64)")->capture_default_str();
  sub->add_option("--tol-root", cfg.tol_root, "relative bisection tolerance")->capture_default_str();
  sub->add_option("--tol-residual", cfg.tol_residual, "|F| bound for accepted roots")->capture_default_str();
  sub->add_option("--separation", cfg.separation, "relative distance below which roots merge")
      ->capture_default_str();
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of the free Dirac and Schroedinger operators on a ring with a junction", "ring_spectra"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  RunConfig cfg;

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues in a window");
  add_common(spectrum, cfg, true);
  spectrum->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  spectrum->add_option("--out", cfg.out, "output file (default stdout)");

  auto* classify_cmd = app.add_subcommand("classify", "parity symmetry, invariant triple and orbit samples");
  add_common(classify_cmd, cfg, false);
  classify_cmd->add_option("--samples", cfg.lambdas, "orbit samples (lambda = 2 pi k / n)")->capture_default_str();
  classify_cmd->add_option("--out", cfg.out, "output file (default stdout)");

  auto* orbit = app.add_subcommand("orbit", "spectra along the isospectral orbit");
  add_common(orbit, cfg, true);
  orbit->add_option("--lambdas", cfg.lambdas, "orbit samples (lambda = k pi / n)")->capture_default_str();
  orbit->add_option("--out", cfg.out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite (TAP output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (*spectrum) return cmd_spectrum(cfg, out, err);
    if (*classify_cmd) return cmd_classify(cfg, out, err);
    if (*orbit) return cmd_orbit(cfg, out, err);
    if (*verify) return cmd_verify(out);
  } catch (const BcParseError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::bad_bc_text;
  } catch (const BcValidationError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::bad_bc_value;
  } catch (const PoleError& e) {
    err << "error: " << e.what() << " at " << cfg.to_output(e.at()) << "\n";
    return Exit::numerical;
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << "\n";
    return Exit::numerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  }
  return Exit::usage;
}

}  // namespace ringspec::cli

#endif  // RINGSPEC_TOOLS_CLI_HPP
