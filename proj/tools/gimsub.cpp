// gimsub: refine manifold-valued curves with geodesic-inductive-mean
// subdivision schemes, probe their contractivity bounds, and export samples.

#include <CLI11.hpp>

#include "gim/analysis.hpp"
#include "gim/curve_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundViolated = 1;
constexpr int kExitValidation = 2;
constexpr int kExitGeometry = 3;
constexpr double kBoundSlack = 1e-9;

struct SchemeArgs {
  std::string scheme = "fourpoint";
  double omega = 1.0 / 16.0;
  std::string mask_path;
  std::optional<double> mu;

  void attach(CLI::App& cmd) {
    cmd.add_option("--scheme", scheme, "fourpoint | sixpoint_dd | bspline1..bspline4");
    cmd.add_option("--omega", omega, "fourpoint tension (0 <= omega < 1/8)");
    cmd.add_option("--mask", mask_path, "JSON mask file (overrides --scheme)");
    cmd.add_option("--mu", mu, "claimed contractivity factor (overrides the catalog value)");
  }

  gim::GimScheme build() const {
    gim::GimScheme s = mask_path.empty() ? gim::builtin(scheme, {omega})
                                         : gim::scheme_from_config(gim::read_mask_file(mask_path));
    if (mu) s.mu = *mu;
    return s;
  }

  std::string label() const { return mask_path.empty() ? scheme : mask_path; }
};

// Structured error line on stderr: error[Name] key=value ...: message
int report(const gim::Error& e, const std::string& scheme) {
  std::cerr << "error[" << e.name() << "] scheme=" << scheme;
  if (const auto* r = dynamic_cast<const gim::RefineError*>(&e)) {
    std::cerr << " cause=" << r->cause() << " level=" << r->level() << " index=" << r->index() << ": "
              << r->detail() << '\n';
  } else {
    std::cerr << ": " << e.what() << '\n';
  }
  return dynamic_cast<const gim::GeometryError*>(&e) ? kExitGeometry : kExitValidation;
}

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p.replace_extension();
  p += ".diagnostics.csv";
  return p;
}

struct RefineArgs {
  std::string input;
  std::string out;
  std::string diagnostics;
  int levels = 1;
  int samples = gim::kDefaultSampleCount;
};

int run_refine(const SchemeArgs& sa, const RefineArgs& ra) {
  const gim::GimScheme scheme = sa.build();
  const gim::CurveSequence curve = gim::read_curve_file(ra.input);
  const auto chain = gim::refine_chain(scheme, curve, ra.levels);
  gim::write_curve_file(ra.out, chain.back());

  const auto report = gim::diagnose(scheme, chain, ra.samples);
  const std::filesystem::path diag = ra.diagnostics.empty() ? sidecar_path(ra.out) : std::filesystem::path(ra.diagnostics);
  std::ofstream csv(diag);
  if (!csv) throw gim::FormatError("cannot write " + diag.string());
  gim::write_diagnostics_csv(csv, report);

  std::cout << "refined " << curve.size() << " -> " << chain.back().size() << " points (" << ra.levels
            << " levels, scheme " << scheme.name << ")\n"
            << "wrote " << ra.out << " and " << diag.string() << '\n';
  return kExitOk;
}

struct ProbeArgs {
  std::string manifold = "sphere";
  int dim = 3;
  int trials = 200;
  std::uint64_t seed = 0;
  int levels = 6;
};

gim::ManifoldKind probe_kind(const ProbeArgs& pa) {
  return gim::ManifoldKind::parse(pa.manifold, pa.manifold == "rotations3d" ? 3 : pa.dim);
}

std::string cell(std::optional<double> v) { return v ? gim::format_double(*v) : std::string("n/a"); }

int run_probe(const SchemeArgs& sa, const ProbeArgs& pa) {
  const gim::GimScheme scheme = sa.build();
  const gim::ManifoldKind kind = probe_kind(pa);
  const gim::ProbeOptions opts{pa.trials, pa.seed};
  const auto contraction = gim::contractivity_probe(scheme, kind, opts);
  const auto displacement = gim::displacement_probe(scheme, kind, opts);
  const double c_theory = scheme.displacement_bound();

  bool violated = false;
  const bool mu_ok = !scheme.mu || contraction.max_ratio <= *scheme.mu + kBoundSlack;
  const bool c_ok = displacement.max_ratio <= c_theory + kBoundSlack;
  violated |= !mu_ok || !c_ok;
  if (contraction.evaluated == 0 || displacement.evaluated == 0) violated = true;

  std::cout << std::left << std::setw(14) << "scheme" << std::setw(16) << "manifold" << std::setw(20) << "mu"
            << std::setw(24) << "max_ratio" << std::setw(20) << "C" << std::setw(24) << "max_disp"
            << std::setw(22) << "worst_seed" << "trials/skipped/failed\n";
  std::cout << std::setw(14) << scheme.name << std::setw(16) << kind.to_string() << std::setw(20)
            << cell(scheme.mu) << std::setw(24) << gim::format_double(contraction.max_ratio) << std::setw(20)
            << gim::format_double(c_theory) << std::setw(24) << gim::format_double(displacement.max_ratio)
            << std::setw(22) << contraction.worst_seed << pa.trials << '/' << contraction.skipped << '/'
            << contraction.failed << '\n';
  std::cout << "contractivity: " << (scheme.mu ? (mu_ok ? "ok" : "VIOLATED") : "no claimed mu") << '\n'
            << "displacement:  " << (c_ok ? "ok" : "VIOLATED") << '\n';

  if (pa.levels >= 2) {
    gim::Rng rng(gim::trial_seed(pa.seed, -1));
    const gim::CurveSequence curve = gim::random_probe_curve(kind, rng);
    const auto conv = gim::convergence_probe(scheme, curve, pa.levels);
    bool conv_ok = true;
    std::cout << "convergence (" << curve.size() << " points, " << pa.levels << " levels):\n";
    for (std::size_t k = 0; k < conv.gaps.size(); ++k) {
      std::cout << "  g_" << k << " = " << gim::format_double(conv.gaps[k]);
      if (!conv.envelope.empty()) {
        const bool ok = conv.gaps[k] <= conv.envelope[k] + kBoundSlack;
        conv_ok &= ok;
        std::cout << "  envelope " << gim::format_double(conv.envelope[k]) << (ok ? "" : "  VIOLATED");
      }
      std::cout << '\n';
    }
    violated |= !conv_ok;
  }
  return violated ? kExitBoundViolated : kExitOk;
}

struct SampleArgs {
  std::string input;
  std::string out;
  int levels = 4;
  int samples = 0;
  std::optional<double> t0;
  std::optional<double> t1;
};

int run_sample(const SchemeArgs& sa, const SampleArgs& sm) {
  const gim::GimScheme scheme = sa.build();
  const gim::CurveSequence curve = gim::read_curve_file(sm.input);
  const gim::CurveSequence fine = gim::refine(scheme, curve, sm.levels);
  const double span = gim::parameter_span(curve, 0);
  const double t0 = sm.t0.value_or(0.0);
  const double t1 = sm.t1.value_or(span);
  const int count = sm.samples > 0 ? sm.samples : static_cast<int>(2 * curve.size() + 1);
  if (count < 2) throw gim::ParameterOutOfRange("--samples must be >= 2");

  std::ofstream csv(sm.out);
  if (!csv) throw gim::FormatError("cannot write " + sm.out);
  csv << 't';
  for (int c = 0; c < curve.kind().coord_count(); ++c) csv << ",c" << c;
  csv << '\n';
  int omitted = 0;
  for (int s = 0; s < count; ++s) {
    const double t = t0 + (t1 - t0) * s / (count - 1);
    if (curve.boundary == gim::Boundary::clamped && (t < 0.0 || t > span)) {
      ++omitted;
      continue;
    }
    const auto p = gim::pg_eval(fine, sm.levels, t);
    csv << gim::format_double(t);
    for (Eigen::Index c = 0; c < p.coords().size(); ++c) csv << ',' << gim::format_double(p.coords()[c]);
    csv << '\n';
  }
  if (omitted > 0) {
    std::cerr << "warning: omitted " << omitted << " samples outside the clamped range [0, "
              << gim::format_double(span) << "]\n";
  }
  std::cout << "wrote " << (count - omitted) << " samples to " << sm.out << '\n';
  return kExitOk;
}

int run_schemes() {
  for (const auto& e : gim::catalog()) std::cout << std::left << std::setw(14) << e.name << e.description << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manifold-valued subdivision with geodesic inductive means"};
  app.require_subcommand(1);

  SchemeArgs refine_scheme, probe_scheme, sample_scheme;
  RefineArgs ra;
  ProbeArgs pa;
  SampleArgs sm;

  auto* refine = app.add_subcommand("refine", "refine a curve file and write diagnostics");
  refine->add_option("input", ra.input, "input curve JSON")->required();
  refine->add_option("--levels", ra.levels, "refinement levels")->check(CLI::NonNegativeNumber);
  refine->add_option("--out", ra.out, "output curve JSON")->required();
  refine->add_option("--diagnostics", ra.diagnostics, "diagnostics CSV (default: <out>.diagnostics.csv)");
  refine->add_option("--samples", ra.samples, "samples per period for the Cauchy gap")->check(CLI::PositiveNumber);
  refine_scheme.attach(*refine);

  auto* probe = app.add_subcommand("probe", "check contractivity and displacement bounds on random data");
  probe->add_option("--manifold", pa.manifold, "euclidean | sphere | rotations3d | spd");
  probe->add_option("--dim", pa.dim, "dimension (euclidean), ambient dimension (sphere), matrix size (spd)");
  probe->add_option("--trials", pa.trials, "random curves per probe")->check(CLI::PositiveNumber);
  probe->add_option("--seed", pa.seed, "base seed");
  probe->add_option("--levels", pa.levels, "levels for the convergence check (0 disables)");
  probe_scheme.attach(*probe);

  auto* sample = app.add_subcommand("sample", "write piecewise geodesic samples of the refined curve");
  sample->add_option("input", sm.input, "input curve JSON")->required();
  sample->add_option("--levels", sm.levels, "refinement levels")->check(CLI::NonNegativeNumber);
  sample->add_option("--samples", sm.samples, "number of samples (default 2 * points + 1)");
  sample->add_option("--out", sm.out, "output CSV")->required();
  sample->add_option("--t0", sm.t0, "first parameter (default 0)");
  sample->add_option("--t1", sm.t1, "last parameter (default: end of the curve)");
  sample_scheme.attach(*sample);

  auto* schemes = app.add_subcommand("schemes", "list built-in schemes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  const SchemeArgs* active = refine->parsed() ? &refine_scheme : probe->parsed() ? &probe_scheme : &sample_scheme;
  try {
    if (refine->parsed()) return run_refine(refine_scheme, ra);
    if (probe->parsed()) return run_probe(probe_scheme, pa);
    if (sample->parsed()) return run_sample(sample_scheme, sm);
    if (schemes->parsed()) return run_schemes();
  } catch (const gim::Error& e) {
    return report(e, active->label());
  }
  return kExitValidation;
}
