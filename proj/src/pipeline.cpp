#include "rigidfold/pipeline.hpp"

#include "rigidfold/errors.hpp"
#include "rigidfold/random_design.hpp"

#include <cstdio>
#include <sstream>

namespace rigidfold {

namespace {

bool is_input_error(ErrorKind k) { return k == ErrorKind::SchemaError || k == ErrorKind::InvalidArgument; }

template <class Design>
DesignOutcome finish(Design& d, const VerifyOptions& opt) {
  DesignOutcome out;
  verify_design(d, opt);
  out.pattern = d.pattern;
  if (d.trajectory) out.halt = d.trajectory->states.back();
  out.report = d.report;
  out.report.ok = d.report.all_checks_pass();
  if (!out.report.ok) out.report.failure = "verification failed";
  return out;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

void add_pattern_files(DemoResult& r) {
  const DesignOutcome& d = *r.design;
  r.files[r.name + ".report.json"] = report_json(d.report);
  if (!d.pattern) return;
  r.files[r.name + ".fold"] = export_fold(*d.pattern);
  if (d.halt) r.files[r.name + ".folded.fold"] = export_fold(*d.pattern, &*d.halt);
  r.files[r.name + ".svg"] = export_svg(*d.pattern);
}

}  // namespace

DesignOutcome run_design(const DesignSpecFile& spec, const VerifyOptions& opt) {
  try {
    if (spec.type == "parallel-repeating") {
      ParallelDesign d = build_pattern(to_parallel_spec(spec));
      return finish(d, opt);
    }
    if (spec.type == "orthodiagonal") {
      OrthoDesign d = build_ortho_pattern(to_ortho_spec(spec));
      return finish(d, opt);
    }
    throw Error(ErrorKind::SchemaError, "unknown design type '" + spec.type + "'");
  } catch (const Error& e) {
    if (is_input_error(e.kind())) throw;
    DesignOutcome out;
    out.report.family = spec.type;
    out.report.eps = spec.eps;
    out.report.ok = false;
    out.report.failure = e.what();
    out.report.failing_step = e.index();
    return out;
  }
}

std::vector<std::string> demo_names() { return {"fig3", "fig4", "fig5", "fig7", "random"}; }

std::string demo_spec(const std::string& name) {
  if (name == "fig4")
    return R"({"type": "parallel-repeating", "description": "single inner row realising the space datum",)"
           R"( "datum": "fig4-spiralish", "target": "fig5-exp", "n": 9, "m": 1, "rho4": 150, "theta": 73,)"
           R"( "angle_unit": "deg"})"
           "\n";
  if (name == "fig5")
    return R"({"type": "parallel-repeating", "description": "space datum and exponential target",)"
           R"( "datum": "fig4-spiralish", "target": "fig5-exp", "n": 9, "m": 9, "rho4": 150, "theta": 73,)"
           R"( "angle_unit": "deg"})"
           "\n";
  if (name == "fig7")
    return R"({"type": "orthodiagonal", "description": "sine datum in a tube and t - ln t target",)"
           R"( "datum": "fig7-sine", "target": "fig7-tlnt", "n": 9, "m": 9, "theta": 30, "eps": 0.2,)"
           R"( "angle_unit": "deg"})"
           "\n";
  throw Error(ErrorKind::InvalidArgument, "no design spec for demo '" + name + "'");
}

DemoResult run_demo(const std::string& name, std::uint64_t seed) {
  DemoResult r;
  r.name = name;
  std::ostringstream sum;
  if (name == "fig3") {
    const PolyCurve f = builtin_curve("fig3-parabola");
    const AffineParams aff(70.0 * kPi / 180.0, 60.0 * kPi / 180.0);
    const bool adm = is_admissible(f, aff).admissible;
    const Partition s16 = staircase(f, aff, 16), s8 = staircase(f, aff, 8);
    const double h16 = hausdorff(s16.points, f.samples), h8 = hausdorff(s8.points, f.samples);
    std::vector<Vec2> curve, stair;
    for (std::size_t i = 0; i < f.size(); i += 10) curve.push_back(f.xy(i));
    for (const auto& p : s16.points) stair.push_back(p.head<2>());
    r.files["fig3.svg"] = export_svg_overlays({{"curve", curve}, {"staircase", stair}});
    sum << "parabola admissible at theta=70deg, xi=60deg: " << (adm ? "yes" : "no") << "\n";
    sum << "staircase n=16 Hausdorff " << fmt("%.6g", h16) << ", n=8 Hausdorff " << fmt("%.6g", h8) << "\n";
    r.ok = adm && h16 < h8;
    r.summary = sum.str();
    return r;
  }
  if (name == "random") {
    std::mt19937_64 rng(seed);
    int attempts = 0;
    ParallelDesign d = random_parallel_design(rng, 100, &attempts);
    r.design = finish(d, VerifyOptions{});
    sum << "random design (seed " << seed << ", " << attempts << " draws): " << d.pattern.inner_rows() << " x "
        << d.pattern.inner_cols() << " inner vertices\n";
  } else {
    const std::string spec_text = demo_spec(name);
    r.files[name + ".spec.json"] = spec_text;
    const DesignSpecFile spec = parse_design_spec(spec_text);
    if (name == "fig5") {
      // Budget: twice the discretisation error of the nine-corner staircase.
      ParallelDesign d = build_pattern(to_parallel_spec(spec));
      d.report.eps = 2.0 * std::max(d.report.eps1, d.report.eps2);
      r.design = finish(d, VerifyOptions{});
    } else {
      r.design = run_design(spec);
    }
  }
  const DesignReport& rep = r.design->report;
  sum << "family " << rep.family << ": " << (rep.ok ? "ok" : "FAILED") << "\n";
  if (!rep.failure.empty()) sum << "failure: " << rep.failure << "\n";
  sum << "eps1 " << fmt("%.6g", rep.eps1_folded) << ", eps2 " << fmt("%.6g", rep.eps2_folded) << " (budget "
      << fmt("%.6g", rep.eps) << ")\n";
  sum << "halting crease " << rep.halting_crease << " in column " << rep.halting_column_measured << " at drive "
      << fmt("%.9f", rep.halting_drive) << " rad (" << rep.halting_reason << ")\n";
  r.summary = sum.str();
  r.ok = rep.ok;
  add_pattern_files(r);
  return r;
}

}  // namespace rigidfold
