// rigidfold command-line driver: design, fold, verify, admissible, export,
// demo. Exit codes: 0 success, 1 usage or schema error, 2 design or
// verification failure.

#include "rigidfold/errors.hpp"
#include "rigidfold/pattern_io.hpp"
#include "rigidfold/pipeline.hpp"
#include "rigidfold/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace rigidfold;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

// Angles on the command line: radians, or degrees with a "deg" suffix.
std::optional<double> parse_angle(const std::string& s) {
  std::string body = s;
  double scale = 1.0;
  if (body.size() > 3 && body.compare(body.size() - 3, 3, "deg") == 0) {
    body.resize(body.size() - 3);
    scale = kPi / 180.0;
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(body, &used);
    if (used != body.size() || !std::isfinite(v)) return std::nullopt;
    return v * scale;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

CLI::Validator angle_validator(bool allow_auto) {
  return CLI::Validator(
      [allow_auto](std::string& s) -> std::string {
        if (allow_auto && s == "auto") return {};
        return parse_angle(s) ? std::string() : "expected an angle in radians or with a 'deg' suffix: " + s;
      },
      allow_auto ? "ANGLE|auto" : "ANGLE");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  out << content;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Pattern files: FOLD (any extension but .svg) or SVG crease drawings.
ImportedFold load_pattern(const std::string& path) {
  const std::string text = read_file(path);
  if (ends_with(path, ".svg")) return ImportedFold{import_svg(text), std::nullopt};
  return import_fold(text);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string check_line(const CheckResult& c) {
  std::string line = std::string(c.pass ? "PASS " : "FAIL ") + c.id + "  residual " + fmt("%.3e", c.residual) +
                     "  tol " + fmt("%.1e", c.tolerance);
  if (!c.detail.empty()) line += "  (" + c.detail + ")";
  return line;
}

std::string halting_summary(const CreasePattern& p, const Trajectory& t) {
  std::ostringstream s;
  s << "halting crease " << t.halting_crease << " in column " << t.halting_column << " (designated "
    << p.halting_column << ") at drive " << fmt("%.9f", t.halting_drive) << " rad, reason " << t.halt_reason << "; "
    << t.states.size() << " states\n";
  return s.str();
}

struct Flags {
  std::optional<int> n, m;
  std::string rho4, alpha11, theta, xi = "60deg";
  std::optional<double> eps;
  int grid = tol::theta_grid;
  int states = tol::trajectory_states;
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  std::string input, state_file;
};

// --- subcommands ------------------------------------------------------------

int cmd_design(const Flags& f) {
  DesignSpecFile spec = parse_design_spec(read_file(f.input));
  const bool parallel = spec.type == "parallel-repeating";
  if (!f.rho4.empty() && !parallel) throw Error(ErrorKind::InvalidArgument, "--rho4 applies to parallel-repeating designs");
  if (!f.alpha11.empty() && parallel) throw Error(ErrorKind::InvalidArgument, "--alpha11 applies to orthodiagonal designs");
  if (f.n) spec.n = f.n;
  if (f.m) spec.m = f.m;
  if (!f.rho4.empty()) spec.rho4 = parse_angle(f.rho4);
  if (!f.alpha11.empty()) spec.alpha11 = parse_angle(f.alpha11);
  if (f.theta == "auto") spec.theta.reset();
  else if (!f.theta.empty()) spec.theta = parse_angle(f.theta);
  if (f.eps) spec.eps = *f.eps;

  VerifyOptions opt;
  opt.states = f.states;
  const DesignOutcome out = run_design(spec, opt);
  const DesignReport& rep = out.report;

  std::vector<std::pair<fs::path, std::string>> files;
  const std::string rjson = report_json(rep), rtext = report_text(rep);
  if (!f.out.empty()) {
    const fs::path dir(f.out);
    files.emplace_back(dir / "report.json", rjson);
    files.emplace_back(dir / "report.txt", rtext);
    if (out.pattern) {
      files.emplace_back(dir / "pattern.fold", export_fold(*out.pattern));
      files.emplace_back(dir / "pattern.svg", export_svg(*out.pattern));
      if (out.halt) files.emplace_back(dir / "folded.fold", export_fold(*out.pattern, &*out.halt));
    }
  }
  // Output paths named in the spec are relative to the spec file.
  const fs::path base = fs::path(f.input).parent_path();
  for (const auto& [kind, path] : spec.outputs) {
    if (kind == "report") files.emplace_back(base / path, rjson);
    else if (out.pattern && kind == "fold") files.emplace_back(base / path, export_fold(*out.pattern));
    else if (out.pattern && kind == "svg") files.emplace_back(base / path, export_svg(*out.pattern));
  }
  for (const auto& [path, content] : files) write_file(path, content);

  if (f.format == "json") std::cout << rjson;
  else if (f.format == "fold" && out.pattern) std::cout << export_fold(*out.pattern);
  else if (f.format == "svg" && out.pattern) std::cout << export_svg(*out.pattern);
  else if (f.format.empty()) std::cout << rtext;

  if (!rep.ok) {
    std::cerr << "design failed: " << rep.failure;
    if (rep.failing_step >= 0) std::cerr << " (step " << rep.failing_step << ")";
    std::cerr << "\n";
    for (const CheckResult& c : rep.checks)
      if (!c.pass) std::cerr << check_line(c) << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_fold(const Flags& f) {
  ImportedFold in = load_pattern(f.input);
  const CreasePattern& p = in.pattern;
  const Trajectory t = sweep_to_halt(p, f.states);
  const FoldedState& halt = t.states.back();
  if (!f.out.empty()) {
    const fs::path dir(f.out);
    write_file(dir / "trajectory.json", trajectory_json(p, t));
    write_file(dir / "halted.fold", export_fold(p, &halt));
  }
  if (f.format == "json") {
    std::cout << trajectory_json(p, t);
  } else if (f.format == "fold") {
    std::cout << export_fold(p, &halt);
  } else if (f.format == "svg") {
    CreasePattern assigned = p;
    assign_from_state(assigned, halt);
    std::cout << export_svg(assigned);
  } else {
    std::cout << halting_summary(p, t);
  }
  return kExitOk;
}

int cmd_verify(const Flags& f) {
  ImportedFold in = load_pattern(f.input);
  if (!f.state_file.empty()) {
    ImportedFold st = load_pattern(f.state_file);
    if (!st.state) throw Error(ErrorKind::SchemaError, "'" + f.state_file + "' holds no folded state");
    if (st.pattern.rows != in.pattern.rows || st.pattern.cols != in.pattern.cols)
      throw Error(ErrorKind::SchemaError, "state file grid does not match the pattern");
    in.state = st.state;
  }
  VerifyOptions opt;
  opt.states = f.states;
  std::vector<CheckResult> checks = verify_pattern(in.pattern, opt);
  if (in.state) {
    CheckResult c = check_closure(in.pattern, *in.state);
    c.id = "state-" + c.id;
    checks.push_back(c);
    CheckResult iso = check_isometry(in.pattern, *in.state);
    iso.id = "state-" + iso.id;
    checks.push_back(iso);
  }
  bool ok = true;
  for (const CheckResult& c : checks) ok = ok && c.pass;

  if (f.format == "json") {
    // Same document as the design report, without the design-level fields.
    DesignReport rep;
    rep.family = in.pattern.family;
    rep.ok = ok;
    rep.checks = checks;
    std::cout << report_json(rep);
  } else {
    std::cout << in.pattern.family << " pattern, " << in.pattern.inner_rows() << " x " << in.pattern.inner_cols()
              << " inner vertices\n";
    for (const CheckResult& c : checks) std::cout << check_line(c) << "\n";
    std::cout << (ok ? "verification passed\n" : "verification FAILED\n");
  }
  if (!ok) {
    for (const CheckResult& c : checks)
      if (!c.pass) std::cerr << check_line(c) << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_admissible(const Flags& f) {
  // A curve file (builtin name or inline curve JSON), or a builtin name.
  const std::string text = fs::exists(f.input) ? read_file(f.input) : f.input;
  const CurveSource src = parse_curve(text);
  const double xi = *parse_angle(f.xi);
  const std::vector<double> thetas = search_theta(src.curve, xi, f.grid);
  if (f.format == "json") {
    ojson j;
    j["xi_deg"] = xi * 180.0 / kPi;
    j["grid"] = f.grid;
    ojson arr = ojson::array();
    for (double t : thetas) arr.push_back(t * 180.0 / kPi);
    j["theta_deg"] = arr;
    std::cout << j.dump(2) << "\n";
  } else {
    for (double t : thetas) std::cout << fmt("%.6f", t * 180.0 / kPi) << "\n";
  }
  if (thetas.empty()) {
    std::cerr << "no admissible rotation on a grid of " << f.grid << " angles\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_export(const Flags& f) {
  const ImportedFold in = load_pattern(f.input);
  const std::string format = f.format.empty() ? "fold" : f.format;
  std::string doc;
  if (format == "fold") doc = export_fold(in.pattern, in.state ? &*in.state : nullptr);
  else if (format == "svg") doc = export_svg(in.pattern);
  else doc = export_pattern_json(in.pattern);
  if (f.out.empty()) std::cout << doc;
  else write_file(f.out, doc);
  return kExitOk;
}

int cmd_demo(const Flags& f) {
  std::vector<std::string> names;
  if (f.input == "all") names = demo_names();
  else names = {f.input};
  bool ok = true;
  ojson all = ojson::array();
  for (const std::string& name : names) {
    const DemoResult r = run_demo(name, f.seed);
    ok = ok && r.ok;
    if (!f.out.empty())
      for (const auto& [file, content] : r.files) write_file(fs::path(f.out) / file, content);
    if (f.format == "json") {
      ojson j;
      j["name"] = r.name;
      j["ok"] = r.ok;
      j["summary"] = r.summary;
      ojson files = ojson::array();
      for (const auto& kv : r.files) files.push_back(kv.first);
      j["files"] = files;
      all.push_back(j);
    } else {
      std::cout << "== " << name << (r.ok ? " (ok)" : " (FAILED)") << "\n" << r.summary;
    }
    if (!r.ok) std::cerr << "demo " << name << " failed\n";
  }
  if (f.format == "json") std::cout << all.dump(2) << "\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design, fold and verify rigid-origami crease patterns that halt in a target shape"};
  app.require_subcommand(1);
  Flags f;

  const auto add_format = [&f](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", f.format, "Output format on stdout")->check(CLI::IsMember(allowed));
  };
  const auto add_states = [&f](CLI::App* sub) {
    sub->add_option("--states", f.states, "Number of states sampled from flat to the halt")
        ->check(CLI::Range(1, 100000));
  };

  CLI::App* design = app.add_subcommand("design", "Build, fold and verify a design spec");
  design->add_option("spec", f.input, "Design spec (JSON)")->required();
  design->add_option("-o,--out", f.out, "Output directory for pattern, drawing and reports");
  design->add_option("--n", f.n, "Datum vertices")->check(CLI::Range(1, 10000));
  design->add_option("--m", f.m, "Target staircase corners")->check(CLI::Range(1, 10000));
  design->add_option("--rho4", f.rho4, "Folding angle of the closing crease (parallel repeating)")
      ->check(angle_validator(false));
  design->add_option("--alpha11", f.alpha11, "Free grid angle (orthodiagonal)")->check(angle_validator(false));
  design->add_option("--theta", f.theta, "Admissibility rotation, or 'auto'")->check(angle_validator(true));
  design->add_option("--eps", f.eps, "Hausdorff budget")->check(CLI::NonNegativeNumber);
  add_states(design);
  add_format(design, {"fold", "svg", "json"});

  CLI::App* fold = app.add_subcommand("fold", "Simulate the folding motion of a pattern to its halt");
  fold->add_option("pattern", f.input, "Pattern file (.fold or .svg)")->required()->check(CLI::ExistingFile);
  fold->add_option("-o,--out", f.out, "Output directory for trajectory.json and halted.fold");
  add_states(fold);
  add_format(fold, {"fold", "svg", "json"});

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite on a pattern");
  verify->add_option("pattern", f.input, "Pattern file (.fold or .svg)")->required()->check(CLI::ExistingFile);
  verify->add_option("state", f.state_file, "Folded-state FOLD file")->check(CLI::ExistingFile);
  add_states(verify);
  add_format(verify, {"json"});

  CLI::App* adm = app.add_subcommand("admissible", "List the admissible rotations of a planar curve");
  adm->add_option("curve", f.input, "Curve file or builtin curve name")->required();
  adm->add_option("--xi", f.xi, "Shear angle")->check(angle_validator(false));
  adm->add_option("--grid", f.grid, "Number of rotations sampled on [0, 2pi)")->check(CLI::Range(1, 1000000));
  add_format(adm, {"json"});

  CLI::App* exp = app.add_subcommand("export", "Convert a pattern file");
  exp->add_option("pattern", f.input, "Pattern file (.fold or .svg)")->required()->check(CLI::ExistingFile);
  exp->add_option("-o,--out", f.out, "Output file (stdout when omitted)");
  add_format(exp, {"fold", "svg", "json"});

  CLI::App* demo = app.add_subcommand("demo", "Run a golden configuration");
  std::vector<std::string> demo_choices = demo_names();
  demo_choices.push_back("all");
  demo->add_option("name", f.input, "Demo name")->required()->check(CLI::IsMember(demo_choices));
  demo->add_option("-o,--out", f.out, "Output directory for the demo files");
  demo->add_option("--seed", f.seed, "Seed of the random demo");
  add_format(demo, {"json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*design) return cmd_design(f);
    if (*fold) return cmd_fold(f);
    if (*verify) return cmd_verify(f);
    if (*adm) return cmd_admissible(f);
    if (*exp) return cmd_export(f);
    if (*demo) return cmd_demo(f);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::SchemaError:
      case ErrorKind::InvalidArgument:
      case ErrorKind::NotQuadGrid:
        return kExitUsage;
      default:
        return kExitFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
