#pragma once
// End-to-end runs shared by the command-line tool and the acceptance suite:
// design spec -> pattern -> fold to the halt -> verification, and the golden
// demo configurations.

#include "rigidfold/pattern_io.hpp"
#include "rigidfold/verify.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rigidfold {

struct DesignOutcome {
  std::optional<CreasePattern> pattern;  // empty when the design failed
  std::optional<FoldedState> halt;       // halting state of the motion
  DesignReport report;                   // ok == false carries the failure
};

// Builds, folds and verifies a design. Design failures (no solution, crease
// intersection, inadmissible target, ...) are recorded in the report with the
// failing step; schema and argument errors are thrown.
DesignOutcome run_design(const DesignSpecFile& spec, const VerifyOptions& opt = {});

// Golden configurations: "fig3" (admissibility and staircases of the
// parabola), "fig4" (single inner row on the space datum), "fig5" (parallel
// repeating, exponential target), "fig7" (orthodiagonal, sine datum) and
// "random" (a seeded random parallel repeating design).
std::vector<std::string> demo_names();
// Golden design spec JSON of a pattern demo (fig4, fig5, fig7).
std::string demo_spec(const std::string& name);

struct DemoResult {
  std::string name;
  bool ok = false;
  std::optional<DesignOutcome> design;
  std::map<std::string, std::string> files;  // file name -> content
  std::string summary;                       // human-readable lines
};

DemoResult run_demo(const std::string& name, std::uint64_t seed = 0);

}  // namespace rigidfold
