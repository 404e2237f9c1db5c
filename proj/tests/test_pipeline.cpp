#include "support.hpp"

#include "rigidfold/errors.hpp"

#include <doctest.h>

using namespace rigidfold;

TEST_SUITE("pipeline") {
  TEST_CASE("every demo succeeds and is deterministic") {
    for (const std::string& name : demo_names()) {
      const DemoResult a = run_demo(name, 5);
      INFO(name, "\n", a.summary);
      CHECK(a.ok);
      CHECK_FALSE(a.files.empty());
      const DemoResult b = run_demo(name, 5);
      CHECK(a.files == b.files);
      CHECK(a.summary == b.summary);
    }
    CHECK_THROWS_AS(run_demo("fig9"), Error);
    CHECK_THROWS_AS(demo_spec("fig3"), Error);
  }

  TEST_CASE("demo files round-trip through the readers") {
    const DemoResult r = run_demo("fig5");
    REQUIRE(r.files.count("fig5.fold"));
    REQUIRE(r.files.count("fig5.svg"));
    CHECK(export_fold(import_fold(r.files.at("fig5.fold")).pattern) == r.files.at("fig5.fold"));
    CHECK(export_svg(import_svg(r.files.at("fig5.svg"))) == r.files.at("fig5.svg"));
    const ImportedFold folded = import_fold(r.files.at("fig5.folded.fold"));
    REQUIRE(folded.state.has_value());
    CHECK(export_fold(folded.pattern, &*folded.state) == r.files.at("fig5.folded.fold"));
  }

  TEST_CASE("design failures are reported, not thrown") {
    DesignSpecFile f = parse_design_spec(demo_spec("fig5"));
    f.theta = 10 * kPi / 180;
    const DesignOutcome o = run_design(f);
    CHECK_FALSE(o.report.ok);
    CHECK_FALSE(o.pattern.has_value());
    CHECK(o.report.failure.find("NotAdmissible") != std::string::npos);

    f = parse_design_spec(demo_spec("fig5"));
    f.rho4 = 1e-9;
    const DesignOutcome h = run_design(f);
    CHECK_FALSE(h.report.ok);
    CHECK(h.report.failing_step == 1);
  }

  TEST_CASE("argument errors are thrown") {
    DesignSpecFile f = parse_design_spec(demo_spec("fig7"));
    f.alpha11 = kPi / 2;
    try {
      run_design(f);
      FAIL("expected InvalidArgument");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidArgument);
    }
  }

  TEST_CASE("successful design carries the halting state") {
    const DesignOutcome o = run_design(parse_design_spec(demo_spec("fig7")));
    CHECK(o.report.ok);
    REQUIRE(o.pattern.has_value());
    REQUIRE(o.halt.has_value());
    CHECK(o.halt->halted);
    CHECK(o.report.halting_column_measured == 1);
    CHECK(o.report.all_checks_pass());
  }
}
