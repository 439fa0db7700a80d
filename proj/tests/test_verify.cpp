#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "slicegrav/verify.hpp"

using namespace slicegrav;

namespace {

SuiteConfig small_config() {
  SuiteConfig config;
  config.samples = 3;
  config.seed = 12345;
  return config;
}

}  // namespace

TEST_CASE("symmetric relative error") {
  const Signature sig(2, 2);
  const Multivector a = Multivector::basis_vector(sig, 1) * 3.0 + Multivector::scalar(sig, 1.0);
  CHECK(symmetric_rel_error(a, a) == doctest::Approx(0.0));
  CHECK(symmetric_rel_error(a, -a) == doctest::Approx(1.0));
  CHECK(symmetric_rel_error(Multivector(sig), Multivector(sig)) == doctest::Approx(0.0));
}

TEST_CASE("identity word intertwines trivially") {
  CheckCase check;
  check.id = "identity";
  check.kind = CheckKind::Intertwining;
  check.variant = WeightVariant::OddL;
  check.sig = Signature(2, 2);
  check.l = 1;
  check.word = GeneratorWord{};
  check.samples = 5;
  check.tolerance = 1e-12;
  const CheckReport report = run_check(check, 99, 1);
  CHECK(report.error.empty());
  CHECK(report.pass);
  CHECK(report.max_rel < 1e-12);
  CHECK(report.residuals.size() == 5);
}

TEST_CASE("each check kind produces small residuals") {
  CheckCase base;
  base.sig = Signature(2, 2);
  base.samples = 3;
  base.tolerance = 1e-6;

  CheckCase thm = base;
  thm.kind = CheckKind::Intertwining;
  thm.word = GeneratorWord{{Inversion{}}};
  thm.l = 1;

  CheckCase even = base;
  even.kind = CheckKind::Intertwining;
  even.variant = WeightVariant::EvenL;
  even.l = 2;
  even.word = GeneratorWord{{Dilation{1.3}}};

  CheckCase dagger = base;
  dagger.kind = CheckKind::Intertwining;
  dagger.variant = WeightVariant::GDagger;
  dagger.word = GeneratorWord{{Reflection{{1.0, 0.0}}}};

  CheckCase cor = base;
  cor.kind = CheckKind::Corollary;
  cor.variant = WeightVariant::Paravector;
  cor.sig = Signature(2, 0);
  cor.paravector = true;
  cor.word = GeneratorWord{{Inversion{}}};

  CheckCase la = base;
  la.kind = CheckKind::Lemma41a;
  la.param_m = 3;
  CheckCase lb = base;
  lb.kind = CheckKind::Lemma41b;
  lb.param_k = 2;
  CheckCase lc = base;
  lc.kind = CheckKind::Lemma41c;
  lc.param_k = 1;
  CheckCase ld = base;
  ld.kind = CheckKind::Lemma41d;
  ld.param_k = 2;
  CheckCase le = base;
  le.kind = CheckKind::Lemma41e;
  CheckCase pn = base;
  pn.kind = CheckKind::ProofNormShift;
  pn.param_m = 3;
  CheckCase pv = base;
  pv.kind = CheckKind::ProofVectorShift;
  pv.param_m = 3;
  CheckCase cr = base;
  cr.kind = CheckKind::ChainRule;

  CheckCase nul = base;
  nul.kind = CheckKind::NullSolutions;
  nul.variant = WeightVariant::Paravector;
  nul.sig = Signature(2, 0);
  nul.paravector = true;
  nul.tolerance = 1e-9;

  for (const CheckCase& check :
       {thm, even, dagger, cor, la, lb, lc, ld, le, pn, pv, cr, nul}) {
    const CheckReport report = run_check(check, 7, 1);
    INFO("kind index ", static_cast<int>(check.kind));
    CHECK(report.error.empty());
    CHECK(report.pass);
  }
}

TEST_CASE("checks are deterministic and thread-count invariant") {
  CheckCase check;
  check.kind = CheckKind::Intertwining;
  check.sig = Signature(2, 2);
  check.l = 1;
  check.word = GeneratorWord{{Inversion{}, Dilation{1.4}}};
  check.samples = 8;
  check.tolerance = 1e-6;

  const CheckReport a = run_check(check, 2024, 1);
  const CheckReport b = run_check(check, 2024, 1);
  const CheckReport c = run_check(check, 2024, 4);
  CHECK(a.max_rel == b.max_rel);
  CHECK(a.median_rel == b.median_rel);
  CHECK(a.max_rel == c.max_rel);
  CHECK(a.median_rel == c.median_rel);
  for (std::size_t i = 0; i < a.residuals.size(); ++i) {
    CHECK(a.residuals[i].rel_error == c.residuals[i].rel_error);
    CHECK(a.residuals[i].point == c.residuals[i].point);
  }

  const CheckReport other = run_check(check, 2025, 1);
  CHECK(other.max_rel != a.max_rel);
}

TEST_CASE("negative controls require a nontrivial word") {
  // With the identity word |c x + d| = 1, so shifting the denominator
  // exponent changes nothing and the control must report failure.
  CheckCase control;
  control.kind = CheckKind::Intertwining;
  control.sig = Signature(2, 2);
  control.l = 1;
  control.word = GeneratorWord{};
  control.samples = 5;
  control.negative = true;
  control.failure_floor = 1e-2;
  control.perturbation = Perturbation::ExponentShift;
  const CheckReport report = run_check(control, 3, 1);
  CHECK_FALSE(report.pass);
  CHECK(report.median_rel < 1e-12);

  // With an inversion word the same perturbation produces O(1) residuals.
  control.word = GeneratorWord{{Inversion{}}};
  const CheckReport fired = run_check(control, 3, 1);
  CHECK(fired.pass);
  CHECK(fired.median_rel > 1e-2);
}

TEST_CASE("suite filtering") {
  SuiteConfig config = small_config();
  const std::size_t all = build_cases(config).size();
  CHECK(all > 20);

  config.suites = {"thm5"};
  const std::vector<CheckCase> thm5 = build_cases(config);
  CHECK(thm5.size() == 4);  // one per default generator
  for (const CheckCase& c : thm5) {
    CHECK(c.id.rfind("Thm5.1", 0) == 0);
    CHECK(c.variant == WeightVariant::GDagger);
  }

  config.suites = {"thm5", "controls"};
  const std::vector<CheckCase> two = build_cases(config);
  CHECK(two.size() == 8);  // 4 G-dagger cases + 4 negative controls
  CHECK(two.size() < all);
}

TEST_CASE("suite reports and aggregation") {
  SuiteConfig config = small_config();
  config.suites = {"thm5", "controls"};
  std::vector<CheckReport> reports = run_suite(config);
  CHECK(reports.size() == 8);
  CHECK(all_ok(reports));

  const std::string text = report_text(reports);
  CHECK(text.find("[PASS]") != std::string::npos);
  CHECK(text.find("[FAIL]") == std::string::npos);

  reports.front().pass = false;
  CHECK_FALSE(all_ok(reports));
}

TEST_CASE("machine reports are byte identical for equal seeds") {
  SuiteConfig config = small_config();
  config.suites = {"thm5", "null", "controls"};
  nlohmann::json a = report_json(config, run_suite(config));
  nlohmann::json b = report_json(config, run_suite(config));
  a.erase("timing");
  b.erase("timing");
  CHECK(a.dump() == b.dump());

  config.seed += 1;
  nlohmann::json c = report_json(config, run_suite(config));
  c.erase("timing");
  CHECK(a.dump() != c.dump());
}
