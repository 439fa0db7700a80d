#ifndef SLICEGRAV_VERIFY_HPP
#define SLICEGRAV_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "slicegrav/moebius.hpp"
#include "slicegrav/weights.hpp"

namespace slicegrav {

enum class CheckKind {
  Intertwining,     // Thm 3.1 / iterated odd / iterated even / G-dagger
  Corollary,        // paravector operator
  Lemma41a,
  Lemma41b,
  Lemma41c,
  Lemma41d,
  Lemma41e,
  ProofNormShift,   // G (|x|^{-m} f) expansion
  ProofVectorShift, // G ((x/|x|^m) f) expansion
  ChainRule,        // G_x = |y|^2 G_y - 2 y E_y under inversion
  NullSolutions,    // paravector powers annihilated by the paravector operator
};

enum class Perturbation {
  None,
  ExponentShift,     // right-weight denominator exponent + 1
  DropReversion,     // right weight uses c x + d unreversed
  WrongParityWeights,
  IteratedGDagger,   // (G-dagger)^2 with the l = 1 weights
};

struct CheckCase {
  std::string id;
  CheckKind kind = CheckKind::Intertwining;
  WeightVariant variant = WeightVariant::OddL;
  Signature sig;
  bool paravector = false;
  int l = 1;
  GeneratorWord word;
  int degree = 4;
  int samples = 100;
  double delta = 0.1;
  double tolerance = 1e-8;
  /// Negative controls pass when the median residual exceeds the floor.
  bool negative = false;
  double failure_floor = 1e-2;
  Perturbation perturbation = Perturbation::None;
  int param_m = 0;  // Lemma (a) / proof identities
  int param_k = 0;  // Lemma (b)-(d)
  int max_grade = 2;
  int null_max_power = 4;
};

struct Residual {
  Multivector lhs;
  Multivector rhs;
  double rel_error = 0.0;
  std::vector<double> point;
  std::uint64_t sample_seed = 0;
};

/// Symmetric relative error ||lhs-rhs|| / (||lhs|| + ||rhs|| + eps).
double symmetric_rel_error(const Multivector& lhs, const Multivector& rhs);

struct CheckReport {
  CheckCase check;
  std::vector<Residual> residuals;
  double max_rel = 0.0;
  double median_rel = 0.0;
  bool pass = false;
  double wall_ms = 0.0;
  /// Nonempty when a sample raised instead of producing a residual.
  std::string error;
};

struct SuiteConfig {
  int p = 2;
  int q = 2;
  int max_l = 4;
  std::uint64_t seed = 42;
  int samples = 100;
  int degree = 4;
  double delta = 0.1;
  double tol_l1 = 1e-8;
  double tol_l3 = 1e-6;
  double tol_l5 = 1e-5;
  /// Empty = everything.  Known ids: thm3, thm4odd, thm4even, thm5, cor,
  /// lemma, proof, chain, null, controls.
  std::vector<std::string> suites;
  bool full_grades = false;
  int threads = 0;  // 0 = hardware default
};

CheckReport run_check(const CheckCase& check, std::uint64_t seed, int threads);

std::vector<CheckCase> build_cases(const SuiteConfig& config);
std::vector<CheckReport> run_suite(const SuiteConfig& config);

bool all_ok(const std::vector<CheckReport>& reports);

/// Machine-readable report; deterministic given (config, reports) except
/// for the separate "timing" object.
nlohmann::json report_json(const SuiteConfig& config, const std::vector<CheckReport>& reports);
std::string report_text(const std::vector<CheckReport>& reports);

}  // namespace slicegrav

#endif
