#include "slicegrav/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "slicegrav/operators.hpp"
#include "slicegrav/polynomial.hpp"

namespace slicegrav {

namespace {

using nlohmann::json;

/// The identity map as a grade-1-valued jet (the variable x itself).
FunctionJet identity_jet(const MoebiusConvention& conv, const std::vector<double>& base,
                         int order) {
  const Signature sig = conv.sig;
  FunctionJet out(sig, base, order);
  for (int axis = 0; axis < conv.nvars(); ++axis) {
    Multivector dir = conv.paravector
                          ? (axis == 0 ? Multivector::scalar(sig, 1.0)
                                       : Multivector::basis_vector(sig, axis))
                          : Multivector::basis_vector(sig, axis + 1);
    out += FunctionJet::coordinate(sig, base, order, axis).left_mul(dir);
  }
  return out;
}

FunctionJet norm_sq_jet(const MoebiusConvention& conv, const std::vector<double>& base,
                        int order) {
  FunctionJet out(conv.sig, base, order);
  for (int axis = 0; axis < conv.nvars(); ++axis) {
    FunctionJet xi = FunctionJet::coordinate(conv.sig, base, order, axis);
    out += jet_mul(xi, xi);
  }
  return out;
}

double norm_sq_at(std::span<const double> coords) {
  double s = 0.0;
  for (double c : coords) s += c * c;
  return s;
}

FunctionJet apply_variant(const FunctionJet& f, WeightVariant variant, int times,
                          const OperatorContext& ctx) {
  FunctionJet out = f;
  for (int i = 0; i < times; ++i) {
    switch (variant) {
      case WeightVariant::OddL:
      case WeightVariant::EvenL:
        out = apply_G(out, ctx);
        break;
      case WeightVariant::GDagger:
        out = apply_G_dagger(out, ctx);
        break;
      case WeightVariant::Paravector:
        out = apply_G_paravector(out, ctx);
        break;
    }
  }
  return out;
}

Residual make_residual(Multivector lhs, Multivector rhs, std::vector<double> point,
                       std::uint64_t sample_seed) {
  Residual r{std::move(lhs), std::move(rhs), 0.0, std::move(point), sample_seed};
  r.rel_error = symmetric_rel_error(r.lhs, r.rhs);
  return r;
}

Residual sample_intertwining(const CheckCase& check, Rng& rng) {
  const MoebiusConvention conv{check.sig, check.paravector};
  const VahlenMatrix M = compose(check.word, conv);
  const std::vector<double> x0 = sample_valid_point(M, conv, check.delta, rng);
  const std::vector<double> y0 = evaluate_point(M, conv, x0);
  const Polynomial f =
      random_polynomial(check.sig, conv.nvars(), check.degree, check.max_grade, rng);

  const int applications = (check.perturbation == Perturbation::IteratedGDagger) ? 2 : check.l;
  const int order = applications + 1;

  WeightSpec spec{check.variant, check.l};
  WeightOptions options;
  switch (check.perturbation) {
    case Perturbation::ExponentShift:
      options.extra_denominator_power = 1;
      break;
    case Perturbation::DropReversion:
      options.drop_reversion = true;
      break;
    case Perturbation::WrongParityWeights:
      spec.variant = (spec.variant == WeightVariant::OddL) ? WeightVariant::EvenL
                                                           : WeightVariant::OddL;
      break;
    default:
      break;
  }

  const OperatorContext ctx_y(check.sig, y0, check.paravector);
  const Multivector lhs =
      apply_variant(f.to_jet(y0, applications), check.variant, applications, ctx_y).value();

  const MapJet map = evaluate_map_jet(M, conv, x0, order);
  const FunctionJet composed = f.compose_with(map.coords);
  const FunctionJet right = right_weight_jet(spec, M, conv, x0, order, options);
  const OperatorContext ctx_x(check.sig, x0, check.paravector);
  const FunctionJet inner =
      apply_variant(jet_mul(right, composed), check.variant, applications, ctx_x);
  const Multivector rhs = left_weight_value(spec, M, conv, x0) * inner.value();

  return make_residual(lhs, rhs, x0, 0);
}

Residual sample_lemma_bcd(const CheckCase& check, Rng& rng) {
  const MoebiusConvention conv{check.sig, false};
  const VahlenMatrix id = VahlenMatrix::identity(check.sig);
  const std::vector<double> y0 = sample_valid_point(id, conv, check.delta, rng);
  const Polynomial f =
      random_polynomial(check.sig, conv.nvars(), check.degree, check.max_grade, rng);
  const OperatorContext ctx(check.sig, y0, false);
  const int p = check.sig.p;
  const int k = check.param_k;
  const Multivector y0mv = point_multivector(conv, y0);

  int applications = 0;
  switch (check.kind) {
    case CheckKind::Lemma41b:
      applications = 2 * k - 2;
      break;
    case CheckKind::Lemma41c:
      applications = 2 * k - 1;
      break;
    case CheckKind::Lemma41d:
      applications = 2 * k - 2;
      break;
    default:
      throw std::logic_error("not a lemma (b)-(d) case");
  }
  const int order = applications + 1;
  const FunctionJet fj = f.to_jet(y0, order);

  Multivector lhs(check.sig), rhs(check.sig);
  if (check.kind == CheckKind::Lemma41b) {
    lhs = apply_G_iterated(jet_mul(identity_jet(conv, y0, order), fj), applications, ctx).value();
    rhs = -(2.0 * k - 2.0) * apply_G_iterated(fj, 2 * k - 3, ctx).value() +
          y0mv * apply_G_iterated(fj, 2 * k - 2, ctx).value();
  } else if (check.kind == CheckKind::Lemma41c) {
    lhs = apply_G_iterated(jet_mul(identity_jet(conv, y0, order), fj), applications, ctx).value();
    const FunctionJet g_prev = (2 * k - 2 > 0) ? apply_G_iterated(fj, 2 * k - 2, ctx) : fj;
    rhs = -(p + 2.0 * k - 1.0) * g_prev.value() -
          2.0 * apply_euler(g_prev, AxisRange::Full, ctx).value() -
          y0mv * apply_G_iterated(fj, 2 * k - 1, ctx).value();
  } else {
    lhs = apply_G_iterated(jet_mul(norm_sq_jet(conv, y0, order), fj), applications, ctx).value();
    const FunctionJet g_prev = (2 * k - 4 > 0) ? apply_G_iterated(fj, 2 * k - 4, ctx) : fj;
    rhs = -2.0 * (k - 1.0) *
              ((p + 2.0 * k - 3.0) * g_prev.value() +
               2.0 * apply_euler(g_prev, AxisRange::Full, ctx).value()) +
          norm_sq_at(y0) * apply_G_iterated(fj, 2 * k - 2, ctx).value();
  }
  return make_residual(lhs, rhs, y0, 0);
}

Residual sample_inversion_identity(const CheckCase& check, Rng& rng) {
  const MoebiusConvention conv{check.sig, false};
  GeneratorWord inversion{{Inversion{}}};
  const VahlenMatrix M = compose(inversion, conv);
  const std::vector<double> x0 = sample_valid_point(M, conv, check.delta, rng);
  const std::vector<double> y0 = evaluate_point(M, conv, x0);
  const Polynomial f =
      random_polynomial(check.sig, conv.nvars(), check.degree, check.max_grade, rng);
  const OperatorContext ctx_x(check.sig, x0, false);
  const OperatorContext ctx_y(check.sig, y0, false);
  const Multivector x0mv = point_multivector(conv, x0);
  const Multivector y0mv = point_multivector(conv, y0);
  const double xn = std::sqrt(norm_sq_at(x0));
  const int p = check.sig.p;

  if (check.kind == CheckKind::Lemma41e) {
    const MapJet map = evaluate_map_jet(M, conv, x0, 2);
    const FunctionJet pullback = f.compose_with(map.coords);
    const Multivector lhs = apply_euler(pullback, AxisRange::Full, ctx_x).value();
    const Multivector rhs = -apply_euler(f.to_jet(y0, 1), AxisRange::Full, ctx_y).value();
    return make_residual(lhs, rhs, x0, 0);
  }
  if (check.kind == CheckKind::ChainRule) {
    const MapJet map = evaluate_map_jet(M, conv, x0, 2);
    const FunctionJet pullback = f.compose_with(map.coords);
    const Multivector lhs = apply_G(pullback, ctx_x).value();
    const FunctionJet fy = f.to_jet(y0, 1);
    const Multivector rhs = norm_sq_at(y0) * apply_G(fy, ctx_y).value() -
                            2.0 * (y0mv * apply_euler(fy, AxisRange::Full, ctx_y).value());
    return make_residual(lhs, rhs, x0, 0);
  }

  // Lemma (a): G_x^2 (x/|x|^m .) expanded against the x- and y-operator
  // routes, with the test function pulled back through the inversion.
  const int m = check.param_m;
  const int order = 3;
  const MapJet map = evaluate_map_jet(M, conv, x0, order);
  const FunctionJet pullback = f.compose_with(map.coords);
  const FunctionJet x_over_norm_m =
      jet_mul(identity_jet(conv, x0, order),
              jet_scalar_power(norm_sq_jet(conv, x0, order), -0.5 * m));
  const Multivector lhs =
      apply_G_iterated(jet_mul(x_over_norm_m, pullback), 2, ctx_x).value();

  const Multivector f_at = pullback.value();
  const Multivector euler_f = apply_euler(pullback, AxisRange::Full, ctx_x).value();
  const FunctionJet fy = f.to_jet(y0, 2);
  const FunctionJet gy = apply_G(fy, ctx_y);
  const Multivector gy_val = gy.value();
  const Multivector gy2_val = apply_G(gy, ctx_y).value();

  Multivector rhs = (-static_cast<double>(m) * (m - p - 1.0) * std::pow(xn, -(m + 2.0))) *
                    (x0mv * f_at);
  rhs += (2.0 * (m - p - 1.0) * std::pow(xn, -(m + 2.0))) * (x0mv * euler_f);
  rhs += (-2.0 * std::pow(xn, -(m + 2.0))) * gy_val;
  rhs += std::pow(xn, -(m + 4.0)) * (x0mv * gy2_val);
  return make_residual(lhs, rhs, x0, 0);
}

Residual sample_proof_identity(const CheckCase& check, Rng& rng) {
  const MoebiusConvention conv{check.sig, false};
  const VahlenMatrix id = VahlenMatrix::identity(check.sig);
  const std::vector<double> x0 = sample_valid_point(id, conv, check.delta, rng);
  const Polynomial f =
      random_polynomial(check.sig, conv.nvars(), check.degree, check.max_grade, rng);
  const OperatorContext ctx(check.sig, x0, false);
  const Multivector x0mv = point_multivector(conv, x0);
  const double xn = std::sqrt(norm_sq_at(x0));
  const int p = check.sig.p;
  const int m = check.param_m;
  const int order = 2;
  const FunctionJet fj = f.to_jet(x0, order);
  const Multivector gf = apply_G(fj, ctx).value();

  Multivector lhs(check.sig), rhs(check.sig);
  if (check.kind == CheckKind::ProofNormShift) {
    const FunctionJet norm_pow = jet_scalar_power(norm_sq_jet(conv, x0, order), -0.5 * m);
    lhs = apply_G(jet_mul(norm_pow, fj), ctx).value();
    rhs = (-static_cast<double>(m) * std::pow(xn, -(m + 2.0))) * (x0mv * fj.value()) +
          std::pow(xn, -static_cast<double>(m)) * gf;
  } else {
    const FunctionJet x_over_norm_m =
        jet_mul(identity_jet(conv, x0, order),
                jet_scalar_power(norm_sq_jet(conv, x0, order), -0.5 * m));
    lhs = apply_G(jet_mul(x_over_norm_m, fj), ctx).value();
    const Multivector euler_f = apply_euler(fj, AxisRange::Full, ctx).value();
    rhs = std::pow(xn, -static_cast<double>(m)) *
              ((m - p - 1.0) * fj.value() - 2.0 * euler_f) -
          std::pow(xn, -static_cast<double>(m)) * (x0mv * gf);
  }
  return make_residual(lhs, rhs, x0, 0);
}

Residual sample_null_solutions(const CheckCase& check, Rng& rng) {
  const MoebiusConvention conv{check.sig, true};
  const VahlenMatrix id = VahlenMatrix::identity(check.sig);
  const std::vector<double> x0 = sample_valid_point(id, conv, check.delta, rng);
  const OperatorContext ctx(check.sig, x0, true);
  Multivector worst(check.sig);
  double worst_norm = -1.0;
  for (int n = 0; n <= check.null_max_power; ++n) {
    const Polynomial power = paravector_power(check.sig, n);
    const Multivector g = apply_G_paravector(power.to_jet(x0, 2), ctx).value();
    if (g.coeff_norm() > worst_norm) {
      worst_norm = g.coeff_norm();
      worst = g;
    }
  }
  Residual r{worst, Multivector(check.sig), worst_norm, x0, 0};
  return r;
}

Residual run_sample(const CheckCase& check, Rng& rng) {
  switch (check.kind) {
    case CheckKind::Intertwining:
    case CheckKind::Corollary:
      return sample_intertwining(check, rng);
    case CheckKind::Lemma41b:
    case CheckKind::Lemma41c:
    case CheckKind::Lemma41d:
      return sample_lemma_bcd(check, rng);
    case CheckKind::Lemma41a:
    case CheckKind::Lemma41e:
    case CheckKind::ChainRule:
      return sample_inversion_identity(check, rng);
    case CheckKind::ProofNormShift:
    case CheckKind::ProofVectorShift:
      return sample_proof_identity(check, rng);
    case CheckKind::NullSolutions:
      return sample_null_solutions(check, rng);
  }
  throw std::logic_error("unreachable");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

double symmetric_rel_error(const Multivector& lhs, const Multivector& rhs) {
  const double denom = lhs.coeff_norm() + rhs.coeff_norm() + 1e-300;
  return (lhs - rhs).coeff_norm() / denom;
}

CheckReport run_check(const CheckCase& check, std::uint64_t seed, int threads) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t tag = fnv1a(check.id);
  const int n = check.samples;
  std::vector<Residual> residuals(static_cast<std::size_t>(n), Residual{Multivector(check.sig),
                                                                        Multivector(check.sig)});
  std::vector<std::string> errors(static_cast<std::size_t>(n));

  const int nthreads = std::min(resolve_threads(threads), std::max(1, n));
  auto worker = [&](int tid) {
    for (int i = tid; i < n; i += nthreads) {
      const std::uint64_t sample_seed = substream_seed(seed, tag, static_cast<std::uint64_t>(i));
      Rng rng(sample_seed);
      try {
        residuals[static_cast<std::size_t>(i)] = run_sample(check, rng);
        residuals[static_cast<std::size_t>(i)].sample_seed = sample_seed;
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(i)] = e.what();
      }
    }
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }

  CheckReport report{check, std::move(residuals)};
  for (const auto& e : errors)
    if (!e.empty()) {
      report.error = e;
      break;
    }

  std::vector<double> rels;
  rels.reserve(report.residuals.size());
  for (const auto& r : report.residuals) rels.push_back(r.rel_error);
  std::sort(rels.begin(), rels.end());
  report.max_rel = rels.empty() ? 0.0 : rels.back();
  if (!rels.empty()) {
    const std::size_t mid = rels.size() / 2;
    report.median_rel =
        (rels.size() % 2 == 1) ? rels[mid] : 0.5 * (rels[mid - 1] + rels[mid]);
  }
  report.pass = report.error.empty() &&
                (check.negative ? report.median_rel > check.failure_floor
                                : report.max_rel < check.tolerance);
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

namespace {

double tolerance_for_level(const SuiteConfig& c, int l) {
  if (l <= 2) return c.tol_l1;
  if (l <= 4) return c.tol_l3;
  return c.tol_l5;
}

bool suite_selected(const SuiteConfig& c, const std::string& id) {
  if (c.suites.empty()) return true;
  return std::find(c.suites.begin(), c.suites.end(), id) != c.suites.end();
}

std::vector<Generator> default_generators(Signature sig, bool paravector) {
  std::vector<Generator> out;
  if (paravector) {
    out.push_back(Translation{{0.7}});
    out.push_back(Dilation{1.3});
    std::vector<double> axis(static_cast<std::size_t>(sig.dim()));
    double n2 = 0.0;
    for (int i = 0; i < sig.dim(); ++i) {
      axis[static_cast<std::size_t>(i)] = 1.0 + 0.5 * i;
      n2 += axis[static_cast<std::size_t>(i)] * axis[static_cast<std::size_t>(i)];
    }
    for (double& a : axis) a /= std::sqrt(n2);
    out.push_back(Reflection{std::move(axis)});
    out.push_back(Inversion{});
  } else {
    std::vector<double> offset(static_cast<std::size_t>(sig.p));
    for (int i = 0; i < sig.p; ++i) offset[static_cast<std::size_t>(i)] = 0.6 * std::pow(-0.5, i);
    out.push_back(Translation{std::move(offset)});
    out.push_back(Dilation{1.3});
    std::vector<double> axis(static_cast<std::size_t>(sig.q));
    double n2 = 0.0;
    for (int i = 0; i < sig.q; ++i) {
      axis[static_cast<std::size_t>(i)] = 1.0 + 0.5 * i;
      n2 += axis[static_cast<std::size_t>(i)] * axis[static_cast<std::size_t>(i)];
    }
    for (double& a : axis) a /= std::sqrt(n2);
    out.push_back(Reflection{std::move(axis)});
    out.push_back(Inversion{});
  }
  return out;
}

const char* generator_tag(const Generator& g) {
  if (std::holds_alternative<Translation>(g)) return "T";
  if (std::holds_alternative<Dilation>(g)) return "D";
  if (std::holds_alternative<Reflection>(g)) return "R";
  return "I";
}

Generator random_generator(Signature sig, bool paravector, Rng& rng) {
  switch (rng.uniform_int(0, 3)) {
    case 0: {
      if (paravector) return Translation{{rng.uniform(-1.0, 1.0)}};
      std::vector<double> offset(static_cast<std::size_t>(sig.p));
      for (double& c : offset) c = rng.uniform(-1.0, 1.0);
      return Translation{std::move(offset)};
    }
    case 1: {
      double lambda = rng.uniform(0.5, 2.0);
      if (rng.unit() < 0.5) lambda = -lambda;
      return Dilation{lambda};
    }
    case 2: {
      const int naxes = paravector ? sig.dim() : sig.q;
      std::vector<double> axis(static_cast<std::size_t>(naxes));
      double n2 = 0.0;
      while (n2 < 1e-2) {
        n2 = 0.0;
        for (double& c : axis) {
          c = rng.uniform(-1.0, 1.0);
          n2 += c * c;
        }
      }
      for (double& c : axis) c /= std::sqrt(n2);
      return Reflection{std::move(axis)};
    }
    default:
      return Inversion{};
  }
}

}  // namespace

std::vector<CheckCase> build_cases(const SuiteConfig& config) {
  std::vector<CheckCase> cases;
  const Signature home(config.p, config.q);
  const double lemma_tol = 1e-7;

  auto base_case = [&](std::string id, CheckKind kind, Signature sig) {
    CheckCase c;
    c.id = std::move(id);
    c.kind = kind;
    c.sig = sig;
    c.degree = config.degree;
    c.samples = config.samples;
    c.delta = config.delta;
    c.max_grade = config.full_grades ? sig.dim() : 2;
    return c;
  };

  auto push_intertwining = [&](const std::string& prefix, WeightVariant variant, int l,
                               Signature sig, bool paravector, const GeneratorWord& word,
                               const std::string& label) {
    CheckCase c = base_case(prefix + "/" + label,
                            paravector ? CheckKind::Corollary : CheckKind::Intertwining, sig);
    c.variant = variant;
    c.l = l;
    c.paravector = paravector;
    c.word = word;
    c.tolerance = paravector ? config.tol_l1 : tolerance_for_level(config, l);
    cases.push_back(std::move(c));
  };

  if (suite_selected(config, "thm3")) {
    const Signature sigs[] = {Signature(1, 2), Signature(2, 2), Signature(2, 3)};
    for (const Signature& sig : sigs) {
      const std::string prefix =
          "Thm3.1/p" + std::to_string(sig.p) + "q" + std::to_string(sig.q);
      int gi = 0;
      for (const Generator& g : default_generators(sig, false))
        push_intertwining(prefix, WeightVariant::OddL, 1, sig, false, GeneratorWord{{g}},
                          std::string(generator_tag(g)) + std::to_string(gi++));
      Rng words_rng(substream_seed(config.seed, fnv1a(prefix + "/words"), 0));
      for (int w = 0; w < 10; ++w) {
        GeneratorWord word;
        const int len = words_rng.uniform_int(1, 3);
        for (int i = 0; i < len; ++i)
          word.generators.push_back(random_generator(sig, false, words_rng));
        push_intertwining(prefix, WeightVariant::OddL, 1, sig, false, word,
                          "word" + std::to_string(w));
      }
    }
  }

  if (suite_selected(config, "thm4odd")) {
    std::vector<int> levels{3};
    if (config.max_l >= 5) levels.push_back(5);
    for (int l : levels) {
      int gi = 0;
      for (const Generator& g : default_generators(home, false))
        push_intertwining("Thm4odd/l" + std::to_string(l), WeightVariant::OddL, l, home, false,
                          GeneratorWord{{g}},
                          std::string(generator_tag(g)) + std::to_string(gi++));
    }
  }

  if (suite_selected(config, "thm4even")) {
    for (int l : {2, 4}) {
      if (l > config.max_l) continue;
      int gi = 0;
      for (const Generator& g : default_generators(home, false))
        push_intertwining("Thm4even/l" + std::to_string(l), WeightVariant::EvenL, l, home, false,
                          GeneratorWord{{g}},
                          std::string(generator_tag(g)) + std::to_string(gi++));
    }
  }

  if (suite_selected(config, "thm5")) {
    int gi = 0;
    for (const Generator& g : default_generators(home, false))
      push_intertwining("Thm5.1", WeightVariant::GDagger, 1, home, false, GeneratorWord{{g}},
                        std::string(generator_tag(g)) + std::to_string(gi++));
  }

  if (suite_selected(config, "cor")) {
    for (int p : {1, 2}) {
      const Signature sig(p, 0);
      int gi = 0;
      for (const Generator& g : default_generators(sig, true))
        push_intertwining("Cor3.1/p" + std::to_string(p), WeightVariant::Paravector, 1, sig, true,
                          GeneratorWord{{g}},
                          std::string(generator_tag(g)) + std::to_string(gi++));
    }
  }

  if (suite_selected(config, "lemma")) {
    for (int m : {home.p + 1, home.p + 3}) {
      CheckCase c = base_case("Lemma4.1a/m" + std::to_string(m), CheckKind::Lemma41a, home);
      c.param_m = m;
      c.tolerance = lemma_tol;
      cases.push_back(std::move(c));
    }
    for (int k : {2, 3}) {
      CheckCase c = base_case("Lemma4.1b/k" + std::to_string(k), CheckKind::Lemma41b, home);
      c.param_k = k;
      c.tolerance = lemma_tol;
      cases.push_back(std::move(c));
    }
    for (int k : {1, 2}) {
      CheckCase c = base_case("Lemma4.1c/k" + std::to_string(k), CheckKind::Lemma41c, home);
      c.param_k = k;
      c.tolerance = lemma_tol;
      cases.push_back(std::move(c));
    }
    for (int k : {2, 3}) {
      CheckCase c = base_case("Lemma4.1d/k" + std::to_string(k), CheckKind::Lemma41d, home);
      c.param_k = k;
      c.tolerance = lemma_tol;
      cases.push_back(std::move(c));
    }
    CheckCase e = base_case("Lemma4.1e", CheckKind::Lemma41e, home);
    e.tolerance = lemma_tol;
    cases.push_back(std::move(e));
  }

  if (suite_selected(config, "proof")) {
    for (int m : {home.p + 1, home.p + 3}) {
      CheckCase c1 =
          base_case("ProofId/normshift/m" + std::to_string(m), CheckKind::ProofNormShift, home);
      c1.param_m = m;
      c1.tolerance = lemma_tol;
      cases.push_back(std::move(c1));
      CheckCase c2 =
          base_case("ProofId/vecshift/m" + std::to_string(m), CheckKind::ProofVectorShift, home);
      c2.param_m = m;
      c2.tolerance = lemma_tol;
      cases.push_back(std::move(c2));
    }
  }

  if (suite_selected(config, "chain")) {
    CheckCase c = base_case("ChainRule", CheckKind::ChainRule, home);
    c.tolerance = lemma_tol;
    cases.push_back(std::move(c));
  }

  if (suite_selected(config, "null")) {
    for (int p : {1, 2}) {
      CheckCase c =
          base_case("NullSolutions/p" + std::to_string(p), CheckKind::NullSolutions, Signature(p, 0));
      c.paravector = true;
      c.samples = 50;
      c.tolerance = 1e-9;
      c.null_max_power = 4;
      cases.push_back(std::move(c));
    }
  }

  if (suite_selected(config, "controls")) {
    const GeneratorWord inversion{{Inversion{}}};
    {
      CheckCase c = base_case("Control/exponent", CheckKind::Intertwining, home);
      c.variant = WeightVariant::OddL;
      c.l = 1;
      c.word = inversion;
      c.negative = true;
      c.perturbation = Perturbation::ExponentShift;
      cases.push_back(std::move(c));
    }
    {
      // Composed word so that c x + d carries bivector components; on a
      // plain vector dropping the reversion is invisible.
      CheckCase c = base_case("Control/dropreversion", CheckKind::Intertwining, home);
      c.variant = WeightVariant::OddL;
      c.l = 1;
      c.word = GeneratorWord{{Inversion{}, default_generators(home, false)[2]}};
      c.negative = true;
      c.perturbation = Perturbation::DropReversion;
      cases.push_back(std::move(c));
    }
    {
      CheckCase c = base_case("Control/parity", CheckKind::Intertwining, home);
      c.variant = WeightVariant::EvenL;
      c.l = 2;
      c.word = inversion;
      c.negative = true;
      c.perturbation = Perturbation::WrongParityWeights;
      cases.push_back(std::move(c));
    }
    {
      CheckCase c = base_case("Control/iterated-dagger", CheckKind::Intertwining, home);
      c.variant = WeightVariant::GDagger;
      c.l = 1;
      c.word = inversion;
      c.negative = true;
      c.perturbation = Perturbation::IteratedGDagger;
      cases.push_back(std::move(c));
    }
  }

  return cases;
}

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
  std::vector<CheckReport> reports;
  for (const CheckCase& check : build_cases(config)) {
    try {
      reports.push_back(run_check(check, config.seed, config.threads));
    } catch (const std::exception& e) {
      CheckReport failed{check, {}};
      failed.error = e.what();
      failed.pass = false;
      reports.push_back(std::move(failed));
    }
  }
  return reports;
}

bool all_ok(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

nlohmann::json report_json(const SuiteConfig& config, const std::vector<CheckReport>& reports) {
  json cases = json::array();
  json timing = json::object();
  double total_ms = 0.0;
  for (const auto& r : reports) {
    cases.push_back({{"id", r.check.id},
                     {"word", r.check.word.to_string()},
                     {"p", r.check.sig.p},
                     {"q", r.check.sig.q},
                     {"l", r.check.l},
                     {"samples", r.check.samples},
                     {"max_rel", r.max_rel},
                     {"median_rel", r.median_rel},
                     {"tolerance", r.check.tolerance},
                     {"negative", r.check.negative},
                     {"pass", r.pass},
                     {"error", r.error}});
    timing[r.check.id] = r.wall_ms;
    total_ms += r.wall_ms;
  }
  int passed = 0;
  for (const auto& r : reports) passed += r.pass ? 1 : 0;
  timing["total_ms"] = total_ms;
  return json{{"config",
               {{"p", config.p},
                {"q", config.q},
                {"max_l", config.max_l},
                {"seed", config.seed},
                {"samples", config.samples},
                {"degree", config.degree},
                {"delta", config.delta},
                {"tol_l1", config.tol_l1},
                {"tol_l3", config.tol_l3},
                {"tol_l5", config.tol_l5},
                {"suites", config.suites},
                {"full_grades", config.full_grades}}},
              {"cases", cases},
              {"summary",
               {{"cases", reports.size()},
                {"passed", passed},
                {"failed", reports.size() - static_cast<std::size_t>(passed)},
                {"all_pass", all_ok(reports)}}},
              {"timing", timing}};
}

std::string report_text(const std::vector<CheckReport>& reports) {
  std::string out;
  char line[256];
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "[%s] %-28s %-24s l=%d max=%.3e med=%.3e %s%.1e (%.0f ms)\n",
                  r.pass ? "PASS" : "FAIL", r.check.id.c_str(),
                  r.check.word.to_string().c_str(), r.check.l, r.max_rel, r.median_rel,
                  r.check.negative ? "floor=" : "tol=",
                  r.check.negative ? r.check.failure_floor : r.check.tolerance, r.wall_ms);
    out += line;
    if (!r.error.empty()) out += "       error: " + r.error + "\n";
  }
  int passed = 0;
  for (const auto& r : reports) passed += r.pass ? 1 : 0;
  std::snprintf(line, sizeof line, "%d/%zu checks passed\n", passed, reports.size());
  out += line;
  return out;
}

}  // namespace slicegrav
