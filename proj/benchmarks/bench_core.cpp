#include <benchmark/benchmark.h>

#include "slicegrav/operators.hpp"
#include "slicegrav/polynomial.hpp"
#include "slicegrav/verify.hpp"

namespace {

using namespace slicegrav;

void BM_GeometricProduct(benchmark::State& state) {
  const Signature sig(2, 2);
  Rng rng(7);
  Multivector a(sig), b(sig);
  for (unsigned m = 0; m < a.size(); ++m) {
    a[m] = rng.uniform(-1.0, 1.0);
    b[m] = rng.uniform(-1.0, 1.0);
  }
  for (auto _ : state) {
    Multivector c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_GeometricProduct);

void BM_JetMul(benchmark::State& state) {
  const Signature sig(2, 2);
  Rng rng(7);
  const std::vector<double> base{0.3, -0.4, 0.8, 1.1};
  const int order = static_cast<int>(state.range(0));
  const Polynomial f = random_polynomial(sig, 4, 4, 2, rng);
  const Polynomial g = random_polynomial(sig, 4, 4, 2, rng);
  const FunctionJet fj = f.to_jet(base, order);
  const FunctionJet gj = g.to_jet(base, order);
  for (auto _ : state) {
    FunctionJet h = jet_mul(fj, gj);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_JetMul)->Arg(2)->Arg(4)->Arg(6);

void BM_ApplyG(benchmark::State& state) {
  const Signature sig(2, 2);
  Rng rng(7);
  const std::vector<double> base{0.3, -0.4, 0.8, 1.1};
  const Polynomial f = random_polynomial(sig, 4, 4, 2, rng);
  const FunctionJet fj = f.to_jet(base, 5);
  const OperatorContext ctx(sig, base);
  for (auto _ : state) {
    FunctionJet g = apply_G(fj, ctx);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_ApplyG);

void BM_IntertwiningSample(benchmark::State& state) {
  CheckCase check;
  check.id = "bench";
  check.sig = Signature(2, 2);
  check.l = 1;
  check.word = GeneratorWord{{Inversion{}}};
  check.samples = 1;
  for (auto _ : state) {
    CheckReport r = run_check(check, 42 + static_cast<std::uint64_t>(state.iterations()), 1);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_IntertwiningSample);

}  // namespace

BENCHMARK_MAIN();
