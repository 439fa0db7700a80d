#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "slicegrav/jet.hpp"
#include "slicegrav/polynomial.hpp"

using namespace slicegrav;

namespace {

double rel_diff(const Multivector& a, const Multivector& b) {
  return (a - b).coeff_norm() / (a.coeff_norm() + b.coeff_norm() + 1e-300);
}

double jet_rel_diff(const FunctionJet& a, const FunctionJet& b) {
  REQUIRE(a.order() == b.order());
  double num = 0.0, den = 1e-300;
  for (int pos = 0; pos < a.table().size(); ++pos) {
    num += (a.coeff(pos) - b.coeff(pos)).coeff_norm();
    den += a.coeff(pos).coeff_norm() + b.coeff(pos).coeff_norm();
  }
  return num / den;
}

}  // namespace

TEST_CASE("multi-index table enumeration") {
  const MultiIndexTable& t = MultiIndexTable::get(3, 4);
  CHECK(t.size() == 35);  // C(3+4, 4)
  CHECK(t.total(0) == 0);
  for (int pos = 0; pos < t.size(); ++pos) {
    CHECK(t.position(t.exponents(pos)) == pos);
    int total = 0;
    for (int e : t.exponents(pos)) total += e;
    CHECK(total == t.total(pos));
    CHECK(total <= 4);
  }
  const std::array<int, 3> beyond{5, 0, 0};
  CHECK(t.position(beyond) == -1);
  for (const auto& pe : t.products())
    CHECK(t.total(pe.lhs) + t.total(pe.rhs) == t.total(pe.out));
}

TEST_CASE("constant and coordinate jets") {
  const Signature sig(1, 2);
  const std::vector<double> base{0.5, -1.0, 2.0};
  const FunctionJet x1 = FunctionJet::coordinate(sig, base, 3, 1);
  CHECK(x1.value().scalar_part() == doctest::Approx(-1.0));
  const std::array<int, 3> e1{0, 1, 0};
  CHECK(x1.coeff(e1).scalar_part() == doctest::Approx(1.0));
  CHECK(x1.partial(1).value().scalar_part() == doctest::Approx(1.0));
  CHECK(x1.partial(0).value().coeff_norm() == doctest::Approx(0.0));

  const Multivector c = Multivector::basis_vector(sig, 2) * 3.0;
  const FunctionJet k = FunctionJet::constant(sig, base, 2, c);
  CHECK(rel_diff(k.value(), c) < 1e-15);
  CHECK(k.partial(2).value().coeff_norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(k.partial(2).partial(0).partial(1), std::domain_error);  // order 0
}

TEST_CASE("jet multiplication matches symbolic polynomial products") {
  const Signature sig(2, 2);
  Rng rng(31);
  const std::vector<double> base{0.3, -0.7, 1.2, 0.4};
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial f = random_polynomial(sig, 4, 3, 2, rng);
    const Polynomial g = random_polynomial(sig, 4, 3, 2, rng);
    const Polynomial fg = f * g;
    const FunctionJet direct = fg.to_jet(base, 3);
    const FunctionJet viajets = jet_mul(f.to_jet(base, 3), g.to_jet(base, 3));
    CHECK(jet_rel_diff(direct, viajets) < 1e-12);
  }
}

TEST_CASE("jet multiplication is associative and respects operand order") {
  const Signature sig(1, 2);
  Rng rng(33);
  const std::vector<double> base{0.2, 0.9, -0.5};
  const FunctionJet a = random_polynomial(sig, 3, 2, 2, rng).to_jet(base, 3);
  const FunctionJet b = random_polynomial(sig, 3, 2, 2, rng).to_jet(base, 3);
  const FunctionJet c = random_polynomial(sig, 3, 2, 2, rng).to_jet(base, 3);
  CHECK(jet_rel_diff(jet_mul(jet_mul(a, b), c), jet_mul(a, jet_mul(b, c))) < 1e-12);
  // Noncommutative coefficients: ab != ba in general.
  CHECK(jet_rel_diff(jet_mul(a, b), jet_mul(b, a)) > 1e-3);
}

TEST_CASE("jet coefficients match the symbolic differentiation oracle") {
  const Signature sig(2, 2);
  Rng rng(37);
  const std::vector<double> base{0.4, -0.2, 0.9, 1.1};
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial f = random_polynomial(sig, 4, 4, 2, rng);
    const FunctionJet jet = f.to_jet(base, 4);
    const MultiIndexTable& t = jet.table();
    for (int pos = 0; pos < t.size(); ++pos) {
      // d^alpha f / alpha! via exact symbolic partials.
      Polynomial d = f;
      double factorial = 1.0;
      for (int axis = 0; axis < 4; ++axis)
        for (int k = 0; k < t.exponents(pos)[static_cast<std::size_t>(axis)]; ++k) {
          d = d.partial(axis);
          factorial *= k + 1.0;
        }
      const Multivector expected = d.evaluate(base) * (1.0 / factorial);
      CHECK((jet.coeff(pos) - expected).coeff_norm() < 1e-12 * (1.0 + expected.coeff_norm()));
    }
  }
}

TEST_CASE("jet coefficients match finite differences") {
  const Signature sig(1, 2);
  Rng rng(41);
  const std::vector<double> base{0.3, 0.8, -0.6};
  const Polynomial f = random_polynomial(sig, 3, 3, 2, rng);
  const FunctionJet jet = f.to_jet(base, 3);
  auto eval = [&](std::span<const double> x) { return f.evaluate(x); };
  const MultiIndexTable& t = jet.table();
  for (int pos = 0; pos < t.size(); ++pos) {
    double factorial = 1.0;
    for (int e : t.exponents(pos))
      for (int k = 1; k <= e; ++k) factorial *= k;
    const Multivector fd = finite_difference(eval, base, t.exponents(pos)) * (1.0 / factorial);
    CHECK((jet.coeff(pos) - fd).coeff_norm() < 1e-5 * (1.0 + fd.coeff_norm()));
  }
}

TEST_CASE("scalar powers of jets") {
  const Signature sig(1, 2);
  const std::vector<double> base{0.5, 1.0, -0.8};
  // u = 2 + x_0 + x_1^2 as a scalar jet.
  Polynomial u_poly(sig, 3);
  u_poly.add_term({0, 0, 0}, Multivector::scalar(sig, 2.0));
  u_poly.add_term({1, 0, 0}, Multivector::scalar(sig, 1.0));
  u_poly.add_term({0, 2, 0}, Multivector::scalar(sig, 1.0));
  const FunctionJet u = u_poly.to_jet(base, 4);

  CHECK(jet_rel_diff(jet_scalar_power(u, 2.0), jet_mul(u, u)) < 1e-13);
  CHECK(jet_rel_diff(jet_scalar_power(u, 1.0), u) < 1e-13);
  CHECK(jet_rel_diff(jet_mul(u, jet_reciprocal(u)),
                     FunctionJet::constant(sig, base, 4, Multivector::scalar(sig, 1.0))) < 1e-13);
  const FunctionJet root = jet_scalar_power(u, 0.5);
  CHECK(jet_rel_diff(jet_mul(root, root), u) < 1e-12);
  const FunctionJet inv_sq = jet_scalar_power(u, -2.0);
  CHECK(jet_rel_diff(jet_mul(inv_sq, jet_mul(u, u)),
                     FunctionJet::constant(sig, base, 4, Multivector::scalar(sig, 1.0))) < 1e-12);

  FunctionJet negative = u * -1.0;
  CHECK_THROWS_AS(jet_scalar_power(negative, 0.5), std::domain_error);
  FunctionJet vector_jet = u.left_mul(Multivector::basis_vector(sig, 1));
  CHECK_THROWS_AS(jet_scalar_power(vector_jet, 2.0), std::domain_error);
}

TEST_CASE("scalar part extraction enforces purity") {
  const Signature sig(1, 2);
  const std::vector<double> base{0.1, 0.2, 0.3};
  const FunctionJet x0 = FunctionJet::coordinate(sig, base, 2, 0);
  CHECK_NOTHROW(scalar_part_jet(x0));
  const FunctionJet impure = x0 + x0.left_mul(Multivector::basis_vector(sig, 2));
  CHECK_THROWS_AS(scalar_part_jet(impure), std::domain_error);
}

TEST_CASE("composition matches substituted polynomials") {
  const Signature sig(1, 2);
  Rng rng(43);
  const std::vector<double> base{0.4, -0.3, 0.7};
  const Polynomial f = random_polynomial(sig, 3, 3, 2, rng);
  // Coordinate substitution y_i(x): random scalar polynomials.
  std::vector<Polynomial> subs;
  std::vector<FunctionJet> sub_jets;
  for (int axis = 0; axis < 3; ++axis) {
    subs.push_back(random_polynomial(sig, 3, 2, 0, rng));  // scalar coefficients
    sub_jets.push_back(subs.back().to_jet(base, 3));
  }
  const FunctionJet composed = f.compose_with(sub_jets);
  // Oracle: evaluate f(y(x)) pointwise by finite differences.
  auto eval = [&](std::span<const double> x) {
    std::vector<double> y(3);
    for (int axis = 0; axis < 3; ++axis) y[static_cast<std::size_t>(axis)] = subs[static_cast<std::size_t>(axis)].evaluate(x).scalar_part();
    return f.evaluate(y);
  };
  const MultiIndexTable& t = composed.table();
  for (int pos = 0; pos < t.size(); ++pos) {
    if (t.total(pos) > 2) continue;
    double factorial = 1.0;
    for (int e : t.exponents(pos))
      for (int k = 1; k <= e; ++k) factorial *= k;
    const Multivector fd = finite_difference(eval, base, t.exponents(pos)) * (1.0 / factorial);
    CHECK((composed.coeff(pos) - fd).coeff_norm() < 1e-5 * (1.0 + fd.coeff_norm()));
  }
}

TEST_CASE("involutions and truncation on jets") {
  const Signature sig(1, 2);
  Rng rng(47);
  const std::vector<double> base{0.6, 0.1, -0.4};
  const FunctionJet a = random_polynomial(sig, 3, 3, 2, rng).to_jet(base, 3);
  const FunctionJet b = random_polynomial(sig, 3, 3, 2, rng).to_jet(base, 3);
  // Involutions are anti-automorphisms coefficient-wise through products.
  CHECK(jet_rel_diff(jet_mul(a, b).reversed(), jet_mul(b.reversed(), a.reversed())) < 1e-12);
  CHECK(jet_rel_diff(jet_mul(a, b).conjugated(), jet_mul(b.conjugated(), a.conjugated())) < 1e-12);
  const FunctionJet trunc = a.truncated(1);
  CHECK(trunc.order() == 1);
  CHECK(rel_diff(trunc.value(), a.value()) < 1e-15);
}
