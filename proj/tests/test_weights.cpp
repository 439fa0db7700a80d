#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "slicegrav/weights.hpp"

using namespace slicegrav;

namespace {

double rel_diff(const Multivector& a, const Multivector& b) {
  return (a - b).coeff_norm() / (a.coeff_norm() + b.coeff_norm() + 1e-300);
}

bool jet_is_constant(const FunctionJet& jet) {
  const MultiIndexTable& t = jet.table();
  for (int pos = 0; pos < t.size(); ++pos)
    if (t.total(pos) > 0 && jet.coeff(pos).coeff_norm() > 1e-13) return false;
  return true;
}

}  // namespace

TEST_CASE("weight spec parity validation") {
  CHECK_NOTHROW(WeightSpec::validated(WeightVariant::OddL, 1));
  CHECK_NOTHROW(WeightSpec::validated(WeightVariant::OddL, 3));
  CHECK_THROWS_AS(WeightSpec::validated(WeightVariant::OddL, 2), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::validated(WeightVariant::OddL, 0), std::invalid_argument);
  CHECK_NOTHROW(WeightSpec::validated(WeightVariant::EvenL, 2));
  CHECK_THROWS_AS(WeightSpec::validated(WeightVariant::EvenL, 3), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::validated(WeightVariant::GDagger, 2), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::validated(WeightVariant::Paravector, 3), std::invalid_argument);
  CHECK_NOTHROW(WeightSpec::validated(WeightVariant::GDagger, 1));
}

TEST_CASE("identity word gives trivial weights for every variant") {
  const Signature sig(2, 2);
  const MoebiusConvention conv{sig, false};
  const VahlenMatrix id = compose(GeneratorWord{}, conv);
  const std::vector<double> base{0.4, -0.2, 0.9, 1.1};
  const Multivector one = Multivector::scalar(sig, 1.0);

  for (WeightSpec spec : {WeightSpec{WeightVariant::OddL, 1}, WeightSpec{WeightVariant::OddL, 3},
                          WeightSpec{WeightVariant::EvenL, 2},
                          WeightSpec{WeightVariant::GDagger, 1}}) {
    const auto [left, right] = weight_pair(spec, id, conv, base, 2);
    CHECK(rel_diff(left, one) < 1e-14);
    CHECK(rel_diff(right.value(), one) < 1e-14);
    CHECK(jet_is_constant(right));
  }
}

TEST_CASE("dilation weights scale as pure powers") {
  const Signature sig(2, 2);
  const MoebiusConvention conv{sig, false};
  const double lambda = 1.7;
  const VahlenMatrix m = compose(GeneratorWord{{Dilation{lambda}}}, conv);
  const std::vector<double> base{0.4, -0.2, 0.9, 1.1};

  // c x + d = 1/lambda, so for odd l the right weight is lambda^{p+1-l}
  // and the left weight is lambda^{-(p+1+l)}.
  const WeightSpec odd{WeightVariant::OddL, 1};
  const auto [left, right] = weight_pair(odd, m, conv, base, 2);
  CHECK(right.value().scalar_part() == doctest::Approx(std::pow(lambda, 2)));
  CHECK(left.scalar_part() == doctest::Approx(std::pow(lambda, -4)));
  CHECK((left * right.value()).scalar_part() == doctest::Approx(std::pow(lambda, -2)));

  const WeightSpec even{WeightVariant::EvenL, 2};
  const auto [le, re] = weight_pair(even, m, conv, base, 2);
  // Scalar weights: right = |w|^{-p-1+l}, left = |w|^{p+1+l} with |w| = 1/lambda.
  CHECK(re.value().scalar_part() == doctest::Approx(std::pow(lambda, 1)));
  CHECK(le.scalar_part() == doctest::Approx(std::pow(lambda, -5)));
  CHECK((le * re.value()).scalar_part() == doctest::Approx(std::pow(lambda, -4)));
}

TEST_CASE("inversion weights are vector valued for odd l") {
  const Signature sig(2, 2);
  const MoebiusConvention conv{sig, false};
  const VahlenMatrix m = compose(GeneratorWord{{Inversion{}}}, conv);
  const std::vector<double> base{0.5, -0.25, 1.0, 0.5};
  double n2 = 0.0;
  for (double c : base) n2 += c * c;

  const WeightSpec odd{WeightVariant::OddL, 1};
  const auto [left, right] = weight_pair(odd, m, conv, base, 2);
  // c x + d = -x: right = -x/|x|^{p+1}, left = x |x|^{p-1} up to inversion sign.
  const Multivector rv = right.value();
  CHECK(grade_project(rv, 1).coeff_norm() == doctest::Approx(rv.coeff_norm()));
  CHECK(grade_project(left, 1).coeff_norm() == doctest::Approx(left.coeff_norm()));
  for (int axis = 0; axis < 4; ++axis)
    CHECK(rv[1u << axis] ==
          doctest::Approx(-base[static_cast<std::size_t>(axis)] * std::pow(n2, -1.5)));

  const WeightSpec even{WeightVariant::EvenL, 2};
  const FunctionJet re = right_weight_jet(even, m, conv, base, 2);
  // Even-l weights stay scalar.
  CHECK(grade_project(re.value(), 0).coeff_norm() == doctest::Approx(re.value().coeff_norm()));
  CHECK(re.value().scalar_part() == doctest::Approx(std::pow(n2, -0.5)));
  CHECK(left_weight_value(even, m, conv, base).scalar_part() ==
        doctest::Approx(std::pow(n2, 2.5)));
}

TEST_CASE("paravector weights") {
  const Signature sig(2, 0);
  const MoebiusConvention conv{sig, true};
  const VahlenMatrix m = compose(GeneratorWord{{Inversion{}}}, conv);
  const std::vector<double> base{0.5, 1.0, -0.5};
  const double n2 = 0.25 + 1.0 + 0.25;

  const WeightSpec spec{WeightVariant::Paravector, 1};
  const auto [left, right] = weight_pair(spec, m, conv, base, 2);
  // c x + d = -x: both weights are conjugate(-x)/|x|^2.
  const Multivector expected =
      conjugate(point_multivector(conv, base)) * (-1.0 / n2);
  CHECK(rel_diff(right.value(), expected) < 1e-13);
  CHECK(rel_diff(left, expected) < 1e-13);
}

TEST_CASE("perturbation options") {
  const Signature sig(2, 2);
  const MoebiusConvention conv{sig, false};
  const std::vector<double> base{0.5, -0.25, 1.0, 0.5};
  const WeightSpec odd{WeightVariant::OddL, 1};
  const VahlenMatrix inv = compose(GeneratorWord{{Inversion{}}}, conv);
  double n2 = 0.0;
  for (double c : base) n2 += c * c;

  WeightOptions shift;
  shift.extra_denominator_power = 1;
  const Multivector plain = right_weight_jet(odd, inv, conv, base, 2).value();
  const Multivector shifted = right_weight_jet(odd, inv, conv, base, 2, shift).value();
  CHECK(rel_diff(shifted, plain * std::pow(n2, -0.5)) < 1e-13);

  // Reversion is the identity on the grade-1 denominator of a single
  // inversion, so dropping it only matters on composed words.
  WeightOptions drop;
  drop.drop_reversion = true;
  CHECK(rel_diff(right_weight_jet(odd, inv, conv, base, 2, drop).value(), plain) < 1e-14);

  const VahlenMatrix composed =
      compose(GeneratorWord{{Inversion{}, Reflection{{0.6, 0.8}}}}, conv);
  const Multivector with_rev = right_weight_jet(odd, composed, conv, base, 2).value();
  const Multivector without = right_weight_jet(odd, composed, conv, base, 2, drop).value();
  CHECK(rel_diff(with_rev, without) > 1e-2);
}

TEST_CASE("singular base points are rejected") {
  const Signature sig(2, 2);
  const MoebiusConvention conv{sig, false};
  const VahlenMatrix inv = compose(GeneratorWord{{Inversion{}}}, conv);
  const std::vector<double> origin{0.0, 0.0, 0.0, 0.0};
  const WeightSpec odd{WeightVariant::OddL, 1};
  CHECK_THROWS_AS(right_weight_jet(odd, inv, conv, origin, 2), std::domain_error);
  CHECK_THROWS_AS(left_weight_value(odd, inv, conv, origin), std::domain_error);
}
