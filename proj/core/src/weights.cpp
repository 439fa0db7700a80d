#include "slicegrav/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace slicegrav {

namespace {

FunctionJet denominator_jet(const VahlenMatrix& m, const MoebiusConvention& conv,
                            const std::vector<double>& base, int order) {
  const Signature sig = conv.sig;
  FunctionJet X(sig, base, order);
  for (int axis = 0; axis < conv.nvars(); ++axis) {
    Multivector dir = conv.paravector
                          ? (axis == 0 ? Multivector::scalar(sig, 1.0)
                                       : Multivector::basis_vector(sig, axis))
                          : Multivector::basis_vector(sig, axis + 1);
    X += FunctionJet::coordinate(sig, base, order, axis).left_mul(dir);
  }
  return X.left_mul(m.c) + FunctionJet::constant(sig, base, order, m.d);
}

}  // namespace

WeightSpec WeightSpec::validated(WeightVariant variant, int l) {
  switch (variant) {
    case WeightVariant::OddL:
      if (l < 1 || l % 2 == 0) throw std::invalid_argument("odd-l weights need odd l >= 1");
      break;
    case WeightVariant::EvenL:
      if (l < 2 || l % 2 == 1) throw std::invalid_argument("even-l weights need even l >= 2");
      break;
    case WeightVariant::GDagger:
    case WeightVariant::Paravector:
      if (l != 1) throw std::invalid_argument("this weight variant fixes l = 1");
      break;
  }
  return {variant, l};
}

FunctionJet right_weight_jet(const WeightSpec& spec, const VahlenMatrix& m,
                             const MoebiusConvention& conv, std::vector<double> base, int order,
                             const WeightOptions& options) {
  const int p = conv.paravector ? 1 : conv.sig.p;
  FunctionJet w = denominator_jet(m, conv, base, order);
  FunctionJet norm_sq = scalar_part_jet(jet_mul(w, w.conjugated()), kVersorTol);
  if (norm_sq.value().scalar_part() <= 0.0)
    throw std::domain_error("weight is singular at the base point");

  int denom_power = 0;  // exponent of |c x + d| dividing the weight
  bool scalar_weight = false;
  bool use_conjugation = false;
  switch (spec.variant) {
    case WeightVariant::OddL:
      denom_power = p + 2 - spec.l;
      break;
    case WeightVariant::EvenL:
      denom_power = p + 1 - spec.l;
      scalar_weight = true;
      break;
    case WeightVariant::GDagger:
      denom_power = p + 1;
      break;
    case WeightVariant::Paravector:
      denom_power = 2;
      use_conjugation = true;
      break;
  }
  denom_power += options.extra_denominator_power;

  FunctionJet scale = jet_scalar_power(norm_sq, -0.5 * denom_power);
  if (scalar_weight) return scale;
  FunctionJet numer = options.drop_reversion ? w : (use_conjugation ? w.conjugated() : w.reversed());
  return jet_mul(numer, scale);
}

Multivector left_weight_value(const WeightSpec& spec, const VahlenMatrix& m,
                              const MoebiusConvention& conv, std::span<const double> base) {
  const int p = conv.paravector ? 1 : conv.sig.p;
  const Multivector w = m.c * point_multivector(conv, base) + m.d;
  const double norm = versor_norm(w);
  if (norm <= 0.0) throw std::domain_error("weight is singular at the base point");
  // The vector-valued left weights invert the conjugate of c x + d; on the
  // scalar denominators of translations and dilations this coincides with
  // inverting c x + d itself, and on vector/versor denominators it supplies
  // the sign that makes the reflection and inversion cases close.
  switch (spec.variant) {
    case WeightVariant::OddL:
      return versor_inverse(conjugate(w) * std::pow(norm, -(p + 2 + spec.l)));
    case WeightVariant::EvenL:
      return Multivector::scalar(conv.sig, std::pow(norm, p + 1 + spec.l));
    case WeightVariant::GDagger:
      return versor_inverse(conjugate(w) * std::pow(norm, -(p - 1)));
    case WeightVariant::Paravector:
      return versor_inverse(w);
  }
  throw std::logic_error("unreachable");
}

std::pair<Multivector, FunctionJet> weight_pair(const WeightSpec& spec, const VahlenMatrix& m,
                                                const MoebiusConvention& conv,
                                                std::vector<double> base, int order) {
  Multivector left = left_weight_value(spec, m, conv, base);
  FunctionJet right = right_weight_jet(spec, m, conv, std::move(base), order);
  return {std::move(left), std::move(right)};
}

}  // namespace slicegrav
