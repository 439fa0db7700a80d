#ifndef SLICEGRAV_WEIGHTS_HPP
#define SLICEGRAV_WEIGHTS_HPP

#include <utility>

#include "slicegrav/moebius.hpp"

namespace slicegrav {

enum class WeightVariant { OddL, EvenL, GDagger, Paravector };

/// Which intertwining weight pair to build.  l is the iteration level;
/// GDagger and Paravector fix l = 1.
struct WeightSpec {
  WeightVariant variant = WeightVariant::OddL;
  int l = 1;

  /// Enforces the parity/level invariants; the harness's negative
  /// controls construct the aggregate directly to bypass them.
  static WeightSpec validated(WeightVariant variant, int l);
};

/// Deliberate corruptions used by the negative controls.
struct WeightOptions {
  /// Added to the |c x + d| exponent of the right weight's denominator.
  int extra_denominator_power = 0;
  /// Uses c x + d in place of its reversion in the right weight.
  bool drop_reversion = false;
};

/// The weight multiplying f from the left inside the operator, as a jet:
/// odd l:  reverse(c x + d) / |c x + d|^{p+2-l}
/// even l: |c x + d|^{-p-1+l}
/// G-dagger: reverse(c x + d) / |c x + d|^{p+1}
/// paravector: conjugate(c x + d) / |c x + d|^2
FunctionJet right_weight_jet(const WeightSpec& spec, const VahlenMatrix& m,
                             const MoebiusConvention& conv, std::vector<double> base, int order,
                             const WeightOptions& options = {});

/// The value multiplying the whole expression from the left:
/// odd l:  ((c x + d) / |c x + d|^{p+2+l})^{-1}
/// even l: |c x + d|^{p+1+l}
/// G-dagger: ((c x + d) / |c x + d|^{p-1})^{-1}
/// paravector: (c x + d)^{-1}
Multivector left_weight_value(const WeightSpec& spec, const VahlenMatrix& m,
                              const MoebiusConvention& conv, std::span<const double> base);

std::pair<Multivector, FunctionJet> weight_pair(const WeightSpec& spec, const VahlenMatrix& m,
                                                const MoebiusConvention& conv,
                                                std::vector<double> base, int order);

}  // namespace slicegrav

#endif
