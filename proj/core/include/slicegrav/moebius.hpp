#ifndef SLICEGRAV_MOEBIUS_HPP
#define SLICEGRAV_MOEBIUS_HPP

#include <string>
#include <variant>
#include <vector>

#include "slicegrav/jet.hpp"
#include "slicegrav/rng.hpp"

namespace slicegrav {

/// Translation along the first split factor: R^p coordinates in the
/// default convention, the scalar axis in the paravector convention.
struct Translation {
  std::vector<double> offset;
};

struct Dilation {
  double lambda = 1.0;
};

/// Unit reflection vector: in the q-part (default) or the grade-1 part
/// (paravector).  Components are stored for the relevant axes only.
struct Reflection {
  std::vector<double> axis;
};

struct Inversion {};

using Generator = std::variant<Translation, Dilation, Reflection, Inversion>;

struct GeneratorWord {
  std::vector<Generator> generators;
  /// Report syntax, e.g. `T[0.3,0,-1] D[1.7] R[q:1] I`.
  std::string to_string() const;
};

/// 2x2 Clifford-entry matrix acting by y = (a x + b)(c x + d)^{-1}.
struct VahlenMatrix {
  Multivector a, b, c, d;

  static VahlenMatrix identity(Signature sig);
};

/// Which matrix convention a group element uses.  The paravector flag
/// switches generator embedding, point arithmetic, and inverses.
struct MoebiusConvention {
  Signature sig;
  bool paravector = false;

  int nvars() const noexcept { return paravector ? sig.dim() + 1 : sig.dim(); }
};

/// Point <-> multivector transport for the active convention.
Multivector point_multivector(const MoebiusConvention& conv, std::span<const double> coords);
std::vector<double> multivector_point(const MoebiusConvention& conv, const Multivector& m,
                                      double tol = 1e-9);

VahlenMatrix generator_to_vahlen(const Generator& g, const MoebiusConvention& conv);

VahlenMatrix matrix_product(const VahlenMatrix& lhs, const VahlenMatrix& rhs);

/// Validates the Vahlen conditions: versor-or-zero entries and
/// pseudo-determinant a reverse(d) - b reverse(c) = +-1 within tol.
void validate_vahlen(const VahlenMatrix& m, double tol = 1e-9);

/// Left-to-right matrix product of the word's generator matrices; the
/// induced action applies the last generator to the point first.
VahlenMatrix compose(const GeneratorWord& word, const MoebiusConvention& conv);

/// (a x + b)(c x + d)^{-1}; throws near the singular set and when the
/// result fails the grade check for the convention.
std::vector<double> evaluate_point(const VahlenMatrix& m, const MoebiusConvention& conv,
                                   std::span<const double> coords);

/// The transformation as nvars scalar coordinate jets about a base point.
struct MapJet {
  std::vector<FunctionJet> coords;
  std::vector<double> target;  // value of the map at the base point
};

MapJet evaluate_map_jet(const VahlenMatrix& m, const MoebiusConvention& conv,
                        std::vector<double> base, int order);

/// Rejection-samples x in [-2,2]^nvars with |x_q| >= delta,
/// |c x + d| >= delta and |phi(x)_q| >= delta.  Throws after the retry
/// budget (1e5) is exhausted.
std::vector<double> sample_valid_point(const VahlenMatrix& m, const MoebiusConvention& conv,
                                       double delta, Rng& rng);

}  // namespace slicegrav

#endif
