#ifndef SLICEGRAV_POLYNOMIAL_HPP
#define SLICEGRAV_POLYNOMIAL_HPP

#include <span>
#include <vector>

#include "slicegrav/jet.hpp"
#include "slicegrav/rng.hpp"

namespace slicegrav {

/// Clifford-coefficient polynomial in real coordinates.  Monomials are
/// real, so left and right coefficient placement coincide; coefficients
/// multiply from the left.
class Polynomial {
 public:
  struct Term {
    std::vector<int> exponents;
    Multivector coeff;
  };

  Polynomial(Signature sig, int nvars);

  Signature signature() const noexcept { return sig_; }
  int nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  int degree() const noexcept;

  /// Merges into an existing term with the same exponents if present.
  void add_term(std::vector<int> exponents, Multivector coeff);

  Multivector evaluate(std::span<const double> coords) const;

  /// Exact Taylor coefficients at x0, truncated at the given order.
  FunctionJet to_jet(std::vector<double> base, int order) const;

  /// Substitutes scalar jets for the variables: the jet of f(y(x)) at the
  /// jets' shared base point.
  FunctionJet compose_with(const std::vector<FunctionJet>& y_coords) const;

  /// Exact partial derivative, term by term.  Independent of the jet path;
  /// used as the symbolic differentiation oracle.
  Polynomial partial(int axis) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  Signature sig_;
  int nvars_;
  std::vector<Term> terms_;
};

/// Every monomial of total degree <= degree with coefficients uniform in
/// [-1, 1] on each blade of grade <= max_grade.
Polynomial random_polynomial(Signature sig, int nvars, int degree, int max_grade, Rng& rng);

/// (x_0 + x)^n over the paravector convention: nvars = sig.dim() + 1,
/// coordinate 0 is the scalar axis.  Expanded by repeated Clifford
/// multiplication of the degree-1 paravector polynomial.
Polynomial paravector_power(Signature sig, int n);

}  // namespace slicegrav

#endif
