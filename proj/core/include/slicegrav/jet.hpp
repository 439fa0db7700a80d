#ifndef SLICEGRAV_JET_HPP
#define SLICEGRAV_JET_HPP

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "slicegrav/clifford.hpp"

namespace slicegrav {

/// Graded-lexicographic enumeration of multi-indices with total <= order,
/// shared by every jet of the same shape.  Instances are cached and live
/// for the program's lifetime.
class MultiIndexTable {
 public:
  static const MultiIndexTable& get(int nvars, int order);

  int nvars() const noexcept { return nvars_; }
  int order() const noexcept { return order_; }
  int size() const noexcept { return static_cast<int>(exps_.size()); }

  std::span<const int> exponents(int pos) const { return exps_[static_cast<std::size_t>(pos)]; }
  int total(int pos) const { return totals_[static_cast<std::size_t>(pos)]; }
  /// Position of an exponent vector, or -1 when its total exceeds the order.
  int position(std::span<const int> exps) const;

  struct ProductEntry {
    std::int32_t lhs, rhs, out;
  };
  /// All (i, j) with total(i) + total(j) <= order, with the target position.
  const std::vector<ProductEntry>& products() const noexcept { return products_; }

 private:
  MultiIndexTable(int nvars, int order);

  int nvars_, order_;
  std::vector<std::vector<int>> exps_;
  std::vector<int> totals_;
  std::vector<ProductEntry> products_;
  std::vector<std::pair<std::uint64_t, int>> lookup_;  // sorted packed keys
};

/// Truncated Taylor expansion of a Cl_{p+q}-valued function at a base
/// point, to total order K.  coeff(alpha) = d^alpha f(x0) / alpha!.
/// The number of coordinates is independent of the algebra dimension
/// (the paravector convention uses m+1 coordinates over Cl_m).
class FunctionJet {
 public:
  FunctionJet(Signature sig, std::vector<double> base, int order);

  static FunctionJet constant(Signature sig, std::vector<double> base, int order,
                              const Multivector& value);
  /// Jet of the scalar coordinate function x_axis (0-based axis).
  static FunctionJet coordinate(Signature sig, std::vector<double> base, int order, int axis);

  Signature signature() const noexcept { return sig_; }
  int nvars() const noexcept { return static_cast<int>(base_.size()); }
  int order() const noexcept { return order_; }
  const std::vector<double>& base() const noexcept { return base_; }
  const MultiIndexTable& table() const { return MultiIndexTable::get(nvars(), order_); }

  const Multivector& coeff(int pos) const { return coeff_[static_cast<std::size_t>(pos)]; }
  Multivector& coeff(int pos) { return coeff_[static_cast<std::size_t>(pos)]; }
  const Multivector& coeff(std::span<const int> exps) const;

  Multivector value() const { return coeff_[0]; }

  FunctionJet& operator+=(const FunctionJet& rhs);
  FunctionJet& operator-=(const FunctionJet& rhs);
  FunctionJet& operator*=(double s);
  friend FunctionJet operator+(FunctionJet a, const FunctionJet& b) { return a += b; }
  friend FunctionJet operator-(FunctionJet a, const FunctionJet& b) { return a -= b; }
  friend FunctionJet operator*(FunctionJet a, double s) { return a *= s; }
  friend FunctionJet operator*(double s, FunctionJet a) { return a *= s; }

  /// Coefficient-wise constant multiplication.
  FunctionJet left_mul(const Multivector& c) const;
  FunctionJet right_mul(const Multivector& c) const;
  /// Coefficient-wise involutions (both are linear, so they act on jets).
  FunctionJet reversed() const;
  FunctionJet conjugated() const;

  /// d/dx_axis; the order drops by one.  Throws on order 0.
  FunctionJet partial(int axis) const;
  FunctionJet truncated(int new_order) const;

  /// True when every coefficient is a pure scalar within tol (relative to
  /// the largest coefficient norm).
  bool scalar_only(double tol = 0.0) const;

 private:
  Signature sig_;
  std::vector<double> base_;
  int order_;
  std::vector<Multivector> coeff_;
};

/// Truncated Cauchy product; coefficient products keep operand order.
FunctionJet jet_mul(const FunctionJet& a, const FunctionJet& b);

/// Keeps only the scalar component of every coefficient; throws when the
/// discarded part exceeds tol relative to the largest coefficient norm.
FunctionJet scalar_part_jet(const FunctionJet& a, double tol = 1e-9);

/// Taylor expansion of t -> t^alpha composed with a positive scalar jet.
/// Throws on non-scalar coefficients or non-positive value.
FunctionJet jet_scalar_power(const FunctionJet& u, double alpha);
FunctionJet jet_reciprocal(const FunctionJet& u);

/// Central finite differences for |alpha| <= 3; step 1e-4 for |alpha| <= 2
/// and 1e-3 for |alpha| = 3.  Cross-validation oracle only.
Multivector finite_difference(const std::function<Multivector(std::span<const double>)>& f,
                              std::span<const double> x0, std::span<const int> alpha);

}  // namespace slicegrav

#endif
