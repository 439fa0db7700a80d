#ifndef SLICEGRAV_CLIFFORD_HPP
#define SLICEGRAV_CLIFFORD_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace slicegrav {

/// Hard cap on the number of generators; 2^8 = 256 blade coefficients.
inline constexpr int kMaxGenerators = 8;

/// Split signature of the negative-definite algebra Cl_{p+q} (every
/// generator squares to -1).  p counts the first split factor, q the second.
struct Signature {
  int p = 0;
  int q = 0;

  Signature() = default;
  Signature(int p_, int q_);

  int dim() const noexcept { return p + q; }
  std::size_t blade_count() const noexcept { return std::size_t{1} << dim(); }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Dense element of Cl_{p+q}: 2^m real coefficients, blade index = bitmask
/// of the generators present, generators in ascending order inside a blade.
class Multivector {
 public:
  explicit Multivector(Signature sig);

  static Multivector scalar(Signature sig, double value);
  /// e_i, 1-based as in the usual notation e_1..e_m.
  static Multivector basis_vector(Signature sig, int i);
  static Multivector blade(Signature sig, unsigned mask, double coeff = 1.0);

  Signature signature() const noexcept { return sig_; }
  std::size_t size() const noexcept { return coeff_.size(); }

  double operator[](unsigned mask) const { return coeff_[mask]; }
  double& operator[](unsigned mask) { return coeff_[mask]; }
  std::span<const double> coefficients() const noexcept { return coeff_; }

  bool is_zero() const noexcept;
  double scalar_part() const noexcept { return coeff_[0]; }
  /// Euclidean norm over all blade coefficients.
  double coeff_norm() const noexcept;

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s);

  /// Accumulates s * (a b) without allocating a temporary.
  void add_scaled_product(const Multivector& a, const Multivector& b, double s = 1.0);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);

 private:
  Signature sig_;
  std::vector<double> coeff_;
};

Multivector geometric_product(const Multivector& a, const Multivector& b);

/// Blade of grade k multiplied by (-1)^{k(k-1)/2}.
Multivector reverse(const Multivector& a);
/// Blade of grade k multiplied by (-1)^{k(k+1)/2}; conjugate(e_j) = -e_j.
Multivector conjugate(const Multivector& a);
Multivector grade_project(const Multivector& a, int k);

/// Grade-1 element with component views for the p/q split.
class VectorValue {
 public:
  VectorValue(Signature sig, std::vector<double> components);

  /// Checks grade-1 purity of m against tol (relative to the coefficient norm).
  static VectorValue from_multivector(const Multivector& m, double tol = 1e-9);

  Signature signature() const noexcept { return sig_; }
  /// 0-based axis access.
  double operator[](int axis) const { return comp_[static_cast<std::size_t>(axis)]; }
  std::span<const double> components() const noexcept { return comp_; }

  Multivector to_multivector() const;
  VectorValue p_part() const;
  VectorValue q_part() const;

  double norm_sq() const noexcept;
  double norm() const noexcept;
  double q_norm() const noexcept;

  /// x^{-1} = -x / |x|^2 (all generators square to -1).
  VectorValue inverse() const;

 private:
  Signature sig_;
  std::vector<double> comp_;
};

/// Default relative tolerance for "w conj(w) is scalar" versor checks.
inline constexpr double kVersorTol = 1e-9;

/// sqrt(scalar(w conj(w))); throws std::domain_error for non-versors.
double versor_norm(const Multivector& w, double tol = kVersorTol);
/// conj(w) / scalar(w conj(w)); throws std::domain_error for non-versors
/// and for w = 0.
Multivector versor_inverse(const Multivector& w, double tol = kVersorTol);

}  // namespace slicegrav

#endif
