#include "slicegrav/clifford.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace slicegrav {

namespace {

// Sign of e_A e_B for blade bitmasks A, B: transposition parity of the
// merge plus one factor of -1 per contracted generator (e_i^2 = -1).
// The table depends only on the bitmasks, so one 256x256 table serves
// every signature up to kMaxGenerators.
struct SignTable {
  std::int8_t s[256][256];
};

int product_sign(unsigned a, unsigned b) {
  unsigned t = a >> 1;
  int swaps = 0;
  while (t != 0) {
    swaps += std::popcount(t & b);
    t >>= 1;
  }
  swaps += std::popcount(a & b);  // metric contractions
  return (swaps & 1) ? -1 : 1;
}

const SignTable& sign_table() {
  static SignTable table;
  static std::once_flag built;
  std::call_once(built, [] {
    for (unsigned a = 0; a < 256; ++a)
      for (unsigned b = 0; b < 256; ++b)
        table.s[a][b] = static_cast<std::int8_t>(product_sign(a, b));
  });
  return table;
}

int involution_sign(unsigned mask, bool conjugation) {
  int k = std::popcount(mask);
  int e = conjugation ? k * (k + 1) / 2 : k * (k - 1) / 2;
  return (e & 1) ? -1 : 1;
}

void require_same_signature(const Multivector& a, const Multivector& b) {
  if (a.signature() != b.signature())
    throw std::invalid_argument("multivector signature mismatch");
}

}  // namespace

Signature::Signature(int p_, int q_) : p(p_), q(q_) {
  if (p < 0 || q < 0 || p + q < 1 || p + q > kMaxGenerators)
    throw std::invalid_argument("signature out of range");
}

Multivector::Multivector(Signature sig) : sig_(sig), coeff_(sig.blade_count(), 0.0) {}

Multivector Multivector::scalar(Signature sig, double value) {
  Multivector m(sig);
  m.coeff_[0] = value;
  return m;
}

Multivector Multivector::basis_vector(Signature sig, int i) {
  if (i < 1 || i > sig.dim()) throw std::invalid_argument("basis vector index out of range");
  return blade(sig, 1u << (i - 1));
}

Multivector Multivector::blade(Signature sig, unsigned mask, double coeff) {
  if (mask >= sig.blade_count()) throw std::invalid_argument("blade mask out of range");
  Multivector m(sig);
  m.coeff_[mask] = coeff;
  return m;
}

bool Multivector::is_zero() const noexcept {
  for (double c : coeff_)
    if (c != 0.0) return false;
  return true;
}

double Multivector::coeff_norm() const noexcept {
  double s = 0.0;
  for (double c : coeff_) s += c * c;
  return std::sqrt(s);
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  require_same_signature(*this, rhs);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += rhs.coeff_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  require_same_signature(*this, rhs);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= rhs.coeff_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeff_) c *= s;
  return *this;
}

void Multivector::add_scaled_product(const Multivector& a, const Multivector& b, double s) {
  require_same_signature(*this, a);
  require_same_signature(*this, b);
  const SignTable& signs = sign_table();
  const std::size_t n = coeff_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = a.coeff_[i];
    if (ai == 0.0) continue;
    const double sai = s * ai;
    for (std::size_t j = 0; j < n; ++j) {
      const double bj = b.coeff_[j];
      if (bj == 0.0) continue;
      coeff_[i ^ j] += signs.s[i][j] * sai * bj;
    }
  }
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  Multivector out(a.signature());
  out.add_scaled_product(a, b);
  return out;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }

Multivector reverse(const Multivector& a) {
  Multivector out(a.signature());
  for (unsigned mask = 0; mask < a.size(); ++mask)
    out[mask] = involution_sign(mask, false) * a[mask];
  return out;
}

Multivector conjugate(const Multivector& a) {
  Multivector out(a.signature());
  for (unsigned mask = 0; mask < a.size(); ++mask)
    out[mask] = involution_sign(mask, true) * a[mask];
  return out;
}

Multivector grade_project(const Multivector& a, int k) {
  if (k < 0 || k > a.signature().dim()) throw std::invalid_argument("grade out of range");
  Multivector out(a.signature());
  for (unsigned mask = 0; mask < a.size(); ++mask)
    if (std::popcount(mask) == k) out[mask] = a[mask];
  return out;
}

VectorValue::VectorValue(Signature sig, std::vector<double> components)
    : sig_(sig), comp_(std::move(components)) {
  if (static_cast<int>(comp_.size()) != sig_.dim())
    throw std::invalid_argument("component count does not match signature");
}

VectorValue VectorValue::from_multivector(const Multivector& m, double tol) {
  const Multivector v = grade_project(m, 1);
  const double rest = (m - v).coeff_norm();
  if (rest > tol * (m.coeff_norm() + 1e-300))
    throw std::domain_error("multivector is not grade-1 within tolerance");
  std::vector<double> comp(static_cast<std::size_t>(m.signature().dim()));
  for (int i = 0; i < m.signature().dim(); ++i) comp[i] = v[1u << i];
  return VectorValue(m.signature(), std::move(comp));
}

Multivector VectorValue::to_multivector() const {
  Multivector m(sig_);
  for (int i = 0; i < sig_.dim(); ++i) m[1u << i] = comp_[i];
  return m;
}

VectorValue VectorValue::p_part() const {
  std::vector<double> comp(comp_.size(), 0.0);
  for (int i = 0; i < sig_.p; ++i) comp[i] = comp_[i];
  return VectorValue(sig_, std::move(comp));
}

VectorValue VectorValue::q_part() const {
  std::vector<double> comp(comp_.size(), 0.0);
  for (int i = sig_.p; i < sig_.dim(); ++i) comp[i] = comp_[i];
  return VectorValue(sig_, std::move(comp));
}

double VectorValue::norm_sq() const noexcept {
  double s = 0.0;
  for (double c : comp_) s += c * c;
  return s;
}

double VectorValue::norm() const noexcept { return std::sqrt(norm_sq()); }

double VectorValue::q_norm() const noexcept {
  double s = 0.0;
  for (int i = sig_.p; i < sig_.dim(); ++i) s += comp_[i] * comp_[i];
  return std::sqrt(s);
}

VectorValue VectorValue::inverse() const {
  const double n2 = norm_sq();
  if (n2 == 0.0) throw std::domain_error("zero vector has no inverse");
  std::vector<double> comp(comp_.size());
  for (std::size_t i = 0; i < comp_.size(); ++i) comp[i] = -comp_[i] / n2;
  return VectorValue(sig_, std::move(comp));
}

// Both versor routines go through Clifford conjugation: in the
// negative-definite signature w conj(w) = |w|^2 >= 0 for every product
// of vectors, while w reverse(w) alternates sign with the factor count.
double versor_norm(const Multivector& w, double tol) {
  const Multivector n = w * conjugate(w);
  const double s = n.scalar_part();
  const Multivector rest = n - Multivector::scalar(w.signature(), s);
  if (rest.coeff_norm() > tol * (std::abs(s) + 1e-300))
    throw std::domain_error("not a versor: w conj(w) is not scalar");
  if (s < 0.0) throw std::domain_error("not a versor: w conj(w) is negative");
  return std::sqrt(s);
}

Multivector versor_inverse(const Multivector& w, double tol) {
  const double n = versor_norm(w, tol);
  if (n == 0.0) throw std::domain_error("zero versor has no inverse");
  return conjugate(w) * (1.0 / (n * n));
}

}  // namespace slicegrav
