#include "slicegrav/moebius.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace slicegrav {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string format_list(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_number(values[i]);
  }
  return out;
}

/// Norm of the second split factor's coordinates.
double split_q_norm(const MoebiusConvention& conv, std::span<const double> coords) {
  double s = 0.0;
  const int lo = conv.paravector ? 1 : conv.sig.p;
  for (int i = lo; i < conv.nvars(); ++i) s += coords[static_cast<std::size_t>(i)] * coords[static_cast<std::size_t>(i)];
  return std::sqrt(s);
}

void check_versor_or_zero(const Multivector& m, double tol) {
  if (m.is_zero()) return;
  (void)versor_norm(m, tol);  // throws on failure
}

/// Largest grade allowed in a transformed point.
bool grade_allowed(const MoebiusConvention& conv, unsigned mask) {
  const int g = std::popcount(mask);
  return conv.paravector ? g <= 1 : g == 1;
}

}  // namespace

std::string GeneratorWord::to_string() const {
  std::string out;
  for (const auto& g : generators) {
    if (!out.empty()) out += " ";
    if (const auto* t = std::get_if<Translation>(&g)) {
      out += "T[" + format_list(t->offset) + "]";
    } else if (const auto* d = std::get_if<Dilation>(&g)) {
      out += "D[" + format_number(d->lambda) + "]";
    } else if (const auto* r = std::get_if<Reflection>(&g)) {
      out += "R[" + format_list(r->axis) + "]";
    } else {
      out += "I";
    }
  }
  return out.empty() ? "id" : out;
}

VahlenMatrix VahlenMatrix::identity(Signature sig) {
  return {Multivector::scalar(sig, 1.0), Multivector(sig), Multivector(sig),
          Multivector::scalar(sig, 1.0)};
}

Multivector point_multivector(const MoebiusConvention& conv, std::span<const double> coords) {
  if (static_cast<int>(coords.size()) != conv.nvars())
    throw std::invalid_argument("point dimension mismatch");
  Multivector m(conv.sig);
  if (conv.paravector) {
    m[0] = coords[0];
    for (int j = 1; j <= conv.sig.dim(); ++j) m[1u << (j - 1)] = coords[static_cast<std::size_t>(j)];
  } else {
    for (int i = 0; i < conv.sig.dim(); ++i) m[1u << i] = coords[static_cast<std::size_t>(i)];
  }
  return m;
}

std::vector<double> multivector_point(const MoebiusConvention& conv, const Multivector& m,
                                      double tol) {
  double residue = 0.0;
  for (unsigned mask = 0; mask < m.size(); ++mask)
    if (!grade_allowed(conv, mask)) residue += m[mask] * m[mask];
  if (std::sqrt(residue) > tol * (m.coeff_norm() + 1e-300))
    throw std::domain_error("transformed point has a non-vector residue beyond tolerance");
  std::vector<double> coords(static_cast<std::size_t>(conv.nvars()));
  if (conv.paravector) {
    coords[0] = m[0];
    for (int j = 1; j <= conv.sig.dim(); ++j) coords[static_cast<std::size_t>(j)] = m[1u << (j - 1)];
  } else {
    for (int i = 0; i < conv.sig.dim(); ++i) coords[static_cast<std::size_t>(i)] = m[1u << i];
  }
  return coords;
}

VahlenMatrix generator_to_vahlen(const Generator& g, const MoebiusConvention& conv) {
  const Signature sig = conv.sig;
  VahlenMatrix m = VahlenMatrix::identity(sig);
  if (const auto* t = std::get_if<Translation>(&g)) {
    if (conv.paravector) {
      if (t->offset.size() != 1)
        throw std::invalid_argument("paravector translation takes one scalar component");
      m.b = Multivector::scalar(sig, t->offset[0]);
    } else {
      if (static_cast<int>(t->offset.size()) != sig.p)
        throw std::invalid_argument("translation offset must lie in R^p");
      m.b = Multivector(sig);
      for (int i = 0; i < sig.p; ++i) m.b[1u << i] = t->offset[static_cast<std::size_t>(i)];
    }
  } else if (const auto* d = std::get_if<Dilation>(&g)) {
    if (d->lambda == 0.0) throw std::invalid_argument("dilation factor must be nonzero");
    m.a = Multivector::scalar(sig, d->lambda);
    m.d = Multivector::scalar(sig, 1.0 / d->lambda);
  } else if (const auto* r = std::get_if<Reflection>(&g)) {
    const int naxes = conv.paravector ? sig.dim() : sig.q;
    if (static_cast<int>(r->axis.size()) != naxes)
      throw std::invalid_argument("reflection axis has the wrong number of components");
    double n2 = 0.0;
    for (double c : r->axis) n2 += c * c;
    if (std::abs(n2 - 1.0) > 1e-9) throw std::invalid_argument("reflection axis must be unit");
    Multivector a(sig);
    const int first = conv.paravector ? 0 : sig.p;
    for (int i = 0; i < naxes; ++i) a[1u << (first + i)] = r->axis[static_cast<std::size_t>(i)];
    m.a = a;
    // For a unit vector a^{-1} = -a, so the matrix is (a, 0; 0, a^{-1})
    // and the induced action is y = a x a.
    m.d = -a;
  } else {
    m.a = Multivector(sig);
    m.b = Multivector::scalar(sig, 1.0);
    m.c = Multivector::scalar(sig, -1.0);
    m.d = Multivector(sig);
  }
  return m;
}

VahlenMatrix matrix_product(const VahlenMatrix& lhs, const VahlenMatrix& rhs) {
  return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
          lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

void validate_vahlen(const VahlenMatrix& m, double tol) {
  check_versor_or_zero(m.a, tol);
  check_versor_or_zero(m.b, tol);
  check_versor_or_zero(m.c, tol);
  check_versor_or_zero(m.d, tol);
  const Multivector det = m.a * reverse(m.d) - m.b * reverse(m.c);
  const double s = det.scalar_part();
  const Multivector rest = det - Multivector::scalar(det.signature(), s);
  if (rest.coeff_norm() > tol || std::abs(std::abs(s) - 1.0) > tol)
    throw std::runtime_error("Vahlen pseudo-determinant is not +-1");
  for (const Multivector& x :
       {m.a * reverse(m.b), m.c * reverse(m.d), reverse(m.b) * m.c, reverse(m.d) * m.a}) {
    Multivector high(x.signature());
    for (unsigned mask = 0; mask < x.size(); ++mask)
      if (std::popcount(mask) > 1) high[mask] = x[mask];
    if (high.coeff_norm() > tol * (x.coeff_norm() + 1.0))
      throw std::runtime_error("Vahlen pairing condition violated");
  }
}

VahlenMatrix compose(const GeneratorWord& word, const MoebiusConvention& conv) {
  VahlenMatrix out = VahlenMatrix::identity(conv.sig);
  for (const auto& g : word.generators) out = matrix_product(out, generator_to_vahlen(g, conv));
  validate_vahlen(out);
  return out;
}

std::vector<double> evaluate_point(const VahlenMatrix& m, const MoebiusConvention& conv,
                                   std::span<const double> coords) {
  const Multivector x = point_multivector(conv, coords);
  const Multivector numer = m.a * x + m.b;
  const Multivector denom = m.c * x + m.d;
  const Multivector y = numer * versor_inverse(denom);
  return multivector_point(conv, y);
}

MapJet evaluate_map_jet(const VahlenMatrix& m, const MoebiusConvention& conv,
                        std::vector<double> base, int order) {
  const Signature sig = conv.sig;
  const int nvars = conv.nvars();
  if (static_cast<int>(base.size()) != nvars)
    throw std::invalid_argument("base point dimension mismatch");

  // The identity map as a multivector-valued jet.
  FunctionJet X(sig, base, order);
  for (int axis = 0; axis < nvars; ++axis) {
    Multivector dir = conv.paravector
                          ? (axis == 0 ? Multivector::scalar(sig, 1.0)
                                       : Multivector::basis_vector(sig, axis))
                          : Multivector::basis_vector(sig, axis + 1);
    X += FunctionJet::coordinate(sig, base, order, axis).left_mul(dir);
  }

  FunctionJet numer = X.left_mul(m.a) + FunctionJet::constant(sig, base, order, m.b);
  FunctionJet denom = X.left_mul(m.c) + FunctionJet::constant(sig, base, order, m.d);

  FunctionJet denom_norm_sq = scalar_part_jet(jet_mul(denom, denom.conjugated()), kVersorTol);
  if (denom_norm_sq.value().scalar_part() <= 0.0)
    throw std::domain_error("map is singular at the base point");
  FunctionJet denom_inv = jet_mul(denom.conjugated(), jet_reciprocal(denom_norm_sq));
  FunctionJet y = jet_mul(numer, denom_inv);

  // Grade check: the image of a point stays a point.
  double scale = 0.0;
  for (int pos = 0; pos < y.table().size(); ++pos)
    scale = std::max(scale, y.coeff(pos).coeff_norm());
  std::vector<FunctionJet> coords;
  coords.reserve(static_cast<std::size_t>(nvars));
  for (int axis = 0; axis < nvars; ++axis) coords.emplace_back(sig, base, order);
  for (int pos = 0; pos < y.table().size(); ++pos) {
    const Multivector& c = y.coeff(pos);
    double residue = 0.0;
    for (unsigned mask = 0; mask < c.size(); ++mask)
      if (!grade_allowed(conv, mask)) residue += c[mask] * c[mask];
    if (std::sqrt(residue) > 1e-9 * (scale + 1e-300))
      throw std::domain_error("map jet has a non-vector residue beyond tolerance");
    for (int axis = 0; axis < nvars; ++axis) {
      const double comp = conv.paravector ? (axis == 0 ? c[0] : c[1u << (axis - 1)])
                                          : c[1u << axis];
      coords[static_cast<std::size_t>(axis)].coeff(pos) = Multivector::scalar(sig, comp);
    }
  }

  MapJet out{std::move(coords), {}};
  out.target.resize(static_cast<std::size_t>(nvars));
  for (int axis = 0; axis < nvars; ++axis)
    out.target[static_cast<std::size_t>(axis)] =
        out.coords[static_cast<std::size_t>(axis)].value().scalar_part();
  return out;
}

std::vector<double> sample_valid_point(const VahlenMatrix& m, const MoebiusConvention& conv,
                                       double delta, Rng& rng) {
  if (delta <= 0.0) throw std::invalid_argument("clearance must be positive");
  constexpr int kRetryBudget = 100000;
  std::vector<double> coords(static_cast<std::size_t>(conv.nvars()));
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    for (double& c : coords) c = rng.uniform(-2.0, 2.0);
    if (split_q_norm(conv, coords) < delta) continue;
    const Multivector denom = m.c * point_multivector(conv, coords) + m.d;
    double denom_norm;
    try {
      denom_norm = versor_norm(denom);
    } catch (const std::domain_error&) {
      continue;
    }
    if (denom_norm < delta) continue;
    try {
      const std::vector<double> image = evaluate_point(m, conv, coords);
      if (split_q_norm(conv, image) < delta) continue;
    } catch (const std::domain_error&) {
      continue;
    }
    return coords;
  }
  throw std::runtime_error("sample_valid_point: retry budget exhausted");
}

}  // namespace slicegrav
