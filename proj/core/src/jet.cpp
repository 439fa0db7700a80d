#include "slicegrav/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace slicegrav {

namespace {

std::uint64_t pack_exponents(std::span<const int> exps) {
  std::uint64_t key = 0;
  for (int e : exps) key = (key << 8) | static_cast<std::uint64_t>(e);
  return key;
}

void require_compatible(const FunctionJet& a, const FunctionJet& b) {
  if (a.signature() != b.signature() || a.order() != b.order() || a.base() != b.base())
    throw std::invalid_argument("jet base point / order / signature mismatch");
}

}  // namespace

MultiIndexTable::MultiIndexTable(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || nvars > kMaxGenerators + 1 || order < 0)
    throw std::invalid_argument("multi-index table shape out of range");
  std::vector<int> exps(static_cast<std::size_t>(nvars), 0);
  // Graded lex: by total degree, then lexicographic in the exponent vector.
  auto emit = [&](auto&& self, int axis, int remaining) -> void {
    if (axis == nvars - 1) {
      exps[static_cast<std::size_t>(axis)] = remaining;
      exps_.push_back(exps);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      exps[static_cast<std::size_t>(axis)] = e;
      self(self, axis + 1, remaining - e);
    }
  };
  for (int total = 0; total <= order; ++total) emit(emit, 0, total);

  totals_.resize(exps_.size());
  lookup_.reserve(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    int t = 0;
    for (int e : exps_[i]) t += e;
    totals_[i] = t;
    lookup_.emplace_back(pack_exponents(exps_[i]), static_cast<int>(i));
  }
  std::sort(lookup_.begin(), lookup_.end());

  std::vector<int> sum(static_cast<std::size_t>(nvars));
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    for (std::size_t j = 0; j < exps_.size(); ++j) {
      if (totals_[i] + totals_[j] > order) continue;
      for (int v = 0; v < nvars; ++v)
        sum[static_cast<std::size_t>(v)] = exps_[i][static_cast<std::size_t>(v)] +
                                           exps_[j][static_cast<std::size_t>(v)];
      products_.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                           static_cast<std::int32_t>(position(sum))});
    }
  }
}

int MultiIndexTable::position(std::span<const int> exps) const {
  const std::uint64_t key = pack_exponents(exps);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(key, 0));
  if (it == lookup_.end() || it->first != key) return -1;
  return it->second;
}

const MultiIndexTable& MultiIndexTable::get(int nvars, int order) {
  static std::map<std::pair<int, int>, MultiIndexTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({nvars, order});
  if (it == cache.end())
    it = cache.emplace(std::make_pair(nvars, order), MultiIndexTable(nvars, order)).first;
  return it->second;
}

FunctionJet::FunctionJet(Signature sig, std::vector<double> base, int order)
    : sig_(sig), base_(std::move(base)), order_(order) {
  if (base_.empty()) throw std::invalid_argument("jet needs at least one coordinate");
  coeff_.assign(static_cast<std::size_t>(table().size()), Multivector(sig_));
}

FunctionJet FunctionJet::constant(Signature sig, std::vector<double> base, int order,
                                  const Multivector& value) {
  FunctionJet j(sig, std::move(base), order);
  j.coeff_[0] = value;
  return j;
}

FunctionJet FunctionJet::coordinate(Signature sig, std::vector<double> base, int order, int axis) {
  if (axis < 0 || axis >= static_cast<int>(base.size()))
    throw std::invalid_argument("coordinate axis out of range");
  FunctionJet j(sig, std::move(base), order);
  j.coeff_[0] = Multivector::scalar(sig, j.base_[static_cast<std::size_t>(axis)]);
  if (order >= 1) {
    std::vector<int> exps(j.base_.size(), 0);
    exps[static_cast<std::size_t>(axis)] = 1;
    j.coeff_[static_cast<std::size_t>(j.table().position(exps))] = Multivector::scalar(sig, 1.0);
  }
  return j;
}

const Multivector& FunctionJet::coeff(std::span<const int> exps) const {
  const int pos = table().position(exps);
  if (pos < 0) throw std::invalid_argument("multi-index outside jet order");
  return coeff_[static_cast<std::size_t>(pos)];
}

FunctionJet& FunctionJet::operator+=(const FunctionJet& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += rhs.coeff_[i];
  return *this;
}

FunctionJet& FunctionJet::operator-=(const FunctionJet& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= rhs.coeff_[i];
  return *this;
}

FunctionJet& FunctionJet::operator*=(double s) {
  for (auto& c : coeff_) c *= s;
  return *this;
}

FunctionJet FunctionJet::left_mul(const Multivector& c) const {
  FunctionJet out(sig_, base_, order_);
  for (std::size_t i = 0; i < coeff_.size(); ++i)
    if (!coeff_[i].is_zero()) out.coeff_[i].add_scaled_product(c, coeff_[i]);
  return out;
}

FunctionJet FunctionJet::right_mul(const Multivector& c) const {
  FunctionJet out(sig_, base_, order_);
  for (std::size_t i = 0; i < coeff_.size(); ++i)
    if (!coeff_[i].is_zero()) out.coeff_[i].add_scaled_product(coeff_[i], c);
  return out;
}

FunctionJet FunctionJet::reversed() const {
  FunctionJet out(sig_, base_, order_);
  for (std::size_t i = 0; i < coeff_.size(); ++i) out.coeff_[i] = reverse(coeff_[i]);
  return out;
}

FunctionJet FunctionJet::conjugated() const {
  FunctionJet out(sig_, base_, order_);
  for (std::size_t i = 0; i < coeff_.size(); ++i) out.coeff_[i] = conjugate(coeff_[i]);
  return out;
}

FunctionJet FunctionJet::partial(int axis) const {
  if (order_ < 1) throw std::domain_error("cannot differentiate an order-0 jet");
  if (axis < 0 || axis >= nvars()) throw std::invalid_argument("axis out of range");
  FunctionJet out(sig_, base_, order_ - 1);
  const MultiIndexTable& src = table();
  const MultiIndexTable& dst = out.table();
  std::vector<int> exps(static_cast<std::size_t>(nvars()));
  for (int pos = 0; pos < dst.size(); ++pos) {
    auto e = dst.exponents(pos);
    std::copy(e.begin(), e.end(), exps.begin());
    exps[static_cast<std::size_t>(axis)] += 1;
    const int srcPos = src.position(exps);
    out.coeff_[static_cast<std::size_t>(pos)] =
        coeff_[static_cast<std::size_t>(srcPos)] *
        static_cast<double>(exps[static_cast<std::size_t>(axis)]);
  }
  return out;
}

FunctionJet FunctionJet::truncated(int new_order) const {
  if (new_order > order_) throw std::invalid_argument("cannot extend a jet by truncation");
  FunctionJet out(sig_, base_, new_order);
  const int n = out.table().size();
  for (int pos = 0; pos < n; ++pos)
    out.coeff_[static_cast<std::size_t>(pos)] = coeff_[static_cast<std::size_t>(pos)];
  return out;
}

bool FunctionJet::scalar_only(double tol) const {
  double scale = 0.0;
  for (const auto& c : coeff_) scale = std::max(scale, c.coeff_norm());
  for (const auto& c : coeff_) {
    double rest = 0.0;
    for (unsigned mask = 1; mask < c.size(); ++mask) rest += c[mask] * c[mask];
    if (std::sqrt(rest) > tol * (scale + 1e-300)) return false;
  }
  return true;
}

FunctionJet jet_mul(const FunctionJet& a, const FunctionJet& b) {
  require_compatible(a, b);
  FunctionJet out(a.signature(), a.base(), a.order());
  for (const auto& e : a.table().products()) {
    const Multivector& ca = a.coeff(e.lhs);
    if (ca.is_zero()) continue;
    const Multivector& cb = b.coeff(e.rhs);
    if (cb.is_zero()) continue;
    out.coeff(e.out).add_scaled_product(ca, cb);
  }
  return out;
}

FunctionJet scalar_part_jet(const FunctionJet& a, double tol) {
  if (!a.scalar_only(tol)) throw std::domain_error("jet has a non-scalar residue beyond tolerance");
  FunctionJet out(a.signature(), a.base(), a.order());
  const int n = a.table().size();
  for (int i = 0; i < n; ++i)
    out.coeff(i) = Multivector::scalar(a.signature(), a.coeff(i).scalar_part());
  return out;
}

FunctionJet jet_scalar_power(const FunctionJet& u, double alpha) {
  if (!u.scalar_only(1e-12)) throw std::domain_error("jet_scalar_power needs a scalar jet");
  const double u0 = u.value().scalar_part();
  if (u0 <= 0.0) throw std::domain_error("jet_scalar_power needs a positive base value");

  const MultiIndexTable& table = u.table();
  const int n = table.size();
  const int K = u.order();

  // v = u - u0 as a plain scalar series with zero constant term.
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = u.coeff(i).scalar_part();
  v[0] = 0.0;

  // Exact univariate coefficients alpha(alpha-1)...(alpha-k+1)/k! u0^{alpha-k};
  // no logarithm detour.
  std::vector<double> c(static_cast<std::size_t>(K) + 1);
  double binom = 1.0;
  for (int k = 0; k <= K; ++k) {
    c[static_cast<std::size_t>(k)] = binom * std::pow(u0, alpha - k);
    binom *= (alpha - k) / (k + 1);
  }

  auto cauchy = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (const auto& e : table.products()) {
      const double xv = x[static_cast<std::size_t>(e.lhs)];
      if (xv == 0.0) continue;
      out[static_cast<std::size_t>(e.out)] += xv * y[static_cast<std::size_t>(e.rhs)];
    }
    return out;
  };

  std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
  acc[0] = c[0];
  std::vector<double> vpow = v;
  for (int k = 1; k <= K; ++k) {
    for (int i = 0; i < n; ++i)
      acc[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(k)] * vpow[static_cast<std::size_t>(i)];
    if (k < K) vpow = cauchy(vpow, v);
  }

  FunctionJet out(u.signature(), u.base(), K);
  for (int i = 0; i < n; ++i)
    out.coeff(i) = Multivector::scalar(u.signature(), acc[static_cast<std::size_t>(i)]);
  return out;
}

FunctionJet jet_reciprocal(const FunctionJet& u) { return jet_scalar_power(u, -1.0); }

Multivector finite_difference(const std::function<Multivector(std::span<const double>)>& f,
                              std::span<const double> x0, std::span<const int> alpha) {
  int total = 0;
  int axis = -1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    total += alpha[i];
    if (axis < 0 && alpha[i] > 0) axis = static_cast<int>(i);
  }
  if (total > 3) throw std::invalid_argument("finite_difference supports |alpha| <= 3 only");
  if (total == 0) return f(x0);

  const double h = (total <= 2) ? 1e-4 : 1e-3;
  std::vector<int> rest(alpha.begin(), alpha.end());
  rest[static_cast<std::size_t>(axis)] -= 1;
  std::vector<double> xp(x0.begin(), x0.end());
  std::vector<double> xm(x0.begin(), x0.end());
  xp[static_cast<std::size_t>(axis)] += h;
  xm[static_cast<std::size_t>(axis)] -= h;
  Multivector d = finite_difference(f, xp, rest);
  d -= finite_difference(f, xm, rest);
  d *= 1.0 / (2.0 * h);
  return d;
}

}  // namespace slicegrav
