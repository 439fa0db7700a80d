#include "slicegrav/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace slicegrav {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

std::uint64_t pack(std::span<const int> exps) {
  std::uint64_t key = 0;
  for (int e : exps) key = (key << 8) | static_cast<std::uint64_t>(e);
  return key;
}

}  // namespace

Polynomial::Polynomial(Signature sig, int nvars) : sig_(sig), nvars_(nvars) {
  if (nvars < 1) throw std::invalid_argument("polynomial needs at least one variable");
}

int Polynomial::degree() const noexcept {
  int d = 0;
  for (const auto& t : terms_) {
    int total = 0;
    for (int e : t.exponents) total += e;
    d = std::max(d, total);
  }
  return d;
}

void Polynomial::add_term(std::vector<int> exponents, Multivector coeff) {
  if (static_cast<int>(exponents.size()) != nvars_)
    throw std::invalid_argument("term exponent count mismatch");
  for (auto& t : terms_) {
    if (t.exponents == exponents) {
      t.coeff += coeff;
      return;
    }
  }
  terms_.push_back({std::move(exponents), std::move(coeff)});
}

Multivector Polynomial::evaluate(std::span<const double> coords) const {
  if (static_cast<int>(coords.size()) != nvars_)
    throw std::invalid_argument("coordinate count mismatch");
  Multivector out(sig_);
  for (const auto& t : terms_) {
    double mono = 1.0;
    for (int v = 0; v < nvars_; ++v)
      for (int e = 0; e < t.exponents[static_cast<std::size_t>(v)]; ++e) mono *= coords[static_cast<std::size_t>(v)];
    Multivector c = t.coeff;
    c *= mono;
    out += c;
  }
  return out;
}

FunctionJet Polynomial::to_jet(std::vector<double> base, int order) const {
  if (static_cast<int>(base.size()) != nvars_)
    throw std::invalid_argument("base point dimension mismatch");
  FunctionJet out(sig_, std::move(base), order);
  const MultiIndexTable& table = out.table();
  for (const auto& t : terms_) {
    for (int pos = 0; pos < table.size(); ++pos) {
      auto alpha = table.exponents(pos);
      double factor = 1.0;
      bool fits = true;
      for (int v = 0; v < nvars_ && fits; ++v) {
        const int n = t.exponents[static_cast<std::size_t>(v)];
        const int a = alpha[static_cast<std::size_t>(v)];
        if (a > n) {
          fits = false;
          break;
        }
        factor *= binomial(n, a) * std::pow(out.base()[static_cast<std::size_t>(v)], n - a);
      }
      if (!fits || factor == 0.0) continue;
      Multivector c = t.coeff;
      c *= factor;
      out.coeff(pos) += c;
    }
  }
  return out;
}

FunctionJet Polynomial::compose_with(const std::vector<FunctionJet>& y_coords) const {
  if (static_cast<int>(y_coords.size()) != nvars_)
    throw std::invalid_argument("substitution needs one jet per variable");
  for (const auto& y : y_coords) {
    if (y.signature() != sig_) throw std::invalid_argument("substitution jet signature mismatch");
    if (y.base() != y_coords.front().base() || y.order() != y_coords.front().order())
      throw std::invalid_argument("substitution jets disagree on base point or order");
  }
  const FunctionJet& first = y_coords.front();
  FunctionJet out(sig_, first.base(), first.order());

  // Monomial jets memoized across terms; each is one jet_mul away from a
  // previously built one.
  std::map<std::uint64_t, FunctionJet> memo;
  memo.emplace(0, FunctionJet::constant(sig_, first.base(), first.order(),
                                        Multivector::scalar(sig_, 1.0)));
  auto monomial = [&](auto&& self, std::span<const int> exps) -> const FunctionJet& {
    const std::uint64_t key = pack(exps);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<int> lower(exps.begin(), exps.end());
    int axis = 0;
    while (lower[static_cast<std::size_t>(axis)] == 0) ++axis;
    lower[static_cast<std::size_t>(axis)] -= 1;
    const FunctionJet& base = self(self, lower);
    FunctionJet j = jet_mul(base, y_coords[static_cast<std::size_t>(axis)]);
    return memo.emplace(key, std::move(j)).first->second;
  };

  for (const auto& t : terms_) {
    const FunctionJet& mono = monomial(monomial, t.exponents);
    out += mono.left_mul(t.coeff);
  }
  return out;
}

Polynomial Polynomial::partial(int axis) const {
  if (axis < 0 || axis >= nvars_) throw std::invalid_argument("axis out of range");
  Polynomial out(sig_, nvars_);
  for (const auto& t : terms_) {
    const int e = t.exponents[static_cast<std::size_t>(axis)];
    if (e == 0) continue;
    std::vector<int> exps = t.exponents;
    exps[static_cast<std::size_t>(axis)] -= 1;
    Multivector c = t.coeff;
    c *= static_cast<double>(e);
    out.add_term(std::move(exps), std::move(c));
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.sig_ != b.sig_ || a.nvars_ != b.nvars_)
    throw std::invalid_argument("polynomial shape mismatch");
  Polynomial out = a;
  for (const auto& t : b.terms_) out.add_term(t.exponents, t.coeff);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.sig_ != b.sig_ || a.nvars_ != b.nvars_)
    throw std::invalid_argument("polynomial shape mismatch");
  Polynomial out(a.sig_, a.nvars_);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      std::vector<int> exps(static_cast<std::size_t>(a.nvars_));
      for (int v = 0; v < a.nvars_; ++v)
        exps[static_cast<std::size_t>(v)] = ta.exponents[static_cast<std::size_t>(v)] +
                                            tb.exponents[static_cast<std::size_t>(v)];
      out.add_term(std::move(exps), ta.coeff * tb.coeff);
    }
  }
  return out;
}

Polynomial random_polynomial(Signature sig, int nvars, int degree, int max_grade, Rng& rng) {
  Polynomial out(sig, nvars);
  const MultiIndexTable& table = MultiIndexTable::get(nvars, degree);
  for (int pos = 0; pos < table.size(); ++pos) {
    Multivector c(sig);
    for (unsigned mask = 0; mask < sig.blade_count(); ++mask)
      if (std::popcount(mask) <= max_grade) c[mask] = rng.uniform(-1.0, 1.0);
    auto exps = table.exponents(pos);
    out.add_term(std::vector<int>(exps.begin(), exps.end()), std::move(c));
  }
  return out;
}

Polynomial paravector_power(Signature sig, int n) {
  const int nvars = sig.dim() + 1;
  Polynomial base(sig, nvars);
  {
    std::vector<int> exps(static_cast<std::size_t>(nvars), 0);
    exps[0] = 1;
    base.add_term(exps, Multivector::scalar(sig, 1.0));
  }
  for (int j = 1; j <= sig.dim(); ++j) {
    std::vector<int> exps(static_cast<std::size_t>(nvars), 0);
    exps[static_cast<std::size_t>(j)] = 1;
    base.add_term(exps, Multivector::basis_vector(sig, j));
  }
  Polynomial out(sig, nvars);
  out.add_term(std::vector<int>(static_cast<std::size_t>(nvars), 0), Multivector::scalar(sig, 1.0));
  for (int k = 0; k < n; ++k) out = out * base;
  return out;
}

}  // namespace slicegrav
