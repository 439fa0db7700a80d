#include "slicegrav/operators.hpp"

#include <stdexcept>
#include <string>

namespace slicegrav {

OperatorContext::OperatorContext(Signature sig_, std::vector<double> base_, bool paravector_)
    : sig(sig_), base(std::move(base_)), paravector(paravector_) {
  const int expected = paravector ? sig.dim() + 1 : sig.dim();
  if (static_cast<int>(base.size()) != expected)
    throw std::invalid_argument("base point dimension does not match convention");
}

FunctionJet OperatorContext::coordinate_jet(int axis, int order) const {
  return FunctionJet::coordinate(sig, base, order, axis);
}

FunctionJet OperatorContext::q_vector_jet(int order) const {
  if (paravector) throw std::logic_error("q_vector_jet is for the default convention");
  FunctionJet out(sig, base, order);
  for (int i = sig.p; i < sig.dim(); ++i)
    out += coordinate_jet(i, order).left_mul(Multivector::basis_vector(sig, i + 1));
  return out;
}

FunctionJet OperatorContext::q_norm_sq_jet(int order) const {
  if (paravector) throw std::logic_error("q_norm_sq_jet is for the default convention");
  FunctionJet out(sig, base, order);
  for (int i = sig.p; i < sig.dim(); ++i) {
    FunctionJet xi = coordinate_jet(i, order);
    out += jet_mul(xi, xi);
  }
  return out;
}

FunctionJet OperatorContext::underline_jet(int order) const {
  if (!paravector) throw std::logic_error("underline_jet needs the paravector convention");
  FunctionJet out(sig, base, order);
  for (int j = 1; j <= sig.dim(); ++j)
    out += coordinate_jet(j, order).left_mul(Multivector::basis_vector(sig, j));
  return out;
}

FunctionJet OperatorContext::underline_norm_sq_jet(int order) const {
  if (!paravector) throw std::logic_error("underline_norm_sq_jet needs the paravector convention");
  FunctionJet out(sig, base, order);
  for (int j = 1; j <= sig.dim(); ++j) {
    FunctionJet xj = coordinate_jet(j, order);
    out += jet_mul(xj, xj);
  }
  return out;
}

double OperatorContext::q_norm_sq_at_base() const {
  double s = 0.0;
  if (paravector) {
    for (int j = 1; j <= sig.dim(); ++j) s += base[static_cast<std::size_t>(j)] * base[static_cast<std::size_t>(j)];
  } else {
    for (int i = sig.p; i < sig.dim(); ++i) s += base[static_cast<std::size_t>(i)] * base[static_cast<std::size_t>(i)];
  }
  return s;
}

namespace {

void require_default(const OperatorContext& ctx, const char* what) {
  if (ctx.paravector) throw std::logic_error(std::string(what) + " needs the default convention");
}

void require_order(const FunctionJet& f, int needed) {
  if (f.order() < needed) throw std::domain_error("jet order exhausted");
}

std::pair<int, int> axis_span(AxisRange part, const OperatorContext& ctx) {
  switch (part) {
    case AxisRange::PPart:
      return {0, ctx.sig.p};
    case AxisRange::QPart:
      return {ctx.sig.p, ctx.sig.dim()};
    case AxisRange::Full:
      return {0, ctx.nvars()};
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FunctionJet apply_dirac(const FunctionJet& f, AxisRange part, const OperatorContext& ctx) {
  require_default(ctx, "apply_dirac");
  require_order(f, 1);
  auto [lo, hi] = axis_span(part, ctx);
  FunctionJet out(ctx.sig, ctx.base, f.order() - 1);
  for (int i = lo; i < hi; ++i)
    out += f.partial(i).left_mul(Multivector::basis_vector(ctx.sig, i + 1));
  return out;
}

FunctionJet apply_euler(const FunctionJet& f, AxisRange part, const OperatorContext& ctx) {
  require_order(f, 1);
  auto [lo, hi] = axis_span(part, ctx);
  FunctionJet out(ctx.sig, ctx.base, f.order() - 1);
  for (int i = lo; i < hi; ++i)
    out += jet_mul(ctx.coordinate_jet(i, f.order() - 1), f.partial(i));
  return out;
}

FunctionJet apply_G(const FunctionJet& f, const OperatorContext& ctx) {
  require_default(ctx, "apply_G");
  require_order(f, 1);
  if (ctx.q_norm_sq_at_base() == 0.0)
    throw std::domain_error("G is singular on R^p: |x_q| = 0 at the base point");
  const int k = f.order() - 1;
  // Multiplier rebuilt at the working order on every application.
  FunctionJet multiplier = jet_mul(ctx.q_vector_jet(k), jet_reciprocal(ctx.q_norm_sq_jet(k)));
  return apply_dirac(f, AxisRange::PPart, ctx) +
         jet_mul(multiplier, apply_euler(f, AxisRange::QPart, ctx));
}

FunctionJet apply_G_iterated(const FunctionJet& f, int l, const OperatorContext& ctx) {
  if (l < 1) throw std::invalid_argument("iteration level must be positive");
  require_order(f, l);
  FunctionJet out = f;
  for (int i = 0; i < l; ++i) out = apply_G(out, ctx);
  return out;
}

FunctionJet apply_G_dagger(const FunctionJet& f, const OperatorContext& ctx) {
  require_default(ctx, "apply_G_dagger");
  require_order(f, 1);
  const int k = f.order() - 1;
  return jet_mul(ctx.q_norm_sq_jet(k), apply_dirac(f, AxisRange::PPart, ctx)) +
         jet_mul(ctx.q_vector_jet(k), apply_euler(f, AxisRange::QPart, ctx));
}

FunctionJet apply_G_paravector(const FunctionJet& f, const OperatorContext& ctx) {
  if (!ctx.paravector) throw std::logic_error("apply_G_paravector needs a paravector context");
  require_order(f, 1);
  const int k = f.order() - 1;
  FunctionJet euler_part(ctx.sig, ctx.base, k);
  for (int j = 1; j <= ctx.sig.dim(); ++j)
    euler_part += jet_mul(ctx.coordinate_jet(j, k), f.partial(j));
  return jet_mul(ctx.underline_norm_sq_jet(k), f.partial(0)) +
         jet_mul(ctx.underline_jet(k), euler_part);
}

FunctionJet multiply_by(const FunctionJet& f, const FunctionJet& g, bool left) {
  return left ? jet_mul(g, f) : jet_mul(f, g);
}

}  // namespace slicegrav
