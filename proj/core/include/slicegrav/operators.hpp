#ifndef SLICEGRAV_OPERATORS_HPP
#define SLICEGRAV_OPERATORS_HPP

#include <vector>

#include "slicegrav/jet.hpp"

namespace slicegrav {

enum class AxisRange { PPart, QPart, Full };

/// Base point plus convention for the differential operators.  In the
/// default convention the coordinates are x_1..x_{p+q} matching the
/// generators; in the paravector convention there are dim()+1 coordinates
/// with coordinate 0 on the scalar axis.
struct OperatorContext {
  Signature sig;
  std::vector<double> base;
  bool paravector = false;

  OperatorContext(Signature sig_, std::vector<double> base_, bool paravector_ = false);

  int nvars() const noexcept { return static_cast<int>(base.size()); }

  FunctionJet coordinate_jet(int axis, int order) const;
  /// x_q as a grade-1-valued jet (default convention).
  FunctionJet q_vector_jet(int order) const;
  /// |x_q|^2 as a scalar jet.
  FunctionJet q_norm_sq_jet(int order) const;
  /// The grade-1 part of the paravector variable (paravector convention).
  FunctionJet underline_jet(int order) const;
  FunctionJet underline_norm_sq_jet(int order) const;

  double q_norm_sq_at_base() const;
};

/// Sum of e_i d/dx_i over the selected axis range; order drops by one.
FunctionJet apply_dirac(const FunctionJet& f, AxisRange part, const OperatorContext& ctx);
/// Sum of x_i d/dx_i over the selected axis range.
FunctionJet apply_euler(const FunctionJet& f, AxisRange part, const OperatorContext& ctx);

/// Global slice Dirac operator G = D_p + (x_q/|x_q|^2) E_q.  Throws when
/// the base point lies on R^p.
FunctionJet apply_G(const FunctionJet& f, const OperatorContext& ctx);
FunctionJet apply_G_iterated(const FunctionJet& f, int l, const OperatorContext& ctx);

/// Variant |x_q|^2 D_p + x_q E_q, defined on all of R^{p+q}.
FunctionJet apply_G_dagger(const FunctionJet& f, const OperatorContext& ctx);

/// Paravector operator |x|^2 d/dx_0 + x * sum_j x_j d/dx_j (underline
/// parts); requires a paravector context.
FunctionJet apply_G_paravector(const FunctionJet& f, const OperatorContext& ctx);

FunctionJet multiply_by(const FunctionJet& f, const FunctionJet& g, bool left);

}  // namespace slicegrav

#endif
