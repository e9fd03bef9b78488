// SPDX-License-Identifier: MIT
#pragma once

#include <functional>

#include "ratemig/fd_reference.hpp"
#include "ratemig/field.hpp"
#include "ratemig/quadrature.hpp"

namespace ratemig {

/// Norms of the difference between a finite element function and a
/// reference.  h1 is the full H1 norm, so h1 >= l2 always.
struct ErrorReport {
  double l2 = 0;
  double h1 = 0;
  double linf = 0;
};

/// Pointwise-evaluable reference with a derivative, the common face of
/// finite element fields, finite difference grids and closed-form solutions.
struct ReferenceFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// Wraps a finite element field as a reference.
ReferenceFunction field_reference(const SolutionField& field);

/// Wraps one time level of a finite difference grid (cubic interpolation).
ReferenceFunction fd_reference(const FDGrid& grid, int level);

/// Elementwise quadrature of ||field - reference||.  The rule should exceed
/// the basis exactness by a couple of orders; linf additionally samples the
/// mesh nodes.  A reference that cannot be evaluated on the field's window
/// surfaces as InconsistentInputError.
ErrorReport error_norms(const SolutionField& field, const ReferenceFunction& reference,
                        const QuadratureRule& quadrature);

/// L2 norm of the field itself (reference 0 without the H1/Linf overhead).
double l2_norm(const SolutionField& field, const QuadratureRule& quadrature);

}  // namespace ratemig
