// SPDX-License-Identifier: MIT
#pragma once

#include "ratemig/banded.hpp"
#include "ratemig/field.hpp"
#include "ratemig/mesh.hpp"
#include "ratemig/model.hpp"
#include "ratemig/quadrature.hpp"

namespace ratemig {

/// Optional variations of the spatial operator.  The defaults reproduce
///   a(u, v) = (sigma^2/2 u', v') + ((rate + sigma^2/2) u', v);
/// convection_sign flips the sigma^2/2 contribution to the convection
/// coefficient and reaction_coefficient adds c (u, v), both kept for
/// exploring the model variants with drift rate - sigma^2/2 and a reaction
/// term.
struct OperatorOptions {
  double convection_sign = 1.0;
  double reaction_coefficient = 0.0;

  bool operator==(const OperatorOptions&) const = default;
};

/// Gauss rule used for assembly at a given element order: order+1 points,
/// exact through degree 2 order + 1.
QuadratureRule default_assembly_rule(int order);

/// Mass matrix (N_j, N_i) in band storage with bandwidth = element order.
/// The rule must integrate degree 2 order exactly.
BandedMatrix assemble_mass(const Mesh& mesh, const QuadratureRule& quadrature);

/// Stiffness-plus-convection matrix of the bilinear form with the volatility
/// frozen at u_prev:
///   A[i][j] = int sigma^2/2 N_j' N_i'
///           - (rate + s sigma^2/2 - (sigma^2)_x / 2) N_j' N_i + c N_j N_i dx,
/// where sigma = effective_volatility(u_prev(x), t, params) at each
/// quadrature point and (sigma^2)_x follows u_prev through the chain rule.
/// The advection pairing carries the minus sign, and the (sigma^2)_x / 2
/// summand undoes what integrating the diffusion by parts adds, so that the
/// implicit step (M + dt A) u = M u_prev marches
///   u_t = sigma^2/2 u_xx + (rate + sigma^2/2) u_x,
/// the same equation the explicit difference reference steps.  u_prev must
/// live on the given mesh.  n_threads > 1 assembles element blocks
/// concurrently; the reduction order keeps the result bit-identical to the
/// serial path.
BandedMatrix assemble_operator(const Mesh& mesh, const SolutionField& u_prev, double t,
                               const ModelParams& params, const QuadratureRule& quadrature,
                               const OperatorOptions& options = {}, int n_threads = 1);

}  // namespace ratemig
