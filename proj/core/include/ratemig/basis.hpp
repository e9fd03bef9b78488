// SPDX-License-Identifier: MIT
#pragma once

#include <array>

namespace ratemig {

/// Maximum supported Lagrange element order.
inline constexpr int kMaxElementOrder = 4;

/// Values and parent-coordinate derivatives of the order+1 Lagrange shape
/// functions at a point of the reference interval [-1, 1].
struct BasisValues {
  int order = 0;
  std::array<double, kMaxElementOrder + 1> values{};
  std::array<double, kMaxElementOrder + 1> derivatives{};

  int count() const noexcept { return order + 1; }
};

/// Lagrange basis on order+1 equally spaced nodes of [-1, 1], evaluated at
/// xi.  Shape i equals 1 at node i and 0 at the other nodes; the set sums to
/// one everywhere.  order must lie in [1, 4] and xi in [-1, 1].
BasisValues reference_basis(int order, double xi);

/// Parent coordinate of local node i for the given order: -1 + 2 i / order.
double reference_node(int order, int i);

}  // namespace ratemig
