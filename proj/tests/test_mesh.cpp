// SPDX-License-Identifier: MIT
#include "ratemig/mesh.hpp"

#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "ratemig/errors.hpp"

using namespace ratemig;

TEST_CASE("uniform mesh has the advertised node layout") {
  for (int order = 1; order <= 4; ++order) {
    const Mesh mesh = build_mesh(-4.0, 4.0, 8, order);
    CHECK(mesh.n_elements() == 8);
    CHECK(mesh.order() == order);
    CHECK(mesh.dof_count() == 8 * order + 1);
    CHECK(mesh.x_min() == -4.0);
    CHECK(mesh.x_max() == 4.0);
    CHECK(mesh.max_width() == doctest::Approx(1.0).epsilon(1e-15));
    const auto& nodes = mesh.node_coords();
    CHECK(std::is_sorted(nodes.begin(), nodes.end()));
    CHECK(nodes.front() == -4.0);
    CHECK(nodes.back() == 4.0);
    // Breakpoint nodes are exact, no accumulation drift.
    for (int e = 0; e <= 8; ++e)
      CHECK(mesh.breakpoints()[e] == doctest::Approx(-4.0 + e).epsilon(1e-15));
  }
}

TEST_CASE("zero is snapped onto the breakpoint set when strictly inside") {
  // 8 elements on [-4, 4]: 0 is already a breakpoint.
  const Mesh even = build_mesh(-4.0, 4.0, 8, 1);
  CHECK(std::count(even.breakpoints().begin(), even.breakpoints().end(), 0.0) == 1);

  // 7 elements: no natural breakpoint at 0, the nearest is moved there.
  const Mesh odd = build_mesh(-4.0, 4.0, 7, 1);
  CHECK(std::count(odd.breakpoints().begin(), odd.breakpoints().end(), 0.0) == 1);
  CHECK(odd.n_elements() == 7);
  CHECK(std::is_sorted(odd.breakpoints().begin(), odd.breakpoints().end()));

  // Window not containing 0: nothing is snapped.
  const Mesh shifted = build_mesh(1.0, 2.0, 5, 1);
  CHECK(std::count(shifted.breakpoints().begin(), shifted.breakpoints().end(), 0.0) == 0);
}

TEST_CASE("element span and first dof partition the window") {
  const Mesh mesh = build_mesh(-1.0, 1.0, 4, 3);
  for (int e = 0; e < 4; ++e) {
    const auto [a, b] = mesh.element_span(e);
    CHECK(a == mesh.breakpoints()[e]);
    CHECK(b == mesh.breakpoints()[e + 1]);
    CHECK(mesh.first_dof(e) == 3 * e);
    // The element's nodes fill [a, b] with order+1 entries.
    CHECK(mesh.node_coords()[mesh.first_dof(e)] == a);
    CHECK(mesh.node_coords()[mesh.first_dof(e) + 3] == b);
  }
}

TEST_CASE("locate_element resolves ties rightward and clamps endpoints") {
  const Mesh mesh = build_mesh(0.0, 4.0, 4, 2);
  CHECK(mesh.locate_element(0.0) == 0);
  CHECK(mesh.locate_element(0.5) == 0);
  CHECK(mesh.locate_element(1.0) == 1);  // interior breakpoint goes right
  CHECK(mesh.locate_element(2.0) == 2);
  CHECK(mesh.locate_element(3.999) == 3);
  CHECK(mesh.locate_element(4.0) == 3);  // right endpoint stays in the last element
  // Roundoff slack beyond the window is clamped, genuine exits throw.
  CHECK(mesh.locate_element(4.0 + 1e-13) == 3);
  CHECK(mesh.locate_element(0.0 - 1e-13) == 0);
  CHECK_THROWS_AS(mesh.locate_element(4.5), DomainError);
  CHECK_THROWS_AS(mesh.locate_element(-0.5), DomainError);
}

TEST_CASE("explicit breakpoints are preserved verbatim") {
  const std::vector<double> pts{-2.0, -0.5, 0.0, 0.25, 3.0};
  const Mesh mesh = build_mesh(pts, 2);
  CHECK(mesh.breakpoints() == pts);
  CHECK(mesh.n_elements() == 4);
  CHECK(mesh.max_width() == doctest::Approx(2.75).epsilon(1e-15));
  CHECK(mesh.dof_count() == 9);
  // Midside node of the widest element sits at its center.
  CHECK(mesh.node_coords()[7] == doctest::Approx(0.25 + 2.75 / 2).epsilon(1e-15));
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(build_mesh({1.0}, 1), InvalidParameterError);
  CHECK_THROWS_AS(build_mesh({0.0, 0.0, 1.0}, 1), InvalidParameterError);
  CHECK_THROWS_AS(build_mesh({0.0, -1.0}, 1), InvalidParameterError);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 0, 1), InvalidParameterError);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 4, 0), InvalidParameterError);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 4, 5), InvalidParameterError);
  CHECK_THROWS_AS(build_mesh(1.0, 1.0, 4, 1), InvalidParameterError);
}

TEST_CASE("meshes compare by value") {
  const Mesh a = build_mesh(-4.0, 4.0, 16, 2);
  const Mesh b = build_mesh(-4.0, 4.0, 16, 2);
  const Mesh c = build_mesh(-4.0, 4.0, 16, 3);
  CHECK(a == b);
  CHECK_FALSE(a == c);
}
