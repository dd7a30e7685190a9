#pragma once

#include <vector>

#include "bidomain/geometry.hpp"

namespace bidomain {

// Radial discretization of both phases. The interface radius rho is a double
// node: it closes nodes_i and opens nodes_e, so one-sided quantities exist on
// each side. At least 16 nodes per phase are required for the one-sided
// second-order stencils to make sense.
struct RadialGrid {
  std::vector<double> nodes_i;  // 0 = first node, rho = last node
  std::vector<double> nodes_e;  // rho = first node, r_out = last node

  RadialGrid(std::vector<double> inner, std::vector<double> outer);

  static RadialGrid uniform(const Geometry& geom, int nodes_inner, int nodes_outer);

  double rho() const { return nodes_i.back(); }
  double r_out() const { return nodes_e.back(); }

  // Checks that the grid endpoints agree with geom to roundoff.
  void require_matches(const Geometry& geom) const;
};

}  // namespace bidomain
