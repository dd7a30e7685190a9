#include "bidomain/radial_grid.hpp"

#include <cmath>
#include <string>

namespace bidomain {

namespace {
void require_strictly_increasing(const std::vector<double>& v, const char* name) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (!(v[k] > v[k - 1])) {
      throw ValidationError(std::string("radial grid: ") + name +
                            " must be strictly increasing");
    }
  }
}
}  // namespace

RadialGrid::RadialGrid(std::vector<double> inner, std::vector<double> outer)
    : nodes_i(std::move(inner)), nodes_e(std::move(outer)) {
  if (nodes_i.size() < 16 || nodes_e.size() < 16) {
    throw ValidationError("radial grid: each phase needs at least 16 nodes");
  }
  require_strictly_increasing(nodes_i, "nodes_i");
  require_strictly_increasing(nodes_e, "nodes_e");
  if (nodes_i.front() != 0.0) {
    throw ValidationError("radial grid: inner phase must start at r = 0");
  }
  const double gap = std::abs(nodes_i.back() - nodes_e.front());
  if (gap > 1e-12 * nodes_e.front()) {
    throw ValidationError("radial grid: interface must be a double node (nodes_i.back == nodes_e.front)");
  }
}

RadialGrid RadialGrid::uniform(const Geometry& geom, int nodes_inner, int nodes_outer) {
  if (nodes_inner < 16 || nodes_outer < 16) {
    throw ValidationError("radial grid: each phase needs at least 16 nodes");
  }
  std::vector<double> inner(static_cast<std::size_t>(nodes_inner));
  std::vector<double> outer(static_cast<std::size_t>(nodes_outer));
  for (int j = 0; j < nodes_inner; ++j) {
    inner[static_cast<std::size_t>(j)] = geom.rho * static_cast<double>(j) / (nodes_inner - 1);
  }
  inner.front() = 0.0;
  inner.back() = geom.rho;
  for (int j = 0; j < nodes_outer; ++j) {
    const double s = static_cast<double>(j) / (nodes_outer - 1);
    outer[static_cast<std::size_t>(j)] = geom.rho + s * (geom.r_out - geom.rho);
  }
  outer.front() = geom.rho;
  outer.back() = geom.r_out;
  return RadialGrid(std::move(inner), std::move(outer));
}

void RadialGrid::require_matches(const Geometry& geom) const {
  if (std::abs(rho() - geom.rho) > 1e-12 * geom.rho ||
      std::abs(r_out() - geom.r_out) > 1e-12 * geom.r_out) {
    throw ValidationError("radial grid: endpoints do not match the geometry");
  }
}

}  // namespace bidomain
