#include "conelab/radial_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conelab {

std::size_t RadialMesh::index_of(double r) const {
  if (nodes.empty()) throw std::logic_error("index_of: empty mesh");
  if (r < nodes.front()) throw std::invalid_argument("index_of: r below innermost node");
  auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
  return std::size_t(it - nodes.begin()) - 1;
}

std::shared_ptr<const RadialMesh> build_mesh(double outer_radius, std::size_t points,
                                             double grading) {
  if (!(outer_radius > 0.0)) throw std::invalid_argument("build_mesh: outer radius must be positive");
  if (points < 2) throw std::invalid_argument("build_mesh: need at least 2 points");
  if (!(grading > 0.0) || !(grading < 1.0))
    throw std::invalid_argument("build_mesh: grading must lie in (0, 1)");
  auto mesh = std::make_shared<RadialMesh>();
  mesh->outer_radius = outer_radius;
  mesh->grading = grading;
  mesh->nodes.resize(points);
  // Compute nodes outward-in so r_M = L exactly and the ratio of adjacent
  // nodes is exactly q in floating point.
  double r = outer_radius;
  for (std::size_t i = points; i-- > 0;) {
    mesh->nodes[i] = r;
    r *= grading;
  }
  return mesh;
}

}  // namespace conelab
