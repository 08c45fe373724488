#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace conelab {

// Geometric radial mesh on (0, L]: nodes r_i = L * q^(M - i) for i = 1..M,
// ascending, so r_1 = L q^(M-1) is the innermost node and r_M = L.
struct RadialMesh {
  double outer_radius = 0.0;
  double grading = 0.0;  // q in (0, 1)
  std::vector<double> nodes;

  std::size_t size() const { return nodes.size(); }
  double r(std::size_t i) const { return nodes[i]; }

  // Largest index i with nodes[i] <= r (throws if r < nodes[0]).
  std::size_t index_of(double r) const;
};

std::shared_ptr<const RadialMesh> build_mesh(double outer_radius, std::size_t points,
                                             double grading);

}  // namespace conelab
