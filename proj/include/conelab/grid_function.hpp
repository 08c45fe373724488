#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "conelab/radial_mesh.hpp"

namespace conelab {

// Nodal values of a function sum_j u_j(r) psi_j(theta) with the psi_j
// normalized so that the N-integral of psi_j psi_k is Vol(N) delta_jk.
// values[j][i] is the coefficient of mode j at node i.  Mode 0 is the
// cross-section constant.
struct GridFunction {
  std::shared_ptr<const RadialMesh> mesh;
  std::vector<std::vector<double>> values;

  std::size_t modes() const { return values.size(); }
  std::size_t points() const { return mesh ? mesh->size() : 0; }

  void validate() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double a);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, double s) { return a *= s; }
  friend GridFunction operator*(double s, GridFunction a) { return a *= s; }
};

GridFunction make_radial(std::shared_ptr<const RadialMesh> mesh,
                         const std::function<double(double)>& f);
GridFunction make_constant(std::shared_ptr<const RadialMesh> mesh, double value,
                           std::size_t modes = 1);
GridFunction make_zero(std::shared_ptr<const RadialMesh> mesh, std::size_t modes = 1);

// Nodal radial derivative via 3-point nonuniform stencils (one-sided at the
// ends); exact for quadratics in r.
std::vector<double> nodal_first_derivative(const RadialMesh& mesh,
                                           const std::vector<double>& u);
// Nodal second derivative via the same stencils; exact for quadratics.
std::vector<double> nodal_second_derivative(const RadialMesh& mesh,
                                            const std::vector<double>& u);

// Multiplies every mode by a C^1 bump that vanishes on the outer 5% of the
// index range at both ends, is 1 on the middle, and ramps across 10% with a
// quintic smoothstep.  Produces compact support inside (r_1, L).
GridFunction plateau_cutoff(const GridFunction& u, double lo_frac = 0.05,
                            double hi_frac = 0.05, double ramp_frac = 0.10);

}  // namespace conelab
