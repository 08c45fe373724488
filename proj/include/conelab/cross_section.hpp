#pragma once

#include <vector>

namespace conelab {

/// Spectral data of the closed link manifold (N^{n-1}, h0). Everything the
/// radial problems need factors through (dim, scalar curvature, volume,
/// Laplace eigenvalues); no coordinates on N are ever stored.
struct CrossSection {
  int dim = 0;                   ///< n - 1
  double scalar_curvature = 0;   ///< of h0, constant over N
  double volume = 0;             ///< Vol(N, h0)
  std::vector<double> laplace_eigenvalues;  ///< 0 = nu_0 < nu_1 <= ..., one per angular sector
  double round_sphere_radius = 0;  ///< > 0 when built from a round sphere

  void validate() const;  // throws std::invalid_argument on malformed data
};

/// Volume of the unit sphere S^m.
double unit_sphere_volume(int m);

/// Round sphere of radius a as the link of an n-dimensional cone:
/// scalar curvature (n-1)(n-2)/a^2, volume a^{n-1} Vol(S^{n-1}),
/// Laplace eigenvalues l(l+n-2)/a^2 for l = 0..l_max (one entry per l).
CrossSection make_round_sphere_cross_section(int n, double a, int l_max = 7);

}  // namespace conelab
