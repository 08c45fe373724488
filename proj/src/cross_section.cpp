#include "conelab/cross_section.hpp"

#include <cmath>
#include <stdexcept>

namespace conelab {

void CrossSection::validate() const {
  if (dim < 2) throw std::invalid_argument("cross section: dim must be >= 2");
  if (!(volume > 0.0)) throw std::invalid_argument("cross section: volume must be positive");
  if (laplace_eigenvalues.empty())
    throw std::invalid_argument("cross section: eigenvalue list empty");
  if (laplace_eigenvalues.front() != 0.0)
    throw std::invalid_argument("cross section: nu_0 must be 0");
  for (std::size_t j = 1; j < laplace_eigenvalues.size(); ++j) {
    if (!(laplace_eigenvalues[j] > 0.0))
      throw std::invalid_argument("cross section: nu_j must be positive for j >= 1");
    if (laplace_eigenvalues[j] < laplace_eigenvalues[j - 1])
      throw std::invalid_argument("cross section: eigenvalues must be ascending");
  }
  if (!std::isfinite(scalar_curvature))
    throw std::invalid_argument("cross section: scalar curvature not finite");
}

double unit_sphere_volume(int m) {
  if (m < 1) throw std::invalid_argument("unit_sphere_volume: m >= 1 required");
  const double pi = 3.14159265358979323846;
  return 2.0 * std::pow(pi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

CrossSection make_round_sphere_cross_section(int n, double a, int l_max) {
  if (n < 3)
    throw std::invalid_argument(
        "round sphere cross section: n must be >= 3 (radial analysis assumes "
        "dimension at least 3)");
  if (!(a > 0.0)) throw std::invalid_argument("round sphere cross section: radius must be positive");
  if (l_max < 0) throw std::invalid_argument("round sphere cross section: l_max must be >= 0");
  CrossSection cs;
  cs.dim = n - 1;
  cs.scalar_curvature = double(n - 1) * double(n - 2) / (a * a);
  cs.volume = std::pow(a, n - 1) * unit_sphere_volume(n - 1);
  cs.round_sphere_radius = a;
  cs.laplace_eigenvalues.reserve(l_max + 1);
  for (int l = 0; l <= l_max; ++l)
    cs.laplace_eigenvalues.push_back(double(l) * double(l + n - 2) / (a * a));
  cs.validate();
  return cs;
}

}  // namespace conelab
