#include "conelab/grid_function.hpp"

#include <cmath>
#include <stdexcept>

namespace conelab {

void GridFunction::validate() const {
  if (!mesh) throw std::logic_error("grid function: null mesh");
  if (values.empty()) throw std::logic_error("grid function: no modes");
  for (const auto& v : values)
    if (v.size() != mesh->size())
      throw std::logic_error("grid function: mode length != mesh size");
}

namespace {
void check_compat(const GridFunction& a, const GridFunction& b) {
  if (a.mesh != b.mesh) throw std::invalid_argument("grid functions live on different meshes");
  if (a.values.size() != b.values.size())
    throw std::invalid_argument("grid functions have different mode counts");
}
}  // namespace

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  check_compat(*this, o);
  for (std::size_t j = 0; j < values.size(); ++j)
    for (std::size_t i = 0; i < values[j].size(); ++i) values[j][i] += o.values[j][i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  check_compat(*this, o);
  for (std::size_t j = 0; j < values.size(); ++j)
    for (std::size_t i = 0; i < values[j].size(); ++i) values[j][i] -= o.values[j][i];
  return *this;
}

GridFunction& GridFunction::operator*=(double a) {
  for (auto& mode : values)
    for (double& v : mode) v *= a;
  return *this;
}

GridFunction make_radial(std::shared_ptr<const RadialMesh> mesh,
                         const std::function<double(double)>& f) {
  GridFunction u;
  u.mesh = std::move(mesh);
  u.values.resize(1);
  u.values[0].resize(u.mesh->size());
  for (std::size_t i = 0; i < u.mesh->size(); ++i) u.values[0][i] = f(u.mesh->r(i));
  return u;
}

GridFunction make_constant(std::shared_ptr<const RadialMesh> mesh, double value,
                           std::size_t modes) {
  if (modes == 0) throw std::invalid_argument("make_constant: modes must be >= 1");
  GridFunction u;
  u.mesh = std::move(mesh);
  u.values.assign(modes, std::vector<double>(u.mesh->size(), 0.0));
  for (std::size_t i = 0; i < u.mesh->size(); ++i) u.values[0][i] = value;
  return u;
}

GridFunction make_zero(std::shared_ptr<const RadialMesh> mesh, std::size_t modes) {
  if (modes == 0) throw std::invalid_argument("make_zero: modes must be >= 1");
  GridFunction u;
  u.mesh = std::move(mesh);
  u.values.assign(modes, std::vector<double>(u.mesh->size(), 0.0));
  return u;
}

std::vector<double> nodal_first_derivative(const RadialMesh& mesh,
                                           const std::vector<double>& u) {
  const std::size_t M = mesh.size();
  if (u.size() != M) throw std::invalid_argument("nodal_first_derivative: size mismatch");
  if (M < 3) throw std::invalid_argument("nodal_first_derivative: need >= 3 nodes");
  std::vector<double> d(M);
  auto at = [&](std::size_t i) { return mesh.r(i); };
  for (std::size_t i = 0; i < M; ++i) {
    std::size_t a = (i == 0) ? 0 : (i == M - 1 ? M - 3 : i - 1);
    const double x0 = at(a), x1 = at(a + 1), x2 = at(a + 2);
    const double y0 = u[a], y1 = u[a + 1], y2 = u[a + 2];
    const double x = at(i);
    // Derivative of the Lagrange quadratic through the three points.
    d[i] = y0 * (2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
           y1 * (2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
           y2 * (2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
  }
  return d;
}

std::vector<double> nodal_second_derivative(const RadialMesh& mesh,
                                            const std::vector<double>& u) {
  const std::size_t M = mesh.size();
  if (u.size() != M) throw std::invalid_argument("nodal_second_derivative: size mismatch");
  if (M < 3) throw std::invalid_argument("nodal_second_derivative: need >= 3 nodes");
  std::vector<double> d(M);
  for (std::size_t i = 0; i < M; ++i) {
    std::size_t a = (i == 0) ? 0 : (i == M - 1 ? M - 3 : i - 1);
    const double x0 = mesh.r(a), x1 = mesh.r(a + 1), x2 = mesh.r(a + 2);
    const double y0 = u[a], y1 = u[a + 1], y2 = u[a + 2];
    d[i] = 2.0 * (y0 / ((x0 - x1) * (x0 - x2)) + y1 / ((x1 - x0) * (x1 - x2)) +
                  y2 / ((x2 - x0) * (x2 - x1)));
  }
  return d;
}

namespace {
double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}
}  // namespace

GridFunction plateau_cutoff(const GridFunction& u, double lo_frac, double hi_frac,
                            double ramp_frac) {
  u.validate();
  if (lo_frac < 0 || hi_frac < 0 || ramp_frac <= 0 ||
      lo_frac + hi_frac + 2 * ramp_frac >= 1.0)
    throw std::invalid_argument("plateau_cutoff: fractions leave no plateau");
  const std::size_t M = u.points();
  GridFunction out = u;
  for (std::size_t i = 0; i < M; ++i) {
    const double t = (M == 1) ? 0.0 : double(i) / double(M - 1);
    double w = 1.0;
    if (t < lo_frac)
      w = 0.0;
    else if (t < lo_frac + ramp_frac)
      w = smoothstep5((t - lo_frac) / ramp_frac);
    if (t > 1.0 - hi_frac)
      w = 0.0;
    else if (t > 1.0 - hi_frac - ramp_frac)
      w = std::min(w, smoothstep5((1.0 - hi_frac - t) / ramp_frac));
    for (auto& mode : out.values) mode[i] *= w;
  }
  return out;
}

}  // namespace conelab
