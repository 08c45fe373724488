#include "conelab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace conelab {

namespace {

// Coefficient of u/r^2 in the radial mode-j operator on the exact cone.
double mode_potential(const ConeModel& model, int j) {
  const auto& nus = model.cross_section.laplace_eigenvalues;
  if (j < 0 || std::size_t(j) >= nus.size())
    throw std::invalid_argument("indicial_roots: mode index out of range");
  return model.cross_section.scalar_curvature -
         double(model.n - 1) * double(model.n - 2) + 4.0 * nus[j];
}

IndicialRoots roots_from_potential(int n, double kj) {
  // -4 (gamma^2 + (n-2) gamma) + kj = 0.
  const double b = double(n - 2);
  const double disc = b * b + kj;
  IndicialRoots out;
  if (disc < 0.0) {
    out.complex_pair = true;
    out.kappa = 0.5 * std::sqrt(-disc);
    out.gamma_plus = out.gamma_minus = -0.5 * b;
  } else {
    const double root = std::sqrt(disc);
    out.gamma_plus = 0.5 * (-b + root);
    out.gamma_minus = 0.5 * (-b - root);
  }
  return out;
}

// Pulls the radial profile out of a function whose higher modes all vanish.
const std::vector<double>& radial_profile(const GridFunction& u, const char* who) {
  for (std::size_t j = 1; j < u.modes(); ++j)
    for (double x : u.values[j])
      if (x != 0.0)
        throw std::invalid_argument(std::string(who) + ": radial input required");
  return u.values[0];
}

}  // namespace

IndicialRoots indicial_roots(const ConeModel& model, int j, double tau) {
  (void)tau;  // the roots are tau-independent; kept for signature stability
  model.validate();
  if (model.warp.kind != WarpKind::exact)
    throw std::invalid_argument(
        "indicial_roots: defined for the exact cone warp only");
  return roots_from_potential(model.n, mode_potential(model, j));
}

DecayWindow default_decay_window(const ConeModel& model, const RadialMesh& mesh) {
  if (mesh.size() < 2)
    throw std::invalid_argument("default_decay_window: mesh too small");
  return {10.0 * mesh.nodes.front(),
          std::min(1.0, model.outer_radius / 2.0) / 40.0};
}

DecayFit fit_decay_exponent(const GridFunction& u, const ConeModel& model,
                            const DecayWindow& window) {
  u.validate();
  model.validate();
  if (!(window.lo > 0.0) || !(window.hi > window.lo))
    throw std::invalid_argument("fit_decay_exponent: bad window");
  const std::vector<double>& prof = radial_profile(u, "fit_decay_exponent");
  const RadialMesh& mesh = *u.mesh;
  // Stay clear of the tip truncation and of the weight transition band.
  const double eps0 = std::min(1.0, model.outer_radius / 2.0);
  if (window.lo <= mesh.nodes.front() || window.hi >= eps0 / 4.0)
    throw std::invalid_argument(
        "fit_decay_exponent: window must sit strictly between the innermost "
        "node and a quarter of the weight transition radius");

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const double r = mesh.nodes[i];
    if (r < window.lo || r > window.hi) continue;
    if (!(prof[i] > 0.0)) continue;
    xs.push_back(std::log(r));
    ys.push_back(std::log(prof[i]));
  }
  if (xs.size() < 10)
    throw std::invalid_argument(
        "fit_decay_exponent: window holds fewer than 10 usable nodes");

  const std::size_t N = xs.size();
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    xm += xs[i];
    ym += ys[i];
  }
  xm /= double(N);
  ym /= double(N);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    sxx += (xs[i] - xm) * (xs[i] - xm);
    sxy += (xs[i] - xm) * (ys[i] - ym);
  }
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double e = ys[i] - ym - slope * (xs[i] - xm);
    ss += e * e;
  }

  DecayFit fit;
  fit.window = window;
  fit.fitted_exponent = slope;
  fit.residual = std::sqrt(ss / double(N));
  fit.bound = -(0.5 * double(model.n) - 1.0);
  fit.indicial_root = roots_from_potential(model.n, mode_potential(model, 0)).gamma_plus;
  fit.theorem_consistent = fit.fitted_exponent > fit.bound + 2.0 * fit.residual;
  return fit;
}

UniformDecayReport weighted_uniform_check(const GridFunction& u, int l,
                                          double delta,
                                          const ConeModel* model) {
  u.validate();
  if (l < 0 || l > 1)
    throw std::invalid_argument("weighted_uniform_check: l must be 0 or 1");
  const RadialMesh& mesh = *u.mesh;
  const std::size_t nmodes = u.modes();
  bool radial = true;
  for (std::size_t j = 1; j < nmodes && radial; ++j)
    for (double x : u.values[j])
      if (x != 0.0) {
        radial = false;
        break;
      }
  if (!radial && l >= 1 && model == nullptr)
    throw std::invalid_argument(
        "weighted_uniform_check: angular derivative terms need a model");

  std::vector<std::vector<double>> d1;
  if (l >= 1) {
    d1.resize(nmodes);
    for (std::size_t j = 0; j < nmodes; ++j)
      d1[j] = nodal_first_derivative(mesh, u.values[j]);
  }

  // The single scaled term r^{l-delta} |grad^l u| at a node.
  auto scaled_at = [&](std::size_t idx) {
    const double r = mesh.nodes[idx];
    double m2 = 0.0;
    for (std::size_t j = 0; j < nmodes; ++j) {
      const double uv = u.values[j][idx];
      if (l == 0) {
        m2 += uv * uv;
      } else {
        double nu = 0.0, phi = r;
        if (model != nullptr) {
          nu = model->cross_section.laplace_eigenvalues.at(j);
          phi = model->phi(r);
        }
        const double s = d1[j][idx];
        m2 += s * s + nu * uv * uv / (phi * phi);
      }
    }
    return std::pow(r, double(l) - delta) * std::sqrt(m2);
  };

  // Dyadic annulus maxima marching toward the tip from L/4.
  std::vector<double> maxima;
  double hi = mesh.outer_radius / 4.0;
  std::size_t idx = mesh.size();
  while (idx > 0 && mesh.nodes[idx - 1] > hi) --idx;
  while (idx > 0) {
    const double lo = 0.5 * hi;
    double amax = -1.0;
    while (idx > 0 && mesh.nodes[idx - 1] > lo) {
      amax = std::max(amax, scaled_at(idx - 1));
      --idx;
    }
    if (amax < 0.0) break;  // no nodes left in this band
    maxima.push_back(amax);
    hi = lo;
  }

  UniformDecayReport rep;
  for (double a : maxima) rep.sup_value = std::max(rep.sup_value, a);
  rep.vanishing = maxima.size() >= 2;
  for (std::size_t j = 0; j + 1 < maxima.size() && rep.vanishing; ++j)
    if (!(maxima[j + 1] <= maxima[j] * (1.0 - 1e-6))) rep.vanishing = false;
  return rep;
}

}  // namespace conelab
