#include "conelab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "conelab/quadrature.hpp"
#include "conelab/weighted_norms.hpp"

namespace conelab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_domain(const ConeModel& model, const GridFunction& u,
                         const char* who) {
  u.validate();
  if (u.mesh->outer_radius != model.outer_radius)
    throw std::invalid_argument(std::string(who) + ": mesh/model domain mismatch");
}

void require_radial(const GridFunction& u, const char* who) {
  if (u.modes() != 1)
    throw std::invalid_argument(std::string(who) + ": radial (single-mode) input required");
}

TriDiag head(const TriDiag& T, std::size_t na) {
  TriDiag out;
  out.diag.assign(T.diag.begin(), T.diag.begin() + na);
  out.off.assign(T.off.begin(), T.off.begin() + (na > 0 ? na - 1 : 0));
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> mat_vec(const TriDiag& T, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  multiply(T, x, y);
  return y;
}

// x^2 ln x extended continuously by 0 at x <= 0, and its derivative.
double xx_log(double x) { return x > 0.0 ? x * x * std::log(x) : 0.0; }
double xx_log_d(double x) { return x > 0.0 ? x * (2.0 * std::log(x) + 1.0) : 0.0; }
double xx_log_dd(double x) { return x > 0.0 ? 2.0 * std::log(x) + 3.0 : 0.0; }

// Premultiplied Gauss weights w_q h_c vol phi^{n-1}(r_cq), one block of 16 per
// cell; the measure factors are fixed for a (model, mesh) pair.
std::vector<double> measure_table(const ConeModel& model, const RadialMesh& mesh) {
  const double vol = model.cross_section.volume;
  const int n = model.n;
  const std::size_t cells = mesh.size() - 1;
  std::vector<double> w(cells * std::size_t(quad::kGaussPoints));
  for (std::size_t c = 0; c < cells; ++c) {
    const double rl = mesh.nodes[c];
    const double h = mesh.nodes[c + 1] - rl;
    for (int q = 0; q < quad::kGaussPoints; ++q) {
      const double r = rl + h * quad::kGaussNodes[q];
      w[c * quad::kGaussPoints + q] =
          quad::kGaussWeights[q] * h * vol * std::pow(model.phi(r), n - 1);
    }
  }
  return w;
}

// int u^2 ln u dvol for nodal values v on the mesh (P1 interpolant).
double log_integral_tab(const std::vector<double>& table, std::size_t cells,
                        const std::vector<double>& v) {
  double total = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double ul = v[c], ur = v[c + 1];
    const double* w = table.data() + c * quad::kGaussPoints;
    for (int q = 0; q < quad::kGaussPoints; ++q) {
      const double xi = quad::kGaussNodes[q];
      total += w[q] * xx_log(ul * (1.0 - xi) + ur * xi);
    }
  }
  return total;
}

// Gradient of log_integral_tab with respect to the nodal values.
std::vector<double> log_gradient_tab(const std::vector<double>& table,
                                     std::size_t cells,
                                     const std::vector<double>& v) {
  std::vector<double> g(cells + 1, 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    const double ul = v[c], ur = v[c + 1];
    const double* w = table.data() + c * quad::kGaussPoints;
    for (int q = 0; q < quad::kGaussPoints; ++q) {
      const double xi = quad::kGaussNodes[q];
      const double df = w[q] * xx_log_d(ul * (1.0 - xi) + ur * xi);
      g[c] += df * (1.0 - xi);
      g[c + 1] += df * xi;
    }
  }
  return g;
}

// Second derivative of log_integral_tab; tridiagonal because the integrand
// couples only the two endpoint values of each cell.
TriDiag log_hessian_tab(const std::vector<double>& table, std::size_t cells,
                        const std::vector<double>& v) {
  TriDiag h;
  h.diag.assign(cells + 1, 0.0);
  h.off.assign(cells, 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    const double ul = v[c], ur = v[c + 1];
    const double* w = table.data() + c * quad::kGaussPoints;
    for (int q = 0; q < quad::kGaussPoints; ++q) {
      const double xi = quad::kGaussNodes[q];
      const double ddf = w[q] * xx_log_dd(ul * (1.0 - xi) + ur * xi);
      h.diag[c] += ddf * (1.0 - xi) * (1.0 - xi);
      h.diag[c + 1] += ddf * xi * xi;
      h.off[c] += ddf * (1.0 - xi) * xi;
    }
  }
  return h;
}

double log_integral_nodal(const ConeModel& model, const RadialMesh& mesh,
                          const std::vector<double>& v) {
  return log_integral_tab(measure_table(model, mesh), mesh.size() - 1, v);
}

std::vector<double> log_integral_gradient(const ConeModel& model,
                                          const RadialMesh& mesh,
                                          const std::vector<double>& v) {
  return log_gradient_tab(measure_table(model, mesh), mesh.size() - 1, v);
}

std::vector<double> pad_full(const std::vector<double>& a, std::size_t M) {
  std::vector<double> full(a);
  full.resize(M, 0.0);
  return full;
}

}  // namespace

double f_functional(const ConeModel& model, const GridFunction& u) {
  require_same_domain(model, u, "f_functional");
  const auto& nus = model.cross_section.laplace_eigenvalues;
  if (u.modes() > nus.size())
    throw std::invalid_argument("f_functional: more modes than cross-section eigenvalues");
  double total = 0.0;
  for (std::size_t j = 0; j < u.modes(); ++j) {
    const ModeOperator op =
        assemble_mode_operator(model, *u.mesh, int(j), FormScaling::perelman);
    total += quadratic_form(op.stiffness, u.values[j]);
  }
  return total;
}

double mass_integral(const ConeModel& model, const GridFunction& u) {
  require_same_domain(model, u, "mass_integral");
  const ModeOperator op =
      assemble_mode_operator(model, *u.mesh, 0, FormScaling::gradient);
  double total = 0.0;
  for (std::size_t j = 0; j < u.modes(); ++j)
    total += quadratic_form(op.mass, u.values[j]);
  return total;
}

double u_squared_log_integral(const ConeModel& model, const GridFunction& u) {
  require_same_domain(model, u, "u_squared_log_integral");
  require_radial(u, "u_squared_log_integral");
  return log_integral_nodal(model, *u.mesh, u.values[0]);
}

SolveReport lambda_functional(const ConeModel& model,
                              std::shared_ptr<const RadialMesh> mesh,
                              double tol) {
  model.validate();
  if (!mesh) throw std::invalid_argument("lambda_functional: null mesh");
  const std::size_t jcount = model.cross_section.laplace_eigenvalues.size();

  double best = 0.0;
  int best_mode = -1;
  EigenResult best_eig;
  TriDiag mass0;
  for (std::size_t j = 0; j < jcount; ++j) {
    const ModeOperator op =
        assemble_mode_operator(model, *mesh, int(j), FormScaling::perelman);
    if (j == 0) mass0 = op.mass;
    EigenResult eig = smallest_eigenpair(op, tol);
    if (best_mode < 0 || eig.value < best) {
      best = eig.value;
      best_mode = int(j);
      best_eig = std::move(eig);
    }
  }
  if (model.cross_section.round_sphere_radius > 0.0 && best_mode != 0)
    throw std::logic_error(
        "lambda_functional: minimizing mode is not the radial one on a round "
        "sphere cross section");

  SolveReport rep;
  rep.kind = SolveKind::lambda;
  rep.status = SolveStatus::converged;
  rep.value = best;
  rep.mode = best_mode;
  rep.iterations = best_eig.iterations;
  rep.trace = best_eig.trace;
  rep.el_residual = rep.trace.empty() ? 0.0 : rep.trace.back();
  rep.minimizer = GridFunction{};
  rep.minimizer.mesh = mesh;
  rep.minimizer.values.assign(jcount, std::vector<double>(mesh->size(), 0.0));
  rep.minimizer.values[std::size_t(best_mode)] = best_eig.vector;
  rep.constraint_error =
      std::abs(quadratic_form(mass0, best_eig.vector) - 1.0);
  return rep;
}

double w_functional(const ConeModel& model, const GridFunction& u, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("w_functional: tau must be positive");
  require_same_domain(model, u, "w_functional");
  require_radial(u, "w_functional");
  for (double x : u.values[0])
    if (x < 0.0)
      throw std::invalid_argument("w_functional: u must be nonnegative");

  const ModeOperator op =
      assemble_mode_operator(model, *u.mesh, 0, FormScaling::perelman);
  const double T = std::pow(4.0 * kPi * tau, 0.5 * model.n);
  const double form = quadratic_form(op.stiffness, u.values[0]);
  const double mass = quadratic_form(op.mass, u.values[0]);
  const double logterm = log_integral_nodal(model, *u.mesh, u.values[0]);
  return (tau * form - 2.0 * logterm - double(model.n) * mass) / T;
}

std::vector<double> w_functional_gradient(const ConeModel& model,
                                          const GridFunction& u, double tau) {
  if (!(tau > 0.0))
    throw std::invalid_argument("w_functional_gradient: tau must be positive");
  require_same_domain(model, u, "w_functional_gradient");
  require_radial(u, "w_functional_gradient");

  const ModeOperator op =
      assemble_mode_operator(model, *u.mesh, 0, FormScaling::perelman);
  const double T = std::pow(4.0 * kPi * tau, 0.5 * model.n);
  const std::vector<double>& v = u.values[0];
  const std::vector<double> sv = mat_vec(op.stiffness, v);
  const std::vector<double> mv = mat_vec(op.mass, v);
  const std::vector<double> lg = log_integral_gradient(model, *u.mesh, v);
  std::vector<double> g(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    g[i] = (2.0 * tau * sv[i] - 2.0 * lg[i] - 2.0 * double(model.n) * mv[i]) / T;
  return g;
}

SolveReport mu_functional(const ConeModel& model,
                          std::shared_ptr<const RadialMesh> mesh, double tau,
                          const SolverParams& params) {
  model.validate();
  if (!mesh) throw std::invalid_argument("mu_functional: null mesh");
  if (!(tau > 0.0)) throw std::invalid_argument("mu_functional: tau must be positive");
  if (params.max_iters < 1 || !(params.tol > 0.0) || !(params.step0 > 0.0))
    throw std::invalid_argument("mu_functional: bad solver parameters");

  const ModeOperator op =
      assemble_mode_operator(model, *mesh, 0, FormScaling::perelman);
  const std::size_t M = mesh->size();
  const std::size_t na = op.active;
  const TriDiag S = head(op.stiffness, na);
  const TriDiag Mm = head(op.mass, na);
  const int n = model.n;
  const double T = std::pow(4.0 * kPi * tau, 0.5 * n);

  const std::vector<double> mtab = measure_table(model, *mesh);
  const std::size_t cells = M - 1;
  auto objective = [&](const std::vector<double>& a) {
    const double form = quadratic_form(S, a);
    const double mass = quadratic_form(Mm, a);
    const double logterm = log_integral_tab(mtab, cells, pad_full(a, M));
    return (tau * form - 2.0 * logterm - double(n) * mass) / T;
  };
  auto gradient = [&](const std::vector<double>& a) {
    std::vector<double> g = mat_vec(S, a);
    const std::vector<double> ma = mat_vec(Mm, a);
    const std::vector<double> gl = log_gradient_tab(mtab, cells, pad_full(a, M));
    for (std::size_t i = 0; i < na; ++i)
      g[i] = (2.0 * tau * g[i] - 2.0 * gl[i] - 2.0 * double(n) * ma[i]) / T;
    return g;
  };

  std::vector<double> u(na, 1.0);
  {
    const double m0 = quadratic_form(Mm, u);
    const double scale = std::sqrt(T / m0);
    for (double& x : u) x *= scale;
  }

  SolveReport rep;
  rep.kind = SolveKind::mu;
  rep.tau = tau;
  double J = objective(u);
  const double J0 = J;
  rep.trace.push_back(J);
  double max_drift = 0.0;
  double sigma = 0.0;  // Levenberg damping, carried across iterations
  bool done = false;

  for (int it = 0; it < params.max_iters && !done; ++it) {
    if (J < -1e8 || (J0 - J) > 1e6 * (1.0 + std::abs(J0))) {
      rep.status = SolveStatus::diverging;
      break;
    }
    const std::vector<double> g = gradient(u);
    const std::vector<double> mu_vec = mat_vec(Mm, u);
    const double umu = dot(mu_vec, u);
    const double lam_hat = dot(g, u) / (2.0 * umu);
    std::vector<double> r_el(na);
    for (std::size_t i = 0; i < na; ++i) r_el[i] = g[i] - 2.0 * lam_hat * mu_vec[i];
    const std::vector<double> minv_r = solve_tridiag(Mm, r_el);
    rep.el_residual = std::sqrt(std::max(0.0, dot(r_el, minv_r))) * std::sqrt(T);
    if (rep.el_residual <= params.tol * std::max(1.0, std::abs(J))) {
      rep.status = SolveStatus::converged;
      done = true;
      break;
    }

    // KKT Newton step on the constraint tangent space.  The Lagrangian
    // Hessian (1/T)(2 tau S - 2 L'' - 2 n M) - 2 lam_hat M is tridiagonal;
    // it only needs to be positive on the tangent space for the step to
    // descend, so damping is driven by descent failure, not by inertia.
    const TriDiag hl = log_hessian_tab(mtab, cells, pad_full(u, M));
    TriDiag K = S;
    for (std::size_t i = 0; i < na; ++i)
      K.diag[i] = (2.0 * tau * S.diag[i] - 2.0 * hl.diag[i] -
                   2.0 * double(n) * Mm.diag[i]) /
                      T -
                  2.0 * lam_hat * Mm.diag[i];
    for (std::size_t i = 0; i + 1 < na; ++i)
      K.off[i] = (2.0 * tau * S.off[i] - 2.0 * hl.off[i] -
                  2.0 * double(n) * Mm.off[i]) /
                     T -
                 2.0 * lam_hat * Mm.off[i];
    double kd = 0.0, md = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
      kd += std::abs(K.diag[i]);
      md += Mm.diag[i];
    }
    const double kavg = kd / md;

    bool accepted = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      TriDiag Kt = K;
      if (sigma > 0.0)
        for (std::size_t i = 0; i < na; ++i) Kt.diag[i] += sigma * Mm.diag[i];
      std::vector<double> z, zm;
      try {
        z = solve_tridiag(Kt, g);
        zm = solve_tridiag(Kt, mu_vec);
      } catch (const std::exception&) {
        sigma = sigma == 0.0 ? 1e-12 * kavg : 32.0 * sigma;
        continue;
      }
      const double beta = dot(mu_vec, z) / dot(mu_vec, zm);
      std::vector<double> d(na);
      for (std::size_t i = 0; i < na; ++i) d[i] = -(z[i] - beta * zm[i]);
      const double gd = dot(g, d);
      if (!(gd < 0.0) || !std::isfinite(gd)) {
        sigma = sigma == 0.0 ? 1e-12 * kavg : 32.0 * sigma;
        continue;
      }
      double t = params.step0;
      for (int bt = 0; bt <= 30; ++bt) {
        std::vector<double> cand(na);
        for (std::size_t i = 0; i < na; ++i) cand[i] = u[i] + t * d[i];
        const double mx = *std::max_element(cand.begin(), cand.end());
        if (mx > 0.0) {
          const double floor_val = 1e-30 * mx;
          for (double& x : cand) x = std::max(x, floor_val);
          const double mass = quadratic_form(Mm, cand);
          const double scale = std::sqrt(T / mass);
          for (double& x : cand) x *= scale;
          const double Jc = objective(cand);
          // Armijo with an absolute allowance for objective roundoff; the
          // final Newton steps move J by less than its evaluation noise.
          bool ok = Jc <= J + 1e-4 * t * gd + 1e-14 * (1.0 + std::abs(J));
          if (!ok && Jc <= J + 1e-9 * (1.0 + std::abs(J))) {
            // Endgame: J is flat to rounding, so accept on first-order
            // residual contraction instead.
            const std::vector<double> gc = gradient(cand);
            const std::vector<double> mc = mat_vec(Mm, cand);
            const double lh = dot(gc, cand) / (2.0 * dot(mc, cand));
            std::vector<double> rc(na);
            for (std::size_t i = 0; i < na; ++i)
              rc[i] = gc[i] - 2.0 * lh * mc[i];
            const std::vector<double> mir = solve_tridiag(Mm, rc);
            const double elc =
                std::sqrt(std::max(0.0, dot(rc, mir))) * std::sqrt(T);
            ok = elc <= 0.5 * rep.el_residual;
          }
          if (ok) {
            max_drift = std::max(max_drift,
                                 std::abs(quadratic_form(Mm, cand) - T) / T);
            u = std::move(cand);
            J = Jc;
            accepted = true;
            break;
          }
        }
        t *= 0.5;
      }
      if (!accepted) sigma = sigma == 0.0 ? 1e-12 * kavg : 32.0 * sigma;
    }
    if (!accepted)
      throw SolverFailure("mu_functional: line search failed", rep.trace);
    sigma *= 0.25;
    rep.trace.push_back(J);
    rep.iterations = it + 1;
  }
  if (!done && rep.status != SolveStatus::diverging)
    throw SolverFailure("mu_functional: iteration cap reached", rep.trace);

  rep.value = J;
  rep.constraint_error = max_drift;
  rep.minimizer = GridFunction{};
  rep.minimizer.mesh = mesh;
  rep.minimizer.values.assign(1, pad_full(u, M));

  // Final first-order report at the accepted iterate.
  {
    const std::vector<double> g = gradient(u);
    const std::vector<double> mu_vec = mat_vec(Mm, u);
    const double lam_hat = dot(g, u) / (2.0 * dot(mu_vec, u));
    std::vector<double> r_el(na);
    for (std::size_t i = 0; i < na; ++i) r_el[i] = g[i] - 2.0 * lam_hat * mu_vec[i];
    const std::vector<double> minv_r = solve_tridiag(Mm, r_el);
    rep.el_residual = std::sqrt(std::max(0.0, dot(r_el, minv_r))) * std::sqrt(T);

    const ModeOperator opl =
        assemble_mode_operator(model, *mesh, 0, FormScaling::schrodinger_l);
    const TriDiag Sl = head(opl.stiffness, na);
    std::vector<double> v(na);
    for (std::size_t i = 0; i < na; ++i)
      v[i] = (2.0 / tau) * u[i] * std::log(u[i]) + (double(n) + J) / tau * u[i];
    std::vector<double> rp = mat_vec(Sl, u);
    const std::vector<double> mv = mat_vec(Mm, v);
    for (std::size_t i = 0; i < na; ++i) rp[i] -= mv[i];
    const std::vector<double> minv_rp = solve_tridiag(Mm, rp);
    rep.el_residual_printed_eq =
        std::sqrt(std::max(0.0, dot(rp, minv_rp))) * std::sqrt(T);
  }
  return rep;
}

ElResidual el_residual(const ConeModel& model, const GridFunction& u, double tau,
                       double m) {
  if (!(tau > 0.0)) throw std::invalid_argument("el_residual: tau must be positive");
  require_same_domain(model, u, "el_residual");
  require_radial(u, "el_residual");

  const ModeOperator op =
      assemble_mode_operator(model, *u.mesh, 0, FormScaling::perelman);
  const std::size_t na = op.active;
  const TriDiag S = head(op.stiffness, na);
  const TriDiag Mm = head(op.mass, na);
  const int n = model.n;
  const double T = std::pow(4.0 * kPi * tau, 0.5 * n);
  std::vector<double> a(u.values[0].begin(), u.values[0].begin() + na);

  ElResidual out;
  {
    std::vector<double> g = mat_vec(S, a);
    const std::vector<double> ma = mat_vec(Mm, a);
    const std::vector<double> gl =
        log_integral_gradient(model, *u.mesh, u.values[0]);
    for (std::size_t i = 0; i < na; ++i)
      g[i] = (2.0 * tau * g[i] - 2.0 * gl[i] - 2.0 * double(n) * ma[i]) / T;
    const double lam_hat = dot(g, a) / (2.0 * dot(ma, a));
    std::vector<double> r_el(na);
    for (std::size_t i = 0; i < na; ++i) r_el[i] = g[i] - 2.0 * lam_hat * ma[i];
    const std::vector<double> minv_r = solve_tridiag(Mm, r_el);
    out.discrete = std::sqrt(std::max(0.0, dot(r_el, minv_r))) * std::sqrt(T);
  }
  {
    for (double x : a)
      if (!(x > 0.0))
        throw std::invalid_argument("el_residual: u must be positive");
    const ModeOperator opl =
        assemble_mode_operator(model, *u.mesh, 0, FormScaling::schrodinger_l);
    const TriDiag Sl = head(opl.stiffness, na);
    std::vector<double> v(na);
    for (std::size_t i = 0; i < na; ++i)
      v[i] = (2.0 / tau) * a[i] * std::log(a[i]) + (double(n) + m) / tau * a[i];
    std::vector<double> rp = mat_vec(Sl, a);
    const std::vector<double> mv = mat_vec(Mm, v);
    for (std::size_t i = 0; i < na; ++i) rp[i] -= mv[i];
    const std::vector<double> minv_rp = solve_tridiag(Mm, rp);
    out.printed_equation = std::sqrt(std::max(0.0, dot(rp, minv_rp))) * std::sqrt(T);
  }
  return out;
}

LogSobolevResult log_sobolev_check(const ConeModel& model, double a,
                                   const std::vector<GridFunction>& family) {
  if (family.empty())
    throw std::invalid_argument("log_sobolev_check: empty family");
  const auto* mesh0 = family.front().mesh.get();
  const ModeOperator opg =
      assemble_mode_operator(model, *family.front().mesh, 0, FormScaling::gradient);

  double best = -std::numeric_limits<double>::infinity();
  for (const GridFunction& u : family) {
    require_same_domain(model, u, "log_sobolev_check");
    require_radial(u, "log_sobolev_check");
    if (u.mesh.get() != mesh0)
      throw std::invalid_argument("log_sobolev_check: family on mixed meshes");
    const double mass = quadratic_form(opg.mass, u.values[0]);
    if (std::abs(mass - 1.0) > 1e-8)
      throw std::invalid_argument(
          "log_sobolev_check: family member is not normalized to unit mass");
    const double grad = quadratic_form(opg.stiffness, u.values[0]);
    const double logterm = log_integral_nodal(model, *u.mesh, u.values[0]);
    best = std::max(best, logterm - a * grad);
  }
  return {best};
}

ChainResult lower_bound_chain_check(const ConeModel& model, const GridFunction& u,
                                    double tau, double a, double c_a) {
  const double w = w_functional(model, u, tau);
  const double T = std::pow(4.0 * kPi * tau, 0.5 * model.n);
  const double mass = mass_integral(model, u);
  if (std::abs(mass - T) > 1e-8 * T)
    throw std::invalid_argument("lower_bound_chain_check: u not normalized");

  const ModeOperator ope =
      assemble_mode_operator(model, *u.mesh, 0, FormScaling::perelman);
  const ModeOperator opg =
      assemble_mode_operator(model, *u.mesh, 0, FormScaling::gradient);
  const double form_pe = quadratic_form(ope.stiffness, u.values[0]);
  const double form_grad = quadratic_form(opg.stiffness, u.values[0]);

  ChainResult out;
  out.w_value = w;
  out.bound = (tau * form_pe - a * form_grad) / T -
              0.5 * double(model.n) * std::log(4.0 * kPi * tau) - c_a -
              double(model.n);
  out.holds = w + 1e-10 * (1.0 + std::abs(w)) >= out.bound;
  return out;
}

InnerProductResult inner_product_equivalence_check(
    const ConeModel& model, double A, const std::vector<GridFunction>& family) {
  if (family.empty())
    throw std::invalid_argument("inner_product_equivalence_check: empty family");
  const auto mesh = family.front().mesh;

  // Positive definiteness of the A-form; mode 0 is the critical one since the
  // angular term only adds a nonnegative contribution.
  ModeOperator op0 =
      assemble_mode_operator(model, *mesh, 0, FormScaling::perelman);
  for (std::size_t i = 0; i < op0.stiffness.diag.size(); ++i)
    op0.stiffness.diag[i] += A * op0.mass.diag[i];
  for (std::size_t i = 0; i < op0.stiffness.off.size(); ++i)
    op0.stiffness.off[i] += A * op0.mass.off[i];
  const double min_eig = smallest_eigenpair(op0, 1e-8, 400).value;
  if (!(min_eig > 0.0))
    throw std::invalid_argument(
        "inner_product_equivalence_check: form is not positive definite, "
        "smallest form eigenvalue " +
        std::to_string(min_eig));

  std::vector<ModeOperator> ops;
  InnerProductResult out;
  out.form_min_eig = min_eig;
  out.c1_hat = std::numeric_limits<double>::infinity();
  out.c2_hat = -std::numeric_limits<double>::infinity();
  for (const GridFunction& u : family) {
    require_same_domain(model, u, "inner_product_equivalence_check");
    if (u.mesh.get() != mesh.get())
      throw std::invalid_argument(
          "inner_product_equivalence_check: family on mixed meshes");
    while (ops.size() < u.modes())
      ops.push_back(assemble_mode_operator(model, *mesh, int(ops.size()),
                                           FormScaling::perelman));
    double num = 0.0;
    for (std::size_t j = 0; j < u.modes(); ++j)
      num += quadratic_form(ops[j].stiffness, u.values[j]) +
             A * quadratic_form(ops[j].mass, u.values[j]);
    const double h1 = h1_norm(u, model);
    if (!(h1 > 0.0))
      throw std::invalid_argument(
          "inner_product_equivalence_check: zero function in family");
    const double ratio = num / (h1 * h1);
    out.c1_hat = std::min(out.c1_hat, ratio);
    out.c2_hat = std::max(out.c2_hat, ratio);
  }
  return out;
}

double a_for_model(const ConeModel& model, const RadialMesh& mesh) {
  double min_r = std::numeric_limits<double>::infinity();
  for (double r : mesh.nodes)
    min_r = std::min(min_r, scalar_curvature_at(model, r));
  return 1.0 + 1.1 * std::max(0.0, -min_r);
}

GridFunction u_from_f(const GridFunction& f) {
  f.validate();
  if (f.modes() != 1)
    throw std::invalid_argument("u_from_f: radial input required");
  GridFunction u = f;
  for (double& x : u.values[0]) x = std::exp(-0.5 * x);
  return u;
}

GridFunction f_from_u(const GridFunction& u) {
  u.validate();
  if (u.modes() != 1)
    throw std::invalid_argument("f_from_u: radial input required");
  GridFunction f = u;
  for (double& x : f.values[0]) {
    if (!(x > 0.0)) throw std::invalid_argument("f_from_u: u must be positive");
    x = -2.0 * std::log(x);
  }
  return f;
}

}  // namespace conelab
