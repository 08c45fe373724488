#include "conelab/mode_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "conelab/quadrature.hpp"

namespace conelab {

namespace {

struct Coeffs {
  double A, B;
};

Coeffs scaling_coeffs(FormScaling s) {
  switch (s) {
    case FormScaling::perelman: return {4.0, 1.0};
    case FormScaling::schrodinger_l: return {1.0, 0.25};
    case FormScaling::gradient: return {1.0, 0.0};
  }
  return {4.0, 1.0};
}

}  // namespace

ModeOperator assemble_mode_operator(const ConeModel& model, const RadialMesh& mesh,
                                    int j, FormScaling scaling) {
  model.validate();
  const auto& nus = model.cross_section.laplace_eigenvalues;
  if (j < 0 || std::size_t(j) >= nus.size())
    throw std::invalid_argument("assemble_mode_operator: mode index out of range");
  const std::size_t M = mesh.size();
  if (M < 2) throw std::invalid_argument("assemble_mode_operator: mesh too small");

  const auto [A, B] = scaling_coeffs(scaling);
  const double nu = nus[j];
  const double vol = model.cross_section.volume;
  const int n = model.n;
  const bool exact = model.warp.kind == WarpKind::exact;
  // Exact warp: R_g = K / r^2 with K below, and the angular term is nu/r^2,
  // so potential and angular share the r^{n-3} moments.
  const double K = model.cross_section.scalar_curvature - double(n - 1) * double(n - 2);

  ModeOperator op;
  op.mode = j;
  op.nu = nu;
  op.bc = model.outer_bc;
  op.active = (model.outer_bc == OuterBc::dirichlet) ? M - 1 : M;
  op.stiffness.diag.assign(M, 0.0);
  op.stiffness.off.assign(M - 1, 0.0);
  op.mass.diag.assign(M, 0.0);
  op.mass.off.assign(M - 1, 0.0);

  for (std::size_t c = 0; c + 1 < M; ++c) {
    const double rl = mesh.nodes[c], rr = mesh.nodes[c + 1];
    const double h = rr - rl;
    double g = 0.0;                          // int phi^{n-1} dr
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;     // mass moments: 1, xi, xi^2
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;     // potential+angular moments

    if (exact) {
      g = quad::power_integral(rl, rr, double(n - 1));
      m0 = quad::power_moment(rl, rr, double(n - 1), 0);
      m1 = quad::power_moment(rl, rr, double(n - 1), 1);
      m2 = quad::power_moment(rl, rr, double(n - 1), 2);
      const double cpot = A * nu + B * K;
      if (cpot != 0.0) {
        p0 = cpot * quad::power_moment(rl, rr, double(n - 3), 0);
        p1 = cpot * quad::power_moment(rl, rr, double(n - 3), 1);
        p2 = cpot * quad::power_moment(rl, rr, double(n - 3), 2);
      }
    } else {
      auto dens = [&](double r) { return std::pow(model.phi(r), n - 1); };
      auto coef = [&](double r) {
        const double phi = model.phi(r);
        return (A * nu / (phi * phi) + B * scalar_curvature_at(model, r)) * dens(r);
      };
      auto xi = [&](double r) { return (r - rl) / h; };
      g = quad::gauss(rl, rr, dens);
      m0 = quad::gauss(rl, rr, dens);
      m1 = quad::gauss(rl, rr, [&](double r) { return xi(r) * dens(r); });
      m2 = quad::gauss(rl, rr, [&](double r) { return xi(r) * xi(r) * dens(r); });
      p0 = quad::gauss(rl, rr, coef);
      p1 = quad::gauss(rl, rr, [&](double r) { return xi(r) * coef(r); });
      p2 = quad::gauss(rl, rr, [&](double r) { return xi(r) * xi(r) * coef(r); });
    }

    // Shape products: hat_l = 1 - xi, hat_r = xi.
    const double mass_ll = vol * (m0 - 2.0 * m1 + m2);
    const double mass_lr = vol * (m1 - m2);
    const double mass_rr = vol * m2;
    const double pot_ll = vol * (p0 - 2.0 * p1 + p2);
    const double pot_lr = vol * (p1 - p2);
    const double pot_rr = vol * p2;
    const double grad = vol * A * g / (h * h);

    op.mass.diag[c] += mass_ll;
    op.mass.diag[c + 1] += mass_rr;
    op.mass.off[c] += mass_lr;
    op.stiffness.diag[c] += grad + pot_ll;
    op.stiffness.diag[c + 1] += grad + pot_rr;
    op.stiffness.off[c] += -grad + pot_lr;
  }
  return op;
}

double bilinear_form(const TriDiag& T, std::span<const double> u,
                     std::span<const double> v) {
  const std::size_t m = T.size();
  if (u.size() != m || v.size() != m)
    throw std::invalid_argument("bilinear_form: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += T.diag[i] * u[i] * v[i];
  for (std::size_t i = 0; i + 1 < m; ++i) s += T.off[i] * (u[i] * v[i + 1] + u[i + 1] * v[i]);
  return s;
}

double quadratic_form(const TriDiag& T, std::span<const double> u) {
  if (u.size() != T.size())
    throw std::invalid_argument("quadratic_form: size mismatch");
  // Cell identity u^T T u = sum_c (-off_c)(u_{c+1}-u_c)^2 + sum_i rowsum_i u_i^2.
  // For stiffness matrices the differences are formed before any large
  // products, so the huge diagonal/off-diagonal cancellation never happens.
  double s = 0.0;
  const std::size_t n = T.size();
  for (std::size_t c = 0; c + 1 < n; ++c) {
    const double d = u[c + 1] - u[c];
    s -= T.off[c] * d * d;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double rowsum = T.diag[i];
    if (i > 0) rowsum += T.off[i - 1];
    if (i + 1 < n) rowsum += T.off[i];
    s += rowsum * u[i] * u[i];
  }
  return s;
}

void multiply(const TriDiag& T, std::span<const double> u, std::span<double> out) {
  const std::size_t m = T.size();
  if (u.size() != m || out.size() != m)
    throw std::invalid_argument("multiply: size mismatch");
  for (std::size_t i = 0; i < m; ++i) {
    double s = T.diag[i] * u[i];
    if (i > 0) s += T.off[i - 1] * u[i - 1];
    if (i + 1 < m) s += T.off[i] * u[i + 1];
    out[i] = s;
  }
}

std::vector<double> solve_tridiag(const TriDiag& T, std::span<const double> b) {
  const std::size_t m = T.size();
  if (b.size() != m) throw std::invalid_argument("solve_tridiag: size mismatch");
  std::vector<double> d(m), l(m > 0 ? m - 1 : 0), x(b.begin(), b.end());
  for (std::size_t i = 0; i < m; ++i) {
    double di = T.diag[i];
    if (i > 0) di -= l[i - 1] * l[i - 1] * d[i - 1];
    if (!(di > 0.0) && !(di < 0.0))
      throw std::runtime_error("solve_tridiag: zero pivot");
    d[i] = di;
    if (i + 1 < m) l[i] = T.off[i] / di;
  }
  for (std::size_t i = 1; i < m; ++i) x[i] -= l[i - 1] * x[i - 1];
  for (std::size_t i = 0; i < m; ++i) x[i] /= d[i];
  for (std::size_t i = m - 1; i-- > 0;) x[i] -= l[i] * x[i + 1];
  return x;
}

int inertia_below(const TriDiag& S, const TriDiag& M, double sigma,
                  std::size_t nactive) {
  int count = 0;
  double prev = 0.0;
  for (std::size_t i = 0; i < nactive; ++i) {
    double d = S.diag[i] - sigma * M.diag[i];
    if (i > 0) {
      const double o = S.off[i - 1] - sigma * M.off[i - 1];
      d -= o * o / prev;
    }
    if (d == 0.0) d = -std::numeric_limits<double>::min();
    if (d < 0.0) ++count;
    prev = d;
  }
  return count;
}

namespace {

TriDiag active_part(const TriDiag& T, std::size_t na) {
  TriDiag out;
  out.diag.assign(T.diag.begin(), T.diag.begin() + na);
  out.off.assign(T.off.begin(), T.off.begin() + (na > 0 ? na - 1 : 0));
  return out;
}

TriDiag shifted(const TriDiag& S, const TriDiag& M, double sigma) {
  TriDiag out = S;
  for (std::size_t i = 0; i < out.diag.size(); ++i) out.diag[i] -= sigma * M.diag[i];
  for (std::size_t i = 0; i < out.off.size(); ++i) out.off[i] -= sigma * M.off[i];
  return out;
}

}  // namespace

EigenResult smallest_eigenpair(const ModeOperator& op, double tol, int max_iters) {
  const std::size_t na = op.active;
  if (na < 1) throw std::invalid_argument("smallest_eigenpair: no active dofs");
  if (tol < 0.0) throw std::invalid_argument("smallest_eigenpair: negative tolerance");
  const TriDiag S = active_part(op.stiffness, na);
  const TriDiag M = active_part(op.mass, na);

  // Upper bound for lambda_min from coordinate Rayleigh quotients.
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < na; ++i) hi = std::min(hi, S.diag[i] / M.diag[i]);
  hi += std::max(1.0, std::abs(hi)) * 1e-8;
  // Walk down until no eigenvalue lies below lo.
  double step = std::max(1.0, std::abs(hi));
  double lo = hi - step;
  for (int guard = 0; inertia_below(S, M, lo, na) > 0; ++guard) {
    if (guard > 4000) throw SolverFailure("smallest_eigenpair: no lower bound found", {});
    step *= 2.0;
    lo = hi - step;
  }
  if (inertia_below(S, M, hi, na) == 0) {
    // hi was slightly below the eigenvalue; widen until it is bracketed.
    double up = std::max(1.0, std::abs(hi)) * 1e-8;
    while (inertia_below(S, M, hi, na) == 0) {
      hi += up;
      up *= 2.0;
    }
  }
  // Bisect so that (lo, hi] contains exactly the smallest eigenvalue.
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (inertia_below(S, M, mid, na) == 0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
  }

  // Shifted inverse iteration from the PD side of the bracket.  lo can land
  // exactly on a zero eigenvalue (inertia counts strictly below), so factor
  // from strictly inside the PD side and back off while the pivot dies.
  double back = 1e-12 * std::max(1.0, std::abs(lo));
  TriDiag Tshift = shifted(S, M, lo - back);
  for (int tries = 0; tries < 8; ++tries) {
    try {
      solve_tridiag(Tshift, std::vector<double>(na, 1.0));
      break;
    } catch (const std::runtime_error&) {
      back *= 1024.0;
      Tshift = shifted(S, M, lo - back);
    }
  }
  auto inf_norm = [](const TriDiag& T) {
    double m = 0.0;
    for (std::size_t i = 0; i < T.size(); ++i) {
      double row = std::abs(T.diag[i]);
      if (i > 0) row += std::abs(T.off[i - 1]);
      if (i + 1 < T.size()) row += std::abs(T.off[i]);
      m = std::max(m, row);
    }
    return m;
  };
  const double s_inf = inf_norm(S);
  const double m_inf = inf_norm(M);
  std::vector<double> v(na, 1.0), mv(na), sv(na);
  EigenResult res;
  res.value = 0.5 * (lo + hi);
  for (int it = 1; it <= max_iters; ++it) {
    multiply(M, v, mv);
    std::vector<double> w = solve_tridiag(Tshift, mv);
    const double wnorm = std::sqrt(std::max(quadratic_form(M, w),
                                            std::numeric_limits<double>::min()));
    for (auto& x : w) x /= wnorm;
    v = std::move(w);
    multiply(S, v, sv);
    multiply(M, v, mv);
    const double num = std::inner_product(v.begin(), v.end(), sv.begin(), 0.0);
    const double den = std::inner_product(v.begin(), v.end(), mv.begin(), 0.0);
    const double rho = num / den;
    double rnorm = 0.0, vnorm = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
      const double r = sv[i] - rho * mv[i];
      rnorm += r * r;
      vnorm += v[i] * v[i];
    }
    rnorm = std::sqrt(rnorm);
    vnorm = std::sqrt(vnorm);
    // Backward-error test: residual small against ||S - rho M|| ||v||, not
    // against ||Sv||, which collapses when the eigenvalue is exactly zero.
    const double scale = (s_inf + std::abs(rho) * m_inf) * vnorm;
    res.trace.push_back(scale > 0.0 ? rnorm / scale : rnorm);
    res.iterations = it;
    res.value = rho;
    if (rnorm <= tol * scale) {
      // Sign convention, then mass normalization on the full vector.
      double mx = 0.0;
      for (double x : v) mx = std::max(mx, std::abs(x));
      for (double x : v) {
        if (std::abs(x) > 1e-14 * mx) {
          if (x < 0.0)
            for (auto& y : v) y = -y;
          break;
        }
      }
      res.vector.assign(op.stiffness.size(), 0.0);
      std::copy(v.begin(), v.end(), res.vector.begin());
      return res;
    }
  }
  throw SolverFailure("smallest_eigenpair: residual tolerance not reached", res.trace);
}

std::vector<double> nodal_volume_weights(const ConeModel& model,
                                         const RadialMesh& mesh) {
  const std::size_t M = mesh.size();
  if (M < 2) throw std::invalid_argument("nodal_volume_weights: mesh too small");
  const double vol = model.cross_section.volume;
  const int n = model.n;
  const bool exact = model.warp.kind == WarpKind::exact;
  std::vector<double> w(M, 0.0);
  for (std::size_t c = 0; c + 1 < M; ++c) {
    const double rl = mesh.nodes[c], rr = mesh.nodes[c + 1];
    double m0, m1;
    if (exact) {
      m0 = quad::power_moment(rl, rr, double(n - 1), 0);
      m1 = quad::power_moment(rl, rr, double(n - 1), 1);
    } else {
      auto dens = [&](double r) { return std::pow(model.phi(r), n - 1); };
      m0 = quad::gauss(rl, rr, dens);
      m1 = quad::gauss(rl, rr, [&](double r) { return (r - rl) / (rr - rl) * dens(r); });
    }
    w[c] += vol * (m0 - m1);
    w[c + 1] += vol * m1;
  }
  return w;
}

}  // namespace conelab
