#include "conelab/weighted_norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "conelab/quadrature.hpp"

namespace conelab {

namespace {

struct Poly3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};
};

// Accumulates polynomial-times-power integrands on one cell piece.
struct TermBucket {
  std::vector<std::pair<double, Poly3>> entries;

  void add(double gamma, const Poly3& p) {
    for (auto& e : entries) {
      if (e.first == gamma) {
        for (int t = 0; t < 3; ++t) e.second.c[t] += p.c[t];
        return;
      }
    }
    entries.push_back({gamma, p});
  }
};

Poly3 linear_square(double a, double b) {
  // (a + b xi)^2
  Poly3 p;
  p.c = {a * a, 2.0 * a * b, b * b};
  return p;
}

Poly3 linear_product(double a, double b, double c, double d) {
  // (a + b xi)(c + d xi)
  Poly3 p;
  p.c = {a * c, a * d + b * c, b * d};
  return p;
}

bool radial_only(const GridFunction& u) {
  for (std::size_t j = 1; j < u.values.size(); ++j)
    for (double v : u.values[j])
      if (v != 0.0) return false;
  return true;
}

// |a + b xi| integrated against r^gamma over [pa, pb] inside the cell [rl, rr].
double abs_linear_power(double rl, double rr, double pa, double pb, double gamma,
                        double a, double b) {
  const double vl = a;            // value at xi = 0
  const double vr = a + b;        // value at xi = 1
  std::array<double, 2> coeffs{a, b};
  if (vl >= 0.0 && vr >= 0.0)
    return quad::poly_power_integral_sub(rl, rr, pa, pb, gamma, coeffs);
  if (vl <= 0.0 && vr <= 0.0) {
    std::array<double, 2> neg{-a, -b};
    return quad::poly_power_integral_sub(rl, rr, pa, pb, gamma, neg);
  }
  // Sign change at xi* = -a/b.
  const double xistar = -a / b;
  const double rstar = rl + (rr - rl) * xistar;
  const double sgn = (vl >= 0.0) ? 1.0 : -1.0;
  std::array<double, 2> pos{sgn * a, sgn * b};
  std::array<double, 2> neg{-sgn * a, -sgn * b};
  double s = 0.0;
  if (pa < rstar)
    s += quad::poly_power_integral_sub(rl, rr, pa, std::min(pb, rstar), gamma, pos);
  if (pb > rstar)
    s += quad::poly_power_integral_sub(rl, rr, std::max(pa, rstar), pb, gamma, neg);
  return s;
}

struct CellModeData {
  double ul, du, s;  // value, increment, slope
  double ql, dq;     // second-derivative interpolant (i == 2 only)
};

}  // namespace

WeightFunction default_weight(const ConeModel& model) {
  return WeightFunction::manifold(std::min(1.0, 0.5 * model.outer_radius));
}

double weighted_term_integral(const GridFunction& u, const ConeModel& model, int i,
                              double p, double chi_power, const Annulus& annulus,
                              const WeightFunction& weight) {
  u.validate();
  model.validate();
  if (i < 0 || i > 2) throw std::invalid_argument("weighted norms: derivative order must be <= 2");
  if (!(p >= 1.0)) throw std::invalid_argument("weighted norms: p must be >= 1");
  // chi^0 == 1 regardless of the weight, but the weight's band breakpoints
  // would still change the quadrature subdivision.  Re-dispatch with the unit
  // weight so a zero exponent integrates bit-for-bit like the plain norm;
  // the exact ordering checks rely on equal terms being computed identically.
  if (chi_power == 0.0 && !weight.is_unit())
    return weighted_term_integral(u, model, i, p, 0.0, annulus, WeightFunction::unit());
  const RadialMesh& mesh = *u.mesh;
  const std::size_t M = mesh.size();
  if (M < 2) throw std::invalid_argument("weighted norms: mesh too small");
  const double A = std::max(annulus.lo, mesh.nodes.front());
  const double B = std::min(annulus.hi, mesh.nodes.back());
  if (!(B > A)) return 0.0;

  const std::size_t nmodes = u.modes();
  const auto& nus = model.cross_section.laplace_eigenvalues;
  if (nmodes > nus.size())
    throw std::invalid_argument("weighted norms: more modes than cross-section eigenvalues");
  const double vol = model.cross_section.volume;
  const int n = model.n;
  const bool exact_warp = model.warp.kind == WarpKind::exact;
  const bool single_mode = radial_only(u);

  std::vector<std::vector<double>> q2;  // nodal second derivatives per mode
  if (i == 2) {
    q2.resize(nmodes);
    for (std::size_t j = 0; j < nmodes; ++j)
      q2[j] = nodal_second_derivative(mesh, u.values[j]);
  }

  const auto breaks = weight.band_breakpoints();
  double total = 0.0;
  std::vector<CellModeData> cd(nmodes);

  for (std::size_t c = 0; c + 1 < M; ++c) {
    const double rl = mesh.nodes[c], rr = mesh.nodes[c + 1];
    const double a1 = std::max(A, rl), b1 = std::min(B, rr);
    if (!(b1 > a1)) continue;
    const double h = rr - rl;
    for (std::size_t j = 0; j < nmodes; ++j) {
      cd[j].ul = u.values[j][c];
      cd[j].du = u.values[j][c + 1] - u.values[j][c];
      cd[j].s = cd[j].du / h;
      if (i == 2) {
        cd[j].ql = q2[j][c];
        cd[j].dq = q2[j][c + 1] - q2[j][c];
      }
    }

    // Piece boundaries: weight bands falling inside the clipped cell.
    std::vector<double> edges{a1};
    for (double bk : breaks)
      if (bk > a1 && bk < b1) edges.push_back(bk);
    edges.push_back(b1);

    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double pa = edges[e], pb = edges[e + 1];
      int chi_exp = 0;
      const bool pure = weight.pure_power_on(pa, pb, chi_exp);
      const bool exact_p2 = (p == 2.0) && exact_warp && pure;
      const bool exact_p1 = (p == 1.0) && exact_warp && pure && single_mode && i <= 1;

      if (exact_p2) {
        const double base = chi_exp * chi_power + double(n - 1);
        TermBucket bucket;
        for (std::size_t j = 0; j < nmodes; ++j) {
          const auto& m = cd[j];
          const double nu = nus[j];
          if (i == 0) {
            bucket.add(base, linear_square(m.ul, m.du));
          } else if (i == 1) {
            Poly3 s2;
            s2.c = {m.s * m.s, 0.0, 0.0};
            bucket.add(base, s2);
            if (nu != 0.0) {
              Poly3 uu = linear_square(m.ul, m.du);
              for (auto& cc : uu.c) cc *= nu;
              bucket.add(base - 2.0, uu);
            }
          } else {
            bucket.add(base, linear_square(m.ql, m.dq));
            Poly3 s2;
            s2.c = {(double(n - 1) + 2.0 * nu) * m.s * m.s, 0.0, 0.0};
            bucket.add(base - 2.0, s2);
            if (nu != 0.0) {
              Poly3 cross = linear_product(m.ul, m.du, 1.0, 0.0);
              for (auto& cc : cross.c) cc *= -4.0 * nu * m.s;
              bucket.add(base - 3.0, cross);
              Poly3 uu = linear_square(m.ul, m.du);
              for (auto& cc : uu.c) cc *= nu * (2.0 + nu);
              bucket.add(base - 4.0, uu);
            }
          }
        }
        for (const auto& [gamma, poly] : bucket.entries)
          total += vol * quad::poly_power_integral_sub(rl, rr, pa, pb, gamma, poly.c);
      } else if (exact_p1) {
        const double base = chi_exp * chi_power + double(n - 1);
        const auto& m = cd[0];
        if (i == 0) {
          total += vol * abs_linear_power(rl, rr, pa, pb, base, m.ul, m.du);
        } else {
          total += vol * std::abs(m.s) * quad::power_integral(pa, pb, base);
        }
      } else {
        auto f = [&](double r) {
          const double xi = (r - rl) / h;
          const double phi = model.phi(r);
          const double dphi = exact_warp ? 1.0 : model.dphi(r);
          double m2 = 0.0;
          for (std::size_t j = 0; j < nmodes; ++j) {
            const auto& m = cd[j];
            const double uv = m.ul + m.du * xi;
            const double nu = nus[j];
            if (i == 0) {
              m2 += uv * uv;
            } else if (i == 1) {
              m2 += m.s * m.s + nu * uv * uv / (phi * phi);
            } else {
              const double qv = m.ql + m.dq * xi;
              const double lp = dphi / phi;
              const double ang = nu / (phi * phi);
              const double mix = m.s - lp * uv;
              m2 += qv * qv + double(n - 1) * lp * lp * m.s * m.s +
                    2.0 * ang * mix * mix + ang * ang * uv * uv;
            }
          }
          const double chi = weight.chi(r);
          const double w = (chi_power == 0.0) ? 1.0 : std::pow(chi, chi_power);
          const double dens = std::pow(phi, n - 1) * vol;
          const double mp = (p == 2.0) ? m2 : std::pow(m2, 0.5 * p);
          return w * mp * dens;
        };
        total += quad::gauss(pa, pb, f);
      }
    }
  }
  return total;
}

double weighted_norm(const GridFunction& u, const WeightSpec& spec,
                     const ConeModel& model, const Annulus& annulus,
                     const WeightFunction& weight) {
  if (spec.k < 0 || spec.k > 2)
    throw std::invalid_argument("weighted norms: k must be 0, 1, or 2");
  if (!(spec.p >= 1.0)) throw std::invalid_argument("weighted norms: p must be >= 1");
  double sum = 0.0;
  for (int i = 0; i <= spec.k; ++i) {
    const double chi_power = spec.p * (spec.delta - i) + double(model.n);
    sum += weighted_term_integral(u, model, i, spec.p, chi_power, annulus, weight);
  }
  if (!std::isfinite(sum)) throw std::runtime_error("weighted norms: non-finite integral");
  return std::pow(sum, 1.0 / spec.p);
}

double weighted_norm(const GridFunction& u, const WeightSpec& spec,
                     const ConeModel& model, const WeightFunction& weight) {
  u.validate();
  Annulus full{u.mesh->nodes.front(), u.mesh->nodes.back()};
  return weighted_norm(u, spec, model, full, weight);
}

double weighted_norm(const GridFunction& u, const WeightSpec& spec,
                     const ConeModel& model) {
  return weighted_norm(u, spec, model, default_weight(model));
}

double unweighted_sobolev_norm(const GridFunction& u, int k, double p,
                               const ConeModel& model) {
  u.validate();
  Annulus full{u.mesh->nodes.front(), u.mesh->nodes.back()};
  double sum = 0.0;
  for (int i = 0; i <= k; ++i)
    sum += weighted_term_integral(u, model, i, p, 0.0, full, WeightFunction::unit());
  return std::pow(sum, 1.0 / p);
}

double h1_norm(const GridFunction& u, const ConeModel& model) {
  WeightSpec spec{1, 2.0, 1.0 - 0.5 * model.n};
  return weighted_norm(u, spec, model);
}

double c_k_delta_norm(const GridFunction& u, int k, double delta,
                      const WeightFunction& weight, const ConeModel* model) {
  u.validate();
  if (k < 0 || k > 2) throw std::invalid_argument("c_k_delta_norm: k must be 0, 1, or 2");
  const RadialMesh& mesh = *u.mesh;
  const std::size_t M = mesh.size();
  const std::size_t nmodes = u.modes();
  const bool radial = radial_only(u);
  if (!radial && k >= 1 && model == nullptr)
    throw std::invalid_argument("c_k_delta_norm: angular derivative terms need a model");

  std::vector<std::vector<double>> d1, d2;
  if (k >= 1) {
    d1.resize(nmodes);
    for (std::size_t j = 0; j < nmodes; ++j) d1[j] = nodal_first_derivative(mesh, u.values[j]);
  }
  if (k >= 2) {
    d2.resize(nmodes);
    for (std::size_t j = 0; j < nmodes; ++j) d2[j] = nodal_second_derivative(mesh, u.values[j]);
  }

  double sup = 0.0;
  for (std::size_t idx = 0; idx < M; ++idx) {
    const double r = mesh.nodes[idx];
    const double chi = weight.chi(r);
    double acc = 0.0;
    for (int i = 0; i <= k; ++i) {
      double m2 = 0.0;
      for (std::size_t j = 0; j < nmodes; ++j) {
        const double uv = u.values[j][idx];
        double nu = 0.0, phi = r, dphi = 1.0;
        if (model != nullptr) {
          nu = model->cross_section.laplace_eigenvalues.at(j);
          phi = model->phi(r);
          dphi = model->dphi(r);
        }
        if (i == 0) {
          m2 += uv * uv;
        } else if (i == 1) {
          const double s = d1[j][idx];
          m2 += s * s + nu * uv * uv / (phi * phi);
        } else {
          const double s = d1[j][idx];
          const double qv = d2[j][idx];
          const double lp = dphi / phi;
          const double ang = nu / (phi * phi);
          const double mix = s - lp * uv;
          const double nn = model ? double(model->n - 1) : 0.0;
          m2 += qv * qv + nn * lp * lp * s * s + 2.0 * ang * mix * mix + ang * ang * uv * uv;
        }
      }
      acc += std::pow(chi, delta - i) * std::sqrt(m2);
    }
    sup = std::max(sup, acc);
  }
  return sup;
}

double c_k_delta_norm(const GridFunction& u, int k, double delta) {
  return c_k_delta_norm(u, k, delta, WeightFunction::cone(), nullptr);
}

std::vector<Annulus> dyadic_annulus_decompose(double r_max, int j_count) {
  if (!(r_max > 0.0)) throw std::invalid_argument("dyadic decompose: r_max must be positive");
  if (j_count < 1) throw std::invalid_argument("dyadic decompose: j_count must be >= 1");
  std::vector<Annulus> out;
  out.reserve(j_count);
  double hi = r_max;
  for (int j = 0; j < j_count; ++j) {
    out.push_back({0.5 * hi, hi});
    hi *= 0.5;
  }
  return out;
}

}  // namespace conelab
