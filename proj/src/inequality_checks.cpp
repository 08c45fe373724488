#include "conelab/inequality_checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conelab {

namespace {

bool all_zero(const GridFunction& u) {
  for (const auto& mode : u.values)
    for (double x : mode)
      if (x != 0.0) return false;
  return true;
}

Annulus full_domain(const ConeModel& model) { return {0.0, model.outer_radius}; }

}  // namespace

HardyReport hardy_check(const GridFunction& u, const ConeModel& model, double p,
                        int k) {
  u.validate();
  model.validate();
  if (!(p > 1.0)) throw std::invalid_argument("hardy_check: p must exceed 1");
  if (k < 1) throw std::invalid_argument("hardy_check: k must be >= 1");
  const double pk = p * double(k);
  if (std::abs(pk - double(model.n)) < 1e-12)
    throw std::invalid_argument("hardy_check: p*k = n makes the constant degenerate");

  const GridFunction v = plateau_cutoff(u);
  if (all_zero(v))
    throw std::invalid_argument(
        "hardy_check: function vanishes after the compact-support cutoff");

  const WeightFunction chi = WeightFunction::cone();
  const Annulus dom = full_domain(model);
  HardyReport rep;
  rep.lhs = weighted_term_integral(v, model, 0, p, pk, dom, chi);
  const double grad_term =
      weighted_term_integral(v, model, 1, p, p * double(k - 1), dom, chi);
  rep.constant = std::pow(p / std::abs(double(model.n) - pk), p);
  rep.rhs = rep.constant * grad_term;
  rep.satisfied = rep.lhs <= rep.rhs * (1.0 + 1e-8);
  return rep;
}

NormEquivalenceReport norm_equivalence_check(const GridFunction& u,
                                             const ConeModel& model, int k,
                                             double p) {
  u.validate();
  model.validate();
  if (!(p > 1.0))
    throw std::invalid_argument("norm_equivalence_check: p must exceed 1");
  if (k < 0 || k > 2)
    throw std::invalid_argument("norm_equivalence_check: k must be 0, 1, or 2");
  for (int i = 1; i <= k; ++i)
    if (std::abs(p * double(i) - double(model.n)) < 1e-12)
      throw std::invalid_argument(
          "norm_equivalence_check: excluded critical index p*i = n");

  const WeightSpec spec{k, p, double(k) - double(model.n) / p};
  const double weighted = weighted_norm(u, spec, model);
  const double unweighted = unweighted_sobolev_norm(u, k, p, model);

  NormEquivalenceReport rep;
  rep.lower_ok = unweighted <= weighted;
  rep.ratio = unweighted > 0.0 ? weighted / unweighted : 0.0;
  return rep;
}

EmbeddingReport embedding_check(const GridFunction& u, const ConeModel& model,
                                const WeightSpec& from, const WeightSpec& to) {
  u.validate();
  model.validate();
  if (!(from.k > to.k))
    throw std::invalid_argument("embedding_check: source must have more derivatives");
  if (from.delta != to.delta)
    throw std::invalid_argument("embedding_check: deltas must match");
  const double inv_q =
      1.0 / from.p - double(from.k - to.k) / double(model.n);
  if (!(inv_q > 0.0))
    throw std::invalid_argument("embedding_check: exponent outside the Sobolev range");
  const double q_limit = 1.0 / inv_q;
  if (to.p > q_limit + 1e-12)
    throw std::invalid_argument("embedding_check: exponent outside the Sobolev range");

  EmbeddingReport rep;
  rep.lhs = weighted_norm(u, to, model);
  rep.rhs = weighted_norm(u, from, model);
  rep.rhs_ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

ScalingReport scaling_homogeneity_check(const GridFunction& u,
                                        const ConeModel& model,
                                        const WeightSpec& spec, double a,
                                        double r1, double r2) {
  u.validate();
  model.validate();
  if (model.warp.kind != WarpKind::exact)
    throw std::invalid_argument(
        "scaling_homogeneity_check: exact cone warp required");
  if (!(a > 0.0))
    throw std::invalid_argument("scaling_homogeneity_check: a must be positive");
  if (!(0.0 < r1 && r1 < r2))
    throw std::invalid_argument("scaling_homogeneity_check: need 0 < r1 < r2");
  const RadialMesh& mesh = *u.mesh;
  const double r_min = mesh.nodes.front();
  const double L = mesh.outer_radius;
  if (r2 > L || a * r2 > L || r1 < r_min * (1.0 - 1e-12) ||
      a * r1 < r_min * (1.0 - 1e-12))
    throw std::invalid_argument("scaling_homogeneity_check: annulus outside the mesh");

  // The dilation must land nodes on nodes: a = q^m for integer m.
  const double q = mesh.grading;
  const double m_real = std::log(a) / std::log(q);
  const long m = std::lround(m_real);
  if (std::abs(a - std::pow(q, double(m))) > 1e-9 * a)
    throw std::invalid_argument(
        "scaling_homogeneity_check: a must be an integer power of the mesh grading");

  // u_a[i] = u(a r_i); with r_i = L q^{M-1-i} this is the index shift i - m.
  const std::size_t M = mesh.size();
  GridFunction ua = u;
  for (std::size_t j = 0; j < ua.modes(); ++j)
    for (std::size_t i = 0; i < M; ++i) {
      const long src = long(i) - m;
      ua.values[j][i] =
          (src >= 0 && src < long(M)) ? u.values[j][std::size_t(src)] : 0.0;
    }

  const WeightFunction chi = WeightFunction::cone();
  ScalingReport rep;
  rep.lhs = weighted_norm(u, spec, model, Annulus{a * r1, a * r2}, chi);
  rep.rhs = std::pow(a, -spec.delta) *
            weighted_norm(ua, spec, model, Annulus{r1, r2}, chi);
  const double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.rel_err = scale > 0.0 ? std::abs(rep.lhs - rep.rhs) / scale : 0.0;
  return rep;
}

}  // namespace conelab
