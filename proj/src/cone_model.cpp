#include "conelab/cone_model.hpp"

#include <cmath>
#include <stdexcept>

namespace conelab {

namespace {

// Helpers for phi(r) = r * s(r), s(r) = sqrt(1 + c r^alpha).
struct WarpEval {
  double s, ds, dds;
};

WarpEval eval_s(const Warp& w, double r) {
  if (w.kind == WarpKind::exact) return {1.0, 0.0, 0.0};
  const double p = w.c * std::pow(r, w.alpha);
  const double s = std::sqrt(1.0 + p);
  const double dp = w.c * w.alpha * std::pow(r, w.alpha - 1.0);
  const double ddp = w.c * w.alpha * (w.alpha - 1.0) * std::pow(r, w.alpha - 2.0);
  const double ds = dp / (2.0 * s);
  const double dds = ddp / (2.0 * s) - dp * ds / (2.0 * s * s);
  return {s, ds, dds};
}

}  // namespace

double ConeModel::phi(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("phi: r must be positive");
  return r * eval_s(warp, r).s;
}

double ConeModel::dphi(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("dphi: r must be positive");
  const auto e = eval_s(warp, r);
  return e.s + r * e.ds;
}

double ConeModel::ddphi(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("ddphi: r must be positive");
  const auto e = eval_s(warp, r);
  return 2.0 * e.ds + r * e.dds;
}

bool ConeModel::subcritical() const {
  return cross_section.scalar_curvature > double(n - 2);
}

void ConeModel::validate() const {
  if (n < 3) throw std::invalid_argument("cone model: n must be >= 3");
  cross_section.validate();
  if (cross_section.dim != n - 1)
    throw std::invalid_argument("cone model: cross section dim must equal n - 1");
  if (!(outer_radius > 0.0))
    throw std::invalid_argument("cone model: outer radius must be positive");
  if (warp.kind == WarpKind::perturbed) {
    if (!(warp.alpha > 0.0))
      throw std::invalid_argument("cone model: warp alpha must be positive");
    if (!std::isfinite(warp.c))
      throw std::invalid_argument("cone model: warp c not finite");
    // 1 + c r^alpha must stay positive on (0, L].
    const double worst = 1.0 + warp.c * std::pow(outer_radius, warp.alpha);
    if (!(worst > 0.0) || !(1.0 + std::min(0.0, warp.c) > 0.0))
      throw std::invalid_argument("cone model: warp factor non-positive in range");
  }
}

ConeModel make_cone_model(int n, const CrossSection& cs, double outer_radius,
                          const Warp& warp, OuterBc outer_bc) {
  ConeModel m;
  m.n = n;
  m.cross_section = cs;
  m.outer_radius = outer_radius;
  m.warp = warp;
  m.outer_bc = outer_bc;
  m.validate();
  return m;
}

double scalar_curvature_at(const ConeModel& model, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("scalar_curvature_at: r must be positive");
  const double n1 = model.n - 1;
  const double n2 = model.n - 2;
  const double R0 = model.cross_section.scalar_curvature;
  const double f = model.phi(r);
  const double df = model.dphi(r);
  const double ddf = model.ddphi(r);
  return R0 / (f * f) - 2.0 * n1 * ddf / f - n1 * n2 * (df / f) * (df / f);
}

AcReport check_ac_condition(const ConeModel& model, int k) {
  if (k < 1) throw std::invalid_argument("check_ac_condition: k must be >= 1");
  AcReport rep;
  rep.constants.assign(k, 0.0);
  rep.per_order_bounded.assign(k, true);
  const double root = std::sqrt(double(model.n - 1));
  if (model.warp.kind == WarpKind::exact) {
    // phi/r - 1 vanishes identically; every order is bounded with constant 0.
    rep.holds = true;
    return rep;
  }
  const double alpha = model.warp.alpha;
  const double c = model.warp.c;
  // d^i/dr^i (c r^alpha) = c * alpha (alpha-1) ... (alpha-i+1) * r^(alpha-i),
  // so s_i(r) = |c * ff_i| * r^(alpha-1) * sqrt(n-1) with ff_i the falling
  // factorial.  We sample a geometric ladder toward the tip and flag
  // divergence (growth by 10x between the two innermost decades).
  const int samples = 40;
  const double r_hi = model.outer_radius;
  const double r_lo = r_hi * 1e-10;
  const double ratio = std::pow(r_lo / r_hi, 1.0 / (samples - 1));
  bool all_ok = true;
  for (int order = 1; order <= k; ++order) {
    double ff = 1.0;
    for (int i = 0; i < order; ++i) ff *= (alpha - i);
    double sup = 0.0;
    double first = -1.0, last = -1.0;
    for (int m = 0; m < samples; ++m) {
      const double r = r_hi * std::pow(ratio, m);
      const double si = std::abs(c * ff) * std::pow(r, alpha - 1.0) * root;
      sup = std::max(sup, si);
      if (m == 0) first = si;
      last = si;
    }
    // Bounded iff the magnitude near the tip does not blow up versus the
    // outer sample; the exponent test alpha >= 1 or ff == 0 confirms it.
    const bool bounded = (ff == 0.0) || (alpha >= 1.0) || (last <= 10.0 * std::max(first, 1.0));
    rep.constants[order - 1] = sup;
    rep.per_order_bounded[order - 1] = bounded;
    all_ok = all_ok && bounded;
  }
  rep.holds = all_ok;
  return rep;
}

}  // namespace conelab
