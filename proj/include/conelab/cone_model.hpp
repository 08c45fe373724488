#pragma once

#include <vector>

#include "conelab/cross_section.hpp"

namespace conelab {

enum class WarpKind { exact, perturbed };
enum class OuterBc { dirichlet, neumann };

// Warp profile phi(r) = r * sqrt(1 + c * r^alpha).
// kind == exact means c = 0 and phi(r) = r identically.
struct Warp {
  WarpKind kind = WarpKind::exact;
  double alpha = 0.0;
  double c = 0.0;
};

// Metric g = dr^2 + phi(r)^2 h0 on (0, L] x N.
struct ConeModel {
  int n = 0;  // dim of the cone piece, n >= 3; cross_section.dim == n - 1
  CrossSection cross_section;
  double outer_radius = 1.0;
  Warp warp;
  OuterBc outer_bc = OuterBc::dirichlet;

  double phi(double r) const;
  double dphi(double r) const;
  double ddphi(double r) const;

  // True when the j = 0 indicial discriminant R_h0 - (n - 2) is positive.
  bool subcritical() const;

  void validate() const;
};

ConeModel make_cone_model(int n, const CrossSection& cs, double outer_radius,
                          const Warp& warp, OuterBc outer_bc);

// Scalar curvature of g at radius r:
//   R_h0 / phi^2 - 2 (n-1) phi'' / phi - (n-1)(n-2) (phi'/phi)^2.
double scalar_curvature_at(const ConeModel& model, double r);

struct AcReport {
  bool holds = false;
  std::vector<double> constants;          // sup over sampled r of s_i, i = 1..k
  std::vector<bool> per_order_bounded;    // s_i stayed bounded as r -> 0
};

// Checks |d^i/dr^i (phi/r - 1)| * r^(i-1) * sqrt(n-1) stays bounded near the
// tip for derivative orders 1..k, sampling r on a geometric grid.
AcReport check_ac_condition(const ConeModel& model, int k);

}  // namespace conelab
