#pragma once

#include <vector>

namespace conelab {

// Radial weight chi(r) used by the weighted norms.  Three modes:
//  * cone(): chi(r) = 1/r everywhere (the pure cone weight used on annuli).
//  * manifold(eps0): chi(r) = 1/r on (0, eps0/4], smoothly interpolates on
//    [eps0/4, eps0], and chi == 1 for r >= eps0.  The blend replaces r by
//    rho(r) = w(r) r + (1 - w(r)) with a quintic smoothstep ramp w, so rho is
//    monotone and rho <= 1 whenever eps0 <= 1, keeping chi >= 1.
//  * unit(): chi == 1 (plain Sobolev norms).
class WeightFunction {
 public:
  static WeightFunction cone();
  static WeightFunction manifold(double eps0);
  static WeightFunction unit();

  double chi(double r) const;
  double inv(double r) const { return 1.0 / chi(r); }

  bool is_cone() const { return kind_ == Kind::cone; }
  bool is_unit() const { return kind_ == Kind::unit; }
  double eps0() const { return eps0_; }

  // Radii where the analytic form of chi changes; integration routines split
  // intervals there.  Between consecutive breakpoints chi is either a pure
  // power of r or the smooth blend.
  std::vector<double> band_breakpoints() const;

  // True when chi restricted to (lo, hi) is exactly r^{-1} or exactly 1;
  // exponent receives -1 or 0.  The blend band returns false.
  bool pure_power_on(double lo, double hi, int& exponent) const;

 private:
  enum class Kind { cone, manifold, unit };
  Kind kind_ = Kind::cone;
  double eps0_ = 0.0;
};

}  // namespace conelab
