#include "conelab/weight_function.hpp"

#include <cmath>
#include <stdexcept>

namespace conelab {

namespace {
double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}
}  // namespace

WeightFunction WeightFunction::cone() {
  WeightFunction w;
  w.kind_ = Kind::cone;
  return w;
}

WeightFunction WeightFunction::manifold(double eps0) {
  if (!(eps0 > 0.0) || eps0 > 1.0)
    throw std::invalid_argument("weight: eps0 must lie in (0, 1] so that chi >= 1");
  WeightFunction w;
  w.kind_ = Kind::manifold;
  w.eps0_ = eps0;
  return w;
}

WeightFunction WeightFunction::unit() {
  WeightFunction w;
  w.kind_ = Kind::unit;
  return w;
}

double WeightFunction::chi(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("weight: r must be positive");
  switch (kind_) {
    case Kind::cone:
      return 1.0 / r;
    case Kind::unit:
      return 1.0;
    case Kind::manifold:
      break;
  }
  if (r <= 0.25 * eps0_) return 1.0 / r;
  if (r >= eps0_) return 1.0;
  const double t = (r - 0.25 * eps0_) / (0.75 * eps0_);
  const double w = 1.0 - smoothstep5(t);
  const double rho = w * r + (1.0 - w);
  return 1.0 / rho;
}

std::vector<double> WeightFunction::band_breakpoints() const {
  if (kind_ != Kind::manifold) return {};
  return {0.25 * eps0_, eps0_};
}

bool WeightFunction::pure_power_on(double lo, double hi, int& exponent) const {
  switch (kind_) {
    case Kind::cone:
      exponent = -1;
      return true;
    case Kind::unit:
      exponent = 0;
      return true;
    case Kind::manifold:
      break;
  }
  if (hi <= 0.25 * eps0_) {
    exponent = -1;
    return true;
  }
  if (lo >= eps0_) {
    exponent = 0;
    return true;
  }
  return false;
}

}  // namespace conelab
