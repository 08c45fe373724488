#pragma once

#include <span>

namespace conelab::quad {

/// Exact \int_a^b r^gamma dr for 0 < a <= b and arbitrary real gamma.
/// Evaluated as b^{gamma+1} * (-expm1((gamma+1) ln(a/b)))/(gamma+1), which is
/// stable down to the logarithmic case gamma = -1.
double power_integral(double a, double b, double gamma);

/// \int_a^b r^gamma xi^k dr with xi = (r - a)/(b - a), 0 <= k <= 8.
/// Uses a binomial series in the cell width ratio when the cell is narrow
/// (graded meshes), falling back to a direct monomial expansion otherwise.
double power_moment(double a, double b, double gamma, int k);

/// \int_a^b r^gamma p(xi) dr for p given by monomial coefficients in xi.
double poly_power_integral(double a, double b, double gamma,
                           std::span<const double> coeffs);

/// Same integrand restricted to [sub_a, sub_b] inside the cell [a, b], with p
/// still expressed in the coordinate xi = (r - a)/(b - a) of the full cell.
double poly_power_integral_sub(double a, double b, double sub_a, double sub_b,
                               double gamma, std::span<const double> coeffs);

inline constexpr int kGaussPoints = 16;
extern const double kGaussNodes[kGaussPoints];    // on [0, 1]
extern const double kGaussWeights[kGaussPoints];  // sum to 1

template <class F>
double gauss(double a, double b, F&& f) {
  const double h = b - a;
  double s = 0.0;
  for (int i = 0; i < kGaussPoints; ++i)
    s += kGaussWeights[i] * f(a + h * kGaussNodes[i]);
  return s * h;
}

/// Gauss rule split at the interior breakpoints that fall inside (a, b).
/// Breakpoints must be sorted ascending.
template <class F>
double gauss_split(double a, double b, std::span<const double> breaks, F&& f) {
  double s = 0.0;
  double lo = a;
  for (double c : breaks) {
    if (c > lo && c < b) {
      s += gauss(lo, c, f);
      lo = c;
    }
  }
  return s + gauss(lo, b, f);
}

}  // namespace conelab::quad
