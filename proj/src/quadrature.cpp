#include "conelab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace conelab::quad {

const double kGaussNodes[kGaussPoints] = {
    0.0052995325041750307, 0.0277124884633837,    0.067184398806084122,
    0.1222977958224985,    0.19106187779867811,   0.27099161117138632,
    0.35919822461037054,   0.45249374508118129,   0.54750625491881877,
    0.64080177538962946,   0.72900838882861363,   0.80893812220132189,
    0.87770220417750155,   0.93281560119391593,   0.9722875115366163,
    0.99470046749582497};

const double kGaussWeights[kGaussPoints] = {
    0.013576229705877019, 0.031126761969323853, 0.047579255841246296,
    0.062314485627767015, 0.074797994408288382, 0.08457825969750131,
    0.091301707522461806, 0.094725305227534293, 0.094725305227534293,
    0.091301707522461806, 0.08457825969750131,  0.074797994408288382,
    0.062314485627767015, 0.047579255841246296, 0.031126761969323853,
    0.013576229705877019};

double power_integral(double a, double b, double gamma) {
  if (!(a > 0.0) || b < a) throw std::invalid_argument("power_integral: need 0 < a <= b");
  if (a == b) return 0.0;
  const double m = gamma + 1.0;
  if (m == 0.0) return std::log(b / a);
  // b^m (1 - (a/b)^m)/m, written with expm1 so the m -> 0 limit is smooth.
  return std::pow(b, m) * (-std::expm1(m * std::log(a / b))) / m;
}

namespace {

// mu_k = a^{gamma+1} d sum_m binom(gamma, m) d^m / (k+m+1), d = (b-a)/a.
// Valid for d < 1; terms decay geometrically once m exceeds |gamma|.
double power_moment_series(double a, double gamma, double d, int k) {
  double binom = 1.0;  // binom(gamma, m)
  double dpow = 1.0;
  double sum = 0.0;
  for (int m = 0; m < 120; ++m) {
    const double term = binom * dpow / double(k + m + 1);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum) && m > 2) break;
    binom *= (gamma - m) / double(m + 1);
    dpow *= d;
  }
  return std::pow(a, gamma + 1.0) * d * sum;
}

double binom_int(int n, int j) {
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r = r * double(n - j + i) / double(i);
  return r;
}

// Direct expansion xi^k = h^{-k} sum_j C(k,j) r^j (-a)^{k-j}.
double power_moment_direct(double a, double b, double gamma, int k) {
  const double h = b - a;
  double s = 0.0;
  for (int j = 0; j <= k; ++j) {
    double c = binom_int(k, j) * std::pow(-a, k - j);
    s += c * power_integral(a, b, gamma + j);
  }
  return s / std::pow(h, k);
}

}  // namespace

double power_moment(double a, double b, double gamma, int k) {
  if (k < 0 || k > 8) throw std::invalid_argument("power_moment: k out of range");
  if (!(a > 0.0) || b < a) throw std::invalid_argument("power_moment: need 0 < a <= b");
  if (a == b) return 0.0;
  const double d = (b - a) / a;
  if (d <= 0.5) return power_moment_series(a, gamma, d, k);
  return power_moment_direct(a, b, gamma, k);
}

double poly_power_integral(double a, double b, double gamma,
                           std::span<const double> coeffs) {
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0.0) s += coeffs[k] * power_moment(a, b, gamma, int(k));
  return s;
}

double poly_power_integral_sub(double a, double b, double sub_a, double sub_b,
                               double gamma, std::span<const double> coeffs) {
  if (sub_a <= a && sub_b >= b) return poly_power_integral(a, b, gamma, coeffs);
  if (sub_b <= sub_a) return 0.0;
  // Re-express p(xi) in xi' = (r - sub_a)/(sub_b - sub_a): xi = xi0 + lam*xi'.
  const double h = b - a;
  const double xi0 = (sub_a - a) / h;
  const double lam = (sub_b - sub_a) / h;
  std::vector<double> out(coeffs.size(), 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    double pw = 1.0;  // lam^m built inside loop via binomial
    for (std::size_t m = 0; m <= k; ++m) {
      out[m] += coeffs[k] * binom_int(int(k), int(m)) *
                std::pow(xi0, double(k - m)) * std::pow(lam, double(m));
      (void)pw;
    }
  }
  return poly_power_integral(sub_a, sub_b, gamma, out);
}

}  // namespace conelab::quad
