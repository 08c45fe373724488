#include <cmath>
#include <vector>

#include "doctest.h"

#include "conelab/quadrature.hpp"

using namespace conelab;

TEST_CASE("gauss rule basics") {
  double wsum = 0.0;
  for (int i = 0; i < quad::kGaussPoints; ++i) {
    CHECK(quad::kGaussNodes[i] > 0.0);
    CHECK(quad::kGaussNodes[i] < 1.0);
    if (i) CHECK(quad::kGaussNodes[i] > quad::kGaussNodes[i - 1]);
    CHECK(quad::kGaussWeights[i] > 0.0);
    wsum += quad::kGaussWeights[i];
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss rule integrates high-degree monomials exactly") {
  // 16 points are exact through degree 31.
  for (int k : {1, 2, 5, 16, 25, 31}) {
    double s = 0.0;
    for (int i = 0; i < quad::kGaussPoints; ++i)
      s += quad::kGaussWeights[i] * std::pow(quad::kGaussNodes[i], k);
    CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
}

TEST_CASE("gauss maps the reference rule onto a cell") {
  const double a = 0.3, b = 1.1;
  const double got = quad::gauss(a, b, [](double r) { return std::sin(r); });
  CHECK(got == doctest::Approx(std::cos(a) - std::cos(b)).epsilon(1e-14));
}

TEST_CASE("gauss_split respects interior breakpoints") {
  const std::vector<double> breaks{0.125, 0.5};
  const double got = quad::gauss_split(0.05, 0.9, breaks,
                                       [](double r) { return 1.0 / r; });
  CHECK(got == doctest::Approx(std::log(0.9 / 0.05)).epsilon(1e-14));
}

TEST_CASE("power integral covers the logarithmic case") {
  CHECK(quad::power_integral(0.5, 1.0, -1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(quad::power_integral(0.25, 2.0, 2.0) ==
        doctest::Approx((8.0 - 0.015625) / 3.0).epsilon(1e-14));
  // Stable on extremely narrow graded cells.
  const double a = 1e-6, b = a / 0.98;
  CHECK(quad::power_integral(a, b, -1.0) ==
        doctest::Approx(std::log(b / a)).epsilon(1e-13));
}

TEST_CASE("power moments match direct quadrature") {
  // int r^gamma xi^k dr on a narrow and on a wide cell.
  for (auto [a, b] : {std::pair{1e-5, 1e-5 / 0.98}, std::pair{0.3, 0.9}}) {
    for (double gamma : {-2.0, -1.0, 0.0, 2.5}) {
      for (int k : {0, 1, 2, 4}) {
        const double got = quad::power_moment(a, b, gamma, k);
        const double want = quad::gauss(a, b, [&](double r) {
          return std::pow(r, gamma) * std::pow((r - a) / (b - a), k);
        });
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}
