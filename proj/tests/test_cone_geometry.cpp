#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "conelab/cone_model.hpp"
#include "conelab/cross_section.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace conelab;

TEST_CASE("round sphere spectral data") {
  const CrossSection s3 = make_round_sphere_cross_section(3, 1.0);
  CHECK(s3.dim == 2);
  CHECK(s3.scalar_curvature == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s3.volume == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  REQUIRE(s3.laplace_eigenvalues.size() >= 3);
  CHECK(s3.laplace_eigenvalues[0] == 0.0);
  CHECK(s3.laplace_eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s3.laplace_eigenvalues[2] == doctest::Approx(6.0).epsilon(1e-15));

  const CrossSection s4 = make_round_sphere_cross_section(4, 1.0);
  CHECK(s4.scalar_curvature == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(s4.volume == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-15));

  const CrossSection s4a2 = make_round_sphere_cross_section(4, 2.0);
  CHECK(s4a2.scalar_curvature == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(s4a2.volume == doctest::Approx(8.0 * 2.0 * M_PI * M_PI).epsilon(1e-15));

  // nu_0 = 0 exactly once, ascending list.
  for (std::size_t i = 1; i < s4a2.laplace_eigenvalues.size(); ++i) {
    CHECK(s4a2.laplace_eigenvalues[i] > 0.0);
    CHECK(s4a2.laplace_eigenvalues[i] >= s4a2.laplace_eigenvalues[i - 1]);
  }
}

TEST_CASE("cross section constructor domain") {
  CHECK_THROWS_AS(make_round_sphere_cross_section(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_round_sphere_cross_section(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_round_sphere_cross_section(3, -1.0), std::invalid_argument);
}

TEST_CASE("curvature scaling law in the sphere radius") {
  for (int n : {3, 4, 5}) {
    const double flat = double((n - 1) * (n - 2));
    for (double a : {0.25, 0.5, 1.0, 2.0, 3.7}) {
      const CrossSection cs = make_round_sphere_cross_section(n, a);
      CHECK(cs.scalar_curvature * a * a ==
            doctest::Approx(flat).epsilon(1e-15));
    }
  }
}

TEST_CASE("cone over the unit sphere is flat") {
  const ConeModel m = support::flat_n3();
  for (int i = 1; i <= 100; ++i) {
    const double r = double(i) / 100.0;
    CHECK(std::abs(scalar_curvature_at(m, r)) < 1e-12);
  }
}

TEST_CASE("exact cone curvature closed form") {
  const ConeModel m = support::sphere_cone(4, 2.0);
  CHECK(scalar_curvature_at(m, 0.5) ==
        doctest::Approx(oracle::kCurvatureExactN4A2R05).epsilon(1e-12));
  // K / r^2 with K = R_h0 - (n-1)(n-2) across radii.
  const double K = m.cross_section.scalar_curvature - 6.0;
  for (double r : {0.1, 0.37, 0.83, 1.0})
    CHECK(scalar_curvature_at(m, r) ==
          doctest::Approx(K / (r * r)).epsilon(1e-13));
  CHECK_THROWS_AS(scalar_curvature_at(m, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scalar_curvature_at(m, -0.3), std::invalid_argument);
}

TEST_CASE("perturbed curvature matches the chart oracle point") {
  const ConeModel m =
      make_cone_model(4, make_round_sphere_cross_section(4, 0.8), 1.0,
                      Warp{WarpKind::perturbed, 1.5, 0.3}, OuterBc::neumann);
  CHECK(scalar_curvature_at(m, 0.7) ==
        doctest::Approx(oracle::kCurvaturePerturbedN4).epsilon(1e-12));
}

TEST_CASE("zero perturbation degenerates to the exact cone") {
  const ConeModel exact = support::sphere_cone(4, 0.8);
  const ConeModel pert =
      make_cone_model(4, make_round_sphere_cross_section(4, 0.8), 1.0,
                      Warp{WarpKind::perturbed, 1.2, 0.0}, OuterBc::neumann);
  for (int i = 1; i <= 50; ++i) {
    const double r = double(i) / 50.0;
    CHECK(scalar_curvature_at(pert, r) ==
          doctest::Approx(scalar_curvature_at(exact, r)).epsilon(1e-12));
  }
}

TEST_CASE("curvature responds linearly to small perturbations") {
  const ConeModel exact = support::sphere_cone(4, 1.0);
  const double r = 0.3;
  auto perturbed_at = [&](double c) {
    const ConeModel m =
        make_cone_model(4, make_round_sphere_cross_section(4, 1.0), 1.0,
                        Warp{WarpKind::perturbed, 1.0, c}, OuterBc::neumann);
    return scalar_curvature_at(m, r);
  };
  const double base = scalar_curvature_at(exact, r);
  const double d1 = (perturbed_at(1e-3) - base) / 1e-3;
  const double d2 = (perturbed_at(1e-4) - base) / 1e-4;
  CHECK(d1 != 0.0);
  CHECK(std::abs(d1 - d2) < 0.05 * std::abs(d1));
}

TEST_CASE("asymptotic tameness of the warp family") {
  const double root3 = std::sqrt(3.0);

  const AcReport ex = check_ac_condition(support::sphere_cone(4, 1.0), 1);
  CHECK(ex.holds);
  CHECK(ex.constants[0] == 0.0);

  const ConeModel linear =
      make_cone_model(4, make_round_sphere_cross_section(4, 1.0), 1.0,
                      Warp{WarpKind::perturbed, 1.0, 0.1}, OuterBc::neumann);
  const AcReport lin1 = check_ac_condition(linear, 1);
  CHECK(lin1.holds);
  CHECK(lin1.constants[0] == doctest::Approx(0.1 * root3).epsilon(1e-9));
  // d^2/dr^2 of c r vanishes, so order 2 is bounded with constant 0.
  const AcReport lin2 = check_ac_condition(linear, 2);
  CHECK(lin2.holds);
  CHECK(lin2.constants[1] == doctest::Approx(0.0));

  const ConeModel rough =
      make_cone_model(4, make_round_sphere_cross_section(4, 1.0), 1.0,
                      Warp{WarpKind::perturbed, 0.5, 1.0}, OuterBc::neumann);
  const AcReport r2 = check_ac_condition(rough, 2);
  CHECK_FALSE(r2.holds);
  CHECK_FALSE(r2.per_order_bounded[1]);

  CHECK_THROWS_AS(check_ac_condition(linear, 0), std::invalid_argument);
}

TEST_CASE("subcritical threshold") {
  CHECK(support::sphere_cone(4, 0.8).subcritical());
  CHECK(support::sphere_cone(4, 1.0).subcritical());
  CHECK(support::sphere_cone(4, 1.7).subcritical());       // R_h0 = 2.076 > 2
  CHECK_FALSE(support::sphere_cone(4, 1.8).subcritical()); // R_h0 = 1.852 < 2
  CHECK_FALSE(support::sphere_cone(4, 2.0).subcritical());
  CHECK(support::flat_n3().subcritical());                 // R_h0 = 2 > 1
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(make_cone_model(3, make_round_sphere_cross_section(4, 1.0),
                                  1.0, Warp{}, OuterBc::neumann),
                  std::invalid_argument);  // dim mismatch
  CHECK_THROWS_AS(make_cone_model(4, make_round_sphere_cross_section(4, 1.0),
                                  0.0, Warp{}, OuterBc::neumann),
                  std::invalid_argument);  // empty cone
  CHECK_THROWS_AS(
      make_cone_model(4, make_round_sphere_cross_section(4, 1.0), 1.0,
                      Warp{WarpKind::perturbed, -1.0, 0.1}, OuterBc::neumann),
      std::invalid_argument);  // alpha must be positive
}
