#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "conelab/cone_model.hpp"
#include "conelab/functionals.hpp"
#include "conelab/grid_function.hpp"
#include "conelab/mode_operator.hpp"
#include "conelab/radial_mesh.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace conelab;

TEST_CASE("mesh construction") {
  const auto two = build_mesh(1.0, 2, 0.5);
  REQUIRE(two->size() == 2);
  CHECK(two->nodes[0] == 0.5);
  CHECK(two->nodes[1] == 1.0);

  const auto eleven = build_mesh(1.0, 11, 0.5);
  CHECK(eleven->nodes[0] == doctest::Approx(std::pow(2.0, -10)).epsilon(1e-15));

  const auto graded = build_mesh(1.0, 512, 0.98);
  CHECK(graded->nodes.back() == 1.0);
  for (std::size_t i = 0; i + 1 < graded->size(); ++i)
    CHECK(graded->nodes[i] / graded->nodes[i + 1] ==
          doctest::Approx(0.98).epsilon(1e-12));
  CHECK(graded->nodes[0] ==
        doctest::Approx(std::pow(0.98, 511)).epsilon(1e-12));

  CHECK_THROWS_AS(build_mesh(1.0, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(1.0, 16, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(1.0, 16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(0.0, 16, 0.5), std::invalid_argument);
}

TEST_CASE("volume quadrature approaches the closed ball volume") {
  const ConeModel m = support::flat_n3();
  const auto mesh = build_mesh(1.0, 256, 0.97);
  const GridFunction one = make_constant(mesh, 1.0);
  const double vol = mass_integral(m, one);
  CHECK(vol == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-6));
  // And matches the truncated-domain closed form far more tightly.
  const double r1 = mesh->nodes[0];
  CHECK(vol == doctest::Approx(4.0 * M_PI * (1.0 - r1 * r1 * r1) / 3.0)
                   .epsilon(1e-13));
}

TEST_CASE("nodal volume weights sum to the domain volume") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 128, 0.95);
  const auto w = nodal_volume_weights(m, *mesh);
  REQUIRE(w.size() == mesh->size());
  double sum = 0.0;
  for (double x : w) {
    CHECK(x > 0.0);
    sum += x;
  }
  const GridFunction one = make_constant(mesh, 1.0);
  CHECK(sum == doctest::Approx(mass_integral(m, one)).epsilon(1e-12));
}

TEST_CASE("constants are harmonic for the flat neumann operator") {
  const ConeModel m = support::flat_n3();
  const auto mesh = build_mesh(1.0, 256, 0.97);
  const ModeOperator op = assemble_mode_operator(m, *mesh, 0, FormScaling::perelman);
  std::vector<double> ones(mesh->size(), 1.0), out(mesh->size());
  multiply(op.stiffness, ones, out);
  double scale = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    scale = std::max(scale, std::abs(op.stiffness.diag[i]));
    worst = std::max(worst, std::abs(out[i]));
  }
  CHECK(worst <= 1e-10 * scale);
}

TEST_CASE("quadratic form of u = r matches the closed-form integral") {
  const ConeModel m = support::flat_n3();
  const auto mesh = build_mesh(1.0, 512, 0.98);
  const ModeOperator op = assemble_mode_operator(m, *mesh, 0, FormScaling::perelman);
  const GridFunction u = make_radial(mesh, [](double r) { return r; });
  const double r1 = mesh->nodes[0];
  const double want = 16.0 * M_PI * (1.0 - r1 * r1 * r1) / 3.0;
  CHECK(quadratic_form(op.stiffness, u.values[0]) ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("schrodinger scaling is a quarter of the entropy scaling") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 128, 0.95);
  support::Rng rng;
  for (int j : {0, 1}) {
    const ModeOperator pe = assemble_mode_operator(m, *mesh, j, FormScaling::perelman);
    const ModeOperator sl =
        assemble_mode_operator(m, *mesh, j, FormScaling::schrodinger_l);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> v(mesh->size());
      for (auto& x : v) x = rng.range(-1.0, 1.0);
      const double a = quadratic_form(sl.stiffness, v);
      const double b = 0.25 * quadratic_form(pe.stiffness, v);
      CHECK(a == doctest::Approx(b).epsilon(1e-13));
    }
  }
}

TEST_CASE("mass matrix is positive definite") {
  const ConeModel m = support::sphere_cone(4, 2.0);
  const auto mesh = build_mesh(1.0, 128, 0.95);
  const ModeOperator op = assemble_mode_operator(m, *mesh, 0, FormScaling::perelman);
  support::Rng rng;
  std::vector<double> b(mesh->size());
  for (auto& x : b) x = rng.range(-1.0, 1.0);
  // LDL^T solve requires positive definiteness and must reproduce b.
  const std::vector<double> x = solve_tridiag(op.mass, b);
  std::vector<double> back(b.size());
  multiply(op.mass, x, back);
  for (std::size_t i = 0; i < b.size(); ++i)
    CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-10));
}

TEST_CASE("smallest eigenpair on the flat neumann cone") {
  const ConeModel m = support::flat_n3();
  const auto mesh = build_mesh(1.0, 512, 0.98);
  const ModeOperator op = assemble_mode_operator(m, *mesh, 0, FormScaling::perelman);
  const EigenResult res = smallest_eigenpair(op, 1e-10);
  CHECK(std::abs(res.value) < 1e-8);
  CHECK(res.vector[0] > 0.0);
  // Mass-normalized constant eigenvector.
  const double mass = quadratic_form(op.mass, res.vector);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  double lo = res.vector[0], hi = res.vector[0];
  for (double x : res.vector) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(hi - lo <= 1e-8 * hi);
  // Rayleigh-quotient consistency.
  const double rq = quadratic_form(op.stiffness, res.vector) / mass;
  CHECK(std::abs(res.value - rq) <= 1e-10 * std::max(1.0, std::abs(res.value)));
}

TEST_CASE("flat dirichlet eigenvalues match the shooting oracle") {
  for (auto [n, want] : {std::pair{3, oracle::kLambdaFlatN3Dirichlet},
                         std::pair{4, oracle::kLambdaFlatN4Dirichlet}}) {
    const ConeModel m = support::sphere_cone(n, 1.0, OuterBc::dirichlet);
    const auto mesh = build_mesh(1.0, 1024, 0.98);
    const ModeOperator op =
        assemble_mode_operator(m, *mesh, 0, FormScaling::perelman);
    const EigenResult res = smallest_eigenpair(op, 1e-10);
    CHECK(std::abs(res.value - want) <= 0.01 * want);
  }
}

TEST_CASE("dirichlet dominates neumann") {
  for (double a : {1.0, 0.8}) {
    const ConeModel md = support::sphere_cone(4, a, OuterBc::dirichlet);
    const ConeModel mn = support::sphere_cone(4, a, OuterBc::neumann);
    const auto mesh = build_mesh(1.0, 256, 0.97);
    const double ld =
        smallest_eigenpair(
            assemble_mode_operator(md, *mesh, 0, FormScaling::perelman), 1e-10)
            .value;
    const double ln =
        smallest_eigenpair(
            assemble_mode_operator(mn, *mesh, 0, FormScaling::perelman), 1e-10)
            .value;
    CHECK(ld >= ln - 1e-10 * std::abs(ld));
  }
}

TEST_CASE("eigenvalue is nondecreasing in the mode index") {
  const ConeModel m = support::sphere_cone(4, 0.8, OuterBc::dirichlet);
  const auto mesh = build_mesh(1.0, 256, 0.97);
  double prev = -1e300;
  for (int j = 0; j < 4; ++j) {
    const double lj =
        smallest_eigenpair(
            assemble_mode_operator(m, *mesh, j, FormScaling::perelman), 1e-10)
            .value;
    CHECK(lj >= prev - 1e-10 * std::abs(lj));
    prev = lj;
  }
}

TEST_CASE("refinement increments shrink in the subcritical regime") {
  const ConeModel m = support::sphere_cone(4, 1.0, OuterBc::dirichlet);
  std::vector<double> lam;
  for (int M : {128, 256, 512}) {
    const auto mesh = build_mesh(1.0, M, 0.98);
    lam.push_back(smallest_eigenpair(
                      assemble_mode_operator(m, *mesh, 0, FormScaling::perelman),
                      1e-10)
                      .value);
  }
  CHECK(std::abs(lam[2] - lam[1]) < std::abs(lam[1] - lam[0]));
}

TEST_CASE("eigen solver failure carries its trace") {
  const ConeModel m = support::sphere_cone(4, 0.8, OuterBc::dirichlet);
  const auto mesh = build_mesh(1.0, 128, 0.95);
  const ModeOperator op = assemble_mode_operator(m, *mesh, 0, FormScaling::perelman);
  try {
    smallest_eigenpair(op, 1e-30, 1);
    FAIL("expected SolverFailure");
  } catch (const SolverFailure& e) {
    CHECK_FALSE(e.trace.empty());
  }
}
