#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "conelab/cone_model.hpp"
#include "conelab/functionals.hpp"
#include "conelab/grid_function.hpp"
#include "conelab/inequality_checks.hpp"
#include "conelab/radial_mesh.hpp"
#include "conelab/weight_function.hpp"
#include "conelab/weighted_norms.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace conelab;

namespace {

GridFunction wiggly(std::shared_ptr<const RadialMesh> mesh) {
  return make_radial(mesh, [](double r) {
    return std::pow(r, 0.3) * (2.0 + std::sin(2.0 * std::log(r)));
  });
}

}  // namespace

TEST_CASE("cone-weight annulus norm has a logarithmic closed form") {
  const ConeModel m = support::flat_n3();
  const auto mesh = build_mesh(1.0, 1024, 0.98);
  const GridFunction one = make_constant(mesh, 1.0);
  const double norm = weighted_norm(one, WeightSpec{0, 2.0, 0.0}, m,
                                    Annulus{0.5, 1.0}, WeightFunction::cone());
  // chi^{p delta + n} dvol = r^{-3} * 4 pi r^2 dr = 4 pi dr / r.
  CHECK(norm * norm == doctest::Approx(4.0 * M_PI * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("weighted norm of zero vanishes") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 128, 0.95);
  const GridFunction z = make_zero(mesh);
  CHECK(weighted_norm(z, WeightSpec{1, 2.0, -1.0}, m) == 0.0);
  CHECK(unweighted_sobolev_norm(z, 1, 2.0, m) == 0.0);
}

TEST_CASE("delta = -n/p kills the weight on the L2 term") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 256, 0.97);
  const GridFunction u = wiggly(mesh);
  const double weighted =
      weighted_norm(u, WeightSpec{0, 2.0, -double(m.n) / 2.0}, m);
  const double plain = unweighted_sobolev_norm(u, 0, 2.0, m);
  CHECK(weighted == plain);  // same integral, same code path
  CHECK(weighted * weighted ==
        doctest::Approx(mass_integral(m, u)).epsilon(1e-13));
}

TEST_CASE("h1 norm is the matched weighted norm") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 256, 0.97);
  const GridFunction u = wiggly(mesh);
  CHECK(h1_norm(u, m) ==
        weighted_norm(u, WeightSpec{1, 2.0, 1.0 - double(m.n) / 2.0}, m));
}

TEST_CASE("hardy constants take their closed-form values") {
  const ConeModel m3 = support::flat_n3();
  const ConeModel m4 = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 256, 0.97);
  const GridFunction u = support::log_bump(mesh, -3.0, 0.8);
  CHECK(hardy_check(u, m3, 2.0, 1).constant == 4.0);
  CHECK(hardy_check(u, m4, 2.0, 1).constant == 1.0);
}

TEST_CASE("hardy inequality holds across the probe family") {
  const ConeModel m = support::flat_n3();
  const auto mesh = build_mesh(1.0, 512, 0.98);
  std::vector<GridFunction> family{
      support::log_bump(mesh, -2.0, 0.6),
      support::log_bump(mesh, -6.0, 1.2),
      wiggly(mesh),
      make_radial(mesh, [](double r) { return 1.0 / (1.0 + r); }),
  };
  for (const auto& u : family) {
    for (auto [p, k] : {std::pair{2.0, 1}, std::pair{1.5, 1}, std::pair{3.0, 2}}) {
      const HardyReport rep = hardy_check(u, m, p, k);
      CHECK(rep.satisfied);
      CHECK(rep.lhs <= rep.rhs * (1.0 + 1e-8));
    }
  }
}

TEST_CASE("hardy rejects the degenerate index and empty support") {
  const ConeModel m = support::flat_n3();
  const auto mesh = build_mesh(1.0, 256, 0.97);
  const GridFunction u = support::log_bump(mesh, -3.0, 0.8);
  CHECK_THROWS_AS(hardy_check(u, m, 3.0, 1), std::invalid_argument);  // pk == n
  GridFunction edge = make_zero(mesh);
  edge.values[0].back() = 1.0;  // support dies under the compact-support cutoff
  CHECK_THROWS_AS(hardy_check(edge, m, 2.0, 1), std::invalid_argument);
}

TEST_CASE("near-extremal family reproduces the oracle sharpness ratio") {
  const ConeModel m = support::flat_n3();
  const auto mesh = build_mesh(1.0, 1024, std::exp(-36.0 / 1023.0));
  const std::size_t sm = mesh->size();
  const std::size_t i0 = std::size_t(0.16 * double(sm - 1));
  const std::size_t i1 = std::size_t(0.84 * double(sm - 1));
  auto member = [&](const std::function<double(double)>& w) {
    GridFunction u = make_zero(mesh, 1);
    for (std::size_t i = i0; i <= i1; ++i) {
      const double s = double(i - i0) / double(i1 - i0);
      u.values[0][i] = std::pow(mesh->nodes[i], -0.5) * w(s);
    }
    return u;
  };
  double best = 0.0;
  for (const auto& w : std::vector<std::function<double(double)>>{
           [](double s) { return std::sin(M_PI * s); },
           [](double s) { const double v = std::sin(M_PI * s); return v * v; },
           [](double s) { return s * (1.0 - s); },
           [](double s) { const double v = s * (1.0 - s); return v * v; }}) {
    const HardyReport rep = hardy_check(member(w), m, 2.0, 1);
    CHECK(rep.satisfied);
    best = std::max(best, rep.lhs / rep.rhs);
  }
  CHECK(best == doctest::Approx(oracle::kHardySharpBestRatio).epsilon(1e-9));
  CHECK(best >= 0.9);
}

TEST_CASE("plain norm never exceeds the matched weighted norm") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 512, 0.98);
  std::vector<GridFunction> family{
      make_constant(mesh, 1.0),
      wiggly(mesh),
      support::log_bump(mesh, -7.0, 0.8),
      support::log_bump(mesh, -5.0, 0.8),
      support::log_bump(mesh, -3.0, 0.8),
      support::log_bump(mesh, -1.0, 0.5),
  };
  for (auto [k, p] : {std::pair{0, 2.0}, std::pair{1, 2.0}, std::pair{1, 2.5}}) {
    double lo = 1e300, hi = 0.0;
    for (const auto& u : family) {
      const NormEquivalenceReport rep = norm_equivalence_check(u, m, k, p);
      CHECK(rep.lower_ok);
      CHECK(std::isfinite(rep.ratio));
      CHECK(rep.ratio >= 1.0);
      lo = std::min(lo, rep.ratio);
      hi = std::max(hi, rep.ratio);
    }
    // Tip-concentrating members stay within one empirical constant.
    CHECK(hi <= 10.0);
    CHECK(hi / lo <= 5.0);
  }
}

TEST_CASE("norm equivalence edge cases") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 128, 0.95);
  const NormEquivalenceReport z =
      norm_equivalence_check(make_zero(mesh), m, 1, 2.0);
  CHECK(z.lower_ok);
  CHECK(z.ratio == 0.0);
  // p i = n at i = 2 is excluded.
  CHECK_THROWS_AS(norm_equivalence_check(make_constant(mesh, 1.0), m, 2, 2.0),
                  std::invalid_argument);
}

TEST_CASE("dropping derivatives can only shrink the norm") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 256, 0.97);
  const double delta = 1.0 - double(m.n) / 2.0;
  for (const GridFunction& u :
       {wiggly(mesh), support::log_bump(mesh, -4.0, 0.7)}) {
    const EmbeddingReport rep = embedding_check(
        u, m, WeightSpec{1, 2.0, delta}, WeightSpec{0, 2.0, delta});
    CHECK(rep.rhs_ratio <= 1.0);
    CHECK(rep.rhs_ratio > 0.0);
  }
}

TEST_CASE("sobolev-range embedding stays bounded on a bump family") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 256, 0.97);
  const double delta = 1.0 - double(m.n) / 2.0;
  const WeightSpec from{1, 2.0, delta};
  const WeightSpec to{0, 2.0 * m.n / double(m.n - 2), delta};
  for (double center : {-6.0, -4.0, -2.0}) {
    const EmbeddingReport rep =
        embedding_check(support::log_bump(mesh, center, 0.8), m, from, to);
    CHECK(std::isfinite(rep.rhs_ratio));
    CHECK(rep.rhs_ratio > 0.0);
    CHECK(rep.rhs_ratio < 100.0);
  }
  const EmbeddingReport z = embedding_check(make_zero(mesh), m, from, to);
  CHECK(z.rhs_ratio == 0.0);
  CHECK_THROWS_AS(
      embedding_check(wiggly(mesh), m, WeightSpec{0, 2.0, delta}, to),
      std::invalid_argument);  // from.k must exceed to.k
}

TEST_CASE("annulus norms are homogeneous under exact-cone dilation") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 512, 0.98);
  const GridFunction u = wiggly(mesh);
  const double q = mesh->grading;
  const double r1 = std::pow(q, 281), r2 = std::pow(q, 16);
  for (double a : {std::pow(q, 16), std::pow(q, 64)}) {
    for (double delta : {0.0, 1.0, 1.0 - double(m.n) / 2.0}) {
      for (int k : {0, 1}) {
        for (double p : {1.0, 2.0}) {
          const ScalingReport rep = scaling_homogeneity_check(
              u, m, WeightSpec{k, p, delta}, a, r1, r2);
          CHECK(rep.rel_err <= 1e-8);
        }
      }
    }
  }
  // a = 1 is the identity dilation.
  const ScalingReport same =
      scaling_homogeneity_check(u, m, WeightSpec{1, 2.0, 0.5}, 1.0, r1, r2);
  CHECK(same.rel_err == 0.0);
}

TEST_CASE("pointwise weighted norms recover pure powers") {
  const auto mesh2 = build_mesh(2.0, 256, 0.97);
  const GridFunction u3 = make_radial(mesh2, [](double r) { return std::pow(r, 0.3); });
  CHECK(c_k_delta_norm(u3, 0, 0.3) == doctest::Approx(1.0).epsilon(1e-10));
  const GridFunction u7 = make_radial(mesh2, [](double r) { return std::pow(r, 0.7); });
  CHECK(c_k_delta_norm(u7, 0, 0.3) ==
        doctest::Approx(std::pow(2.0, 0.4)).epsilon(1e-10));
  CHECK(c_k_delta_norm(make_zero(mesh2), 1, 0.5) == 0.0);
}

TEST_CASE("dyadic annuli tile the tip region") {
  const auto one = dyadic_annulus_decompose(1.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].lo == 0.5);
  CHECK(one[0].hi == 1.0);
  const auto three = dyadic_annulus_decompose(1.0, 3);
  REQUIRE(three.size() == 3);
  CHECK(three[2].lo == 0.125);
  CHECK(three[2].hi == 0.25);

  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 512, 0.98);
  for (const GridFunction& u : {make_constant(mesh, 1.0), wiggly(mesh)}) {
    for (const WeightSpec spec :
         {WeightSpec{0, 2.0, 0.0}, WeightSpec{1, 2.0, -1.0}}) {
      const auto annuli = dyadic_annulus_decompose(0.5, 4);
      double sum = 0.0;
      for (const Annulus& an : annuli)
        sum += std::pow(weighted_norm(u, spec, m, an, WeightFunction::cone()),
                        spec.p);
      const double whole = std::pow(
          weighted_norm(u, spec, m, Annulus{annuli.back().lo, 0.5},
                        WeightFunction::cone()),
          spec.p);
      CHECK(sum == doctest::Approx(whole).epsilon(1e-12));
    }
  }
}

TEST_CASE("weighted norms satisfy the norm axioms") {
  const ConeModel m = support::sphere_cone(4, 0.8);
  const auto mesh = build_mesh(1.0, 256, 0.97);
  support::Rng rng;
  for (const WeightSpec spec :
       {WeightSpec{0, 2.0, 0.0}, WeightSpec{1, 2.0, -1.0},
        WeightSpec{2, 2.0, 0.0}, WeightSpec{0, 3.0, -0.5},
        WeightSpec{1, 1.5, 0.2}}) {
    for (int trial = 0; trial < 10; ++trial) {
      const GridFunction u = support::random_positive(mesh, rng);
      GridFunction v = support::random_positive(mesh, rng);
      for (auto& x : v.values[0]) x -= 0.75;  // mixed signs
      const double nu = weighted_norm(u, spec, m);
      const double nv = weighted_norm(v, spec, m);
      const double nsum = weighted_norm(u + v, spec, m);
      CHECK(nu > 0.0);
      CHECK(nsum <= (nu + nv) * (1.0 + 1e-12));
      const double scaled = weighted_norm(u * 3.7, spec, m);
      CHECK(scaled == doctest::Approx(3.7 * nu).epsilon(1e-12));
    }
  }
}

TEST_CASE("weight function bands") {
  const WeightFunction w = WeightFunction::manifold(0.5);
  CHECK(w.chi(0.1) == doctest::Approx(10.0).epsilon(1e-15));  // 1/r below eps0/4
  CHECK(w.chi(0.7) == 1.0);
  for (double r : {0.13, 0.2, 0.3, 0.45})
    CHECK(w.chi(r) >= 1.0);  // blend keeps chi >= 1
  CHECK(WeightFunction::cone().chi(2.0) == 0.5);
  CHECK(WeightFunction::unit().chi(0.01) == 1.0);
}
