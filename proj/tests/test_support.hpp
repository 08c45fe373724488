#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "conelab/cone_model.hpp"
#include "conelab/grid_function.hpp"
#include "conelab/radial_mesh.hpp"

namespace support {

// xorshift64* with a fixed seed; tests need deterministic "random" data.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : s(seed) {}
  std::uint64_t next() {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return s * 0x2545F4914F6CDD1DULL;
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

inline conelab::ConeModel flat_n3(double L = 1.0,
                                  conelab::OuterBc bc = conelab::OuterBc::neumann) {
  return conelab::make_cone_model(
      3, conelab::make_round_sphere_cross_section(3, 1.0), L,
      conelab::Warp{conelab::WarpKind::exact, 0.0, 0.0}, bc);
}

inline conelab::ConeModel sphere_cone(int n, double a,
                                      conelab::OuterBc bc = conelab::OuterBc::neumann,
                                      double L = 1.0) {
  return conelab::make_cone_model(
      n, conelab::make_round_sphere_cross_section(n, a), L,
      conelab::Warp{conelab::WarpKind::exact, 0.0, 0.0}, bc);
}

// Strictly positive nodal noise around 1, mode 0 only.
inline conelab::GridFunction random_positive(
    std::shared_ptr<const conelab::RadialMesh> mesh, Rng& rng) {
  conelab::GridFunction u = conelab::make_zero(mesh, 1);
  for (auto& x : u.values[0]) x = 0.25 + rng.uniform();
  return u;
}

// Log-normal bump exp(-((ln r - c)/w)^2), smooth and concentrated.
inline conelab::GridFunction log_bump(std::shared_ptr<const conelab::RadialMesh> mesh,
                                      double center, double width) {
  return conelab::make_radial(mesh, [=](double r) {
    const double t = (std::log(r) - center) / width;
    return std::exp(-t * t);
  });
}

}  // namespace support
