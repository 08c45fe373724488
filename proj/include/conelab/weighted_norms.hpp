#pragma once

#include <vector>

#include "conelab/cone_model.hpp"
#include "conelab/grid_function.hpp"
#include "conelab/weight_function.hpp"

namespace conelab {

// Selects the norm (sum_{i<=k} int chi^{p(delta-i)+n} |grad^i u|^p dvol)^{1/p}.
struct WeightSpec {
  int k = 0;
  double p = 2.0;
  double delta = 0.0;
};

struct Annulus {
  double lo = 0.0;
  double hi = 0.0;
};

// manifold weight with eps0 = min(1, L/2); the norms default to it.
WeightFunction default_weight(const ConeModel& model);

// int chi^{chi_power} |grad^i u|^p dvol over the annulus clipped to the mesh.
// |grad u|^2 = |d_r u|^2 + sum_j (nu_j/phi^2) u_j^2; the i = 2 surrogate
// combines nodal second differences with the warped-product Hessian terms.
// Cells where the integrand is a polynomial times a pure power of r (p = 2,
// or p = 1 with k <= 1 on radial data, exact warp, chi = 1/r or chi = 1) are
// integrated in closed form; everything else uses 16-point Gauss per piece.
double weighted_term_integral(const GridFunction& u, const ConeModel& model, int i,
                              double p, double chi_power, const Annulus& annulus,
                              const WeightFunction& weight);

double weighted_norm(const GridFunction& u, const WeightSpec& spec,
                     const ConeModel& model);
double weighted_norm(const GridFunction& u, const WeightSpec& spec,
                     const ConeModel& model, const WeightFunction& weight);
double weighted_norm(const GridFunction& u, const WeightSpec& spec,
                     const ConeModel& model, const Annulus& annulus,
                     const WeightFunction& weight);

// (sum_{i<=k} int |grad^i u|^p dvol)^{1/p}, the chi == 1 case.
double unweighted_sobolev_norm(const GridFunction& u, int k, double p,
                               const ConeModel& model);

// weighted_norm with spec (k=1, p=2, delta = 1 - n/2).
double h1_norm(const GridFunction& u, const ConeModel& model);

// sup over mesh nodes of sum_{i<=k} chi^{delta-i} |grad^i u| with the pure
// cone weight chi = 1/r.  The model is needed for the angular derivative
// terms; radial data (only mode 0 nonzero) may omit it.
double c_k_delta_norm(const GridFunction& u, int k, double delta);
double c_k_delta_norm(const GridFunction& u, int k, double delta,
                      const WeightFunction& weight, const ConeModel* model);

// Annuli ((1/2)^{j+1} r_max, (1/2)^j r_max) for j = 0..j_count-1.  The p-th
// power of weighted_norm over the union equals the sum over the annuli.
std::vector<Annulus> dyadic_annulus_decompose(double r_max, int j_count);

}  // namespace conelab
