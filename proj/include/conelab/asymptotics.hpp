#pragma once

#include <utility>

#include "conelab/cone_model.hpp"
#include "conelab/grid_function.hpp"

namespace conelab {

struct IndicialRoots {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  bool complex_pair = false;  // discriminant below zero: oscillatory regime
  double kappa = 0.0;         // imaginary part when complex_pair
};

// Exponents gamma with r^gamma annihilated by the radial mode-j operator
// -4 (d_rr + (n-1)/r d_r) + (R_h0 - (n-1)(n-2) + 4 nu_j)/r^2 on the exact
// cone.  tau is accepted for signature stability; the roots do not depend on
// it.  Mode 0 has a real pair exactly when R_h0 >= n - 2.
IndicialRoots indicial_roots(const ConeModel& model, int j, double tau);

struct DecayWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct DecayFit {
  DecayWindow window;
  double fitted_exponent = 0.0;
  double residual = 0.0;      // RMS of ln u about the fitted line
  double bound = 0.0;         // -(n/2 - 1)
  double indicial_root = 0.0; // mode-0 gamma_plus
  bool theorem_consistent = false;
};

// Least-squares slope of ln u against ln r over the window nodes.  Requires
// at least 10 nodes with u > 0 there.  theorem_consistent records whether the
// fit clears -(n/2 - 1) by twice the fit residual.
DecayFit fit_decay_exponent(const GridFunction& u, const ConeModel& model,
                            const DecayWindow& window);

// [10 r_1, min(1, L/2)/40]: past the tip truncation, inside the region where
// the cone behavior dominates.
DecayWindow default_decay_window(const ConeModel& model, const RadialMesh& mesh);

struct UniformDecayReport {
  double sup_value = 0.0;  // sup over scanned nodes of r^{l-delta} |grad^l u|
  bool vanishing = false;  // scaled annulus maxima strictly decay toward the tip
};

// Scans r^{l-delta} |grad^l u| (l = 0 or 1) over dyadic annuli shrinking
// toward the tip from L/4; vanishing requires each step toward the tip to
// shrink by at least a factor 1 - 1e-6, so a pure r^delta profile at l = 0
// reads as the non-vanishing boundary case.  Radial data may pass a null
// model; multi-mode data needs one for the angular terms.
UniformDecayReport weighted_uniform_check(const GridFunction& u, int l,
                                          double delta,
                                          const ConeModel* model = nullptr);

}  // namespace conelab
