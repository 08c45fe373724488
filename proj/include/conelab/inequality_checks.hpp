#pragma once

#include "conelab/cone_model.hpp"
#include "conelab/grid_function.hpp"
#include "conelab/weighted_norms.hpp"

namespace conelab {

struct HardyReport {
  double lhs = 0.0;       // int |u|^p r^{-pk} dvol after the support cutoff
  double rhs = 0.0;       // constant * int |grad u|^p r^{-p(k-1)} dvol
  double constant = 0.0;  // (p/|n - pk|)^p
  bool satisfied = false; // lhs <= rhs * (1 + 1e-8)
};

// Tests int |u|^p r^{-pk} <= (p/|n-pk|)^p int |grad u|^p r^{-p(k-1)} on the
// cone.  Compact support away from both ends is enforced by plateau_cutoff
// before integrating.
HardyReport hardy_check(const GridFunction& u, const ConeModel& model, double p,
                        int k);

struct NormEquivalenceReport {
  bool lower_ok = false;  // unweighted <= weighted, the chi >= 1 direction
  double ratio = 0.0;     // weighted / unweighted; 0 when both vanish
};

// Compares the plain Sobolev norm against the weighted norm at the matched
// index delta = k - n/p (manifold weight).
NormEquivalenceReport norm_equivalence_check(const GridFunction& u,
                                             const ConeModel& model, int k,
                                             double p);

struct EmbeddingReport {
  double lhs = 0.0;        // norm in the target (lower-derivative) space
  double rhs = 0.0;        // norm in the source space
  double rhs_ratio = 0.0;  // lhs / rhs; 0 when the source norm vanishes
};

// Checks the continuous-embedding ratio between W^{from.k, from.p}_delta and
// W^{to.k, to.p}_delta.  Requires from.k > to.k, equal deltas, and to.p within
// the Sobolev range 1/q = 1/from.p - (from.k - to.k)/n > 0.
EmbeddingReport embedding_check(const GridFunction& u, const ConeModel& model,
                                const WeightSpec& from, const WeightSpec& to);

struct ScalingReport {
  double lhs = 0.0;  // norm of u on the dilated annulus C_{a r1, a r2}
  double rhs = 0.0;  // a^{-delta} * norm of u_a on C_{r1, r2}, u_a(r) = u(a r)
  double rel_err = 0.0;
};

// Change-of-variables identity for the pure cone weight on the exact cone.
// a must be an integer power of the mesh grading so that the dilation is an
// exact index shift.
ScalingReport scaling_homogeneity_check(const GridFunction& u,
                                        const ConeModel& model,
                                        const WeightSpec& spec, double a,
                                        double r1, double r2);

}  // namespace conelab
