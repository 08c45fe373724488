#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/cone_model.hpp"
#include "conelab/radial_mesh.hpp"

namespace conelab {

// Symmetric tridiagonal matrix; off[i] couples dofs i and i+1.
struct TriDiag {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
};

// Coefficient pair (A, B) of the form int (A |grad u|^2 + B R_g u^2) dvol:
// perelman = (4, 1), schrodinger_l = (1, 1/4), gradient = (1, 0).
enum class FormScaling { perelman, schrodinger_l, gradient };

struct ModeOperator {
  int mode = 0;
  double nu = 0.0;
  OuterBc bc = OuterBc::neumann;
  std::size_t active = 0;  // dofs entering solves; Dirichlet drops the outer node
  TriDiag stiffness;       // full mesh-size matrices, P1 elements
  TriDiag mass;
};

// Radial stiffness/mass matrices of mode j with measure phi^{n-1} Vol(N) dr.
// The angular term contributes A nu_j u^2 / phi^2 to the gradient part.  The
// tip has a natural condition (no boundary term in the weighted weak form).
ModeOperator assemble_mode_operator(const ConeModel& model, const RadialMesh& mesh,
                                    int j, FormScaling scaling);

double quadratic_form(const TriDiag& T, std::span<const double> u);
double bilinear_form(const TriDiag& T, std::span<const double> u,
                     std::span<const double> v);
void multiply(const TriDiag& T, std::span<const double> u, std::span<double> out);

// LDL^T solve; requires T positive definite.
std::vector<double> solve_tridiag(const TriDiag& T, std::span<const double> b);

// Number of generalized eigenvalues of (S, M) on the leading nactive dofs
// strictly below sigma (Sturm count of S - sigma M).
int inertia_below(const TriDiag& S, const TriDiag& M, double sigma,
                  std::size_t nactive);

struct SolverFailure : std::runtime_error {
  SolverFailure(const std::string& message, std::vector<double> trace_in)
      : std::runtime_error(message), trace(std::move(trace_in)) {}
  std::vector<double> trace;
};

struct EigenResult {
  double value = 0.0;
  std::vector<double> vector;  // full mesh length, mass-normalized, first
                               // nonzero component positive
  int iterations = 0;
  std::vector<double> trace;   // relative residual per inverse-iteration step
};

// Smallest generalized eigenpair of (stiffness, mass).  Deterministic: Sturm
// bisection brackets the eigenvalue, then shifted inverse iteration from the
// all-ones vector refines the pair until
//   ||S v - lambda M v||_2 <= tol (||S v||_2 + |lambda| ||M v||_2).
// Throws SolverFailure with the residual trace if the cap is hit.
EigenResult smallest_eigenpair(const ModeOperator& op, double tol,
                               int max_iters = 200);

// w_i = int hat_i(r) phi^{n-1} Vol(N) dr; sum w_i is the domain volume.
std::vector<double> nodal_volume_weights(const ConeModel& model,
                                         const RadialMesh& mesh);

}  // namespace conelab
