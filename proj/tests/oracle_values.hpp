#pragma once

// Reference values produced by the independent cross-check scripts in
// tools/oracles/.  Each constant is frozen from a script run and carries the
// agreement level the script reported; tests compare library output against
// these numbers, never against other library output.

namespace oracle {

// tools/oracles/shooting_lambda.py: RK4 shooting + bisection for the smallest
// Dirichlet eigenvalue of -4(u'' + (n-1)/r u') on (0, 1), flat cone.
// Shooting reproduced the closed forms to 1e-10 relative.
inline constexpr double kLambdaFlatN3Dirichlet = 39.4784176043574345;  // 4 pi^2
inline constexpr double kLambdaFlatN4Dirichlet = 58.7278825684956;     // 4 j_{1,1}^2

// tools/oracles/fd_curvature.py: finite-difference curvature of the chart
// metric agreed with these closed-form values to 2.6e-7 relative (the FD
// truncation level at steps 3e-6 / 3e-4).
inline constexpr double kCurvatureExactN4A2R05 = -18.0;
inline constexpr double kCurvaturePerturbedN4 = -2.14737874528558;
// at n=4, a=0.8, alpha=1.5, c=0.3, r=0.7.

// tools/oracles/w_value.py: entropy value of u = 1 + r on the flat n=3 cone,
// tau = 1, M = 512, q = 0.98 (closed-form quadratic terms, Gauss-16 log
// term), plus the doubled-values regression pin.
inline constexpr double kWOnePlusR = -0.834951244229448;
inline constexpr double kWTwoPlusTwoR = -4.95621284268576;

// tools/oracles/hardy_extremal.py: best ratio of the near-extremal family on
// the dedicated deep mesh (M = 1024, q = exp(-36/1023)); the sine window
// attains it.
inline constexpr double kHardySharpBestRatio = 0.938034727949;

// Indicial quadratic -4(g^2 + (n-2) g) + R_h0 + 4 nu - (n-1)(n-2) = 0,
// evaluated for n=4, a=0.8, mode 0 with 50-digit arithmetic:
// g_+ = (-2 + sqrt(4 + 9.375 - 6)) / 2.
inline constexpr double kGammaPlusN4A08 = 0.357847561400027;

}  // namespace oracle
