#!/usr/bin/env python3
"""Radial shooting cross-check for the smallest Dirichlet eigenvalue.

Integrates the radial problem

    -4 (u'' + (n-1)/r u') + R(r) u = lam u,   u regular at r = 0, u(L) = 0,

for the cone over the unit sphere (flat metric, R = 0) with fixed-step RK4
and bisects on the sign of u(L).  The value printed here is frozen into the
C++ tests as the mesh-independent reference for the eigenvalue solver.
"""

import math


def shoot(lam: float, n: int, L: float = 1.0, steps: int = 40000) -> float:
    """u(L) for the regular solution, via RK4 on [eps, L]."""
    eps = 1e-8
    # Regular series u = 1 - lam r^2 / (8 n) + O(r^4) seeds the integration
    # away from the coordinate singularity of the first-derivative term.
    u = 1.0 - lam * eps * eps / (8.0 * n)
    v = -lam * eps / (4.0 * n)
    h = (L - eps) / steps
    r = eps

    def rhs(r, u, v):
        return v, -(n - 1) / r * v - 0.25 * lam * u

    for _ in range(steps):
        k1u, k1v = rhs(r, u, v)
        k2u, k2v = rhs(r + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v)
        k3u, k3v = rhs(r + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v)
        k4u, k4v = rhs(r + h, u + h * k3u, v + h * k3v)
        u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u)
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        r += h
    return u


def smallest_dirichlet(n: int, lo: float, hi: float) -> float:
    flo, fhi = shoot(lo, n), shoot(hi, n)
    assert flo * fhi < 0, "bracket does not straddle the first eigenvalue"
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = shoot(mid, n)
        if flo * fm <= 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


if __name__ == "__main__":
    lam3 = smallest_dirichlet(3, 30.0, 50.0)
    lam4 = smallest_dirichlet(4, 50.0, 70.0)
    print(f"n=3 flat Dirichlet L=1: lambda = {lam3:.15g}")
    print(f"  closed form 4*pi^2   = {4 * math.pi ** 2:.15g}")
    print(f"n=4 flat Dirichlet L=1: lambda = {lam4:.15g}")
    print(f"  (4 * first zero of J1 squared = {4 * 3.8317059702075125 ** 2:.15g})")
