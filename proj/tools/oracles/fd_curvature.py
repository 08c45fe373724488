#!/usr/bin/env python3
"""Finite-difference scalar curvature cross-check for the warped cone metric.

The library computes R(r) for g = dr^2 + phi(r)^2 h0 from the closed-form
warped-product identity

    R = R_h0 / phi^2 - 2 (n-1) phi''/phi - (n-1)(n-2) (phi'/phi)^2.

This script recomputes R at sample points directly from the metric tensor in
a concrete chart, with no curvature identity involved: the cross section is
realized as the round (n-1)-sphere of radius a in stereographic coordinates,

    g_rr = 1,   g_ab = phi(r)^2 * (2a / (1 + |x|^2))^2 * delta_ab,

and the scalar curvature is assembled from finite-difference Christoffel
symbols.  Values printed here are frozen into the C++ geometry tests.
"""

import itertools
import math

H1 = 3e-6  # inner step: metric -> Christoffel
H2 = 3e-4  # outer step: Christoffel -> curvature


def metric(point, n, a, phi):
    r, x = point[0], point[1:]
    psi2 = (2.0 * a / (1.0 + sum(t * t for t in x))) ** 2
    g = [[0.0] * n for _ in range(n)]
    g[0][0] = 1.0
    for i in range(1, n):
        g[i][i] = phi(r) ** 2 * psi2
    return g


def inverse(g):
    n = len(g)
    a = [row[:] + [1.0 if i == j else 0.0 for j in range(n)]
         for i, row in enumerate(g)]
    for col in range(n):
        piv = max(range(col, n), key=lambda k: abs(a[k][col]))
        a[col], a[piv] = a[piv], a[col]
        d = a[col][col]
        a[col] = [t / d for t in a[col]]
        for k in range(n):
            if k != col and a[k][col] != 0.0:
                f = a[k][col]
                a[k] = [t - f * s for t, s in zip(a[k], a[col])]
    return [row[n:] for row in a]


def christoffel(point, n, a, phi, h=H1):
    dg = []  # dg[l][i][j] = d_l g_ij
    for l in range(n):
        pp, pm = list(point), list(point)
        pp[l] += h
        pm[l] -= h
        gp, gm = metric(pp, n, a, phi), metric(pm, n, a, phi)
        dg.append([[(gp[i][j] - gm[i][j]) / (2 * h) for j in range(n)]
                   for i in range(n)])
    ginv = inverse(metric(point, n, a, phi))
    gam = [[[0.0] * n for _ in range(n)] for _ in range(n)]
    for k, i, j in itertools.product(range(n), repeat=3):
        gam[k][i][j] = 0.5 * sum(
            ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])
            for l in range(n))
    return gam


def scalar_curvature(point, n, a, phi):
    dgam = []  # dgam[l] = d_l Gamma
    for l in range(n):
        pp, pm = list(point), list(point)
        pp[l] += H2
        pm[l] -= H2
        gp = christoffel(pp, n, a, phi)
        gm = christoffel(pm, n, a, phi)
        dgam.append([[[(gp[k][i][j] - gm[k][i][j]) / (2 * H2)
                       for j in range(n)] for i in range(n)]
                     for k in range(n)])
    gam = christoffel(point, n, a, phi)
    ginv = inverse(metric(point, n, a, phi))
    ric = [[0.0] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        s = 0.0
        for l in range(n):
            s += dgam[l][l][i][j] - dgam[j][l][i][l]
            for m in range(n):
                s += gam[l][l][m] * gam[m][i][j] - gam[l][j][m] * gam[m][i][l]
        ric[i][j] = s
    return sum(ginv[i][j] * ric[i][j]
               for i, j in itertools.product(range(n), repeat=2))


def closed_form(r, n, a, phi, dphi, ddphi):
    rh0 = (n - 1) * (n - 2) / (a * a)
    return (rh0 / phi(r) ** 2 - 2 * (n - 1) * ddphi(r) / phi(r)
            - (n - 1) * (n - 2) * (dphi(r) / phi(r)) ** 2)


if __name__ == "__main__":
    x0 = [0.3, 0.1, -0.2]

    # Exact cone, n = 4, a = 2, r = 0.5: closed form gives (1.5 - 6)/0.25.
    fd = scalar_curvature([0.5] + x0, 4, 2.0, lambda r: r)
    cf = closed_form(0.5, 4, 2.0, lambda r: r, lambda r: 1.0, lambda r: 0.0)
    print(f"exact n=4 a=2 r=0.5:   fd = {fd:.10g}   closed = {cf:.10g}")

    # Exact cone over the unit sphere is flat.
    fd = scalar_curvature([0.77] + x0[:2], 3, 1.0, lambda r: r)
    print(f"exact n=3 a=1 r=0.77:  fd = {fd:.6g}   closed = 0")

    # Perturbed warp h_r = (1 + c r^alpha) h0, i.e. phi = r sqrt(1 + c r^alpha).
    al, c = 1.5, 0.3

    def phi(r):
        return r * math.sqrt(1.0 + c * r ** al)

    def dphi(r):
        s = math.sqrt(1.0 + c * r ** al)
        return s + r * c * al * r ** (al - 1) / (2.0 * s)

    def ddphi(r):
        w = 1.0 + c * r ** al
        return (c * al * (1.0 + al) * r ** (al - 1) / (2.0 * math.sqrt(w))
                - c * c * al * al * r ** (2 * al - 1) / (4.0 * w ** 1.5))

    fd = scalar_curvature([0.7] + x0, 4, 0.8, phi)
    cf = closed_form(0.7, 4, 0.8, phi, dphi, ddphi)
    print(f"perturbed n=4 a=0.8 alpha=1.5 c=0.3 r=0.7:")
    print(f"  fd = {fd:.12g}")
    print(f"  closed = {cf:.12g}")
    print(f"  rel diff = {abs(fd - cf) / abs(cf):.3g}")
