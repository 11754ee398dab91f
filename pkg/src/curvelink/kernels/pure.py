"""Pure-Python pair kernels.

Fallback used when the compiled extension is unavailable.  The arithmetic
here is kept expression-for-expression identical to ``_core.pyx`` so both
backends produce bitwise-equal edge sets.

Each kernel classifies candidate index pairs (i, j):

    0  no edge
    1  edge (the mutual membership test holds in both directions)
    2  positions closer than tol (ill-posed near-duplicate input)
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "pure"


def pair_codes_noise_free(px, py, tx, ty, ii, jj, kappa, eps, tol):
    """Mutual allowed-region test for each pair, noise-free zones."""
    pxl = px.tolist()
    pyl = py.tolist()
    txl = tx.tolist()
    tyl = ty.tolist()
    iil = ii.tolist()
    jjl = jj.tolist()
    out = np.zeros(len(iil), dtype=np.uint8)
    lim = eps + tol
    lim2 = lim * lim
    tol2 = tol * tol
    half_k = 0.5 * kappa
    for k in range(len(iil)):
        a = iil[k]
        b = jjl[k]
        dx = pxl[b] - pxl[a]
        dy = pyl[b] - pyl[a]
        r2 = dx * dx + dy * dy
        if r2 < tol2:
            out[k] = 2
            continue
        if r2 > lim2:
            continue
        bar = half_k * r2 + tol
        wa = abs(dx * tyl[a] - dy * txl[a])
        if wa > bar:
            continue
        wb = abs(dx * tyl[b] - dy * txl[b])
        if wb <= bar:
            out[k] = 1
    return out


def pair_codes_noisy(px, py, tx, ty, ii, jj, kappa, eps, xi, slack, tol):
    """Mutual noisy-allowed-region test for each pair.

    ``slack`` is the radial dilation (2*zeta for the standard mutual test).
    """
    pxl = px.tolist()
    pyl = py.tolist()
    txl = tx.tolist()
    tyl = ty.tolist()
    iil = ii.tolist()
    jjl = jj.tolist()
    out = np.zeros(len(iil), dtype=np.uint8)
    lim = eps + slack + tol
    lim2 = lim * lim
    tol2 = tol * tol
    half_k = 0.5 * kappa
    asin = math.asin
    sin = math.sin
    sqrt = math.sqrt
    for k in range(len(iil)):
        a = iil[k]
        b = jjl[k]
        dx = pxl[b] - pxl[a]
        dy = pyl[b] - pyl[a]
        r2 = dx * dx + dy * dy
        if r2 < tol2:
            out[k] = 2
            continue
        if r2 > lim2:
            continue
        r = sqrt(r2)
        reach = r + slack
        if reach > eps:
            reach = eps
        rhs = half_k * reach * reach + tol
        ok = True
        for wsel in (0, 1):
            v = a if wsel == 0 else b
            w = abs(dx * tyl[v] - dy * txl[v])
            if xi > 0.0 and r > 0.0:
                s = w / r
                if s > 1.0:
                    s = 1.0
                ang = asin(s) - xi
                if ang < 0.0:
                    ang = 0.0
                lhs = r * sin(ang)
            else:
                lhs = w
            lhs -= slack
            if lhs < 0.0:
                lhs = 0.0
            if lhs > rhs:
                ok = False
                break
        if ok:
            out[k] = 1
    return out
