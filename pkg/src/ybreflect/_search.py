"""Compiled backtracking search for reflections.

Positions ``kappa(0), kappa(1), ...`` are assigned in order.  After every
assignment each (T)/(Q) instance whose kappa-arguments are all known is
tested; an instance is skipped while any argument is still unassigned (-1).
Leaves are classified into 16 bins by the flag bits

    1 lambda-centralizing, 2 rho-invariant, 4 lambda-invariant, 8 rho-centralizing
"""
from __future__ import annotations

import numpy as np
from numba import njit

LC, RI, LI, RC = 1, 2, 4, 8


@njit(cache=True, nogil=True)
def _consistent(lam, rho, kappa, n):
    for x in range(n):
        lx = lam[x]
        for y in range(n):
            a = kappa[y]
            if a < 0:
                continue
            b = kappa[rho[y, x]]
            if b < 0:
                continue
            c = kappa[rho[a, x]]
            if c < 0:
                continue
            lxy = lx[y]
            lxa = lx[a]
            # (T): t(x, kappa y) == t(x, y)
            if lam[lxy, b] != lam[lxa, c]:
                return False
            d = kappa[rho[b, lxy]]
            if d < 0:
                continue
            # (Q): q(x, kappa y) == kappa q(x, y)
            if rho[c, lxa] != d:
                return False
    return True


@njit(cache=True, nogil=True)
def _flag_bits(lam, rho, lam_cls, rho_cls, kappa, n):
    lc = True
    rc = True
    for x in range(n):
        for y in range(n):
            if lc and lam[x, kappa[y]] != kappa[lam[x, y]]:
                lc = False
            if rc and rho[x, kappa[y]] != kappa[rho[x, y]]:
                rc = False
    ri = True
    li = True
    for x in range(n):
        if rho_cls[kappa[x]] != rho_cls[x]:
            ri = False
        if lam_cls[kappa[x]] != lam_cls[x]:
            li = False
    bits = 0
    if lc:
        bits |= 1
    if ri:
        bits |= 2
    if li:
        bits |= 4
    if rc:
        bits |= 8
    return bits


@njit(cache=True, nogil=True)
def search(lam, rho, lam_cls, rho_cls, first, bij, bins, out, out_bits):
    """Enumerate reflections, optionally with ``kappa(0) = first``; ``bij``
    restricts the search to permutations.

    ``bins[b]`` counts leaves with flag bits ``b``.  The first ``len(out)``
    reflections are written to ``out`` (and their bits to ``out_bits``).
    Returns the total number of reflections found.
    """
    n = lam.shape[0]
    kappa = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    cand = np.zeros(n, dtype=np.int64)
    lo = 0
    hi = n
    if first >= 0:
        lo = first
        hi = first + 1
    cand[0] = lo
    cap = out.shape[0]
    total = 0
    k = 0
    while k >= 0:
        limit = hi if k == 0 else n
        if cand[k] >= limit:
            kappa[k] = -1
            k -= 1
            if k >= 0:
                used[kappa[k]] = False
                cand[k] += 1
            continue
        if bij and used[cand[k]]:
            cand[k] += 1
            continue
        kappa[k] = cand[k]
        if _consistent(lam, rho, kappa, n):
            if k == n - 1:
                bits = _flag_bits(lam, rho, lam_cls, rho_cls, kappa, n)
                bins[bits] += 1
                if total < cap:
                    out[total, :] = kappa
                    out_bits[total] = bits
                total += 1
                cand[k] += 1
            else:
                used[cand[k]] = True
                k += 1
                cand[k] = 0
        else:
            cand[k] += 1
    return total


def row_classes(table) -> np.ndarray:
    """Label each row by the index of its first occurrence."""
    seen: dict = {}
    return np.array([seen.setdefault(tuple(row), i) for i, row in enumerate(table)], dtype=np.int64)
