"""Bracketed golden-section search for scalar maximisation."""

from __future__ import annotations

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-6,
                       max_iter: int = 200) -> tuple[float, float]:
    """Return ``(x, f(x))`` maximising a unimodal ``f`` on ``[lo, hi]``.

    Stops once the bracket is narrower than ``tol``. The bracket endpoints
    are compared at the end so a monotone ``f`` returns its boundary maximum.
    """
    if not lo <= hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    best = (x, f(x))
    for edge in (lo, hi):
        fe = f(edge)
        if fe > best[1]:
            best = (edge, fe)
    return best
