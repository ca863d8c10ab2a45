"""Deterministic low-discrepancy rational seed grids for orbit sampling."""

from __future__ import annotations

from typing import List

from .engine import PhasePair
from .geom import parallel
from .rational import rat
from .table import EdgePoint, TablePair


def van_der_corput(k: int, base: int):
    """k-th radical-inverse point in (0,1) as an exact rational, k >= 1."""
    num, den = 0, 1
    while k:
        num = num * base + k % base
        den *= base
        k //= base
    return rat(num, den)


def sample_pairs(T: TablePair, count: int, x_base: int = 3, y_base: int = 5,
                 skip_parallel: bool = True) -> List[PhasePair]:
    """Deterministic phase-pair grid cycling over edge combinations.

    Odd bases keep every parameter non-dyadic, so seeds never sit on the
    necktie's removed set. Pairs on parallel edges are skipped by default.
    """
    n0, n1 = T.polys[0].n, T.polys[1].n
    out: List[PhasePair] = []
    k = 0
    while len(out) < count:
        k += 1
        ex = k % n0
        ey = (k // n0) % n1
        if skip_parallel and parallel(T.polys[0].edge_vec(ex), T.polys[1].edge_vec(ey)):
            continue
        x = EdgePoint(0, ex, van_der_corput(k, x_base))
        y = EdgePoint(1, ey, van_der_corput(k, y_base))
        out.append(PhasePair(x, y))
    return out
