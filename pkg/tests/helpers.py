"""Independent oracles and generators shared by the test modules.

The oracles here deliberately avoid the package's own (T)/(Q) decomposition and
YBE scanner: they compose the maps on X x X directly.
"""
from __future__ import annotations

import itertools
import random

import numpy as np

from ybreflect.core import FiniteMap, Solution
from ybreflect.corpus import random_solution
from ybreflect.shelves import Shelf


def pair_r(S: Solution, x: int, y: int) -> tuple[int, int]:
    return S.lam[x][y], S.rho[y][x]


def reflection_equation(S: Solution, kappa: FiniteMap) -> bool:
    """r (id x k) r (id x k) == (id x k) r (id x k) r on every pair."""
    k = kappa.img
    for x, y in itertools.product(range(S.n), repeat=2):
        a, b = pair_r(S, x, k[y])
        lhs = pair_r(S, a, k[b])
        a, b = pair_r(S, x, y)
        a, b = pair_r(S, a, k[b])
        rhs = (a, k[b])
        if lhs != rhs:
            return False
    return True


def braid_holds(lam, rho) -> bool:
    """(r x id)(id x r)(r x id) == (id x r)(r x id)(id x r) on X^3."""
    n = len(lam)

    def r(x, y):
        return lam[x][y], rho[y][x]

    for x, y, z in itertools.product(range(n), repeat=3):
        a, b = r(x, y)
        b, c = r(b, z)
        a, b = r(a, b)
        left = (a, b, c)
        b, c = r(y, z)
        a, b = r(x, b)
        b, c = r(b, c)
        if left != (a, b, c):
            return False
    return True


def oracle_reflections(S: Solution) -> set[tuple[int, ...]]:
    return {img for img in itertools.product(range(S.n), repeat=S.n)
            if reflection_equation(S, FiniteMap(img))}


def all_left_racks(n: int) -> list[Shelf]:
    """Every left rack on n points (rows are permutations), vectorised over candidates."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    idx = np.array(list(itertools.product(range(len(perms)), repeat=n)), dtype=np.int64)
    tables = perms[idx]  # (m, n, n); tables[:, x, y] = x |> y
    m = len(tables)
    ok = np.ones(m, dtype=bool)
    rows = np.arange(m)[:, None]
    for x in range(n):
        for y in range(n):
            xy = tables[:, x, y]
            lhs = tables[rows, x, tables[:, y, :]]           # x |> (y |> z)
            rhs = tables[rows, xy[:, None], tables[:, x, :]]  # (x |> y) |> (x |> z)
            ok &= (lhs == rhs).all(axis=1)
    return [Shelf(t.tolist()) for t in tables[ok]]


def random_map(rng: random.Random, n: int) -> FiniteMap:
    return FiniteMap(tuple(rng.randrange(n) for _ in range(n)))


def random_solutions(seed: int, count: int, n: int) -> list[Solution]:
    rng = random.Random(seed)
    return [random_solution(rng, n) for _ in range(count)]
