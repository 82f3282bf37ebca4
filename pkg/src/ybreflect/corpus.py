"""Small solutions for cross-checking: every solution on two points, named
families, and random valid instances built from the constructions.
"""
from __future__ import annotations

import itertools
import random

from .braces import CONVENTIONS, brace_solution, enumerate_skew_braces
from .constructions import MatchedSystem, TwistedSystem, matched_product, twisted_union
from .core import FiniteMap, Solution, _scan_ybe, flip_solution, identity_solution, inverse_solution, relabel
from .errors import DomainError
from .families import (
    constant_shelf,
    constant_solution,
    cyclic_rack,
    dihedral,
    three_point_example,
    idempotent_left,
    idempotent_map_shelf,
    idempotent_right,
    lyubashenko,
    permutation_rack,
    right_dihedral,
)
from .shelves import solution_from_shelf


def all_solutions(n: int) -> list[Solution]:
    """Every solution on ``n <= 2`` points, by exhaustive table search."""
    if n > 2:
        raise ValueError("exhaustive solution search is only feasible for n <= 2")
    maps = list(itertools.product(range(n), repeat=n))
    out = []
    for lam in itertools.product(maps, repeat=n):
        for rho in itertools.product(maps, repeat=n):
            if _scan_ybe(lam, rho).ok:
                out.append(Solution.unchecked(lam, rho))
    return out


def _perms(n):
    return [FiniteMap(p) for p in itertools.permutations(range(n))]


def _random_map(rng: random.Random, n: int) -> FiniteMap:
    return FiniteMap(tuple(rng.randrange(n) for _ in range(n)))


def _random_perm(rng: random.Random, n: int) -> FiniteMap:
    img = list(range(n))
    rng.shuffle(img)
    return FiniteMap(tuple(img))


def _random_idempotent(rng: random.Random, n: int) -> FiniteMap:
    fixed = rng.sample(range(n), rng.randint(1, n))
    return FiniteMap(tuple(x if x in fixed else rng.choice(fixed) for x in range(n)))


def _matched(rng: random.Random, n: int) -> Solution | None:
    if n != 4:
        return None
    parts = [s for s in all_solutions(2)]
    S, T = rng.choice(parts), rng.choice(parts)
    systems = []
    p2 = _perms(2)
    for al in itertools.product(p2, repeat=2):
        for be in itertools.product(p2, repeat=2):
            try:
                systems.append(MatchedSystem(S, T, al, be))
            except DomainError:
                pass
    return matched_product(rng.choice(systems)) if systems else None


def _twisted(rng: random.Random, n: int) -> Solution | None:
    if n < 2:
        return None
    p = rng.randint(1, n - 1)
    q = n - p
    kappa, omega = _random_map(rng, p), _random_map(rng, q)
    W = TwistedSystem(flip_solution(p), flip_solution(q), kappa, kappa, omega, omega)
    return twisted_union(W)


def random_solution(rng: random.Random, n: int) -> Solution:
    """A random valid solution on ``n`` points, relabelled by a random permutation."""
    builders = [
        lambda: (lambda f: lyubashenko(n, f, rng.choice([g for g in _perms(n) if g.commutes_with(f)])))(_random_perm(rng, n)),
        lambda: solution_from_shelf(permutation_rack(n, _random_perm(rng, n))),
        lambda: solution_from_shelf(dihedral(n)),
        lambda: solution_from_shelf(right_dihedral(n)),
        lambda: solution_from_shelf(cyclic_rack(n)),
        lambda: solution_from_shelf(constant_shelf(n, rng.randrange(n))),
        lambda: solution_from_shelf(idempotent_map_shelf(n, _random_idempotent(rng, n))),
        lambda: solution_from_shelf(idempotent_map_shelf(n, _random_idempotent(rng, n)).opposite()),
        lambda: idempotent_left(n),
        lambda: idempotent_right(n),
        lambda: constant_solution(n, rng.randrange(n)),
        lambda: identity_solution(n),
        lambda: flip_solution(n),
        lambda: brace_solution(rng.choice(enumerate_skew_braces(n)).brace, rng.choice(CONVENTIONS)),
        lambda: _matched(rng, n),
        lambda: _twisted(rng, n),
        lambda: three_point_example() if n == 3 else None,
    ]
    while True:
        S = rng.choice(builders)()
        if S is None:
            continue
        if S.flags.bijective and rng.random() < 0.3:
            S = inverse_solution(S)
        return relabel(S, _random_perm(rng, n))


def oracle_corpus(seed: int = 0, size: int = 240, max_n: int = 4) -> list[Solution]:
    """Deterministic corpus: all two-point solutions, then random ones up to ``max_n``."""
    rng = random.Random(seed)
    out = list(all_solutions(1)) + list(all_solutions(2))
    seen = set(out)
    while len(out) < size:
        S = random_solution(rng, rng.randint(1, max_n))
        if S not in seen:
            seen.add(S)
            out.append(S)
    return out
