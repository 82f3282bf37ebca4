"""Named solutions and shelves used throughout the examples and tests."""
from __future__ import annotations

import re
from typing import Callable

from .core import FiniteMap, Solution, flip_solution, identity_solution
from .errors import DomainError, StructureError
from .groups import named_group
from .shelves import Shelf


def as_map(n: int, spec) -> FiniteMap:
    """Coerce ``spec`` into a map on ``n`` points.

    Accepts a FiniteMap, an image sequence, or a 0-based cycle string such as
    ``"(0 1 2)(3 4)"``.
    """
    if isinstance(spec, FiniteMap):
        f = spec
    elif isinstance(spec, str):
        cycles = [tuple(int(t) for t in c.replace(",", " ").split()) for c in re.findall(r"\(([^)]*)\)", spec)]
        if not cycles and spec.strip() not in ("", "()"):
            raise StructureError(f"cannot parse cycle string {spec!r}")
        f = FiniteMap.from_cycles(n, cycles, one_based=False)
    else:
        f = FiniteMap(tuple(spec))
    if f.n != n:
        raise StructureError(f"map has {f.n} points, expected {n}")
    return f


def lyubashenko(n: int, f, g) -> Solution:
    """``r(x, y) = (f(y), g(x))`` for commuting permutations ``f``, ``g``."""
    f, g = as_map(n, f), as_map(n, g)
    if not (f.is_bijective() and g.is_bijective()):
        raise DomainError("f and g must be permutations")
    if not f.commutes_with(g):
        raise DomainError("f and g must commute", witness=(f.img, g.img))
    return Solution([f.img] * n, [g.img] * n)


def permutation_rack(n: int, f) -> Shelf:
    f = as_map(n, f)
    if not f.is_bijective():
        raise DomainError("permutation rack needs a permutation")
    return Shelf([f.img] * n)


def trivial_rack(n: int) -> Shelf:
    return permutation_rack(n, FiniteMap.identity(n))


def cyclic_rack(n: int) -> Shelf:
    return Shelf([[(y + 1) % n for y in range(n)] for _ in range(n)])


def conjugation_quandle(group: str = "S3") -> Shelf:
    """``x |> y = x^-1 y x`` on the named group."""
    G = named_group(group)
    t, inv = G.table, G.inverse
    return Shelf([[t[t[inv[x]][y]][x] for y in range(G.n)] for x in range(G.n)])


def dihedral(n: int) -> Shelf:
    """``i |> j = 2i - j (mod n)``."""
    return Shelf([[(2 * i - j) % n for j in range(n)] for i in range(n)])


def right_dihedral(n: int) -> Shelf:
    """``x <| y = 2y - x (mod n)``."""
    return Shelf([[(2 * y - x) % n for y in range(n)] for x in range(n)], side="right")


def constant_shelf(n: int, a: int = 0) -> Shelf:
    return Shelf([[a] * n for _ in range(n)])


def idempotent_map_shelf(n: int, f) -> Shelf:
    """``x |> y = f(x)`` for an idempotent ``f``."""
    f = as_map(n, f)
    if not f.is_idempotent():
        raise DomainError("f must be idempotent")
    return Shelf([[f(x)] * n for x in range(n)])


def shelf_2x2y_mod6() -> Shelf:
    return Shelf([[(2 * x + 2 * y) % 6 for y in range(6)] for x in range(6)])


def three_point_example() -> Solution:
    """``r(x, y) = (f_x(y), f_y(x))`` on three points, ``f_1 = f_2 = id``, ``f_3 = (1 2)``."""
    f = [(0, 1, 2), (0, 1, 2), (1, 0, 2)]
    return Solution(f, f)


def order8_example() -> Solution:
    """The eight-point solution with 128 reflections."""
    n = 8
    ident = FiniteMap.identity(n).img
    a = FiniteMap.from_cycles(n, [(3, 5), (4, 6), (7, 8)]).img
    r34 = FiniteMap.from_cycles(n, [(3, 6, 4, 5)]).img
    r56 = FiniteMap.from_cycles(n, [(3, 5, 4, 6)]).img
    r78 = FiniteMap.from_cycles(n, [(3, 4), (5, 6)]).img
    lam = [ident, ident, a, a, a, a, ident, ident]
    rho = [ident, ident, r34, r34, r56, r56, r78, r78]
    return Solution(lam, rho)


def idempotent_left(n: int) -> Solution:
    """``r(x, y) = (y, y)``."""
    ident = tuple(range(n))
    return Solution([ident] * n, [(y,) * n for y in range(n)])


def idempotent_right(n: int) -> Solution:
    """``r(x, y) = (x, x)``."""
    ident = tuple(range(n))
    return Solution([(x,) * n for x in range(n)], [ident] * n)


def constant_solution(n: int, c: int = 0) -> Solution:
    """``r(x, y) = (c, c)``."""
    row = (c,) * n
    return Solution([row] * n, [row] * n)


FAMILIES: dict[str, Callable] = {
    "lyubashenko": lyubashenko,
    "permutation_rack": permutation_rack,
    "trivial_rack": trivial_rack,
    "cyclic_rack": cyclic_rack,
    "conjugation_quandle": conjugation_quandle,
    "dihedral": dihedral,
    "right_dihedral": right_dihedral,
    "constant_shelf": constant_shelf,
    "idempotent_map_shelf": idempotent_map_shelf,
    "shelf_2x2y_mod6": shelf_2x2y_mod6,
    "three_point_example": three_point_example,
    "order8_example": order8_example,
    "flip": flip_solution,
    "identity": identity_solution,
    "idempotent_left": idempotent_left,
    "idempotent_right": idempotent_right,
    "constant_solution": constant_solution,
}


def family(name: str, **params):
    """Build a named structure; parameters are passed through to its constructor."""
    try:
        build = FAMILIES[name]
    except KeyError:
        raise StructureError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}") from None
    try:
        return build(**params)
    except TypeError as exc:
        raise StructureError(f"bad parameters for {name}: {exc}") from None
