"""Left and right shelves, derived shelves of solutions, multiplication groups,
endomorphism monoids and centralizers.

For a left shelf ``op[x][y] = x |> y`` and ``L_x`` is row ``x``.  For a right
shelf ``op[x][y] = x <| y`` and ``R_x(y) = y <| x`` is column ``x``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .core import FiniteMap, Solution, _as_table, _invert_row
from .errors import DomainError, ResourceError, StructureError

#: Exact End/Aut enumeration is capped at this carrier size.
END_CAP = 8


class Shelf:
    """A binary operation table tagged ``side='left'`` or ``side='right'``.

    ``check=True`` enforces self-distributivity on the appropriate side.
    """

    def __init__(self, op, side: str = "left", check: bool = True):
        if side not in ("left", "right"):
            raise StructureError(f"side must be 'left' or 'right', not {side!r}")
        self.op = _as_table(op, "op")
        self.n = len(self.op)
        self.side = side
        if check:
            w = self.distributivity_witness()
            if w is not None:
                raise DomainError(f"{side} self-distributivity fails at {w}", witness=w)

    def __eq__(self, other) -> bool:
        return isinstance(other, Shelf) and self.side == other.side and self.op == other.op

    def __hash__(self) -> int:
        return hash((self.side, self.op))

    def __repr__(self) -> str:
        kind = "quandle" if self.is_quandle else "rack" if self.is_rack else "shelf"
        return f"Shelf(n={self.n}, side={self.side!r}, {kind})"

    def distributivity_witness(self) -> tuple[int, int, int] | None:
        op = self.op
        rng = range(self.n)
        if self.side == "left":
            for x in rng:
                ox = op[x]
                for y in rng:
                    oxy = op[ox[y]]
                    oy = op[y]
                    for z in rng:
                        if ox[oy[z]] != oxy[ox[z]]:
                            return (x, y, z)
        else:
            for x in rng:
                for y in rng:
                    xy = op[x][y]
                    for z in rng:
                        if op[xy][z] != op[op[x][z]][op[y][z]]:
                            return (x, y, z)
        return None

    def mult(self, x: int) -> FiniteMap:
        """``L_x`` for a left shelf, ``R_x`` for a right one."""
        if self.side == "left":
            return FiniteMap(self.op[x])
        return FiniteMap(tuple(self.op[y][x] for y in range(self.n)))

    @cached_property
    def multiplications(self) -> tuple[FiniteMap, ...]:
        return tuple(self.mult(x) for x in range(self.n))

    @cached_property
    def is_rack(self) -> bool:
        return all(m.is_bijective() for m in self.multiplications)

    @cached_property
    def is_quandle(self) -> bool:
        return self.is_rack and all(self.op[x][x] == x for x in range(self.n))

    def opposite(self) -> Shelf:
        """Same table with arguments swapped and the side flipped."""
        side = "right" if self.side == "left" else "left"
        return Shelf(transpose(self.op), side=side, check=False)

    def is_endomorphism(self, kappa: FiniteMap) -> bool:
        op, k = self.op, kappa.img
        rng = range(self.n)
        return all(k[op[x][y]] == op[k[x]][k[y]] for x in rng for y in rng)

    def to_json(self) -> dict:
        return {"n": self.n, "side": self.side, "op": [list(r) for r in self.op]}

    @classmethod
    def from_json(cls, data: dict, check: bool = True) -> Shelf:
        try:
            op = data["op"]
        except (KeyError, TypeError) as exc:
            raise StructureError("Shelf JSON needs 'op'") from exc
        n = data.get("n", len(op))
        if n != len(op):
            raise StructureError(f"Shelf JSON: n={n} but op has {len(op)} rows")
        return cls(op, side=data.get("side", "left"), check=check)


def transpose(table: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(table)
    return tuple(tuple(table[y][x] for y in range(n)) for x in range(n))


@dataclass(frozen=True)
class PermGroup:
    """A permutation group given by generators together with all its elements."""

    n: int
    generators: tuple[FiniteMap, ...]
    elements: frozenset = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, f: FiniteMap) -> bool:
        return f.img in self.elements

    def __iter__(self):
        for img in sorted(self.elements):
            yield FiniteMap(img)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a.commutes_with(b) for a in gens for b in gens)

    def center(self) -> list[FiniteMap]:
        return [g for g in self if all(g.commutes_with(h) for h in self.generators)]


def closure(generators: Iterable[FiniteMap], n: int) -> PermGroup:
    """Breadth-first closure of a set of permutations under composition."""
    gens = tuple(generators)
    for g in gens:
        if g.n != n or not g.is_bijective():
            raise DomainError("generators must be permutations of the carrier", witness=g.img)
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    gen_imgs = [g.img for g in gens]
    while queue:
        h = queue.popleft()
        for g in gen_imgs:
            gh = tuple(g[v] for v in h)
            if gh not in seen:
                seen.add(gh)
                queue.append(gh)
    # finite: closed under composition => closed under inverses
    return PermGroup(n, gens, frozenset(seen))


def derived_left_shelf(S: Solution) -> Shelf:
    """``x |> y = lambda_x rho_{lambda_y^-1(x)} (y)``."""
    if not S.flags.left_nd:
        raise DomainError("derived left shelf needs a left non-degenerate solution")
    lam, rho, linv = S.lam, S.rho, S.lam_inverse
    n = S.n
    op = [[lam[x][rho[linv[y][x]][y]] for y in range(n)] for x in range(n)]
    return Shelf(op, side="left", check=False)


def derived_right_shelf(S: Solution) -> Shelf:
    """``x <| y = rho_y lambda_{rho_x^-1(y)} (x)``."""
    if not S.flags.right_nd:
        raise DomainError("derived right shelf needs a right non-degenerate solution")
    lam, rho, rinv = S.lam, S.rho, S.rho_inverse
    n = S.n
    op = [[rho[y][lam[rinv[x][y]][x]] for y in range(n)] for x in range(n)]
    return Shelf(op, side="right", check=False)


def solution_from_shelf(sh: Shelf, check: bool = True) -> Solution:
    """``r(x, y) = (y, y |> x)`` for a left shelf, ``(y <| x, x)`` for a right one."""
    if check:
        w = sh.distributivity_witness()
        if w is not None:
            raise DomainError(f"{sh.side} self-distributivity fails at {w}", witness=w)
    n = sh.n
    ident = tuple(range(n))
    if sh.side == "left":
        return Solution.unchecked((ident,) * n, sh.op)
    return Solution.unchecked(transpose(sh.op), (ident,) * n)


def reconstruct_rho(lam, sh: Shelf) -> tuple[tuple[int, ...], ...]:
    """Rebuild ``rho`` from a family of shelf automorphisms ``lam`` and a left shelf.

    ``rho_y(x) = lambda^-1_{lambda_x(y)} (lambda_x(y) |> x)``.
    """
    lam = _as_table(lam, "lambda")
    if sh.side != "left":
        raise StructureError("reconstruction needs a left shelf")
    if len(lam) != sh.n:
        raise StructureError("lambda and shelf sizes differ")
    n, op = sh.n, sh.op
    for x in range(n):
        f = FiniteMap(lam[x])
        if not f.is_bijective() or not sh.is_endomorphism(f):
            raise DomainError(f"lambda_{x} is not an automorphism of the shelf", witness=x)
    linv = [_invert_row(row) for row in lam]
    rho = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            w = lam[x][y]
            rho[y][x] = linv[w][op[w][x]]
    return tuple(tuple(r) for r in rho)


def multiplication_group(sh: Shelf) -> PermGroup:
    """``LMlt`` (left) or ``RMlt`` (right) of a rack."""
    if not sh.is_rack:
        raise DomainError("multiplication group needs a rack")
    return closure(sh.multiplications, sh.n)


def _endomorphism_search(sh: Shelf, bijective: bool) -> list[FiniteMap]:
    n, op = sh.n, sh.op
    if n > END_CAP:
        raise ResourceError(f"End/Aut enumeration is capped at n <= {END_CAP}")
    kappa = [-1] * n
    used = [False] * n
    out: list[FiniteMap] = []

    def consistent(k: int) -> bool:
        # every instance kappa(x |> y) = kappa(x) |> kappa(y) whose arguments are assigned
        for x in range(k + 1):
            ox, kx = op[x], kappa[x]
            for y in range(k + 1):
                if x != k and y != k and ox[y] != k:
                    continue
                xy = ox[y]
                if xy <= k and kappa[xy] != op[kx][kappa[y]]:
                    return False
        return True

    def dfs(k: int):
        if k == n:
            out.append(FiniteMap(tuple(kappa)))
            return
        for v in range(n):
            if bijective and used[v]:
                continue
            kappa[k] = v
            used[v] = True
            if consistent(k):
                dfs(k + 1)
            used[v] = False
        kappa[k] = -1

    dfs(0)
    return out


def endomorphisms(sh: Shelf) -> list[FiniteMap]:
    """All shelf endomorphisms, lexicographically sorted."""
    return _endomorphism_search(sh, bijective=False)


def automorphisms(sh: Shelf) -> list[FiniteMap]:
    return _endomorphism_search(sh, bijective=True)


def centralizer(maps: Iterable[FiniteMap], group: PermGroup | Iterable[FiniteMap]) -> list[FiniteMap]:
    """Members of ``maps`` commuting with every generator of ``group``."""
    gens = group.generators if isinstance(group, PermGroup) else tuple(group)
    return [m for m in maps if all(m.commutes_with(g) for g in gens)]


def t_map(S: Solution) -> FiniteMap:
    """``T(x) = rho_x^-1(x)``, the anti-isomorphism between the derived racks."""
    f = S.flags
    if not (f.bijective and f.left_nd and f.right_nd):
        raise DomainError("T is defined for bijective non-degenerate solutions")
    rinv = S.rho_inverse
    return FiniteMap(tuple(rinv[x][x] for x in range(S.n)))
