"""Finite maps, set-theoretic solutions and the Yang-Baxter verifier.

Everything lives on the carrier ``{0, ..., n-1}``.  A solution is stored as
two ``n x n`` tables::

    lam[x][y] = lambda_x(y)        rho[b][a] = rho_b(a)

so that ``r(x, y) = (lam[x][y], rho[y][x])``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, StructureError


@dataclass(frozen=True)
class FiniteMap:
    """A total function on ``{0..n-1}``; ``img[x]`` is the value at ``x``."""

    img: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(v) for v in self.img)
        n = len(img)
        if n == 0:
            raise StructureError("a finite map needs a non-empty carrier")
        for x, v in enumerate(img):
            if not 0 <= v < n:
                raise StructureError(f"image of {x} is {v}, outside 0..{n - 1}")
        object.__setattr__(self, "img", img)

    @property
    def n(self) -> int:
        return len(self.img)

    @classmethod
    def identity(cls, n: int) -> FiniteMap:
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, c: int) -> FiniteMap:
        return cls((c,) * n)

    @classmethod
    def from_string(cls, s: str) -> FiniteMap:
        """Parse one-based string notation: ``"113"`` is x -> 1, 1, 3.

        Whitespace or comma separated tokens are accepted for n >= 10.
        """
        s = s.strip()
        tokens = s.replace(",", " ").split() if (" " in s or "," in s) else list(s)
        try:
            return cls(tuple(int(t) - 1 for t in tokens))
        except ValueError as exc:
            raise StructureError(f"cannot parse map string {s!r}") from exc

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]], one_based: bool = True) -> FiniteMap:
        """Build a permutation from disjoint cycles, e.g. ``[(3, 5), (4, 6)]``."""
        img = list(range(n))
        shift = 1 if one_based else 0
        for cyc in cycles:
            cyc = [c - shift for c in cyc]
            for i, c in enumerate(cyc):
                img[c] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(img))

    def to_string(self, one_based: bool = True) -> str:
        shift = 1 if one_based else 0
        vals = [str(v + shift) for v in self.img]
        if self.n + shift > 10:
            return " ".join(vals)
        return "".join(vals)

    def __call__(self, x: int) -> int:
        return self.img[x]

    def __len__(self) -> int:
        return len(self.img)

    def __lt__(self, other: FiniteMap) -> bool:
        return self.img < other.img

    def compose(self, other: FiniteMap) -> FiniteMap:
        """``self o other``: first ``other``, then ``self``."""
        if other.n != self.n:
            raise StructureError("cannot compose maps on different carriers")
        f = self.img
        return FiniteMap(tuple(f[v] for v in other.img))

    __matmul__ = compose

    def is_bijective(self) -> bool:
        return len(set(self.img)) == self.n

    def is_involutive(self) -> bool:
        f = self.img
        return all(f[f[x]] == x for x in range(self.n))

    def is_idempotent(self) -> bool:
        f = self.img
        return all(f[f[x]] == f[x] for x in range(self.n))

    def inverse(self) -> FiniteMap:
        if not self.is_bijective():
            raise DomainError("map is not bijective", witness=self.img)
        inv = [0] * self.n
        for x, v in enumerate(self.img):
            inv[v] = x
        return FiniteMap(tuple(inv))

    def commutes_with(self, other: FiniteMap) -> bool:
        f, g = self.img, other.img
        return all(f[g[x]] == g[f[x]] for x in range(self.n))

    def to_json(self) -> dict:
        return {"n": self.n, "img": list(self.img)}

    @classmethod
    def from_json(cls, data: dict) -> FiniteMap:
        try:
            img = data["img"]
            n = data.get("n", len(img))
        except (KeyError, TypeError, AttributeError) as exc:
            raise StructureError("FiniteMap JSON needs an 'img' list") from exc
        if n != len(img):
            raise StructureError(f"FiniteMap JSON: n={n} but img has {len(img)} entries")
        return cls(tuple(img))


def compose(f: FiniteMap, g: FiniteMap) -> FiniteMap:
    """Return ``f o g``."""
    return f.compose(g)


def _as_table(table, name: str) -> tuple[tuple[int, ...], ...]:
    try:
        rows = tuple(tuple(int(v) for v in row) for row in table)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"{name} is not a table of integers") from exc
    n = len(rows)
    if n == 0:
        raise StructureError(f"{name} is empty")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise StructureError(f"{name} row {i} has length {len(row)}, expected {n}")
        for v in row:
            if not 0 <= v < n:
                raise StructureError(f"{name} row {i} has entry {v} outside 0..{n - 1}")
    return rows


@dataclass(frozen=True)
class YBEReport:
    ok: bool
    witness: tuple[int, int, int] | None = None
    axiom: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _scan_ybe(lam, rho) -> YBEReport:
    n = len(lam)
    for x in range(n):
        lx = lam[x]
        for y in range(n):
            lxy = lx[y]
            ryx = rho[y][x]
            ly = lam[y]
            for z in range(n):
                lyz = ly[z]
                rz = rho[z]
                # Y1
                if lx[lyz] != lam[lxy][lam[ryx][z]]:
                    return YBEReport(False, (x, y, z), "Y1")
                # Y2
                if lam[rho[lyz][x]][rz[y]] != rho[lam[ryx][z]][lxy]:
                    return YBEReport(False, (x, y, z), "Y2")
                # Y3
                if rz[ryx] != rho[rz[y]][rho[lyz][x]]:
                    return YBEReport(False, (x, y, z), "Y3")
    return YBEReport(True)


def check_ybe(lam, rho) -> YBEReport:
    """Check (Y1)-(Y3) on every triple, lexicographically, stopping at the first failure.

    Raises :class:`StructureError` for malformed tables; a well-formed pair of
    tables that is not a solution gives ``ok=False`` and a witness.
    """
    lam = _as_table(lam, "lambda")
    rho = _as_table(rho, "rho")
    if len(lam) != len(rho):
        raise StructureError(f"lambda has size {len(lam)} but rho has size {len(rho)}")
    return _scan_ybe(lam, rho)


@dataclass(frozen=True)
class SolutionFlags:
    bijective: bool
    involutive: bool
    idempotent: bool
    left_nd: bool
    right_nd: bool

    @property
    def nondegenerate(self) -> bool:
        return self.left_nd and self.right_nd

    def as_dict(self) -> dict:
        return {
            "bijective": self.bijective,
            "involutive": self.involutive,
            "idempotent": self.idempotent,
            "left_nd": self.left_nd,
            "right_nd": self.right_nd,
        }


class Solution:
    """A finite set-theoretic solution of the Yang-Baxter equation.

    Construction validates (Y1)-(Y3) and raises :class:`DomainError` with the
    failing triple otherwise.  ``Solution.unchecked`` skips validation and is
    meant for inner loops that already know the tables are valid.
    """

    __slots__ = ("lam", "rho", "n", "__dict__")

    def __init__(self, lam, rho, check: bool = True):
        lam_t = _as_table(lam, "lambda")
        rho_t = _as_table(rho, "rho")
        if len(lam_t) != len(rho_t):
            raise StructureError(f"lambda has size {len(lam_t)} but rho has size {len(rho_t)}")
        if check:
            report = _scan_ybe(lam_t, rho_t)
            if not report.ok:
                raise DomainError(
                    f"not a solution: {report.axiom} fails at {report.witness}",
                    witness=(report.axiom, report.witness),
                )
        self.lam = lam_t
        self.rho = rho_t
        self.n = len(lam_t)

    @classmethod
    def unchecked(cls, lam, rho) -> Solution:
        return cls(lam, rho, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Solution) and self.lam == other.lam and self.rho == other.rho

    def __hash__(self) -> int:
        return hash((self.lam, self.rho))

    def __repr__(self) -> str:
        return f"Solution(n={self.n})"

    def r(self, x: int, y: int) -> tuple[int, int]:
        return self.lam[x][y], self.rho[y][x]

    def lam_map(self, x: int) -> FiniteMap:
        return FiniteMap(self.lam[x])

    def rho_map(self, x: int) -> FiniteMap:
        return FiniteMap(self.rho[x])

    @cached_property
    def flags(self) -> SolutionFlags:
        return classify_solution(self)

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Read-only int64 copies of ``(lam, rho)`` for vectorised kernels."""
        lam = np.array(self.lam, dtype=np.int64)
        rho = np.array(self.rho, dtype=np.int64)
        lam.setflags(write=False)
        rho.setflags(write=False)
        return lam, rho

    @cached_property
    def lam_inverse(self) -> tuple[tuple[int, ...], ...]:
        if not self.flags.left_nd:
            raise DomainError("solution is not left non-degenerate")
        return tuple(_invert_row(row) for row in self.lam)

    @cached_property
    def rho_inverse(self) -> tuple[tuple[int, ...], ...]:
        if not self.flags.right_nd:
            raise DomainError("solution is not right non-degenerate")
        return tuple(_invert_row(row) for row in self.rho)

    def to_json(self) -> dict:
        return {"n": self.n, "lambda": [list(r) for r in self.lam], "rho": [list(r) for r in self.rho]}

    @classmethod
    def from_json(cls, data: dict, check: bool = True) -> Solution:
        try:
            lam, rho = data["lambda"], data["rho"]
        except (KeyError, TypeError) as exc:
            raise StructureError("Solution JSON needs 'lambda' and 'rho'") from exc
        n = data.get("n", len(lam))
        if n != len(lam):
            raise StructureError(f"Solution JSON: n={n} but lambda has {len(lam)} rows")
        return cls(lam, rho, check=check)


def _invert_row(row: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(row)
    for i, v in enumerate(row):
        inv[v] = i
    return tuple(inv)


def _is_perm(row: Sequence[int]) -> bool:
    return len(set(row)) == len(row)


@dataclass(frozen=True)
class PairMap:
    """A function on ``X x X`` with pair ``(x, y)`` encoded as ``x*n + y``."""

    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if len(self.table) != self.n * self.n:
            raise StructureError("pair map table must have n*n entries")

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return divmod(self.table[x * self.n + y], self.n)

    def compose(self, other: PairMap) -> PairMap:
        """``self o other``."""
        t = self.table
        return PairMap(self.n, tuple(t[v] for v in other.table))

    def is_identity(self) -> bool:
        return self.table == tuple(range(self.n * self.n))

    def is_bijective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def inverse(self) -> PairMap:
        if not self.is_bijective():
            raise DomainError("pair map is not bijective")
        inv = [0] * len(self.table)
        for i, v in enumerate(self.table):
            inv[v] = i
        return PairMap(self.n, tuple(inv))

    def decode(self, check: bool = True) -> Solution:
        """Read off ``(lam, rho)``; inverse of :func:`solution_as_pair_map`."""
        n = self.n
        lam = [[0] * n for _ in range(n)]
        rho = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                u, v = divmod(self.table[x * n + y], n)
                lam[x][y] = u
                rho[y][x] = v
        return Solution(lam, rho, check=check)


def solution_as_pair_map(S: Solution) -> PairMap:
    n = S.n
    lam, rho = S.lam, S.rho
    return PairMap(n, tuple(lam[x][y] * n + rho[y][x] for x in range(n) for y in range(n)))


def classify_solution(S: Solution) -> SolutionFlags:
    n = S.n
    lam, rho = S.lam, S.rho
    r = solution_as_pair_map(S).table
    rr = [r[v] for v in r]
    involutive = all(rr[i] == i for i in range(n * n))
    return SolutionFlags(
        bijective=len(set(r)) == n * n,
        involutive=involutive,
        idempotent=rr == list(r),
        left_nd=all(_is_perm(row) for row in lam),
        right_nd=all(_is_perm(row) for row in rho),
    )


def inverse_solution(S: Solution) -> Solution:
    """The solution whose pair map is the inverse of ``S``'s."""
    if not S.flags.bijective:
        raise DomainError("solution is not bijective")
    return solution_as_pair_map(S).inverse().decode(check=True)


def equivalent_via(S: Solution, T: Solution, phi: FiniteMap) -> bool:
    """Whether ``(phi x phi) r_S = r_T (phi x phi)``."""
    if S.n != T.n or phi.n != S.n:
        raise StructureError("sizes of S, T and phi must agree")
    if not phi.is_bijective():
        raise DomainError("phi is not bijective")
    p = phi.img
    for x in range(S.n):
        for y in range(S.n):
            if p[S.lam[x][y]] != T.lam[p[x]][p[y]]:
                return False
            if p[S.rho[y][x]] != T.rho[p[y]][p[x]]:
                return False
    return True


def relabel(S: Solution, phi: FiniteMap) -> Solution:
    """The solution ``(phi x phi) r (phi x phi)^-1``, equivalent to ``S`` via ``phi``."""
    if not phi.is_bijective():
        raise DomainError("phi is not bijective")
    n = S.n
    p = phi.img
    lam = [[0] * n for _ in range(n)]
    rho = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            lam[p[x]][p[y]] = p[S.lam[x][y]]
            rho[p[y]][p[x]] = p[S.rho[y][x]]
    return Solution.unchecked(lam, rho)


def flip_solution(n: int) -> Solution:
    """``r(x, y) = (y, x)``."""
    row = tuple(range(n))
    return Solution.unchecked((row,) * n, (row,) * n)


def identity_solution(n: int) -> Solution:
    """``r = id``: ``lambda_x(y) = x`` and ``rho_y(x) = y``."""
    return Solution.unchecked(tuple((x,) * n for x in range(n)), tuple((b,) * n for b in range(n)))


def is_flip(S: Solution) -> bool:
    ident = tuple(range(S.n))
    return all(row == ident for row in S.lam) and all(row == ident for row in S.rho)
