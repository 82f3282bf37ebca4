"""Reflections of finite solutions: checking, enumeration, classification and
the shortcut criteria that hold under extra hypotheses on the solution.

A map ``kappa`` is a reflection of ``(X, r)`` when, for all ``x, y``::

    (T)  t(x, kappa(y)) = t(x, y)            t(x, y) = lambda_{lambda_x(y)} kappa rho_y(x)
    (Q)  q(x, kappa(y)) = kappa(q(x, y))     q(x, y) = rho_{kappa rho_y(x)} lambda_x(y)
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _search
from .core import FiniteMap, Solution
from .errors import DomainError, ResourceError, StructureError
from .shelves import derived_left_shelf, derived_right_shelf

#: Default carrier-size cap for exhaustive enumeration.
ENUM_CAP = 8
#: The n^n brute-force scan refuses carriers larger than this.
BRUTE_CAP = 6


def _check_size(S: Solution, kappa: FiniteMap):
    if kappa.n != S.n:
        raise StructureError(f"map has carrier size {kappa.n}, solution has {S.n}")


def _t(S: Solution, k, x: int, y: int) -> int:
    return S.lam[S.lam[x][y]][k[S.rho[y][x]]]


def _q(S: Solution, k, x: int, y: int) -> int:
    return S.rho[k[S.rho[y][x]]][S.lam[x][y]]


def holds_T(S: Solution, kappa: FiniteMap) -> bool:
    _check_size(S, kappa)
    k = kappa.img
    rng = range(S.n)
    return all(_t(S, k, x, k[y]) == _t(S, k, x, y) for x in rng for y in rng)


def holds_Q(S: Solution, kappa: FiniteMap) -> bool:
    _check_size(S, kappa)
    k = kappa.img
    rng = range(S.n)
    return all(_q(S, k, x, k[y]) == k[_q(S, k, x, y)] for x in rng for y in rng)


def is_reflection(S: Solution, kappa: FiniteMap) -> bool:
    """(T) and (Q) for every pair."""
    _check_size(S, kappa)
    k = kappa.img
    for x in range(S.n):
        for y in range(S.n):
            ky = k[y]
            if _t(S, k, x, ky) != _t(S, k, x, y):
                return False
            if _q(S, k, x, ky) != k[_q(S, k, x, y)]:
                return False
    return True


# ---------------------------------------------------------------- classification

def is_lambda_centralizing(S: Solution, kappa: FiniteMap) -> bool:
    k, lam = kappa.img, S.lam
    return all(lam[x][k[y]] == k[lam[x][y]] for x in range(S.n) for y in range(S.n))


def is_rho_centralizing(S: Solution, kappa: FiniteMap) -> bool:
    k, rho = kappa.img, S.rho
    return all(rho[x][k[y]] == k[rho[x][y]] for x in range(S.n) for y in range(S.n))


def is_rho_invariant(S: Solution, kappa: FiniteMap) -> bool:
    return all(S.rho[kappa.img[x]] == S.rho[x] for x in range(S.n))


def is_lambda_invariant(S: Solution, kappa: FiniteMap) -> bool:
    return all(S.lam[kappa.img[x]] == S.lam[x] for x in range(S.n))


@dataclass(frozen=True)
class ReflectionFlags:
    lambda_centralizing: bool
    rho_invariant: bool
    lambda_invariant: bool
    rho_centralizing: bool
    bijective: bool
    involutive: bool
    idempotent: bool

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


@dataclass(frozen=True)
class ReflectionRecord:
    kappa: FiniteMap
    flags: ReflectionFlags

    def to_json(self) -> dict:
        return {"img": list(self.kappa.img), "flags": self.flags.as_dict()}


def _flags_from_bits(kappa: FiniteMap, bits: int) -> ReflectionFlags:
    return ReflectionFlags(
        lambda_centralizing=bool(bits & _search.LC),
        rho_invariant=bool(bits & _search.RI),
        lambda_invariant=bool(bits & _search.LI),
        rho_centralizing=bool(bits & _search.RC),
        bijective=kappa.is_bijective(),
        involutive=kappa.is_involutive(),
        idempotent=kappa.is_idempotent(),
    )


def _bits(flags: ReflectionFlags) -> int:
    return (
        _search.LC * flags.lambda_centralizing
        | _search.RI * flags.rho_invariant
        | _search.LI * flags.lambda_invariant
        | _search.RC * flags.rho_centralizing
    )


def classify_reflection(S: Solution, kappa: FiniteMap) -> ReflectionRecord:
    """All seven flags by direct table comparison; reflectionhood is not required."""
    _check_size(S, kappa)
    return ReflectionRecord(
        kappa,
        ReflectionFlags(
            lambda_centralizing=is_lambda_centralizing(S, kappa),
            rho_invariant=is_rho_invariant(S, kappa),
            lambda_invariant=is_lambda_invariant(S, kappa),
            rho_centralizing=is_rho_centralizing(S, kappa),
            bijective=kappa.is_bijective(),
            involutive=kappa.is_involutive(),
            idempotent=kappa.is_idempotent(),
        ),
    )


# ---------------------------------------------------------------- counting

@dataclass(frozen=True)
class ReflectionCounts:
    """Census columns.

    ``only_lambda_centralizing`` / ``only_rho_invariant`` exclude each other only;
    ``only_lambda_invariant`` / ``only_rho_centralizing`` carry that single flag
    and none of the other three.
    """

    total: int
    only_lambda_centralizing: int
    only_rho_invariant: int
    both: int
    only_lambda_invariant: int
    only_rho_centralizing: int
    all_four: int

    @classmethod
    def from_bins(cls, bins: Sequence[int]) -> ReflectionCounts:
        def count(pred):
            return int(sum(c for b, c in enumerate(bins) if pred(b)))

        LC, RI, LI, RC = _search.LC, _search.RI, _search.LI, _search.RC
        return cls(
            total=count(lambda b: True),
            only_lambda_centralizing=count(lambda b: b & LC and not b & RI),
            only_rho_invariant=count(lambda b: b & RI and not b & LC),
            both=count(lambda b: b & LC and b & RI),
            only_lambda_invariant=count(lambda b: b == LI),
            only_rho_centralizing=count(lambda b: b == RC),
            all_four=count(lambda b: b == LC | RI | LI | RC),
        )

    @classmethod
    def uniform(cls, total: int) -> ReflectionCounts:
        """Every reflection carries all four flags."""
        return cls(total, 0, 0, total, 0, 0, total)

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


@dataclass(frozen=True)
class ReflectionSet:
    solution: Solution
    records: tuple[ReflectionRecord, ...]
    counts: ReflectionCounts

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def maps(self) -> list[FiniteMap]:
        return [rec.kappa for rec in self.records]

    def strings(self, one_based: bool = True) -> list[str]:
        return [rec.kappa.to_string(one_based) for rec in self.records]

    @classmethod
    def from_records(cls, S: Solution, records: Iterable[ReflectionRecord]) -> ReflectionSet:
        recs = tuple(sorted(records, key=lambda r: r.kappa.img))
        bins = [0] * 16
        for rec in recs:
            bins[_bits(rec.flags)] += 1
        return cls(S, recs, ReflectionCounts.from_bins(bins))

    def to_json(self) -> dict:
        c = self.counts
        return {
            "solution": self.solution.to_json(),
            "total": c.total,
            "only_lambda_centralizing": c.only_lambda_centralizing,
            "only_rho_invariant": c.only_rho_invariant,
            "both": c.both,
            "only_lambda_invariant": c.only_lambda_invariant,
            "only_rho_centralizing": c.only_rho_centralizing,
            "all_four": c.all_four,
            "reflections": [rec.to_json() for rec in self.records],
        }

    @classmethod
    def from_json(cls, data: dict) -> ReflectionSet:
        S = Solution.from_json(data["solution"])
        records = []
        for item in data["reflections"]:
            kappa = FiniteMap(tuple(item["img"]))
            records.append(ReflectionRecord(kappa, ReflectionFlags(**item["flags"])))
        out = cls.from_records(S, records)
        declared = {k: data[k] for k in ReflectionCounts.__dataclass_fields__ if k in data}
        if declared and declared != out.counts.as_dict():
            raise StructureError("ReflectionSet JSON counts disagree with its records")
        return out


# ---------------------------------------------------------------- enumeration

def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("YBREFLECT_WORKERS", "1")))
    except ValueError:
        return 1


def _run_search(S: Solution, collect: bool, workers: int, bijective: bool = False):
    lam, rho = S.arrays
    lam_cls = _search.row_classes(S.lam)
    rho_cls = _search.row_classes(S.rho)
    n = S.n

    def branch(first: int):
        size = 4096 if collect else 0
        while True:
            bins = np.zeros(16, dtype=np.int64)
            out = np.empty((size, n), dtype=np.int64)
            out_bits = np.empty(size, dtype=np.int64)
            total = _search.search(lam, rho, lam_cls, rho_cls, first, bijective, bins, out, out_bits)
            if total <= size or not collect:
                return bins, out[:total], out_bits[:total]
            size = total

    if workers > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(branch, range(n)))
    else:
        parts = [branch(-1)]
    bins = sum(p[0] for p in parts)
    return bins, parts


def _cap_guard(S: Solution, cap: int, force: bool):
    if S.n > cap and not force:
        raise ResourceError(f"carrier size {S.n} exceeds the enumeration cap {cap}; pass force=True to override")


def enumerate_reflections(S: Solution, cap: int = ENUM_CAP, force: bool = False,
                          workers: int | None = None, bijective: bool = False) -> ReflectionSet:
    """Every reflection of ``S`` (only the bijective ones if ``bijective``),
    classified and sorted lexicographically.
    """
    _cap_guard(S, cap, force)
    bins, parts = _run_search(S, True, workers or default_workers(), bijective)
    records = []
    for _, maps, bits in parts:
        for img, b in zip(maps.tolist(), bits.tolist()):
            kappa = FiniteMap(tuple(img))
            records.append(ReflectionRecord(kappa, _flags_from_bits(kappa, b)))
    records.sort(key=lambda r: r.kappa.img)
    return ReflectionSet(S, tuple(records), ReflectionCounts.from_bins(bins.tolist()))


def count_reflections(S: Solution, cap: int = ENUM_CAP, force: bool = False,
                      workers: int | None = None, bijective: bool = False) -> ReflectionCounts:
    """Census counts without materialising the reflections."""
    _cap_guard(S, cap, force)
    bins, _ = _run_search(S, False, workers or default_workers(), bijective)
    return ReflectionCounts.from_bins(bins.tolist())


def all_maps(n: int):
    for img in itertools.product(range(n), repeat=n):
        yield FiniteMap(img)


def brute_force_reflections(S: Solution) -> ReflectionSet:
    """Scan all ``n^n`` maps with :func:`is_reflection` (small carriers only)."""
    if S.n > BRUTE_CAP:
        raise ResourceError(f"brute-force scan is capped at n <= {BRUTE_CAP}")
    return ReflectionSet.from_records(
        S, (classify_reflection(S, k) for k in all_maps(S.n) if is_reflection(S, k))
    )


# ---------------------------------------------------------------- shortcut criteria

def fastpath_lnd_lambda_centralizing(S: Solution, kappa: FiniteMap) -> bool:
    """Reflection test for a lambda-centralizing map on a left non-degenerate solution,
    through the derived left shelf::

        kappa L_x = kappa L_{kappa(x)}   and   kappa L_{L_x(y)}(x) = L_{kappa L_x(y)} kappa(x)
    """
    _check_size(S, kappa)
    if not S.flags.left_nd:
        raise DomainError("solution is not left non-degenerate")
    if not is_lambda_centralizing(S, kappa):
        raise DomainError("map is not lambda-centralizing")
    op = derived_left_shelf(S).op
    k = kappa.img
    rng = range(S.n)
    for x in rng:
        ox, okx = op[x], op[k[x]]
        for y in rng:
            if k[ox[y]] != k[okx[y]]:
                return False
            if k[op[ox[y]][x]] != op[k[ox[y]]][k[x]]:
                return False
    return True


def fastpath_rnd_rho_invariant(S: Solution, kappa: FiniteMap) -> bool:
    """Reflection test for a rho-invariant map on a right non-degenerate solution:
    ``kappa`` must commute with every right multiplication of the derived right shelf.
    """
    _check_size(S, kappa)
    if not S.flags.right_nd:
        raise DomainError("solution is not right non-degenerate")
    if not is_rho_invariant(S, kappa):
        raise DomainError("map is not rho-invariant")
    op = derived_right_shelf(S).op
    k = kappa.img
    rng = range(S.n)
    return all(k[op[y][x]] == op[k[y]][x] for x in rng for y in rng)


def fastpath_involutive(S: Solution, kappa: FiniteMap, side: str | None = None) -> bool:
    """For involutive solutions one of (T), (Q) suffices: (T) when left
    non-degenerate, (Q) when right non-degenerate.
    """
    _check_size(S, kappa)
    f = S.flags
    if not f.involutive:
        raise DomainError("solution is not involutive")
    if side is None:
        side = "left" if f.left_nd else "right" if f.right_nd else None
    if side == "left" and f.left_nd:
        return holds_T(S, kappa)
    if side == "right" and f.right_nd:
        return holds_Q(S, kappa)
    raise DomainError(f"solution is not {side or 'left or right'} non-degenerate")


def sufficient_involutive_lambda(S: Solution, kappa: FiniteMap, side: str = "left") -> bool:
    """Sufficient condition for a rho-invariant reflection of an involutive solution.

    ``side='left'``: ``lambda_{lambda_x kappa(y)} = lambda_{lambda_x(y)}``;
    ``side='right'``: ``rho_{rho_x kappa(y)} = rho_{rho_x(y)}``.
    """
    _check_size(S, kappa)
    f = S.flags
    if not f.involutive:
        raise DomainError("solution is not involutive")
    table = S.lam if side == "left" else S.rho
    if not (f.left_nd if side == "left" else f.right_nd):
        raise DomainError(f"solution is not {side} non-degenerate")
    k = kappa.img
    rng = range(S.n)
    return all(table[table[x][k[y]]] == table[table[x][y]] for x in rng for y in rng)


_SANDWICH_PROPS = (
    ("lambda-centralizing", is_lambda_centralizing),
    ("rho-centralizing", is_rho_centralizing),
    ("lambda-invariant", is_lambda_invariant),
    ("rho-invariant", is_rho_invariant),
)


def sandwich(S: Solution, phi: FiniteMap, kappa: FiniteMap, psi: FiniteMap) -> FiniteMap:
    """``phi o kappa o psi``, a reflection whenever ``kappa`` is one and ``phi``, ``psi``
    are lambda/rho-centralizing and lambda/rho-invariant.
    """
    for m in (phi, kappa, psi):
        _check_size(S, m)
    if not is_reflection(S, kappa):
        raise DomainError("kappa is not a reflection", witness="kappa")
    for name, m in (("phi", phi), ("psi", psi)):
        for prop, test in _SANDWICH_PROPS:
            if not test(S, m):
                raise DomainError(f"{name} is not {prop}", witness=(name, prop))
    return phi.compose(kappa).compose(psi)


# ---------------------------------------------------------------- retraction

def _require_involutive_nd(S: Solution):
    f = S.flags
    if not (f.involutive and f.left_nd and f.right_nd):
        raise DomainError("solution must be involutive and non-degenerate")


def retraction_classes(S: Solution) -> tuple[int, ...]:
    """Class index of each element under ``x ~ y <=> lambda_x = lambda_y``,
    classes numbered by first appearance.
    """
    seen: dict[tuple[int, ...], int] = {}
    return tuple(seen.setdefault(row, len(seen)) for row in S.lam)


def retract_solution(S: Solution) -> tuple[Solution, tuple[int, ...]]:
    """The induced solution on the retraction classes, with the class map."""
    _require_involutive_nd(S)
    cls = retraction_classes(S)
    m = max(cls) + 1
    lam = [[None] * m for _ in range(m)]
    rho = [[None] * m for _ in range(m)]
    for x in range(S.n):
        for y in range(S.n):
            for out, i, j, v in ((lam, cls[x], cls[y], cls[S.lam[x][y]]),
                                 (rho, cls[y], cls[x], cls[S.rho[y][x]])):
                if out[i][j] is None:
                    out[i][j] = v
                elif out[i][j] != v:
                    raise RuntimeError(f"retraction not well defined at ({x}, {y})")
    return Solution(lam, rho), cls


def induced_reflection(S: Solution, kappa: FiniteMap) -> FiniteMap:
    """``[x] -> [kappa(x)]`` on the retract, for a rho-invariant reflection ``kappa``."""
    _require_involutive_nd(S)
    if not (is_rho_invariant(S, kappa) and is_reflection(S, kappa)):
        raise DomainError("kappa must be a rho-invariant reflection")
    cls = retraction_classes(S)
    img: dict[int, int] = {}
    for x in range(S.n):
        v = cls[kappa.img[x]]
        if img.setdefault(cls[x], v) != v:
            raise DomainError("kappa does not respect the retraction classes", witness=x)
    return FiniteMap(tuple(img[i] for i in range(len(img))))


def class_preserving_reflections(S: Solution) -> ReflectionSet:
    """All maps with ``kappa(x) ~ x``; these are exactly the rho-invariant reflections."""
    _require_involutive_nd(S)
    cls = retraction_classes(S)
    members: dict[int, list[int]] = {}
    for x, c in enumerate(cls):
        members.setdefault(c, []).append(x)
    choices = [members[c] for c in cls]
    return ReflectionSet.from_records(
        S, (classify_reflection(S, FiniteMap(img)) for img in itertools.product(*choices))
    )
