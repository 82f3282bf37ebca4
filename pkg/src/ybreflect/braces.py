"""Skew braces, their solutions, small-order enumeration, catalog files and the
reflection census over a catalog.
"""
from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .core import Solution, _as_table, is_flip
from .errors import DomainError, ResourceError, StructureError
from .groups import Group, group_automorphisms, group_witness, groups_of_order, identify_group, pushforward
from .reflections import ENUM_CAP, ReflectionCounts, count_reflections

#: Built-in enumeration cap.
BRACE_CAP = 6
#: Carrier size from which flip-equivalent census rows use the closed form n^n.
ANALYTIC_MIN = 8

CONVENTIONS = ("minus_first", "minus_last")


class IngestionError(StructureError):
    """A brace file entry failed validation."""


def compatibility_witness(add, mul) -> tuple[int, int, int] | None:
    """First ``(a, b, c)`` with ``a o (b + c) != (a o b) - a + (a o c)``."""
    n = len(add)
    zero = next(e for e in range(n) if add[e][e] == e)
    neg = [next(b for b in range(n) if add[a][b] == zero) for a in range(n)]
    for a in range(n):
        ma, na = mul[a], neg[a]
        for b in range(n):
            left = add[ma[b]][na]
            ab = add[b]
            for c in range(n):
                if ma[ab[c]] != add[left][ma[c]]:
                    return (a, b, c)
    return None


class SkewBrace:
    """Additive and multiplicative group tables on one carrier with a shared identity."""

    def __init__(self, add, mul, check: bool = True):
        self.add = _as_table(add, "add")
        self.mul = _as_table(mul, "mul")
        self.n = len(self.add)
        if len(self.mul) != self.n:
            raise StructureError("add and mul tables differ in size")
        if check:
            for name, table in (("add", self.add), ("mul", self.mul)):
                w = group_witness(table)
                if w is not None:
                    raise DomainError(f"{name} is not a group: {w[0]} fails at {w[1]}", witness=(name,) + w)
        self.A = Group(self.add)
        self.G = Group(self.mul)
        if self.A.identity != self.G.identity:
            raise DomainError("the two groups have different identities", witness=("identity",))
        if check:
            w = compatibility_witness(self.add, self.mul)
            if w is not None:
                raise DomainError(f"brace compatibility fails at {w}", witness=("compatibility", w))

    @property
    def zero(self) -> int:
        return self.A.identity

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewBrace) and (self.add, self.mul) == (other.add, other.mul)

    def __hash__(self) -> int:
        return hash((self.add, self.mul))

    def __repr__(self) -> str:
        return f"SkewBrace(n={self.n}, {self.A.name}, {self.G.name})"

    def is_trivial(self) -> bool:
        return self.add == self.mul

    def is_almost_trivial(self) -> bool:
        return all(self.mul[a][b] == self.add[b][a] for a in range(self.n) for b in range(self.n))

    def to_json(self, label: str = "") -> dict:
        return {"add": [list(r) for r in self.add], "mul": [list(r) for r in self.mul],
                "zero": self.zero, "label": label}


def trivial_brace(G: Group) -> SkewBrace:
    return SkewBrace(G.table, G.table)


def brace_solution(B: SkewBrace, convention: str = "minus_first") -> Solution:
    """``lambda_a(b) = -a + a o b`` (or ``a o b - a``), ``rho_b(a) = lambda_a(b)^-1 o a o b``."""
    if convention not in CONVENTIONS:
        raise StructureError(f"convention must be one of {CONVENTIONS}")
    n, add, mul = B.n, B.add, B.mul
    neg, minv = B.A.inverse, B.G.inverse
    if convention == "minus_first":
        lam = [[add[neg[a]][mul[a][b]] for b in range(n)] for a in range(n)]
    else:
        lam = [[add[mul[a][b]][neg[a]] for b in range(n)] for a in range(n)]
    rho = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            rho[b][a] = mul[mul[minv[lam[a][b]]][a]][b]
    return Solution(lam, rho)


# ---------------------------------------------------------------- enumeration

@dataclass(frozen=True)
class BraceCatalogEntry:
    order: int
    type_index: int
    brace: SkewBrace = field(compare=False)
    additive: str
    multiplicative: str
    provenance: str = "built_in"
    label: str = ""

    def to_json(self) -> dict:
        return self.brace.to_json(self.label or f"{self.order}:{self.type_index}")


def _canonical(mul, auts) -> tuple:
    return min(pushforward(mul, s.img) for s in auts)


def _make_entries(found: list[SkewBrace], provenance: str) -> list[BraceCatalogEntry]:
    return [
        BraceCatalogEntry(B.n, i + 1, B, B.A.name, B.G.name, provenance)
        for i, B in enumerate(found)
    ]


def enumerate_skew_braces(n: int) -> list[BraceCatalogEntry]:
    """All skew braces of order ``n <= 6`` up to isomorphism.

    Each multiplicative group is transported onto each canonical additive
    table along every bijection fixing zero; compatible results are reduced
    modulo the additive automorphisms.
    """
    if n > BRACE_CAP:
        raise ResourceError(f"built-in brace enumeration is capped at n <= {BRACE_CAP}; ingest a brace file instead")
    if n < 1:
        raise StructureError("order must be positive")
    found: list[SkewBrace] = []
    groups = groups_of_order(n)
    for A in groups:
        auts = group_automorphisms(A)
        seen: dict[tuple, SkewBrace] = {}
        for G in groups:
            for rest in itertools.permutations(range(1, n)):
                pi = (0,) + rest
                mul = pushforward(G.table, pi)
                if compatibility_witness(A.table, mul) is not None:
                    continue
                key = _canonical(mul, auts)
                if key not in seen:
                    seen[key] = SkewBrace(A.table, key, check=False)
        found.extend(seen[k] for k in sorted(seen, key=lambda k: (identify_group(Group(k)), k)))
    return _make_entries(found, "built_in")


def regular_subgroup_braces(A: Group) -> list[SkewBrace]:
    """Skew braces with additive group ``A`` via maps ``lambda: A -> Aut(A)`` with
    ``lambda_{a + lambda_a(b)} = lambda_a lambda_b``; then ``a o b = a + lambda_a(b)``.
    Results are reduced modulo Aut(A) and sorted.
    """
    n, add = A.n, A.table
    zero = A.identity
    auts = [s.img for s in group_automorphisms(A)]
    ident = tuple(range(n))

    def comp(f, g):
        return tuple(f[g[x]] for x in range(n))

    def propagate(lam):
        changed = True
        while changed:
            changed = False
            for a in range(n):
                la = lam[a]
                if la is None:
                    continue
                for b in range(n):
                    lb = lam[b]
                    if lb is None:
                        continue
                    c = add[a][la[b]]
                    v = comp(la, lb)
                    if lam[c] is None:
                        lam[c] = v
                        changed = True
                    elif lam[c] != v:
                        return False
        return True

    solutions = set()

    def dfs(lam):
        if not propagate(lam):
            return
        try:
            a = lam.index(None)
        except ValueError:
            solutions.add(tuple(lam))
            return
        for s in auts:
            nxt = list(lam)
            nxt[a] = s
            dfs(nxt)

    start = [None] * n
    start[zero] = ident
    dfs(start)

    inv = {s: tuple(sorted(range(n), key=lambda x: s[x])) for s in auts}
    canon = set()
    for lam in solutions:
        forms = []
        for s in auts:
            si = inv[s]
            forms.append(tuple(comp(comp(s, lam[si[a]]), si) for a in range(n)))
        canon.add(min(forms))
    braces = []
    for lam in canon:
        mul = [[add[a][lam[a][b]] for b in range(n)] for a in range(n)]
        braces.append(SkewBrace(add, mul))
    braces.sort(key=lambda B: (B.G.name, B.mul))
    return braces


def builtin_catalog(n: int) -> list[BraceCatalogEntry]:
    """Catalog used by the tables: enumerated for ``n <= 6``, the trivial brace for prime ``n``."""
    if n <= BRACE_CAP:
        return enumerate_skew_braces(n)
    if all(n % p for p in range(2, int(math.isqrt(n)) + 1)):
        # every skew brace of prime order is trivial
        return _make_entries([trivial_brace(groups_of_order(n)[0])], "built_in")
    raise ResourceError(f"no built-in braces of order {n}; ingest a brace file")


# ---------------------------------------------------------------- files

def export_braces(entries: list[BraceCatalogEntry]) -> dict:
    orders = {e.order for e in entries}
    if len(orders) > 1:
        raise StructureError("a brace file holds a single order")
    return {"order": orders.pop() if orders else 0, "entries": [e.to_json() for e in entries]}


def ingest_braces(source) -> list[BraceCatalogEntry]:
    """Load and validate a brace file (path, JSON text or parsed dict)."""
    if isinstance(source, (str, Path)) and not str(source).lstrip().startswith("{"):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise IngestionError(f"cannot read brace file: {exc}") from None
    elif isinstance(source, dict):
        text = None
        data = source
    else:
        text = str(source)
    if text is not None:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise IngestionError(f"brace file is not JSON: {exc}") from None
    if not isinstance(data, dict) or "entries" not in data or not isinstance(data["entries"], list):
        raise IngestionError("brace file needs an 'entries' list")
    order = data.get("order")
    out = []
    for i, item in enumerate(data["entries"]):
        try:
            B = SkewBrace(item["add"], item["mul"])
        except (KeyError, TypeError) as exc:
            raise IngestionError(f"entry {i}: missing or malformed field {exc}") from None
        except (DomainError, StructureError) as exc:
            raise IngestionError(f"entry {i}: {exc}") from None
        if order is not None and B.n != order:
            raise IngestionError(f"entry {i}: order {B.n} differs from file order {order}")
        if "zero" in item and item["zero"] != B.zero:
            raise IngestionError(f"entry {i}: declared zero {item['zero']} is not the identity {B.zero}")
        out.append(BraceCatalogEntry(B.n, i + 1, B, B.A.name, B.G.name, "ingested", item.get("label", "")))
    return out


def packaged_catalog(order: int) -> list[BraceCatalogEntry]:
    """Brace file shipped with the package for ``order`` (currently 8)."""
    ref = resources.files("ybreflect") / "data" / f"braces_order{order}.json"
    if not ref.is_file():
        raise ResourceError(f"no brace file for order {order}; pass one with --braces")
    return ingest_braces(ref.read_text())


# ---------------------------------------------------------------- census

@dataclass(frozen=True)
class CensusRow:
    order: int
    type_index: int
    additive: str
    multiplicative: str
    counts: ReflectionCounts
    mode: str
    seconds: float
    trivial: bool = False
    almost_trivial: bool = False

    @property
    def signature(self) -> tuple:
        c = self.counts
        return (c.total, c.only_lambda_centralizing, c.only_rho_invariant, c.both,
                c.only_lambda_invariant, c.only_rho_centralizing, c.all_four)


def _census_row(args) -> CensusRow:
    entry, convention, analytic_min, cap, force = args
    B = entry.brace
    t0 = time.perf_counter()
    S = brace_solution(B, convention)
    if is_flip(S) and S.n >= analytic_min:
        counts, mode = ReflectionCounts.uniform(S.n ** S.n), "analytic"
    else:
        counts, mode = count_reflections(S, cap=cap, force=force, workers=1), "enumerated"
    return CensusRow(entry.order, entry.type_index, entry.additive, entry.multiplicative, counts, mode,
                     time.perf_counter() - t0, B.is_trivial(), B.is_almost_trivial())


def reflection_census(entries, convention: str = "minus_first", workers: int = 1,
                      analytic_min: int = ANALYTIC_MIN, cap: int = ENUM_CAP, force: bool = False) -> list[CensusRow]:
    """One census row per brace.  Flip-equivalent solutions on at least
    ``analytic_min`` points are counted by the closed form ``n^n``.
    """
    jobs = [(e, convention, analytic_min, cap, force) for e in entries]
    for e in entries:
        if e.order > cap and not force:
            raise ResourceError(f"order {e.order} exceeds the enumeration cap {cap}")
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_census_row, jobs))
    return [_census_row(j) for j in jobs]
