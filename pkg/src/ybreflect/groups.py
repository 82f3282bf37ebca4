"""Small finite groups as Cayley tables, plus naming and automorphisms.

Elements are ``0..n-1``; ``table[a][b]`` is the product ``a * b``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .core import FiniteMap, _as_table
from .errors import DomainError


def group_witness(table) -> tuple[str, tuple] | None:
    """First failed group axiom as ``(name, witness)``, or None."""
    n = len(table)
    rng = range(n)
    ids = [e for e in rng if all(table[e][x] == x and table[x][e] == x for x in rng)]
    if not ids:
        return ("identity", ())
    e = ids[0]
    for a in rng:
        if not any(table[a][b] == e for b in rng):
            return ("inverse", (a,))
    for a in rng:
        for b in rng:
            ab = table[a][b]
            for c in rng:
                if table[ab][c] != table[a][table[b][c]]:
                    return ("associativity", (a, b, c))
    return None


@dataclass(frozen=True, eq=False)
class Group:
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "table", _as_table(self.table, "group"))
        w = group_witness(self.table)
        if w is not None:
            raise DomainError(f"not a group: {w[0]} fails at {w[1]}", witness=w)

    def __eq__(self, other) -> bool:
        return isinstance(other, Group) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    @property
    def n(self) -> int:
        return len(self.table)

    @cached_property
    def identity(self) -> int:
        return next(e for e in range(self.n) if self.table[e][e] == e)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(b for b in range(self.n) if self.table[a][b] == e) for a in range(self.n))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def name(self) -> str:
        return identify_group(self)

    def automorphisms(self) -> list[FiniteMap]:
        return group_automorphisms(self)


def cyclic(n: int) -> Group:
    return Group(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def direct_product(G: Group, H: Group) -> Group:
    """Pairs ``(g, h)`` indexed as ``g * |H| + h``."""
    m = H.n
    return Group(tuple(
        tuple(G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(G.n * m))
        for a in range(G.n * m)
    ))


def dihedral_group(n: int) -> Group:
    """Dihedral group of order ``n`` (``n`` even): ``r^i s^j`` indexed ``2i + j``."""
    if n % 2 or n < 2:
        raise DomainError("dihedral group order must be even")
    m = n // 2

    def mult(x, y):
        i, j = divmod(x, 2)
        k, l = divmod(y, 2)
        # r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j+l)
        return ((i + (k if j == 0 else -k)) % m) * 2 + (j + l) % 2

    return Group(tuple(tuple(mult(x, y) for y in range(n)) for x in range(n)))


def quaternion_group() -> Group:
    """Q8 on ``1, -1, i, -i, j, -j, k, -k`` indexed 0..7."""
    units = ["1", "i", "j", "k"]
    table = {
        ("1", u): (1, u) for u in units
    }
    for u in units:
        table[(u, "1")] = (1, u)
    for u in "ijk":
        table[(u, u)] = (-1, "1")
    for a, b, c in (("i", "j", "k"), ("j", "k", "i"), ("k", "i", "j")):
        table[(a, b)] = (1, c)
        table[(b, a)] = (-1, c)

    def idx(sign, u):
        return units.index(u) * 2 + (0 if sign == 1 else 1)

    rows = []
    for x in range(8):
        ux, sx = units[x // 2], 1 - 2 * (x % 2)
        row = []
        for y in range(8):
            uy, sy = units[y // 2], 1 - 2 * (y % 2)
            s, u = table[(ux, uy)]
            row.append(idx(s * sx * sy, u))
        rows.append(tuple(row))
    return Group(tuple(rows))


def symmetric_group(k: int) -> Group:
    """Sym(k) with permutations in lexicographic order; product is ``(p*q)(i) = p(q(i))``."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    return Group(tuple(
        tuple(index[tuple(p[q[i]] for i in range(k))] for q in perms) for p in perms
    ))


def pushforward(table, pi) -> tuple[tuple[int, ...], ...]:
    """Table of the group transported along the bijection ``pi``."""
    n = len(table)
    inv = [0] * n
    for x, y in enumerate(pi):
        inv[y] = x
    return tuple(tuple(pi[table[inv[x]][inv[y]]] for y in range(n)) for x in range(n))


def _order_profile(G: Group) -> tuple:
    return tuple(sorted(Counter(G.element_order(a) for a in range(G.n)).items()))


def identify_group(G: Group) -> str:
    """ASCII name for groups of order at most 8; ``'G<n>'`` otherwise."""
    n = G.n
    profile = dict(_order_profile(G))
    if n in profile:
        return f"C{n}" if n > 1 else "C1"
    if n == 4:
        return "C2xC2"
    if n == 6:
        return "S3"
    if n == 8:
        if G.is_abelian():
            return "C4xC2" if 4 in profile else "C2xC2xC2"
        return "Q8" if profile.get(2, 0) == 1 else "D8"
    return f"G{n}"


def generating_set(G: Group) -> list[int]:
    """A small generating set, picked greedily by element order."""
    e = G.identity
    span = {e}
    gens: list[int] = []
    candidates = sorted(range(G.n), key=lambda a: -G.element_order(a))
    for a in candidates:
        if a in span:
            continue
        gens.append(a)
        frontier = list(span)
        span = set(span)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = G.table[x][g]
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        if len(span) == G.n:
            break
    return gens


def _extend_hom(G: Group, H: Group, gens, images) -> tuple[int, ...] | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism G -> H, or None."""
    img = {G.identity: H.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for g, h in zip(gens, images):
            y = G.table[x][g]
            v = H.table[img[x]][h]
            if y in img:
                if img[y] != v:
                    return None
            else:
                img[y] = v
                frontier.append(y)
    f = tuple(img[x] for x in range(G.n))
    for a in range(G.n):
        for b in range(G.n):
            if f[G.table[a][b]] != H.table[f[a]][f[b]]:
                return None
    return f


def group_automorphisms(G: Group) -> list[FiniteMap]:
    """Aut(G), found by mapping a generating set to elements of equal order."""
    gens = generating_set(G)
    choices = [[b for b in range(G.n) if G.element_order(b) == G.element_order(g)] for g in gens]
    out = set()
    for images in itertools.product(*choices):
        f = _extend_hom(G, G, gens, images)
        if f is not None and len(set(f)) == G.n:
            out.add(f)
    return [FiniteMap(f) for f in sorted(out)]


def isomorphism(G: Group, H: Group) -> FiniteMap | None:
    if G.n != H.n or _order_profile(G) != _order_profile(H):
        return None
    gens = generating_set(G)
    choices = [[b for b in range(H.n) if H.element_order(b) == G.element_order(g)] for g in gens]
    for images in itertools.product(*choices):
        f = _extend_hom(G, H, gens, images)
        if f is not None and len(set(f)) == G.n:
            return FiniteMap(f)
    return None


def groups_of_order(n: int) -> list[Group]:
    """Canonical representatives of every group of order ``n <= 8``."""
    catalog = {
        1: [cyclic(1)],
        2: [cyclic(2)],
        3: [cyclic(3)],
        4: [cyclic(4), direct_product(cyclic(2), cyclic(2))],
        5: [cyclic(5)],
        6: [cyclic(6), symmetric_group(3)],
        7: [cyclic(7)],
        8: [
            cyclic(8),
            direct_product(cyclic(4), cyclic(2)),
            direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
            dihedral_group(8),
            quaternion_group(),
        ],
    }
    if n not in catalog:
        raise DomainError(f"no group catalog for order {n}")
    return catalog[n]


_NAMED = {
    "S3": lambda: symmetric_group(3),
    "D8": lambda: dihedral_group(8),
    "Q8": quaternion_group,
    "C2xC2": lambda: direct_product(cyclic(2), cyclic(2)),
    "C4xC2": lambda: direct_product(cyclic(4), cyclic(2)),
    "C2xC2xC2": lambda: direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
}


def named_group(name: str) -> Group:
    if name in _NAMED:
        return _NAMED[name]()
    if name.startswith("C") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    raise DomainError(f"unknown group name {name!r}")
