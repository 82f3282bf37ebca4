"""Building solutions, and reflections on them, out of smaller pieces.

Carrier layouts: a product ``S x T`` indexes ``(a, u)`` as ``a * |T| + u``;
a disjoint union lists the first part's points before the second's.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import FiniteMap, Solution
from .errors import DomainError, ResourceError, StructureError
from .reflections import BRUTE_CAP, all_maps, is_reflection
from .shelves import Shelf, solution_from_shelf


def _maps(n: int, family: Sequence, what: str, count: int) -> tuple[FiniteMap, ...]:
    out = tuple(m if isinstance(m, FiniteMap) else FiniteMap(tuple(m)) for m in family)
    if len(out) != count:
        raise StructureError(f"{what} needs {count} maps, got {len(out)}")
    for i, m in enumerate(out):
        if m.n != n:
            raise StructureError(f"{what}[{i}] acts on {m.n} points, expected {n}")
        if not m.is_bijective():
            raise DomainError(f"{what}[{i}] is not a permutation", witness=(what, i))
    return out


# ---------------------------------------------------------------- matched product

@dataclass(frozen=True)
class MatchedSystem:
    """``alpha[u]`` permutes S's carrier for each ``u`` in T; ``beta[a]`` permutes T's."""

    S: Solution
    T: Solution
    alpha: tuple[FiniteMap, ...]
    beta: tuple[FiniteMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", _maps(self.S.n, self.alpha, "alpha", self.T.n))
        object.__setattr__(self, "beta", _maps(self.T.n, self.beta, "beta", self.S.n))
        w = matched_witness(self)
        if w is not None:
            raise DomainError(f"matched product condition {w[0]} fails at {w[1]}", witness=w)


def matched_witness(M: MatchedSystem) -> tuple[str, tuple] | None:
    """First failing condition among (s1)..(s6) with its arguments."""
    S, T = M.S, M.T
    al = [m.img for m in M.alpha]
    be = [m.img for m in M.beta]
    ali = [m.inverse().img for m in M.alpha]
    bei = [m.inverse().img for m in M.beta]
    lS, rS, lT, rT = S.lam, S.rho, T.lam, T.rho
    Srng, Trng = range(S.n), range(T.n)

    for u in Trng:
        for v in Trng:
            p, q = al[lT[u][v]], al[rT[v][u]]
            if any(al[u][al[v][x]] != p[q[x]] for x in Srng):
                return ("s1", (u, v))
    for a in Srng:
        for b in Srng:
            p, q = be[lS[a][b]], be[rS[b][a]]
            if any(be[a][be[b][x]] != p[q[x]] for x in Trng):
                return ("s2", (a, b))
    for a in Srng:
        for b in Srng:
            rba = rS[b][a]
            for u in Trng:
                lhs = rS[ali[u][b]][ali[be[a][u]][a]]
                rhs = ali[be[rba][bei[b][u]]][rba]
                if lhs != rhs:
                    return ("s3", (a, b, u))
    for u in Trng:
        for v in Trng:
            rvu = rT[v][u]
            for a in Srng:
                lhs = rT[bei[a][v]][bei[al[u][a]][u]]
                rhs = bei[al[rvu][ali[v][a]]][rvu]
                if lhs != rhs:
                    return ("s4", (u, v, a))
    for a in Srng:
        for u in Trng:
            f = al[bei[a][u]]
            g = lS[ali[u][a]]
            if any(lS[a][f[x]] != al[u][g[x]] for x in Srng):
                return ("s5", (a, u))
    for a in Srng:
        for u in Trng:
            f = be[ali[u][a]]
            g = lT[bei[a][u]]
            if any(lT[u][f[y]] != be[a][g[y]] for y in Trng):
                return ("s6", (a, u))
    return None


def matched_product(M: MatchedSystem) -> Solution:
    S, T = M.S, M.T
    m, N = T.n, S.n * T.n
    al = [f.img for f in M.alpha]
    be = [f.img for f in M.beta]
    ali = [f.inverse().img for f in M.alpha]
    bei = [f.inverse().img for f in M.beta]
    lam = [[0] * N for _ in range(N)]
    rho = [[0] * N for _ in range(N)]
    for a, u in itertools.product(range(S.n), range(m)):
        abar, ubar = ali[u][a], bei[a][u]
        for b, v in itertools.product(range(S.n), range(m)):
            A = al[u][S.lam[abar][b]]
            U = be[a][T.lam[ubar][v]]
            Abar, Ubar = ali[U][A], bei[A][U]
            left = ali[Ubar][S.rho[al[ubar][b]][a]]
            right = bei[Abar][T.rho[be[abar][v]][u]]
            lam[a * m + u][b * m + v] = A * m + U
            rho[b * m + v][a * m + u] = left * m + right
    return Solution(lam, rho)


def product_map(kappa: FiniteMap, omega: FiniteMap) -> FiniteMap:
    m = omega.n
    return FiniteMap(tuple(kappa.img[a] * m + omega.img[u] for a in range(kappa.n) for u in range(m)))


def condition_M(M: MatchedSystem, kappa: FiniteMap, omega: FiniteMap) -> bool:
    return all(a.commutes_with(kappa) for a in M.alpha) and all(b.commutes_with(omega) for b in M.beta)


def matched_reflection(M: MatchedSystem, kappa: FiniteMap, omega: FiniteMap) -> FiniteMap:
    """``kappa x omega``; it is a reflection exactly when both factors are."""
    if kappa.n != M.S.n or omega.n != M.T.n:
        raise StructureError("map sizes do not match the system")
    if not condition_M(M, kappa, omega):
        raise DomainError("alpha must commute with kappa and beta with omega")
    return product_map(kappa, omega)


# ---------------------------------------------------------------- strong semilattice

class ConditionSWarning(UserWarning):
    """Raised when (S) holds as literally stated but fails on general pairs."""


def _check_semilattice(meet) -> None:
    k = len(meet)
    rng = range(k)
    for a in rng:
        if meet[a][a] != a:
            raise DomainError(f"meet table is not idempotent at {a}", witness=(a,))
        for b in rng:
            if meet[a][b] != meet[b][a]:
                raise DomainError(f"meet table is not commutative at {(a, b)}", witness=(a, b))
            for c in rng:
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    raise DomainError(f"meet table is not associative at {(a, b, c)}", witness=(a, b, c))


@dataclass(frozen=True)
class SemilatticeSystem:
    """``meet[a][b]`` is the meet in Y; ``phi[(a, b)]`` maps part ``a`` into part ``b`` for ``a >= b``."""

    meet: tuple[tuple[int, ...], ...]
    parts: tuple[Solution, ...]
    phi: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        meet = tuple(tuple(int(v) for v in row) for row in self.meet)
        k = len(meet)
        if any(len(row) != k or any(not 0 <= v < k for v in row) for row in meet):
            raise StructureError("meet table must be square with entries in range")
        if len(self.parts) != k:
            raise StructureError(f"{k} semilattice elements but {len(self.parts)} parts")
        _check_semilattice(meet)
        phi = {}
        for a in range(k):
            for b in range(k):
                if meet[a][b] != b:
                    continue
                m = self.phi.get((a, b))
                if m is None:
                    if a != b:
                        raise StructureError(f"missing transition map phi[{a},{b}]")
                    m = tuple(range(self.parts[a].n))
                m = tuple(m.img if isinstance(m, FiniteMap) else m)
                if len(m) != self.parts[a].n or any(not 0 <= v < self.parts[b].n for v in m):
                    raise StructureError(f"phi[{a},{b}] has the wrong shape")
                phi[(a, b)] = m
        object.__setattr__(self, "meet", meet)
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "phi", phi)
        w = semilattice_witness(self)
        if w is not None:
            raise DomainError(f"semilattice condition {w[0]} fails at {w[1]}", witness=w)

    @property
    def offsets(self) -> list[int]:
        out, acc = [], 0
        for P in self.parts:
            out.append(acc)
            acc += P.n
        return out

    def above(self, a: int, b: int) -> bool:
        return self.meet[a][b] == b


def semilattice_witness(sig: SemilatticeSystem) -> tuple[str, tuple] | None:
    k = len(sig.meet)
    phi = sig.phi
    for a in range(k):
        if phi[(a, a)] != tuple(range(sig.parts[a].n)):
            return ("identity", (a,))
    for a, b, c in itertools.product(range(k), repeat=3):
        if sig.above(a, b) and sig.above(b, c):
            f, g, h = phi[(a, b)], phi[(b, c)], phi[(a, c)]
            if any(g[f[x]] != h[x] for x in range(len(f))):
                return ("composition", (a, b, c))
    for (a, b), f in phi.items():
        Pa, Pb = sig.parts[a], sig.parts[b]
        for x in range(Pa.n):
            for y in range(Pa.n):
                if (f[Pa.lam[x][y]], f[Pa.rho[y][x]]) != Pb.r(f[x], f[y]):
                    return ("intertwining", (a, b, x, y))
    return None


def strong_semilattice(sig: SemilatticeSystem) -> Solution:
    offs = sig.offsets
    where = [(a, i) for a, P in enumerate(sig.parts) for i in range(P.n)]
    N = len(where)
    lam = [[0] * N for _ in range(N)]
    rho = [[0] * N for _ in range(N)]
    for x, (a, i) in enumerate(where):
        for y, (b, j) in enumerate(where):
            c = sig.meet[a][b]
            fi, fj = sig.phi[(a, c)][i], sig.phi[(b, c)][j]
            P = sig.parts[c]
            lam[x][y] = offs[c] + P.lam[fi][fj]
            rho[y][x] = offs[c] + P.rho[fj][fi]
    return Solution(lam, rho)


def glue(offsets: Sequence[int], maps: Sequence[FiniteMap]) -> FiniteMap:
    return FiniteMap(tuple(off + v for off, m in zip(offsets, maps) for v in m.img))


def condition_S_witness(sig: SemilatticeSystem, kappas: Sequence[FiniteMap]) -> tuple | None:
    """(S) over every pair: ``phi[b, ab] kappa_b = kappa_ab phi[b, ab]`` for all ``a, b``."""
    k = len(sig.meet)
    for a, b in itertools.product(range(k), repeat=2):
        c = sig.meet[a][b]
        f = sig.phi[(b, c)]
        for x in range(len(f)):
            if f[kappas[b].img[x]] != kappas[c].img[f[x]]:
                return (a, b, x)
    return None


def condition_S_literal_witness(sig: SemilatticeSystem, kappas: Sequence[FiniteMap]) -> tuple | None:
    """(S) restricted to pairs with ``a >= b``, where it reduces to a tautology."""
    k = len(sig.meet)
    for a, b in itertools.product(range(k), repeat=2):
        if not sig.above(a, b):
            continue
        c = sig.meet[a][b]
        f = sig.phi[(b, c)]
        for x in range(len(f)):
            if f[kappas[b].img[x]] != kappas[c].img[f[x]]:
                return (a, b, x)
    return None


def semilattice_reflection(sig: SemilatticeSystem, kappas: Sequence[FiniteMap]) -> FiniteMap:
    """Glue per-part reflections.  A :class:`ConditionSWarning` is issued when
    (S) fails on some general pair; the glued map is then not expected to be a reflection.
    """
    if len(kappas) != len(sig.parts):
        raise StructureError("one map per semilattice element is required")
    for a, (P, kap) in enumerate(zip(sig.parts, kappas)):
        if kap.n != P.n:
            raise StructureError(f"kappa[{a}] has the wrong size")
        if not is_reflection(P, kap):
            raise DomainError(f"kappa[{a}] is not a reflection of its part", witness=a)
    w = condition_S_witness(sig, kappas)
    if w is not None and condition_S_literal_witness(sig, kappas) is None:
        warnings.warn(f"condition (S) holds for comparable pairs only; fails at {w}", ConditionSWarning, stacklevel=2)
    return glue(sig.offsets, kappas)


# ---------------------------------------------------------------- twisted union

TWISTED_IDENTITIES = (
    "alpha f = f alpha",
    "g beta = beta g",
    "(f x f) u = u (f x f)",
    "(g x g) v = v (g x g)",
    "(alpha x alpha) u = u (alpha x alpha)",
    "(beta x beta) v = v (beta x beta)",
    "alpha lambda_f(x) = lambda_x alpha",
    "beta rho_g(y) = rho_y beta",
    "f rho_alpha(x) = rho_x f",
    "g lambda_beta(y) = lambda_y g",
)


def _intertwines(h: FiniteMap, S: Solution) -> bool:
    k = h.img
    return all(S.r(k[x], k[y]) == (k[S.lam[x][y]], k[S.rho[y][x]]) for x in range(S.n) for y in range(S.n))


@dataclass(frozen=True)
class TwistedSystem:
    U: Solution
    V: Solution
    f: FiniteMap
    alpha: FiniteMap
    g: FiniteMap
    beta: FiniteMap

    def __post_init__(self):
        for name, m, n in (("f", self.f, self.U.n), ("alpha", self.alpha, self.U.n),
                           ("g", self.g, self.V.n), ("beta", self.beta, self.V.n)):
            if m.n != n:
                raise StructureError(f"{name} acts on {m.n} points, expected {n}")
        i = twisted_witness(self)
        if i is not None:
            raise DomainError(f"twisted union identity fails: {TWISTED_IDENTITIES[i]}", witness=TWISTED_IDENTITIES[i])


def twisted_witness(W: TwistedSystem) -> int | None:
    """Index of the first failing identity in :data:`TWISTED_IDENTITIES`."""
    U, V = W.U, W.V
    f, al, g, be = W.f, W.alpha, W.g, W.beta
    X, Y = range(U.n), range(V.n)
    checks = (
        lambda: al.commutes_with(f),
        lambda: g.commutes_with(be),
        lambda: _intertwines(f, U),
        lambda: _intertwines(g, V),
        lambda: _intertwines(al, U),
        lambda: _intertwines(be, V),
        lambda: all(al(U.lam[f(x)][z]) == U.lam[x][al(z)] for x in X for z in X),
        lambda: all(be(V.rho[g(y)][z]) == V.rho[y][be(z)] for y in Y for z in Y),
        lambda: all(f(U.rho[al(x)][z]) == U.rho[x][f(z)] for x in X for z in X),
        lambda: all(g(V.lam[be(y)][z]) == V.lam[y][g(z)] for y in Y for z in Y),
    )
    for i, ok in enumerate(checks):
        if not ok():
            return i
    return None


def twisted_union(W: TwistedSystem) -> Solution:
    U, V = W.U, W.V
    p = U.n
    N = p + V.n
    lam = [[0] * N for _ in range(N)]
    rho = [[0] * N for _ in range(N)]
    for a in range(N):
        for b in range(N):
            if a < p and b < p:
                x, y = U.r(a, b)
            elif a >= p and b >= p:
                x, y = V.r(a - p, b - p)
                x, y = x + p, y + p
            elif a < p:
                x, y = p + W.g(b - p), W.f(a)
            else:
                x, y = W.alpha(b), p + W.beta(a - p)
            lam[a][b] = x
            rho[b][a] = y
    return Solution(lam, rho)


def twisted_reflection(W: TwistedSystem, kappa: FiniteMap, kappa2: FiniteMap) -> FiniteMap:
    """Glue ``kappa`` on the first part and ``kappa2`` on the second."""
    if not is_reflection(W.U, kappa):
        raise DomainError("kappa is not a reflection of the first part")
    if not is_reflection(W.V, kappa2):
        raise DomainError("kappa2 is not a reflection of the second part")
    return glue([0, W.U.n], [kappa, kappa2])


def twisted_criterion(W: TwistedSystem, kappa: FiniteMap, kappa2: FiniteMap) -> bool:
    """``kappa`` commutes with ``f alpha`` and ``kappa2`` with ``g beta``."""
    return kappa.commutes_with(W.f.compose(W.alpha)) and kappa2.commutes_with(W.g.compose(W.beta))


# ---------------------------------------------------------------- r_kappa

def r_kappa(sh: Shelf, kappa: FiniteMap) -> Solution:
    """``r_kappa(x, y) = (kappa(y), kappa^-1(y |> x))`` for a bijective reflection
    ``kappa`` of the rack's derived solution.
    """
    if sh.side != "left" or not sh.is_rack:
        raise DomainError("r_kappa needs a left rack")
    if kappa.n != sh.n:
        raise StructureError("map and rack sizes differ")
    if not kappa.is_bijective() or not is_reflection(solution_from_shelf(sh, check=False), kappa):
        raise DomainError("kappa must be a bijective reflection of the derived solution")
    kinv = kappa.inverse().img
    n, op = sh.n, sh.op
    lam = [kappa.img] * n
    rho = [[kinv[op[y][x]] for x in range(n)] for y in range(n)]
    return Solution(lam, rho)


def rkappa_claim_mismatches(sh: Shelf, kappa: FiniteMap) -> list[FiniteMap]:
    """Maps ``omega`` where "omega is a reflection of r_kappa" and "omega commutes
    with kappa" disagree, by exhaustive scan.
    """
    if sh.n > BRUTE_CAP:
        raise ResourceError(f"exhaustive scan is capped at n <= {BRUTE_CAP}")
    S = r_kappa(sh, kappa)
    return [w for w in all_maps(sh.n) if is_reflection(S, w) != kappa.commutes_with(w)]
