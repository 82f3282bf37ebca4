from __future__ import annotations

import itertools
import json
import math

import pytest

from helpers import oracle_reflections, reflection_equation
from ybreflect.core import FiniteMap, flip_solution
from ybreflect.corpus import oracle_corpus
from ybreflect.errors import DomainError, ResourceError, StructureError
from ybreflect.families import (
    dihedral,
    three_point_example,
    idempotent_left,
    idempotent_right,
    lyubashenko,
    order8_example,
    right_dihedral,
)
from ybreflect.reflections import (
    ReflectionSet,
    all_maps,
    brute_force_reflections,
    class_preserving_reflections,
    classify_reflection,
    count_reflections,
    enumerate_reflections,
    fastpath_involutive,
    fastpath_lnd_lambda_centralizing,
    fastpath_rnd_rho_invariant,
    induced_reflection,
    is_reflection,
    retract_solution,
    sandwich,
    sufficient_involutive_lambda,
)
from ybreflect.shelves import solution_from_shelf

m = FiniteMap.from_string


def test_is_reflection_examples():
    E = three_point_example()
    assert is_reflection(E, m("113"))
    assert not is_reflection(E, m("111"))
    for S in oracle_corpus()[:50]:
        assert is_reflection(S, FiniteMap.identity(S.n))
    with pytest.raises(StructureError):
        is_reflection(E, m("12"))


def test_tq_matches_reflection_equation():
    # the (T)/(Q) form and the braid form of the reflection equation agree map by map
    for S in oracle_corpus()[:120]:
        for k in all_maps(S.n):
            assert is_reflection(S, k) == reflection_equation(S, k)


def test_three_point_example_enumeration():
    rs = enumerate_reflections(three_point_example())
    assert set(rs.strings()) == {"123", "113", "213", "223", "333"}
    flags = {r.kappa.to_string(): r.flags for r in rs}
    assert flags["123"].involutive and flags["213"].involutive
    assert not flags["333"].rho_invariant


def test_idempotent_left_reflections_are_idempotents():
    rs = enumerate_reflections(idempotent_left(2))
    assert rs.strings() == ["11", "12", "22"]
    for n in (3, 4):
        got = set(enumerate_reflections(idempotent_left(n)).maps)
        assert got == {k for k in all_maps(n) if k.is_idempotent()}


def test_flip_every_map():
    assert enumerate_reflections(flip_solution(3)).counts.total == 27


def test_order8_example():
    S = order8_example()
    rs = enumerate_reflections(S)
    assert rs.counts.total == 128
    flags = {r.kappa.to_string(): r.flags for r in rs}
    f1, f2, f3, f4 = (flags[s] for s in ("21222211", "11346578", "21436578", "12556611"))
    assert f1.lambda_centralizing and not f1.rho_invariant
    assert f2.rho_invariant and not f2.lambda_centralizing
    assert f3.lambda_centralizing and f3.rho_invariant
    assert not f4.lambda_centralizing and not f4.rho_invariant
    neither = sum(1 for f in flags.values() if not f.lambda_centralizing and not f.rho_invariant)
    assert neither == 64


def test_cap_and_force():
    S = flip_solution(9)
    with pytest.raises(ResourceError):
        enumerate_reflections(S)
    assert count_reflections(idempotent_right(9), force=True).total == 1


def test_parallel_matches_serial():
    S = order8_example()
    assert enumerate_reflections(S, workers=1).maps == enumerate_reflections(S, workers=3).maps
    assert count_reflections(S, workers=4) == enumerate_reflections(S, workers=1).counts


def test_classify_identity_and_non_reflections():
    S = order8_example()
    f = classify_reflection(S, FiniteMap.identity(8)).flags
    assert all([f.lambda_centralizing, f.rho_invariant, f.lambda_invariant, f.rho_centralizing,
                f.bijective, f.involutive])
    # classification does not need reflectionhood
    k = m("11111112")
    assert not is_reflection(S, k)
    classify_reflection(S, k)


def test_counts_partition():
    for S in oracle_corpus()[:150]:
        c = enumerate_reflections(S).counts
        assert c.total >= c.only_lambda_centralizing + c.only_rho_invariant + c.both
        assert c.all_four <= c.both


def test_reflection_set_json_round_trip():
    for S in (three_point_example(), order8_example(), idempotent_left(3)):
        rs = enumerate_reflections(S)
        data = json.loads(json.dumps(rs.to_json()))
        assert ReflectionSet.from_json(data) == rs


def test_reflection_set_json_counts_validated():
    data = enumerate_reflections(three_point_example()).to_json()
    data["total"] = 4
    with pytest.raises(StructureError):
        ReflectionSet.from_json(data)


# ---------------------------------------------------------------- fast paths

def test_lnd_fastpath_three_point_example():
    E = three_point_example()
    for k in all_maps(3):
        if classify_reflection(E, k).flags.lambda_centralizing:
            assert fastpath_lnd_lambda_centralizing(E, k) == is_reflection(E, k)


def test_lnd_fastpath_dihedral_z4():
    S = solution_from_shelf(dihedral(4))
    passing = set()
    for img in itertools.permutations(range(4)):
        k = FiniteMap(img)
        if classify_reflection(S, k).flags.lambda_centralizing and fastpath_lnd_lambda_centralizing(S, k):
            passing.add(img)
    assert passing == {tuple((b + a * x) % 4 for x in range(4)) for b, a in [(0, 1), (0, 3), (2, 1), (2, 3)]}


def test_lnd_fastpath_idempotent():
    S = idempotent_left(3)
    for k in all_maps(3):
        assert fastpath_lnd_lambda_centralizing(S, k) == k.is_idempotent()


def test_fastpath_preconditions():
    E = three_point_example()
    with pytest.raises(DomainError):
        fastpath_lnd_lambda_centralizing(E, m("111"))
    with pytest.raises(DomainError):
        fastpath_lnd_lambda_centralizing(idempotent_right(2), m("12"))
    with pytest.raises(DomainError):
        fastpath_rnd_rho_invariant(idempotent_left(2), m("12"))
    with pytest.raises(DomainError):
        fastpath_involutive(order8_example(), FiniteMap.identity(8))


def test_rnd_fastpath_right_dihedral():
    for n in (3, 5):
        S = solution_from_shelf(right_dihedral(n))
        passing = [k for k in all_maps(n) if classify_reflection(S, k).flags.rho_invariant
                   and fastpath_rnd_rho_invariant(S, k)]
        assert passing == [FiniteMap.identity(n)]
    S = solution_from_shelf(right_dihedral(7))
    assert [r.kappa for r in enumerate_reflections(S) if r.flags.rho_invariant] == [FiniteMap.identity(7)]
    S = solution_from_shelf(right_dihedral(4))
    assert set(enumerate_reflections(S).strings(one_based=False)) == {"0123", "0321", "2103", "2301"}


def test_rnd_fastpath_idempotent_right():
    S = idempotent_right(3)
    ri = [k for k in all_maps(3) if classify_reflection(S, k).flags.rho_invariant]
    assert [k for k in ri if fastpath_rnd_rho_invariant(S, k)] == [FiniteMap.identity(3)]
    assert enumerate_reflections(S).strings() == ["123"]


def test_involutive_fastpath_examples():
    E = three_point_example()
    assert {k for k in all_maps(3) if fastpath_involutive(E, k)} == set(enumerate_reflections(E).maps)
    f = FiniteMap((1, 2, 0))
    L = lyubashenko(3, f, f.inverse())
    assert all(fastpath_involutive(L, k) for k in all_maps(3))
    assert enumerate_reflections(L).counts.total == 27


def test_sufficient_involutive_lambda():
    E = three_point_example()
    assert sufficient_involutive_lambda(E, m("113"))
    assert sufficient_involutive_lambda(E, m("123"))
    assert not sufficient_involutive_lambda(E, m("333"))


# ---------------------------------------------------------------- sandwich

def test_sandwich_identity_maps():
    E = three_point_example()
    for k in enumerate_reflections(E).maps:
        assert sandwich(E, FiniteMap.identity(3), k, FiniteMap.identity(3)) == k


def test_sandwich_order8():
    S = order8_example()
    phi = m("21436587")
    k4 = m("12556611")
    omega = sandwich(S, phi, k4, phi)
    assert is_reflection(S, omega)
    # the inner map that reproduces k4 is phi k4 phi
    inner = phi.compose(k4).compose(phi)
    assert is_reflection(S, inner)
    assert sandwich(S, phi, inner, phi) == k4


def test_sandwich_rejects_bad_outer_maps():
    S = order8_example()
    with pytest.raises(DomainError, match="lambda-centralizing|rho-invariant|invariant|centralizing"):
        sandwich(S, m("11346578"), FiniteMap.identity(8), FiniteMap.identity(8))
    with pytest.raises(DomainError, match="kappa"):
        sandwich(S, FiniteMap.identity(8), m("11111112"), FiniteMap.identity(8))


def test_sandwich_involutive_simpler_hypothesis():
    # on an involutive solution lambda-centralizing + rho-invariant outer maps suffice
    E = three_point_example()
    refl = enumerate_reflections(E).maps
    for phi, psi in itertools.product(all_maps(3), repeat=2):
        fp, fs = classify_reflection(E, phi).flags, classify_reflection(E, psi).flags
        if fp.lambda_centralizing and fp.rho_invariant and fs.lambda_centralizing and fs.rho_invariant:
            assert fp.lambda_invariant and fp.rho_centralizing
            for k in refl:
                assert is_reflection(E, phi.compose(k).compose(psi))


# ---------------------------------------------------------------- retraction

def test_retract_examples():
    Q, cls = retract_solution(three_point_example())
    assert Q.n == 2 and cls == (0, 0, 1)
    assert retract_solution(flip_solution(4))[0].n == 1
    with pytest.raises(DomainError):
        retract_solution(order8_example())


def test_induced_reflection():
    E = three_point_example()
    Q, _ = retract_solution(E)
    for rec in enumerate_reflections(E):
        if rec.flags.rho_invariant:
            assert is_reflection(Q, induced_reflection(E, rec.kappa))
    with pytest.raises(DomainError):
        induced_reflection(E, m("333"))


def test_class_preserving_examples():
    assert set(class_preserving_reflections(three_point_example()).strings()) == {"123", "113", "213", "223"}
    assert class_preserving_reflections(flip_solution(3)).counts.total == 27


def test_brute_force_oracle_agrees_with_direct_oracle():
    for S in oracle_corpus()[:40]:
        assert set(k.img for k in brute_force_reflections(S).maps) == oracle_reflections(S)


def test_dihedral_bijective_count_small():
    for n in range(1, 9):
        rs = enumerate_reflections(solution_from_shelf(dihedral(n)), bijective=True)
        assert rs.counts.total == math.gcd(n, 4)
