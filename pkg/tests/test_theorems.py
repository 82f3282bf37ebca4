"""Structural theorems as properties: exhaustive over small carriers, randomized at n = 5."""
from __future__ import annotations

import math

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import theorem_checks as tc
from helpers import all_left_racks
from ybreflect.core import FiniteMap
from ybreflect.families import conjugation_quandle, cyclic_rack, dihedral, permutation_rack
from ybreflect.reflections import is_reflection
from ybreflect.shelves import automorphisms, solution_from_shelf

SMALL = tc.small_solutions()
RANDOM = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
seeds = st.integers(0, 2**32 - 1)


def _racks_upto_4():
    return [sh for n in (1, 2, 3, 4) for sh in all_left_racks(n)]


EXHAUSTIVE = {
    "lnd_fastpath": tc.check_lnd_fastpath,
    "rnd_fastpath": tc.check_rnd_fastpath,
    "involutive_fastpath": tc.check_involutive_fastpath,
    "derived_transfer": tc.check_derived_transfer,
    "sufficient_condition": tc.check_sufficient_condition,
    "invariance_lemma": tc.check_invariance_lemma,
    "cross_condition": tc.check_cross_condition,
    "involutive_automorphism": tc.check_involutive_reflections_are_automorphisms,
    "equivalence_transport": tc.check_equivalence_transport,
    "idempotent_right": tc.check_idempotent_right,
    "sandwich": tc.check_sandwich,
    "retraction": tc.check_retraction,
}


@pytest.mark.parametrize("name", sorted(EXHAUSTIVE))
def test_small_exhaustive(name):
    assert EXHAUSTIVE[name](SMALL) == []


@RANDOM
@given(seeds)
def test_fastpaths_n5(seed):
    batch = tc.random_batch(seed, 3)
    assert tc.check_lnd_fastpath(batch) == []
    assert tc.check_rnd_fastpath(batch) == []
    assert tc.check_involutive_fastpath(batch, seed=seed, samples=200) == []


@RANDOM
@given(seeds)
def test_transfer_and_lemmas_n5(seed):
    batch = tc.random_batch(seed, 3)
    assert tc.check_derived_transfer(batch) == []
    assert tc.check_invariance_lemma(batch) == []
    assert tc.check_cross_condition(batch) == []
    assert tc.check_involutive_reflections_are_automorphisms(batch) == []


@RANDOM
@given(seeds)
def test_sandwich_retraction_transport_n5(seed):
    batch = tc.random_batch(seed, 3)
    assert tc.check_sandwich(batch, limit=500, seed=seed) == []
    assert tc.check_retraction(batch) == []
    assert tc.check_equivalence_transport(batch, seed=seed) == []


# ---------------------------------------------------------------- racks

def test_rack_centralizer_all_racks_upto_4():
    assert tc.check_rack_centralizer(_racks_upto_4()) == []


def test_rack_centralizer_families():
    racks = [dihedral(n) for n in range(3, 8)] + [cyclic_rack(n) for n in range(2, 7)]
    racks += [conjugation_quandle("S3"), permutation_rack(5, FiniteMap((1, 2, 0, 4, 3)))]
    assert tc.check_rack_centralizer(racks) == []


@RANDOM
@given(seeds)
def test_rack_centralizer_n5(seed):
    racks = tc.racks_from(tc.random_batch(seed, 4))
    assert tc.check_rack_centralizer(racks) == []


def test_involutive_automorphism_converse_fails():
    # 1 - x is an involutive automorphism of the dihedral quandle on Z_3 but not a reflection
    sh = dihedral(3)
    f = FiniteMap((1, 0, 2))
    assert f.is_involutive() and f in automorphisms(sh)
    assert not is_reflection(solution_from_shelf(sh), f)


def test_dihedral_law_small():
    from ybreflect.reflections import enumerate_reflections

    for n in range(1, 9):
        rs = enumerate_reflections(solution_from_shelf(dihedral(n)), bijective=True)
        assert rs.counts.total == math.gcd(n, 4)
        assert all(r.flags.involutive for r in rs)


# ---------------------------------------------------------------- combinators

def test_matched_biconditional_two_point_parts():
    systems = tc.matched_systems_exhaustive_2()
    assert len(systems) > 1000
    assert tc.check_matched(systems) == []


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_matched_biconditional_random(seed):
    assert tc.check_matched(tc.matched_systems_random(seed, 30)) == []


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_twisted_biconditional_random(seed):
    systems = tc.twisted_systems_random(seed, 30)
    assert systems
    assert tc.check_twisted(systems) == []


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_semilattice_corollary_random(seed):
    assert tc.check_semilattice_corollary(tc.chain_systems(seed, 10)) == []
