from __future__ import annotations

import itertools
import math

import pytest

import theorem_checks as tc
from ybreflect.constructions import (
    ConditionSWarning,
    MatchedSystem,
    SemilatticeSystem,
    TwistedSystem,
    condition_S_witness,
    glue,
    matched_product,
    matched_reflection,
    product_map,
    r_kappa,
    rkappa_claim_mismatches,
    semilattice_reflection,
    strong_semilattice,
    twisted_criterion,
    twisted_reflection,
    twisted_union,
)
from ybreflect.core import FiniteMap, Solution, equivalent_via, flip_solution, is_flip
from ybreflect.errors import DomainError, StructureError
from ybreflect.families import (
    cyclic_rack,
    dihedral,
    three_point_example,
    family,
    lyubashenko,
    order8_example,
    right_dihedral,
    shelf_2x2y_mod6,
    trivial_rack,
)
from ybreflect.reflections import (
    all_maps,
    classify_reflection,
    enumerate_reflections,
    is_lambda_centralizing,
    is_reflection,
    is_rho_invariant,
)
from ybreflect.shelves import (
    centralizer,
    derived_left_shelf,
    endomorphisms,
    multiplication_group,
    solution_from_shelf,
)

ident = FiniteMap.identity


# ---------------------------------------------------------------- matched product

def test_matched_identity_families_on_flips():
    F = flip_solution(2)
    M = MatchedSystem(F, F, [ident(2)] * 2, [ident(2)] * 2)
    P = matched_product(M)
    assert P.n == 4 and is_flip(P)
    assert is_reflection(P, matched_reflection(M, ident(2), ident(2)))


def test_matched_lambda_families():
    for S in (three_point_example(), lyubashenko(3, "(0 1 2)", "(0 2 1)")):
        M = MatchedSystem(S, S, [S.lam_map(u) for u in range(3)], [S.lam_map(a) for a in range(3)])
        P = matched_product(M)
        assert P.flags.bijective and P.flags.left_nd
        for k, w in itertools.product(enumerate_reflections(S).maps, repeat=2):
            f = classify_reflection(S, k).flags
            g = classify_reflection(S, w).flags
            if f.lambda_centralizing and g.lambda_centralizing and S.flags.involutive:
                try:
                    kw = matched_reflection(M, k, w)
                except DomainError:
                    continue
                assert is_reflection(P, kw) and is_lambda_centralizing(P, kw)


def test_matched_semidirect_example():
    S, T = flip_solution(3), flip_solution(3)
    a = FiniteMap((1, 2, 0))
    alpha = [ident(3), a, a.compose(a)]
    M = MatchedSystem(S, T, alpha, [ident(3)] * 3)
    P = matched_product(M)
    for w in all_maps(3):
        kw = matched_reflection(M, ident(3), w)
        assert is_reflection(P, kw)
        assert is_rho_invariant(P, kw) == all(alpha[u] == alpha[w(u)] for u in range(3))


def test_matched_rejects_with_condition_name():
    F = flip_solution(2)
    s = FiniteMap((1, 0))
    with pytest.raises(DomainError) as exc:
        MatchedSystem(F, F, [s, ident(2)], [s, ident(2)])
    name, args = exc.value.witness
    assert name in {"s1", "s2", "s3", "s4", "s5", "s6"} and isinstance(args, tuple)


def test_matched_requires_condition_M():
    F = flip_solution(2)
    M = MatchedSystem(F, F, [FiniteMap((1, 0))] * 2, [ident(2)] * 2)
    with pytest.raises(DomainError):
        matched_reflection(M, FiniteMap((0, 0)), ident(2))
    with pytest.raises(StructureError):
        matched_reflection(M, ident(3), ident(2))


def test_product_map_layout():
    assert product_map(FiniteMap((1, 0)), FiniteMap((0, 0, 2))).img == (3, 3, 5, 0, 0, 2)


# ---------------------------------------------------------------- strong semilattice

CHAIN = ((0, 0), (0, 1))


def test_single_part_unchanged():
    E = three_point_example()
    assert strong_semilattice(SemilatticeSystem(((0,),), (E,))) == E


def test_chain_of_flips_is_degenerate():
    sig = SemilatticeSystem(CHAIN, (flip_solution(2), flip_solution(3)), {(1, 0): (0, 0, 0)})
    X = strong_semilattice(sig)
    assert X.n == 5
    f = X.flags
    assert not f.bijective and not f.left_nd and not f.right_nd


def test_trivial_rack_parts_need_shelf_morphisms():
    A = solution_from_shelf(trivial_rack(2))
    B = solution_from_shelf(cyclic_rack(3))
    # any map into a trivial rack is a shelf morphism only if the source rack is trivial too
    with pytest.raises(DomainError):
        SemilatticeSystem(CHAIN, (A, B), {(1, 0): (0, 1, 0)})
    SemilatticeSystem(CHAIN, (A, B), {(1, 0): (1, 1, 1)})
    C = solution_from_shelf(trivial_rack(3))
    for phi in itertools.product(range(2), repeat=3):
        SemilatticeSystem(CHAIN, (A, C), {(1, 0): phi})


def test_semilattice_validation():
    F = flip_solution(2)
    with pytest.raises(DomainError):
        SemilatticeSystem(((0, 1), (0, 1)), (F, F), {(1, 0): (0, 1)})
    with pytest.raises(StructureError):
        SemilatticeSystem(CHAIN, (F, F), {})


def test_semilattice_reflection_examples():
    E = three_point_example()
    sig = SemilatticeSystem(CHAIN, (E, E), {(1, 0): (0, 1, 2)})
    X = strong_semilattice(sig)
    assert is_reflection(X, semilattice_reflection(sig, [ident(3), ident(3)]))
    for k in enumerate_reflections(E).maps:
        assert is_reflection(X, semilattice_reflection(sig, [k, k]))
    with pytest.raises(DomainError):
        semilattice_reflection(sig, [FiniteMap.from_string("111"), ident(3)])


def test_condition_S_failure_rejected_with_warning():
    sig = SemilatticeSystem(CHAIN, (flip_solution(2), flip_solution(3)), {(1, 0): (0, 0, 0)})
    X = strong_semilattice(sig)
    kappas = [FiniteMap((1, 0)), ident(3)]
    assert condition_S_witness(sig, kappas) is not None
    with pytest.warns(ConditionSWarning):
        glued = semilattice_reflection(sig, kappas)
    assert not is_reflection(X, glued)


def test_condition_S_sufficient():
    # glued reflections satisfying (S) on all pairs are reflections
    hits = 0
    for sig in tc.chain_systems(7, 80):
        X = strong_semilattice(sig)
        per = [enumerate_reflections(P).maps for P in sig.parts]
        for ks in itertools.product(*per):
            if condition_S_witness(sig, ks) is None:
                hits += 1
                assert is_reflection(X, glue(sig.offsets, ks))
    assert hits > 50


def test_condition_S_not_necessary():
    # a reflection of the semilattice whose pieces violate (S)
    A = Solution(((0, 0), (1, 1)), ((0, 0), (0, 1)))
    B = Solution(((0, 0), (0, 1)), ((0, 1), (1, 1)))
    sig = SemilatticeSystem(CHAIN, (A, B), {(1, 0): (1, 1)})
    kappas = [FiniteMap((0, 0)), FiniteMap((0, 0))]
    assert condition_S_witness(sig, kappas) is not None
    assert is_reflection(strong_semilattice(sig), glue(sig.offsets, kappas))


def test_semilattice_corollary():
    assert tc.check_semilattice_corollary(tc.chain_systems(3, 40)) == []


# ---------------------------------------------------------------- twisted union

def test_twisted_classical_case_is_involutive():
    E = three_point_example()
    f = FiniteMap((1, 0, 2))
    assert equivalent_via(E, E, f)
    Z = twisted_union(TwistedSystem(E, E, f, f.inverse(), f, f.inverse()))
    assert Z.flags.involutive


def test_twisted_flips():
    k, w = FiniteMap((1, 2, 0)), FiniteMap((1, 0))
    Z = twisted_union(TwistedSystem(flip_solution(3), flip_solution(2), k, k, w, w))
    assert Z.n == 5 and not Z.flags.involutive
    Z = twisted_union(TwistedSystem(flip_solution(3), flip_solution(2), ident(3), ident(3), w, w))
    assert Z.flags.involutive


def test_twisted_racks_example():
    lr = cyclic_rack(3)
    U = solution_from_shelf(lr)
    R = right_dihedral(3)
    V = solution_from_shelf(R)
    for kappa in centralizer(endomorphisms(lr), multiplication_group(lr)):
        for y in range(3):
            Ry = R.mult(y)
            Z = twisted_union(TwistedSystem(U, V, kappa, kappa, Ry, Ry))
            f = Z.flags
            assert f.bijective and f.left_nd and f.right_nd


def test_twisted_names_failing_identity():
    F = flip_solution(2)
    with pytest.raises(DomainError) as exc:
        TwistedSystem(three_point_example(), F, FiniteMap((0, 0, 0)), ident(3), ident(2), ident(2))
    assert "=" in exc.value.witness


def test_twisted_reflection_examples():
    E = three_point_example()
    f = FiniteMap((1, 0, 2))
    W = TwistedSystem(E, E, f, f.inverse(), f, f.inverse())
    Z = twisted_union(W)
    assert is_reflection(Z, twisted_reflection(W, ident(3), ident(3)))
    # conjugated reflections on the second copy
    for k in enumerate_reflections(E).maps:
        k2 = f.compose(k).compose(f.inverse())
        assert is_reflection(Z, twisted_reflection(W, k, k2)) == twisted_criterion(W, k, k2)
    with pytest.raises(DomainError):
        twisted_reflection(W, FiniteMap.from_string("111"), ident(3))


def test_twisted_lyubashenko_parts():
    f = FiniteMap((1, 2, 0))
    L = lyubashenko(3, f, f.inverse())
    W = TwistedSystem(L, L, f, f.inverse(), f, f.inverse())
    Z = twisted_union(W)
    fa = f.compose(f.inverse())
    for k, k2 in itertools.product(all_maps(3), repeat=2):
        if k.commutes_with(fa) and k2.commutes_with(fa):
            assert is_reflection(Z, twisted_reflection(W, k, k2))


# ---------------------------------------------------------------- r_kappa

def test_r_kappa_identity_gives_derived_solution():
    for sh in (cyclic_rack(3), dihedral(5)):
        assert r_kappa(sh, ident(sh.n)) == solution_from_shelf(sh)


def test_r_kappa_cyclic():
    sh = cyclic_rack(3)
    S = r_kappa(sh, FiniteMap((1, 2, 0)))
    for x, y in itertools.product(range(3), repeat=2):
        assert S.r(x, y) == ((y + 1) % 3, x)
    assert derived_left_shelf(S) == sh


def test_r_kappa_dihedral_z4():
    sh = dihedral(4)
    S = r_kappa(sh, FiniteMap((2, 3, 0, 1)))
    f = S.flags
    assert f.bijective and f.left_nd and f.right_nd
    assert derived_left_shelf(S) == sh
    assert S != solution_from_shelf(sh)


def test_r_kappa_drinfeld_relation():
    for sh in [dihedral(n) for n in range(3, 7)] + [cyclic_rack(n) for n in range(2, 6)]:
        for k in enumerate_reflections(solution_from_shelf(sh), bijective=True).maps:
            assert derived_left_shelf(r_kappa(sh, k)) == sh


def test_r_kappa_rejects_non_reflection():
    with pytest.raises(DomainError):
        r_kappa(dihedral(3), FiniteMap((1, 0, 2)))
    with pytest.raises(DomainError):
        r_kappa(shelf_2x2y_mod6(), ident(6))


def test_r_kappa_reflection_claim_literal():
    # "omega is a reflection of r_kappa iff omega commutes with kappa", read literally:
    # holds on the cyclic rack Z_3 with kappa = L_0, fails for the dihedral quandle Z_3 with kappa = id
    assert rkappa_claim_mismatches(cyclic_rack(3), FiniteMap((1, 2, 0))) == []
    bad = rkappa_claim_mismatches(dihedral(3), ident(3))
    assert len(bad) == 23
    # restricted to bijective maps it still fails: all six commute with id, one is a reflection
    S = r_kappa(dihedral(3), ident(3))
    assert [w for w in all_maps(3) if w.is_bijective() and is_reflection(S, w)] == [ident(3)]


# ---------------------------------------------------------------- families

def test_family_examples():
    L = family("lyubashenko", n=3, f="(0 1 2)", g="(0 2 1)")
    assert L.flags.involutive
    assert enumerate_reflections(L).counts.total == 27
    sh = family("dihedral", n=6)
    assert sh.is_quandle
    assert enumerate_reflections(solution_from_shelf(sh), bijective=True).counts.total == 2 == math.gcd(6, 4)
    m6 = family("shelf_2x2y_mod6")
    assert m6.side == "left" and m6.distributivity_witness() is None


def test_family_errors():
    with pytest.raises(DomainError):
        family("lyubashenko", n=3, f="(0 1 2)", g="(0 1)")
    with pytest.raises(StructureError):
        family("no_such_family")
    with pytest.raises(StructureError):
        family("dihedral", size=3)


def test_every_family_instance_is_valid():
    from ybreflect.families import FAMILIES

    params = {"lyubashenko": dict(n=3, f="(0 1 2)", g="(0 1 2)"),
              "permutation_rack": dict(n=4, f="(0 1)(2 3)"),
              "idempotent_map_shelf": dict(n=3, f=[0, 0, 2]),
              "conjugation_quandle": {}, "shelf_2x2y_mod6": {},
              "three_point_example": {}, "order8_example": {}}
    for name in FAMILIES:
        obj = family(name, **params.get(name, {"n": 4}))
        if hasattr(obj, "op"):
            assert obj.distributivity_witness() is None
        else:
            assert obj.flags is not None
    assert order8_example().flags.bijective
