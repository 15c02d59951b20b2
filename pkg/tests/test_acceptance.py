"""Acceptance suite: one test per criterion, exact arithmetic throughout.

Each test prints one `criterion N: PASS/FAIL` line with its elapsed time and
asserts the stated wall-clock budget.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import random
import time
from contextlib import contextmanager

from bihomsd.checks import (
    check_bihom_superdialgebra,
    check_multiplicative,
    check_regular,
    check_superdialgebra,
)
from bihomsd.constructions import (
    classify_subspace,
    from_differential,
    hom_to_bihom,
    ideal_closure,
    morphism_check,
    power_twist,
    quotient,
    superdialgebra_to_bihom,
    untwist_regular,
    yau_twist,
)
from bihomsd.corpus import (
    bihom_corpus,
    differential_instances,
    hom_instances,
    homogeneous_vector,
    invertible_pairs,
    mutate,
    mutation_pool,
    superdialgebras,
    twist_cases,
)
from bihomsd.derivations import (
    GeneralizedParams,
    ad_operator,
    bracket,
    brute_force_derivations,
    in_span,
    quasi_pair_violations,
    solve_dialgebra_derivations,
    solve_generalized,
    verify_bracket_closure,
)
from bihomsd.fields import QQ, PrimeField
from bihomsd.model import DialgebraInstance


@contextmanager
def criterion(num: int, budget_s: float, label: str):
    started = time.perf_counter()
    failed = True
    try:
        yield
        failed = False
    finally:
        elapsed = time.perf_counter() - started
        status = "FAIL" if failed else "PASS"
        print(f"criterion {num}: {status} ({elapsed:.2f}s < {budget_s}s) - {label}")
        if not failed:
            assert elapsed < budget_s, f"criterion {num} exceeded {budget_s}s budget"


def test_criterion_1_axiom_hierarchy():
    with criterion(1, 5.0, "superdialgebra and Hom instances embed into BiHom"):
        supers = superdialgebras(101, QQ, 50)
        assert len(supers) == 50
        for e in supers:
            assert e.instance.alpha.is_identity()
            report = check_bihom_superdialgebra(e.instance)
            assert report.ok, f"{e.name}: {report.to_text()}"
        homs = hom_instances(102, QQ, 50)
        assert len(homs) == 50
        for e in homs:
            with_eps = DialgebraInstance(
                e.instance.space,
                e.instance.left,
                e.instance.right,
                e.instance.alpha,
                e.instance.alpha,
            )
            report = check_bihom_superdialgebra(with_eps)
            assert report.ok, f"{e.name}: {report.to_text()}"


def test_criterion_2_theorem1_closure():
    with criterion(2, 10.0, "100 twists pass the full Def4 checker"):
        cases = twist_cases(201, QQ, 100)
        assert len(cases) == 100
        for entry, a, e in cases:
            out = yau_twist(entry.instance, a, e, check=True)
            report = check_bihom_superdialgebra(out)
            assert report.ok, f"{entry.name}: {report.to_text()}"


def test_criterion_3_corollary_suite():
    with criterion(3, 10.0, "power twists, Hom lift, untwist, round trip"):
        corpus = bihom_corpus(301, QQ, 20)
        for e in corpus:
            for n in (0, 1, 2):
                out = power_twist(e.instance, n, check=False)
                assert check_bihom_superdialgebra(out).ok, f"{e.name} power {n}"
                ok, _ = check_multiplicative(out)
                assert ok
        for e in hom_instances(302, QQ, 15):
            out = hom_to_bihom(e.instance, e.instance.alpha, check=False)
            assert check_bihom_superdialgebra(out).ok, e.name
        regular = [e for e in corpus if check_regular(e.instance)]
        assert regular
        for e in regular:
            out = untwist_regular(e.instance, check=False)
            assert check_superdialgebra(out).ok, e.name
        pairs = invertible_pairs(303, QQ, 20)
        assert len(pairs) == 20
        for base, a, ee in pairs:
            twisted = superdialgebra_to_bihom(base, a, ee, check=False)
            assert check_bihom_superdialgebra(twisted).ok
            back = untwist_regular(twisted, check=False)
            assert back.left == base.left and back.right == base.right
            assert check_superdialgebra(back).ok


def test_criterion_4_quotient_soundness():
    with criterion(4, 10.0, "quotients by found two-sided graded ideals"):
        rng = random.Random(401)
        corpus = bihom_corpus(402, QQ, 14)
        quotients = 0
        for e in corpus:
            h = e.instance
            n = h.space.dim
            witnesses = [
                classify_subspace(h, []),
                classify_subspace(
                    h,
                    [
                        tuple(
                            h.field.one if i == j else h.field.zero for i in range(n)
                        )
                        for j in range(n)
                    ],
                ),
            ]
            for g, _target in e.morphisms:
                from bihomsd.linalg import nullspace

                witnesses.append(classify_subspace(h, nullspace(g)))
            if n:
                witnesses.append(
                    ideal_closure(h, [homogeneous_vector(h.space, h.field, rng)])
                )
            for w in witnesses:
                assert w.is_two_sided, f"{e.name}: found subspace not two-sided"
                q, proj = quotient(h, w)
                assert check_bihom_superdialgebra(q).ok, e.name
                result = morphism_check(h, q, proj)
                assert result.witness.is_morphism, e.name
                quotients += 1
        assert quotients >= 40


def test_criterion_5_solver_vs_oracle():
    with criterion(5, 60.0, "F5 brute-force enumeration agrees with the solver"):
        f5 = PrimeField(5)
        small = [
            e for e in bihom_corpus(501, f5, 40) if e.instance.space.dim <= 2
        ]
        assert len(small) >= 10
        checked = 0
        for e in small:
            for m in (0, 1):
                for n in (0, 1):
                    for parity in (0, 1):
                        fast = solve_dialgebra_derivations(e.instance, m, n, parity)
                        slow = brute_force_derivations(e.instance, m, n, parity)
                        assert fast.dim == slow.dim, (e.name, m, n, parity)
                        for d in fast.basis:
                            member, _ = in_span(slow, d)
                            assert member
                        for d in slow.basis:
                            member, _ = in_span(fast, d)
                            assert member
                        checked += 1
        assert checked >= 80


def test_criterion_6_bracket_closure():
    with criterion(6, 30.0, "brackets land in the solved space; antisymmetry exact"):
        corpus = bihom_corpus(601, QQ, 20)
        assert len(corpus) == 20
        for e in corpus:
            h = e.instance
            spaces = {
                (m, n, p): solve_dialgebra_derivations(h, m, n, p)
                for (m, n) in ((0, 0), (0, 1))
                for p in (0, 1)
            }
            for (m1, n1) in ((0, 0), (0, 1)):
                for (m2, n2) in ((0, 0), (0, 1)):
                    for p1 in (0, 1):
                        for p2 in (0, 1):
                            s1 = spaces[(m1, n1, p1)]
                            s2 = spaces[(m2, n2, p2)]
                            if not s1.basis or not s2.basis:
                                continue
                            report = verify_bracket_closure(h, s1, s2)
                            assert report.ok, (e.name, m1, n1, p1, m2, n2, p2)
                            for d in s1.basis:
                                for dp in s2.basis:
                                    sign = h.field.sign(d.parity * dp.parity)
                                    lhs = bracket(d, dp).m
                                    rhs = bracket(dp, d).m.scale(sign).scale(
                                        h.field.minus_one
                                    )
                                    assert lhs == rhs


def test_criterion_7_generalized_specialization():
    with criterion(7, 10.0, "(1,1,1)-generalized equals the plain solver"):
        params = GeneralizedParams(1, 1, 1)
        for e in bihom_corpus(701, QQ, 20):
            h = e.instance
            for parity in (0, 1):
                a = solve_dialgebra_derivations(h, 0, 0, parity)
                b = solve_generalized(h, params, 0, 0, parity)
                assert a.dim == b.dim, e.name
                for d in a.basis:
                    assert in_span(b, d)[0]
                for d in b.basis:
                    assert in_span(a, d)[0]


def test_criterion_8_quasi_embedding():
    with criterion(8, 10.0, "every derivation d gives a valid quasi pair (d, d)"):
        checked = 0
        for e in bihom_corpus(801, QQ, 15):
            h = e.instance
            for parity in (0, 1):
                space = solve_dialgebra_derivations(h, 0, 0, parity)
                for d in space.basis:
                    assert quasi_pair_violations(h, d, d, 0, 0) == [], e.name
                    checked += 1
        assert checked >= 20


def test_criterion_9_ad_operator():
    with criterion(9, 10.0, "inner maps satisfy the left Leibniz identity"):
        rng = random.Random(901)
        pool = [
            e
            for e in bihom_corpus(902, QQ, 40)
            if e.instance.alpha.m == e.instance.epsilon.m
            and e.instance.space.dim > 0
        ][:20]
        assert len(pool) == 20
        right_ok = 0
        total = 0
        for e in pool:
            h = e.instance
            for _ in range(10):
                r = homogeneous_vector(h.space, h.field, rng)
                result = ad_operator(h, r)
                assert result.left_leibniz_ok, e.name
                total += 1
                if result.right_leibniz_ok:
                    right_ok += 1
        print(f"  right-product Leibniz (informational): {right_ok}/{total}")


def test_criterion_10_from_differential():
    with criterion(10, 5.0, "differential construction passes the Def4 checker"):
        cases = differential_instances(1001, QQ, 12)
        nontrivial = 0
        for idx, di in enumerate(cases):
            out = from_differential(di)
            report = check_bihom_superdialgebra(out)
            assert report.ok, f"case {idx}: {report.to_text()}"
            if not out.left.is_zero():
                nontrivial += 1
        assert nontrivial >= 2


def test_criterion_11_mutation_sensitivity():
    with criterion(11, 10.0, "random structure-constant flips are detected"):
        rng = random.Random(1101)
        pool = mutation_pool(1102, QQ, 50)
        assert len(pool) == 50
        detected = 0
        for e in pool:
            mutant, _ = mutate(e.instance, rng)
            if not check_bihom_superdialgebra(mutant).ok:
                detected += 1
        rate = detected / len(pool)
        print(f"  observed detection rate: {detected}/{len(pool)} = {rate:.0%}")
        assert rate >= 0.95
