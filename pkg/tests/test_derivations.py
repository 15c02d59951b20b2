import random

import pytest

from bihomsd.corpus import bihom_corpus, homogeneous_vector
from bihomsd.derivations import (
    PAPER_DIALGEBRA,
    STANDARD,
    DerivationSignature,
    GeneralizedParams,
    ad_operator,
    bracket,
    brute_force_derivations,
    derivation_violations,
    in_span,
    qder_projection_basis,
    solve_dialgebra_derivations,
    solve_generalized,
    solve_quasi,
    solve_superalgebra_derivations,
    space_from_dict,
    space_to_dict,
    verify_bracket_closure,
    verify_generalized_bracket,
)
from bihomsd.errors import PreconditionError, SearchBoundError
from bihomsd.fields import QQ, PrimeField
from bihomsd.linalg import Matrix
from bihomsd.model import (
    DialgebraInstance,
    GradedMap,
    ParityMap,
    ProductTensor,
    SuperalgebraInstance,
    SuperSpace,
)


def zero_dialgebra(field=QQ, parity=(0, 1)):
    space = SuperSpace(len(parity), parity)
    zero = ProductTensor.zero(space, field)
    ident = GradedMap.identity(space, field)
    return DialgebraInstance(space, zero, zero, ident, ident)


def idempotent_1dim(field=QQ):
    space = SuperSpace(1, (0,))
    t = ProductTensor(space, field, [[[1]]])
    ident = GradedMap.identity(space, field)
    return DialgebraInstance(space, t, t, ident, ident)


def test_superalgebra_zero_product_full_pattern():
    space = SuperSpace(2, (0, 1))
    inst = SuperalgebraInstance(
        space,
        ProductTensor.zero(space, QQ),
        GradedMap.identity(space, QQ),
        GradedMap.identity(space, QQ),
    )
    even = solve_superalgebra_derivations(inst, 0, 0, 0)
    odd = solve_superalgebra_derivations(inst, 0, 0, 1)
    assert even.dim == 2
    assert odd.dim == 2


def test_superalgebra_idempotent_has_no_derivations():
    space = SuperSpace(1, (0,))
    inst = SuperalgebraInstance(
        space,
        ProductTensor(space, QQ, [[[1]]]),
        GradedMap.identity(space, QQ),
        GradedMap.identity(space, QQ),
    )
    assert solve_superalgebra_derivations(inst, 0, 0, 0).dim == 0


def test_dialgebra_zero_products_full_pattern():
    h = zero_dialgebra()
    assert solve_dialgebra_derivations(h, 0, 0, 0).dim == 2
    assert solve_dialgebra_derivations(h, 0, 0, 1).dim == 2


def test_dialgebra_idempotent_empty():
    assert solve_dialgebra_derivations(idempotent_1dim(), 0, 0, 0).dim == 0


def test_zero_map_always_solves():
    for entry in bihom_corpus(5, QQ, 6):
        h = entry.instance
        zero = ParityMap(
            h.space, 0, Matrix.zeros(h.field, h.space.dim, h.space.dim)
        )
        assert derivation_violations(h, zero, 0, 0) == []


def test_grassmann_even_derivations():
    # Lambda(x): even derivations are x d/dx multiples; dimension 1
    space = SuperSpace(2, (0, 1))
    c = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    t = ProductTensor(space, QQ, c)
    ident = GradedMap.identity(space, QQ)
    h = DialgebraInstance(space, t, t, ident, ident)
    sol = solve_dialgebra_derivations(h, 0, 0, 0)
    assert sol.dim == 1
    d = sol.basis[0]
    assert d.m.entry(0, 0) == QQ.zero  # cannot move the unit
    assert d.m.entry(1, 1) != QQ.zero


def test_bracket_even_self_is_zero():
    space = SuperSpace(2, (0, 0))
    d = ParityMap(space, 0, Matrix(QQ, [[1, 2], [0, 1]]))
    assert bracket(d, d).m.is_zero()


def test_bracket_odd_self_doubles_square():
    space = SuperSpace(2, (0, 1))
    d = ParityMap(space, 1, Matrix(QQ, [[0, 1], [1, 0]]))
    b = bracket(d, d)
    assert b.parity == 0
    assert b.m == (d.m @ d.m).scale(2)


def test_bracket_super_antisymmetry():
    rng = random.Random(13)
    space = SuperSpace(3, (0, 1, 0))
    for _ in range(20):
        p1, p2 = rng.randrange(2), rng.randrange(2)
        m1 = Matrix(QQ, [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        m2 = Matrix(QQ, [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        d1, d2 = ParityMap(space, p1, m1), ParityMap(space, p2, m2)
        sign = QQ.sign(p1 * p2)
        lhs = bracket(d1, d2).m
        rhs = bracket(d2, d1).m.scale(sign).scale(QQ.minus_one)
        assert lhs == rhs


def test_bracket_naturality():
    # [d, d'] commutes with the structure maps whenever d and d' do
    for entry in bihom_corpus(3, QQ, 5):
        h = entry.instance
        s = solve_dialgebra_derivations(h, 0, 0, 0)
        for d in s.basis:
            for dp in s.basis:
                b = bracket(d, dp)
                assert b.m @ h.alpha.m == h.alpha.m @ b.m
                assert b.m @ h.epsilon.m == h.epsilon.m @ b.m


def test_bracket_closure_zero_products():
    h = zero_dialgebra()
    s0 = solve_dialgebra_derivations(h, 0, 0, 0)
    s1 = solve_dialgebra_derivations(h, 0, 1, 1)
    report = verify_bracket_closure(h, s0, s1)
    assert report.ok
    assert report.target_signature == DerivationSignature(0, 1, 1)


def test_bracket_with_zero_in_any_space():
    h = idempotent_1dim()
    s = solve_dialgebra_derivations(h, 0, 0, 0)
    zero = ParityMap(h.space, 0, Matrix.zeros(QQ, 1, 1))
    member, coords = in_span(s, zero)
    assert member and coords == []


def test_bracket_closure_corpus():
    for entry in bihom_corpus(11, QQ, 8):
        h = entry.instance
        for p1 in (0, 1):
            s1 = solve_dialgebra_derivations(h, 0, 0, p1)
            for p2 in (0, 1):
                s2 = solve_dialgebra_derivations(h, 0, 1, p2)
                report = verify_bracket_closure(h, s1, s2)
                assert report.ok, f"{entry.name}: {p1} x {p2}"


def test_generalized_specialization():
    params = GeneralizedParams(1, 1, 1)
    for entry in bihom_corpus(21, QQ, 6):
        h = entry.instance
        for parity in (0, 1):
            a = solve_dialgebra_derivations(h, 0, 0, parity)
            b = solve_generalized(h, params, 0, 0, parity)
            assert a.dim == b.dim
            for d in a.basis:
                member, _ = in_span(b, d)
                assert member
            for d in b.basis:
                member, _ = in_span(a, d)
                assert member


def test_generalized_annihilator_params():
    # (1, 0, 0): maps killing all products while commuting with the structure maps
    h = idempotent_1dim()
    sol = solve_generalized(h, GeneralizedParams(1, 0, 0), 0, 0, 0)
    assert sol.dim == 0  # d(e*e) = d(e) must vanish
    hz = zero_dialgebra()
    solz = solve_generalized(hz, GeneralizedParams(1, 0, 0), 0, 0, 0)
    assert solz.dim == 2


def test_generalized_vacuous_params():
    # (0, 0, 0): every pattern map commuting with alpha and epsilon
    h = idempotent_1dim()
    sol = solve_generalized(h, GeneralizedParams(0, 0, 0), 0, 0, 0)
    assert sol.dim == 1


def test_generalized_bracket_report():
    h = zero_dialgebra()
    p = GeneralizedParams(1, 1, 1)
    s = solve_generalized(h, p, 0, 0, 0)
    report = verify_generalized_bracket(h, s, p, s, p)
    assert report.ok


def test_quasi_zero_products_dimension():
    # products vanish, so d and d' are independent commuting pattern maps
    h = zero_dialgebra()
    pairs = solve_quasi(h, 0, 0, 0)
    assert len(pairs) == 4  # 2 x commutant dimension
    zero_pair = [p for p in pairs if p.d.m.is_zero() or p.d_prime.m.is_zero()]
    assert zero_pair  # basis separates the two components


def test_quasi_embedding_of_derivations():
    for entry in bihom_corpus(33, QQ, 6):
        h = entry.instance
        for parity in (0, 1):
            ders = solve_dialgebra_derivations(h, 0, 0, parity)
            pairs = solve_quasi(h, 0, 0, parity)
            if not pairs:
                assert ders.dim == 0
                continue
            # (d, d) must lie in the span of the solved pair space
            field = h.field
            n = h.space.dim
            cols = [
                [p.d.m.entry(i, j) for i in range(n) for j in range(n)]
                + [p.d_prime.m.entry(i, j) for i in range(n) for j in range(n)]
                for p in pairs
            ]
            system = Matrix.from_columns(field, cols, 2 * n * n)
            from bihomsd.linalg import solve as lin_solve

            for d in ders.basis:
                flat = [d.m.entry(i, j) for i in range(n) for j in range(n)]
                target = Matrix.column(field, flat + flat)
                assert lin_solve(system, target) is not None


def test_quasi_projections_cover_derivations():
    h = zero_dialgebra()
    pairs = solve_quasi(h, 0, 0, 1)
    proj = qder_projection_basis(pairs)
    assert len(proj) == 2


def test_ad_zero_element():
    h = idempotent_1dim()
    result = ad_operator(h, (QQ.zero,))
    assert result.map.m.is_zero()
    assert result.left_leibniz_ok


def test_ad_zero_products():
    h = zero_dialgebra()
    result = ad_operator(h, (QQ.one, QQ.zero))
    assert result.map.m.is_zero()
    assert result.left_leibniz_ok and result.right_leibniz_ok


def test_ad_requires_alpha_equals_epsilon():
    space = SuperSpace(1, (0,))
    h = DialgebraInstance(
        space,
        ProductTensor.zero(space, QQ),
        ProductTensor.zero(space, QQ),
        GradedMap(space, QQ, [[2]]),
        GradedMap.identity(space, QQ),
    )
    with pytest.raises(PreconditionError):
        ad_operator(h, (QQ.one,))


def test_ad_requires_homogeneous():
    h = zero_dialgebra()
    with pytest.raises(PreconditionError):
        ad_operator(h, (QQ.one, QQ.one))


def test_ad_commutator_on_matrix_algebra():
    # full 2x2 matrices with identity maps: ad_r(p) = [p, r], a real derivation
    from bihomsd.corpus import _family_matrix2, _superalgebra
    from bihomsd.constructions import from_associative

    space, cube = _family_matrix2(QQ)
    h = from_associative(_superalgebra(QQ, space, cube))
    r = (QQ.zero, QQ.one, QQ.zero, QQ.zero)  # E12
    result = ad_operator(h, r)
    assert not result.map.m.is_zero()
    assert result.left_leibniz_ok
    assert result.right_leibniz_ok
    # ad maps lie in the solved derivation space
    ders = solve_dialgebra_derivations(h, 0, 0, 0)
    member, _ = in_span(ders, result.map)
    assert member


def test_ad_on_corpus_alpha_eq_epsilon():
    rng = random.Random(8)
    entries = [
        e for e in bihom_corpus(55, QQ, 14) if e.instance.alpha.m == e.instance.epsilon.m
    ]
    assert entries
    for entry in entries:
        h = entry.instance
        for _ in range(5):
            r = homogeneous_vector(h.space, h.field, rng)
            result = ad_operator(h, r)
            assert result.left_leibniz_ok, entry.name


def test_brute_force_matches_solver_zero_products():
    f5 = PrimeField(5)
    h = zero_dialgebra(f5)
    for parity in (0, 1):
        fast = solve_dialgebra_derivations(h, 0, 0, parity)
        slow = brute_force_derivations(h, 0, 0, parity)
        assert fast.dim == slow.dim == 2


def test_brute_force_idempotent():
    f5 = PrimeField(5)
    h = idempotent_1dim(f5)
    sol = brute_force_derivations(h, 0, 0, 0)
    assert sol.dim == 0


def test_brute_force_cross_check():
    f5 = PrimeField(5)
    space = SuperSpace(2, (0, 1))
    c = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]  # Grassmann(x) over F5
    t = ProductTensor(space, f5, c)
    ident = GradedMap.identity(space, f5)
    h = DialgebraInstance(space, t, t, ident, ident)
    for m, n in ((0, 0), (0, 1), (1, 0), (1, 1)):
        for parity in (0, 1):
            fast = solve_dialgebra_derivations(h, m, n, parity)
            slow = brute_force_derivations(h, m, n, parity)
            assert fast.dim == slow.dim
            for d in fast.basis:
                member, _ = in_span(slow, d)
                assert member
            for d in slow.basis:
                member, _ = in_span(fast, d)
                assert member


def test_brute_force_requires_prime_field():
    with pytest.raises(PreconditionError):
        brute_force_derivations(zero_dialgebra(QQ), 0, 0, 0)


def test_brute_force_bound():
    f5 = PrimeField(5)
    h = zero_dialgebra(f5, parity=(0, 0, 0, 0))
    with pytest.raises(SearchBoundError):
        brute_force_derivations(h, 0, 0, 0, bound=100)


def test_sign_conventions_differ_only_for_odd():
    # on a purely even instance both conventions agree
    from bihomsd.corpus import _family_triangular2, _superalgebra
    from bihomsd.constructions import from_associative

    space, cube = _family_triangular2(QQ)
    h = from_associative(_superalgebra(QQ, space, cube))
    std = solve_dialgebra_derivations(h, 0, 0, 0, STANDARD)
    pap = solve_dialgebra_derivations(h, 0, 0, 0, PAPER_DIALGEBRA)
    assert std.dim == pap.dim
    for d in std.basis:
        member, _ = in_span(pap, d)
        assert member


def test_negative_exponents_on_regular_instance():
    space = SuperSpace(2, (0, 0))
    zero = ProductTensor.zero(space, QQ)
    a = GradedMap(space, QQ, [[2, 0], [0, 1]])
    h = DialgebraInstance(space, zero, zero, a, GradedMap.identity(space, QQ))
    sol = solve_dialgebra_derivations(h, -1, 0, 0)
    assert sol.dim == 2  # zero products: only commutation constraints remain


def test_space_serialization_roundtrip():
    h = zero_dialgebra()
    s = solve_dialgebra_derivations(h, 0, 1, 1)
    data = space_to_dict(s, h.field)
    back = space_from_dict(data, h.space, h.field)
    assert back.signature == s.signature
    assert [b.m for b in back.basis] == [b.m for b in s.basis]


def test_conventions_cross_checked_against_oracle():
    # solver (assembled system) and oracle (direct evaluation) take separate
    # code paths per convention; odd maps on an odd-parity space exercise the
    # sign placement difference
    f5 = PrimeField(5)
    space = SuperSpace(2, (0, 1))
    c = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    t = ProductTensor(space, f5, c)
    ident = GradedMap.identity(space, f5)
    h = DialgebraInstance(space, t, t, ident, ident)
    for convention in (STANDARD, PAPER_DIALGEBRA):
        for parity in (0, 1):
            fast = solve_dialgebra_derivations(h, 0, 0, parity, convention)
            slow = brute_force_derivations(h, 0, 0, parity, convention)
            assert fast.dim == slow.dim, (convention, parity)
            for d in fast.basis:
                assert in_span(slow, d)[0]
