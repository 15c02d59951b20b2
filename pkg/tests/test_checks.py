import random

from bihomsd.checks import (
    check_bihom_assoc_superalgebra,
    check_bihom_superdialgebra,
    check_hom_superdialgebra,
    check_multiplicative,
    check_regular,
    check_superdialgebra,
)
from bihomsd.fields import QQ
from bihomsd.model import (
    DialgebraInstance,
    GradedMap,
    ProductTensor,
    SuperalgebraInstance,
    SuperSpace,
)

SPACE1 = SuperSpace(1, (0,))


def one_dim(left_coeff, right_coeff, alpha=1, epsilon=1):
    return DialgebraInstance(
        SPACE1,
        ProductTensor(SPACE1, QQ, [[[left_coeff]]]),
        ProductTensor(SPACE1, QQ, [[[right_coeff]]]),
        GradedMap(SPACE1, QQ, [[alpha]]),
        GradedMap(SPACE1, QQ, [[epsilon]]),
    )


def zero_instance(dim=2, parity=(0, 1), alpha=None, epsilon=None):
    space = SuperSpace(dim, parity)
    ident = GradedMap.identity(space, QQ)
    return DialgebraInstance(
        space,
        ProductTensor.zero(space, QQ),
        ProductTensor.zero(space, QQ),
        alpha or ident,
        epsilon or ident,
    )


def test_superdialgebra_zero_products():
    assert check_superdialgebra(zero_instance()).ok


def test_superdialgebra_mismatched_products():
    report = check_superdialgebra(one_dim(1, 0))
    axioms = {v.axiom for v in report.violations}
    assert "Def1.ii.b" in axioms


def test_superdialgebra_associative_embedding():
    assert check_superdialgebra(one_dim(1, 1)).ok


def test_hom_zero_products_any_alpha():
    inst = zero_instance(alpha=GradedMap(SuperSpace(2, (0, 1)), QQ, [[3, 0], [0, 5]]))
    assert check_hom_superdialgebra(inst).ok


def test_hom_identity_alpha():
    assert check_hom_superdialgebra(one_dim(1, 1)).ok


def test_hom_multiplicativity_violation():
    report = check_hom_superdialgebra(one_dim(1, 1, alpha=2))
    axioms = {v.axiom for v in report.violations}
    assert "Def2.i.left" in axioms
    v = next(v for v in report.violations if v.axiom == "Def2.i.left")
    assert v.lhs == (QQ.of(2),)
    assert v.rhs == (QQ.of(4),)


def test_bihom_assoc_zero_product():
    space = SuperSpace(2, (0, 0))
    g = GradedMap(space, QQ, [[1, 1], [0, 2]])
    inst = SuperalgebraInstance(space, ProductTensor.zero(space, QQ), g, g)
    assert check_bihom_assoc_superalgebra(inst).ok


def test_bihom_assoc_identity_maps():
    inst = SuperalgebraInstance(
        SPACE1,
        ProductTensor(SPACE1, QQ, [[[1]]]),
        GradedMap.identity(SPACE1, QQ),
        GradedMap.identity(SPACE1, QQ),
    )
    assert check_bihom_assoc_superalgebra(inst).ok


def test_bihom_assoc_scalar_violations():
    inst = SuperalgebraInstance(
        SPACE1,
        ProductTensor(SPACE1, QQ, [[[1]]]),
        GradedMap(SPACE1, QQ, [[2]]),
        GradedMap(SPACE1, QQ, [[3]]),
    )
    report = check_bihom_assoc_superalgebra(inst)
    axioms = {v.axiom for v in report.violations}
    assert "Def3.ii.alpha" in axioms
    assert "Def3.iii" in axioms
    assert "Def3.i" not in axioms  # scalars commute


def test_bihom_zero_products_commuting_maps():
    space = SuperSpace(2, (0, 0))
    a = GradedMap(space, QQ, [[1, 1], [0, 1]])
    e = GradedMap(space, QQ, [[2, 0], [0, 2]])
    inst = DialgebraInstance(
        space,
        ProductTensor.zero(space, QQ),
        ProductTensor.zero(space, QQ),
        a,
        e,
    )
    assert check_bihom_superdialgebra(inst).ok


def test_bihom_noncommuting_maps_flagged():
    space = SuperSpace(2, (0, 0))
    a = GradedMap(space, QQ, [[1, 1], [0, 1]])
    e = GradedMap(space, QQ, [[1, 0], [1, 1]])
    inst = DialgebraInstance(
        space,
        ProductTensor.zero(space, QQ),
        ProductTensor.zero(space, QQ),
        a,
        e,
    )
    report = check_bihom_superdialgebra(inst)
    assert {v.axiom for v in report.violations} == {"Def4.i"}


def test_superdialgebra_embeds_in_bihom():
    # spec invariant: any passing superdialgebra with identity maps passes Def4
    assert check_bihom_superdialgebra(one_dim(1, 1)).ok


def test_multiplicative():
    ok, _ = check_multiplicative(one_dim(1, 1))
    assert ok
    ok, report = check_multiplicative(one_dim(1, 1, alpha=2))
    assert not ok
    assert report.violations
    ok, _ = check_multiplicative(zero_instance())
    assert ok


def test_regular():
    assert check_regular(one_dim(1, 1))
    assert not check_regular(one_dim(1, 1, alpha=0))
    space = SuperSpace(2, (0, 0))
    rank1 = GradedMap(space, QQ, [[1, 1], [1, 1]])
    inst = DialgebraInstance(
        space,
        ProductTensor.zero(space, QQ),
        ProductTensor.zero(space, QQ),
        rank1,
        GradedMap.identity(space, QQ),
    )
    assert not check_regular(inst)


def test_violation_cap():
    space = SuperSpace(2, (0, 0))
    # make alpha non-multiplicative everywhere for a dense product
    t = ProductTensor(space, QQ, [[[1, 1], [1, 1]], [[1, 1], [1, 1]]])
    inst = DialgebraInstance(
        space, t, t, GradedMap(space, QQ, [[2, 0], [0, 2]]), GradedMap.identity(space, QQ)
    )
    report = check_bihom_superdialgebra(inst, max_violations=2)
    counts = report.counts()
    assert all(v <= 2 for v in counts.values())
    assert report.capped_axioms


def test_mutation_detected_dim2_offdiagonal():
    # diagonal k^2 with e0 -| e1 forced nonzero breaks Def4.iv
    space = SuperSpace(2, (0, 0))
    c = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    c[0][1][0] = 1
    t = ProductTensor(space, QQ, c)
    inst = DialgebraInstance(
        space,
        t,
        ProductTensor(space, QQ, [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]),
        GradedMap.identity(space, QQ),
        GradedMap.identity(space, QQ),
    )
    assert not check_bihom_superdialgebra(inst).ok


def test_report_serialization():
    report = check_hom_superdialgebra(one_dim(1, 1, alpha=2))
    data = report.to_dict()
    assert data["ok"] is False
    assert data["violations"]
    text = report.to_text()
    assert "FAIL" in text
    passing = check_superdialgebra(zero_instance())
    assert passing.to_dict()["ok"] is True
    assert "PASS" in passing.to_text()


def test_random_mutations_mostly_detected():
    rng = random.Random(42)
    from bihomsd.corpus import mutate, mutation_pool

    pool = mutation_pool(9, QQ, 10)
    detected = 0
    for entry in pool:
        mutant, _ = mutate(entry.instance, rng)
        if not check_bihom_superdialgebra(mutant).ok:
            detected += 1
    assert detected >= 9
