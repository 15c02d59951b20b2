"""Deterministic seeded generation of verified instances.

Base material: associative superalgebras embedded as dialgebras with equal
products (diagonal algebras, dual numbers, triangular and full 2x2 matrix
algebras, Grassmann algebras), zero-product spaces, and differential
constructions.  Variants come from parity-preserving basis conjugation and
direct sums; twisted instances from multiplicative endomorphism pairs drawn
from per-family catalogs (powers of one endomorphism commute by
construction).  Every emitted instance passes its target checker before it
is returned; generation fails loudly otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .checks import (
    check_bihom_superdialgebra,
    check_hom_superdialgebra,
    check_superdialgebra,
)
from .constructions import from_differential, superdialgebra_to_bihom
from .errors import EngineError
from .linalg import Matrix, inverse, rank
from .model import (
    DialgebraInstance,
    DifferentialInstance,
    GradedMap,
    ParityMap,
    ProductTensor,
    SuperalgebraInstance,
    SuperSpace,
)


class GenerationError(EngineError):
    """An instance produced by the generator failed its gate check."""


@dataclass
class CorpusEntry:
    name: str
    instance: DialgebraInstance
    tags: frozenset
    # verified morphisms out of this instance: (matrix, target instance)
    morphisms: list = dc_field(default_factory=list)


# ---------------------------------------------------------------------------
# associative families; products returned as (space, cube) with cube[i][j][k]


def _cube(field, dim, entries) -> list:
    z = field.zero
    c = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j, k), v in entries.items():
        c[i][j][k] = field.of(v)
    return c


def _family_diagonal(field, n):
    space = SuperSpace(n, (0,) * n)
    entries = {(i, i, i): 1 for i in range(n)}
    return space, _cube(field, n, entries)


def _family_dual_numbers(field):
    space = SuperSpace(2, (0, 0))
    entries = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}
    return space, _cube(field, 2, entries)


def _family_triangular2(field):
    # basis E11, E12, E22 of upper-triangular 2x2 matrices
    space = SuperSpace(3, (0, 0, 0))
    entries = {
        (0, 0, 0): 1,
        (0, 1, 1): 1,
        (1, 2, 1): 1,
        (2, 2, 2): 1,
    }
    return space, _cube(field, 3, entries)


def _family_matrix2(field):
    # basis E11, E12, E21, E22; Eij Ekl = delta_jk Eil
    space = SuperSpace(4, (0, 0, 0, 0))
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    entries = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                entries[(a, b, idx[(i, l)])] = 1
    return space, _cube(field, 4, entries)


def _family_grassmann1(field):
    space = SuperSpace(2, (0, 1))
    entries = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}
    return space, _cube(field, 2, entries)


def _family_grassmann2(field):
    # basis 1, x, y, xy with |x| = |y| = 1
    space = SuperSpace(4, (0, 1, 1, 0))
    entries = {
        (0, 0, 0): 1,
        (0, 1, 1): 1,
        (1, 0, 1): 1,
        (0, 2, 2): 1,
        (2, 0, 2): 1,
        (0, 3, 3): 1,
        (3, 0, 3): 1,
        (1, 2, 3): 1,
        (2, 1, 3): -1,
    }
    return space, _cube(field, 4, entries)


def _superalgebra(field, space, cube) -> SuperalgebraInstance:
    ident = GradedMap.identity(space, field)
    return SuperalgebraInstance(space, ProductTensor(space, field, cube), ident, ident)


# family name -> (builder, endomorphism factory names)
_FAMILIES = {
    "diagonal2": lambda f: _family_diagonal(f, 2),
    "diagonal3": lambda f: _family_diagonal(f, 3),
    "dual": _family_dual_numbers,
    "triangular2": _family_triangular2,
    "matrix2": _family_matrix2,
    "grassmann1": _family_grassmann1,
    "grassmann2": _family_grassmann2,
}

_SUPERCOMMUTATIVE = {"diagonal2", "diagonal3", "dual", "grassmann1", "grassmann2"}


def _graded_map(field, space, columns) -> GradedMap:
    return GradedMap(space, field, Matrix.from_columns(field, columns, space.dim))


def _identity_cols(field, n):
    return [
        tuple(field.one if i == j else field.zero for i in range(n)) for j in range(n)
    ]


def _nonzero_scalar(field, rng):
    if field.name == "Fp":
        return field.of(rng.randrange(1, field.p))
    return field.of(rng.choice([1, -1, 2, 3]))


def _family_endomorphism(name: str, field, space, rng) -> GradedMap:
    """A multiplicative endomorphism of the named family's product."""
    n = space.dim
    kind = rng.randrange(3)
    if name.startswith("diagonal"):
        if kind == 0:
            perm = list(range(n))
            rng.shuffle(perm)
            cols = [
                tuple(field.one if i == perm[j] else field.zero for i in range(n))
                for j in range(n)
            ]
        else:
            keep = [rng.random() < 0.7 for _ in range(n)]
            cols = [
                tuple(
                    (field.one if (i == j and keep[j]) else field.zero)
                    for i in range(n)
                )
                for j in range(n)
            ]
        return _graded_map(field, space, cols)
    if name == "dual":
        lam = _nonzero_scalar(field, rng) if kind else field.zero
        cols = [
            (field.one, field.zero),
            (field.zero, lam),
        ]
        return _graded_map(field, space, cols)
    if name == "triangular2":
        if kind == 0:
            # conjugation by [[1, b], [0, 1]]
            b = _nonzero_scalar(field, rng)
            cols = [
                (field.one, -b, field.zero),
                (field.zero, field.one, field.zero),
                (field.zero, b, field.one),
            ]
        elif kind == 1:
            lam = _nonzero_scalar(field, rng)
            cols = [
                (field.one, field.zero, field.zero),
                (field.zero, lam, field.zero),
                (field.zero, field.zero, field.one),
            ]
        else:
            # corner projection E11 -> E11, rest -> 0
            cols = [
                (field.one, field.zero, field.zero),
                (field.zero,) * 3,
                (field.zero,) * 3,
            ]
        return _graded_map(field, space, cols)
    if name == "matrix2":
        # conjugation by an invertible 2x2 matrix
        while True:
            a, b = field.of(rng.randint(-2, 2)), field.of(rng.randint(-2, 2))
            c, d = field.of(rng.randint(-2, 2)), field.of(rng.randint(-2, 2))
            if field.name == "Fp":
                a, b = field.of(rng.randrange(field.p)), field.of(rng.randrange(field.p))
                c, d = field.of(rng.randrange(field.p)), field.of(rng.randrange(field.p))
            if a * d - b * c:
                break
        u = Matrix(field, [[a, b], [c, d]])
        u_inv = inverse(u)
        cols = []
        for (i, j) in ((0, 0), (0, 1), (1, 0), (1, 1)):
            e = Matrix.zeros(field, 2, 2)
            rows = [list(r) for r in e.data]
            rows[i][j] = field.one
            m = u @ Matrix(field, rows) @ u_inv
            cols.append((m.entry(0, 0), m.entry(0, 1), m.entry(1, 0), m.entry(1, 1)))
        return _graded_map(field, space, cols)
    if name == "grassmann1":
        lam = _nonzero_scalar(field, rng) if kind else field.zero
        cols = [(field.one, field.zero), (field.zero, lam)]
        return _graded_map(field, space, cols)
    if name == "grassmann2":
        a, b = field.of(rng.randint(-2, 2)), field.of(rng.randint(-2, 2))
        c, d = field.of(rng.randint(-2, 2)), field.of(rng.randint(-2, 2))
        if field.name == "Fp":
            a = field.of(rng.randrange(field.p))
            b = field.of(rng.randrange(field.p))
            c = field.of(rng.randrange(field.p))
            d = field.of(rng.randrange(field.p))
        det = a * d - b * c
        cols = [
            (field.one, field.zero, field.zero, field.zero),
            (field.zero, a, c, field.zero),
            (field.zero, b, d, field.zero),
            (field.zero, field.zero, field.zero, det),
        ]
        return _graded_map(field, space, cols)
    raise GenerationError(f"no endomorphism catalog for family {name!r}")


def _conjugate_cube(field, space, cube, g: Matrix, g_inv: Matrix):
    """Transport structure constants through the basis change g."""
    n = space.dim
    t = ProductTensor(space, field, cube)
    from .model import evaluate

    new = [[None] * n for _ in range(n)]
    gcols = [g.col(j) for j in range(n)]
    for i in range(n):
        for j in range(n):
            new[i][j] = list(g_inv.apply(evaluate(t, gcols[i], gcols[j])))
    return new


def _random_parity_preserving_change(field, space, rng) -> tuple[Matrix, Matrix]:
    """A random invertible matrix mixing only equal-parity coordinates."""
    n = space.dim
    while True:
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if space.parity[i] != space.parity[j]:
                    row.append(field.zero)
                elif i == j:
                    row.append(field.one)
                else:
                    row.append(
                        field.of(rng.randint(-1, 1))
                        if field.name == "Q"
                        else field.of(rng.randrange(field.p))
                    )
            rows.append(row)
        m = Matrix(field, rows)
        if rank(m) == n:
            return m, inverse(m)


# ---------------------------------------------------------------------------
# base entries


def _zero_product_instance(field, rng, dim: int) -> DialgebraInstance:
    parity = tuple(rng.randrange(2) for _ in range(dim))
    space = SuperSpace(dim, parity)
    zero = ProductTensor.zero(space, field)
    ident = GradedMap.identity(space, field)
    return DialgebraInstance(space, zero, zero, ident, ident)


def _idempotent_1dim(field, rng) -> DialgebraInstance:
    space = SuperSpace(1, (0,))
    lam = _nonzero_scalar(field, rng)
    t = ProductTensor(space, field, [[[lam]]])
    ident = GradedMap.identity(space, field)
    return DialgebraInstance(space, t, t, ident, ident)


def _direct_sum(a: DialgebraInstance, b: DialgebraInstance) -> DialgebraInstance:
    field = a.field
    na, nb = a.space.dim, b.space.dim
    n = na + nb
    space = SuperSpace(n, a.space.parity + b.space.parity)

    def sum_tensor(ta: ProductTensor, tb: ProductTensor) -> ProductTensor:
        z = field.zero
        c = [[[z] * n for _ in range(n)] for _ in range(n)]
        for i in range(na):
            for j in range(na):
                for k in range(na):
                    c[i][j][k] = ta.c[i][j][k]
        for i in range(nb):
            for j in range(nb):
                for k in range(nb):
                    c[na + i][na + j][na + k] = tb.c[i][j][k]
        return ProductTensor(space, field, c)

    def sum_map(ga: GradedMap, gb: GradedMap) -> GradedMap:
        z = field.zero
        rows = [[z] * n for _ in range(n)]
        for i in range(na):
            for j in range(na):
                rows[i][j] = ga.m.entry(i, j)
        for i in range(nb):
            for j in range(nb):
                rows[na + i][na + j] = gb.m.entry(i, j)
        return GradedMap(space, field, rows)

    return DialgebraInstance(
        space,
        sum_tensor(a.left, b.left),
        sum_tensor(a.right, b.right),
        sum_map(a.alpha, b.alpha),
        sum_map(a.epsilon, b.epsilon),
    )


def _block_projection(field, a: DialgebraInstance, b: DialgebraInstance, which: str) -> Matrix:
    na, nb = a.space.dim, b.space.dim
    n = na + nb
    z, o = field.zero, field.one
    if which == "first":
        return Matrix(field, [[o if j == i else z for j in range(n)] for i in range(na)])
    return Matrix(field, [[o if j == na + i else z for j in range(n)] for i in range(nb)])


@dataclass
class _BaseEntry:
    name: str
    instance: DialgebraInstance
    family: str | None  # endomorphism catalog key, None when only generic maps apply
    conj: tuple[Matrix, Matrix] | None  # basis change transported onto endomorphisms
    supercommutative: bool
    morphisms: list = dc_field(default_factory=list)


def _gate(instance: DialgebraInstance, name: str) -> None:
    report = check_bihom_superdialgebra(instance)
    if not report.ok:
        raise GenerationError(f"{name} failed gate: {report.to_text()}")


def _base_entries(field, rng, count: int, dim_max: int | None = None) -> list[_BaseEntry]:
    """Base (identity-map) instances: families, conjugates, sums, degenerate cases."""
    out: list[_BaseEntry] = []
    family_names = list(_FAMILIES)
    if dim_max is not None:
        family_names = [
            n for n in family_names if _FAMILIES[n](field)[0].dim <= dim_max
        ]
        if not family_names:
            raise GenerationError(f"no catalog family fits dim_max={dim_max}")
    i = 0
    while len(out) < count:
        mode = i % 4
        i += 1
        if mode == 0:
            name = family_names[(i // 4) % len(family_names)]
            space, cube = _FAMILIES[name](field)
            inst = DialgebraInstance(
                space,
                ProductTensor(space, field, cube),
                ProductTensor(space, field, cube),
                GradedMap.identity(space, field),
                GradedMap.identity(space, field),
            )
            out.append(
                _BaseEntry(
                    f"{name}", inst, name, None, name in _SUPERCOMMUTATIVE
                )
            )
        elif mode == 1:
            name = rng.choice(family_names)
            space, cube = _FAMILIES[name](field)
            g, g_inv = _random_parity_preserving_change(field, space, rng)
            conj_cube = _conjugate_cube(field, space, cube, g, g_inv)
            t = ProductTensor(space, field, conj_cube)
            inst = DialgebraInstance(
                space, t, t,
                GradedMap.identity(space, field),
                GradedMap.identity(space, field),
            )
            out.append(
                _BaseEntry(
                    f"{name}-conj{i}", inst, name, (g, g_inv),
                    name in _SUPERCOMMUTATIVE,
                )
            )
        elif mode == 2:
            kind = rng.randrange(3)
            if kind == 0:
                top = min(4, dim_max) if dim_max is not None else 4
                inst = _zero_product_instance(field, rng, rng.randint(1, top))
                out.append(_BaseEntry(f"zero{i}", inst, None, None, True))
            elif kind == 1:
                inst = _idempotent_1dim(field, rng)
                out.append(_BaseEntry(f"idem1-{i}", inst, None, None, True))
            else:
                name = rng.choice(family_names)
                space, cube = _FAMILIES[name](field)
                t = ProductTensor(space, field, cube)
                inst = DialgebraInstance(
                    space, t, t,
                    GradedMap.identity(space, field),
                    GradedMap.identity(space, field),
                )
                out.append(
                    _BaseEntry(
                        f"{name}-copy{i}", inst, name, None,
                        name in _SUPERCOMMUTATIVE,
                    )
                )
        else:
            n1, n2 = rng.choice(family_names), rng.choice(family_names)
            s1, c1 = _FAMILIES[n1](field)
            s2, c2 = _FAMILIES[n2](field)
            if dim_max is not None and s1.dim + s2.dim > dim_max:
                continue
            t1 = ProductTensor(s1, field, c1)
            t2 = ProductTensor(s2, field, c2)
            a = DialgebraInstance(
                s1, t1, t1,
                GradedMap.identity(s1, field), GradedMap.identity(s1, field),
            )
            b = DialgebraInstance(
                s2, t2, t2,
                GradedMap.identity(s2, field), GradedMap.identity(s2, field),
            )
            inst = _direct_sum(a, b)
            entry = _BaseEntry(
                f"{n1}+{n2}-{i}", inst, None, None,
                n1 in _SUPERCOMMUTATIVE and n2 in _SUPERCOMMUTATIVE,
            )
            entry.morphisms.append((_block_projection(field, a, b, "first"), a))
            entry.morphisms.append((_block_projection(field, a, b, "second"), b))
            out.append(entry)
    for e in out:
        _gate(e.instance, e.name)
        rep = check_superdialgebra(e.instance)
        if not rep.ok:
            raise GenerationError(f"{e.name} is not a superdialgebra")
    return out


def _entry_endomorphism(base: _BaseEntry, field, rng) -> GradedMap:
    """A multiplicative endomorphism of a base entry's products."""
    inst = base.instance
    space = inst.space
    if base.family is not None:
        g = _family_endomorphism(base.family, field, space, rng)
        if base.conj is not None:
            gg, gg_inv = base.conj
            g = GradedMap(space, field, gg_inv @ g.m @ gg)
        return g
    if inst.left.is_zero() and inst.right.is_zero():
        # anything even is multiplicative for zero products
        n = space.dim
        rows = []
        for r in range(n):
            row = []
            for c in range(n):
                if space.parity[r] != space.parity[c]:
                    row.append(field.zero)
                else:
                    row.append(
                        field.of(rng.randint(-1, 2))
                        if field.name == "Q"
                        else field.of(rng.randrange(field.p))
                    )
            rows.append(row)
        return GradedMap(space, field, rows)
    if space.dim == 1:
        # scalar maps multiplicative for a nonzero 1-dim product: 0 or 1 only
        lam = field.one if rng.randrange(2) else field.zero
        return GradedMap(space, field, [[lam]])
    return GradedMap.identity(space, field)


def _power(g: GradedMap, k: int) -> GradedMap:
    acc = GradedMap.identity(g.space, g.field)
    for _ in range(k):
        acc = acc.compose(g)
    return acc


# ---------------------------------------------------------------------------
# public generators


def superdialgebras(
    seed: int, field, count: int, dim_max: int | None = None
) -> list[CorpusEntry]:
    """Verified superdialgebras (identity structure maps)."""
    rng = random.Random(seed)
    entries = []
    for base in _base_entries(field, rng, count, dim_max):
        entries.append(
            CorpusEntry(
                base.name,
                base.instance,
                frozenset({"superdialgebra", "base"}),
                base.morphisms,
            )
        )
    return entries


def hom_instances(
    seed: int, field, count: int, dim_max: int | None = None
) -> list[CorpusEntry]:
    """Verified Hom-superdialgebras, stored with epsilon set equal to alpha."""
    rng = random.Random(seed)
    bases = _base_entries(field, rng, count, dim_max)
    out = []
    for idx, base in enumerate(bases):
        f = _entry_endomorphism(base, field, rng)
        inst = superdialgebra_to_bihom(base.instance, f, f, check=False)
        rep = check_hom_superdialgebra(inst)
        if not rep.ok:
            raise GenerationError(f"hom-{base.name} failed gate: {rep.to_text()}")
        _gate(inst, f"hom-{base.name}")
        out.append(
            CorpusEntry(f"hom-{base.name}-{idx}", inst, frozenset({"hom"}))
        )
    return out


def _differential_cases(field, rng, count: int) -> list[DifferentialInstance]:
    """Differential instances: d^2 = 0, idempotent structure maps, Leibniz."""
    cases = []
    i = 0
    while len(cases) < count:
        mode = i % 3
        i += 1
        if mode == 0:
            # Grassmann(x, y) with d = lambda * x d/dy, an even derivation
            space, cube = _family_grassmann2(field)
            base = _superalgebra(field, space, cube)
            lam = _nonzero_scalar(field, rng)
            z = field.zero
            rows = [[z] * 4 for _ in range(4)]
            rows[1][2] = lam
            cases.append(
                DifferentialInstance(base, ParityMap(space, 0, Matrix(field, rows)))
            )
        elif mode == 1:
            # zero products, identity maps, d sending one basis vector to another
            dim = rng.randint(2, 4)
            parity = tuple(rng.randrange(2) for _ in range(dim))
            space = SuperSpace(dim, parity)
            base = SuperalgebraInstance(
                space,
                ProductTensor.zero(space, field),
                GradedMap.identity(space, field),
                GradedMap.identity(space, field),
            )
            src = rng.randrange(dim)
            dst = rng.randrange(dim)
            while dst == src:
                dst = rng.randrange(dim)
            z = field.zero
            rows = [[z] * dim for _ in range(dim)]
            rows[dst][src] = _nonzero_scalar(field, rng)
            d_parity = (parity[dst] + parity[src]) % 2
            cases.append(
                DifferentialInstance(base, ParityMap(space, d_parity, Matrix(field, rows)))
            )
        else:
            # a family algebra with idempotent projection maps and d = 0
            name = rng.choice(["diagonal2", "dual", "grassmann1"])
            space, cube = _FAMILIES[name](field)
            base = _superalgebra(field, space, cube)
            if name == "diagonal2" and rng.randrange(2):
                proj = GradedMap(
                    field=field,
                    space=space,
                    m=Matrix(
                        field,
                        [[field.one, field.zero], [field.zero, field.zero]],
                    ),
                )
                base = SuperalgebraInstance(space, base.prod, proj, proj)
            zero_d = ParityMap(
                space, rng.randrange(2), Matrix.zeros(field, space.dim, space.dim)
            )
            cases.append(DifferentialInstance(base, zero_d))
    return cases


def differential_instances(seed: int, field, count: int) -> list[DifferentialInstance]:
    rng = random.Random(seed)
    return _differential_cases(field, rng, count)


def bihom_corpus(
    seed: int, field, count: int, dim_max: int | None = None
) -> list[CorpusEntry]:
    """The main corpus: base instances first, then twists and differentials.

    Twist pairs use distinct powers (f^i, f^j), i != j, of one catalog
    endomorphism, so commutation holds by construction.
    """
    rng = random.Random(seed)
    n_base = max(count // 3, min(count, 8))
    bases = _base_entries(field, rng, n_base, dim_max)
    out: list[CorpusEntry] = []
    for base in bases:
        tags = {"bihom", "base"}
        if base.supercommutative:
            tags.add("supercommutative")
        entry = CorpusEntry(base.name, base.instance, frozenset(tags), base.morphisms)
        out.append(entry)
        if len(out) >= count:
            return out
    di_cases = [
        di
        for di in _differential_cases(field, rng, max(2, count // 8))
        if dim_max is None or di.base.space.dim <= dim_max
    ]
    for idx, di in enumerate(di_cases):
        inst = from_differential(di)
        _gate(inst, f"differential-{idx}")
        out.append(
            CorpusEntry(f"differential-{idx}", inst, frozenset({"bihom", "differential"}))
        )
        if len(out) >= count:
            return out
    i = 0
    while len(out) < count:
        base = bases[i % len(bases)]
        i += 1
        f = _entry_endomorphism(base, field, rng)
        pi, pj = rng.sample([0, 1, 2], 2)
        a_p, e_p = _power(f, pi), _power(f, pj)
        inst = superdialgebra_to_bihom(base.instance, a_p, e_p, check=False)
        _gate(inst, f"twist-{base.name}-{pi}{pj}")
        out.append(
            CorpusEntry(
                f"twist-{base.name}-{pi}{pj}-{i}",
                inst,
                frozenset({"bihom", "twisted"}),
            )
        )
    return out


def twist_cases(
    seed: int, field, count: int
) -> list[tuple[CorpusEntry, GradedMap, GradedMap]]:
    """(instance, commuting multiplicative pair) cases for twist fuzzing."""
    rng = random.Random(seed)
    bases = _base_entries(field, rng, max(4, count // 5))
    cases = []
    i = 0
    while len(cases) < count:
        base = bases[i % len(bases)]
        i += 1
        f = _entry_endomorphism(base, field, rng)
        pi, pj = rng.randrange(3), rng.randrange(3)
        entry = CorpusEntry(
            f"case-{base.name}-{i}", base.instance, frozenset({"bihom", "base"})
        )
        cases.append((entry, _power(f, pi), _power(f, pj)))
    return cases


def invertible_pairs(
    seed: int, field, count: int
) -> list[tuple[DialgebraInstance, GradedMap, GradedMap]]:
    """Superdialgebras with invertible commuting multiplicative pairs."""
    rng = random.Random(seed)
    bases = _base_entries(field, rng, max(4, count // 3))
    out = []
    i = 0
    while len(out) < count:
        base = bases[i % len(bases)]
        i += 1
        f = _entry_endomorphism(base, field, rng)
        if rank(f.m) != f.space.dim:
            continue
        pi, pj = rng.randrange(3), rng.randrange(3)
        out.append((base.instance, _power(f, pi), _power(f, pj)))
    return out


def mutation_pool(seed: int, field, count: int) -> list[CorpusEntry]:
    """Nonzero instances rigid enough that a random flip is usually detected."""
    rng = random.Random(seed)
    rigid = ["matrix2", "triangular2", "grassmann2"]
    out = []
    i = 0
    while len(out) < count:
        name = rigid[i % len(rigid)]
        i += 1
        space, cube = _FAMILIES[name](field)
        if rng.randrange(2):
            g, g_inv = _random_parity_preserving_change(field, space, rng)
            cube = _conjugate_cube(field, space, cube, g, g_inv)
        t = ProductTensor(space, field, cube)
        inst = DialgebraInstance(
            space, t, t,
            GradedMap.identity(space, field),
            GradedMap.identity(space, field),
        )
        _gate(inst, f"mutpool-{name}-{i}")
        out.append(CorpusEntry(f"mutpool-{name}-{i}", inst, frozenset({"bihom"})))
    return out


def mutate(instance: DialgebraInstance, rng) -> tuple[DialgebraInstance, tuple]:
    """Flip one parity-allowed structure constant; returns (mutant, description)."""
    field = instance.field
    space = instance.space
    n = space.dim
    allowed = [
        (i, j, k)
        for i in range(n)
        for j in range(n)
        for k in range(n)
        if space.parity[k] == (space.parity[i] + space.parity[j]) % 2
    ]
    if not allowed:
        raise GenerationError("no parity-allowed slot to mutate")
    side = rng.choice(["left", "right"])
    i, j, k = rng.choice(allowed)
    t = instance.left if side == "left" else instance.right
    c = [[list(line) for line in plane] for plane in t.c]
    c[i][j][k] = c[i][j][k] + field.one
    new_t = ProductTensor(space, field, c)
    if side == "left":
        mutant = DialgebraInstance(
            space, new_t, instance.right, instance.alpha, instance.epsilon
        )
    else:
        mutant = DialgebraInstance(
            space, instance.left, new_t, instance.alpha, instance.epsilon
        )
    return mutant, (side, i, j, k)


def homogeneous_vector(space, field, rng, parity: int | None = None) -> tuple:
    """A random parity-homogeneous vector, nonzero when the parity occurs."""
    if parity is None:
        parity = rng.randrange(2)
    idxs = [i for i in range(space.dim) if space.parity[i] == parity]
    vec = [field.zero] * space.dim
    if idxs:
        for i in idxs:
            vec[i] = (
                field.of(rng.randint(-2, 2))
                if field.name == "Q"
                else field.of(rng.randrange(field.p))
            )
        if not any(vec):
            vec[rng.choice(idxs)] = field.one
    return tuple(vec)
