"""Derivation-type spaces as exact nullspaces of linear systems.

Sign conventions.  The default ("standard") places the Koszul sign on the
term where d has moved past p:

    d(p * q) = d(p) * W(q) + (-1)^(|d||p|) W(p) * d(q),   W = alpha^m eps^n.

"paper-dialgebra" places the sign on the d(p) * W(q) term instead.  The two
agree whenever d or p is even.  Generalized derivations weight the three
terms by fixed scalars (gamma, delta, lambda); the parameters are inputs,
never unknowns, so the problem stays linear.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import DimensionError, PreconditionError, SearchBoundError
from .fields import PrimeField
from .linalg import Matrix, nullspace, rref, solve
from .model import (
    DialgebraInstance,
    ParityMap,
    ProductTensor,
    SuperalgebraInstance,
    evaluate,
    hom_power,
)

STANDARD = "standard"
PAPER_DIALGEBRA = "paper-dialgebra"
CONVENTIONS = (STANDARD, PAPER_DIALGEBRA)


@dataclass(frozen=True)
class DerivationSignature:
    m: int
    n: int
    parity: int


@dataclass
class DerivationSpace:
    signature: DerivationSignature
    basis: list[ParityMap]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class GeneralizedParams:
    gamma: object
    delta: object
    lam: object


@dataclass
class QuasiPair:
    d: ParityMap
    d_prime: ParityMap


def pattern_slots(space, d_parity: int) -> list[tuple[int, int]]:
    """Matrix positions allowed for a map of the given parity."""
    return [
        (r, c)
        for r in range(space.dim)
        for c in range(space.dim)
        if space.parity[r] == (space.parity[c] + d_parity) % 2
    ]


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown sign convention {convention!r}")


def _slot_index(slots) -> dict:
    return {pos: i for i, pos in enumerate(slots)}


def _commutation_rows(g_matrix: Matrix, slots, index, field) -> list[list]:
    """Rows expressing D o G = G o D restricted to the slot pattern."""
    n = g_matrix.rows
    rows = []
    for l in range(n):
        for j in range(n):
            row = [field.zero] * len(slots)
            nonzero = False
            for k in range(n):
                coeff = g_matrix.entry(k, j)
                if coeff and (l, k) in index:
                    row[index[(l, k)]] = row[index[(l, k)]] + coeff
                    nonzero = True
                coeff = g_matrix.entry(l, k)
                if coeff and (k, j) in index:
                    row[index[(k, j)]] = row[index[(k, j)]] - coeff
                    nonzero = True
            if nonzero:
                rows.append(row)
    return rows


def _leibniz_rows(
    t: ProductTensor,
    w: Matrix,
    d_parity: int,
    slots,
    index,
    field,
    gamma,
    delta,
    lam,
    convention: str,
    rhs_offset: int = 0,
    lhs_offset: int = 0,
    width: int | None = None,
) -> list[list]:
    """Rows of gamma d(p*q) = delta d(p)*W(q) + sign lambda W(p)*d(q).

    `lhs_offset` locates the unknown carrying d(p*q) (d' for quasi pairs);
    `rhs_offset` locates the unknown inside the product terms.
    """
    n = t.space.dim
    if width is None:
        width = len(slots)
    rows = []
    for i in range(n):
        sgn = field.sign(d_parity * t.space.parity[i])
        first_w = delta * (sgn if convention == PAPER_DIALGEBRA else field.one)
        second_w = lam * (sgn if convention == STANDARD else field.one)
        for j in range(n):
            prod_col = t.basis_product(i, j)
            for l in range(n):
                row = [field.zero] * width
                nonzero = False
                for k, coeff in enumerate(prod_col):
                    if coeff and (l, k) in index:
                        pos = lhs_offset + index[(l, k)]
                        row[pos] = row[pos] + gamma * coeff
                        nonzero = True
                for (a, b), nz in t._pairs.items():
                    coeff = next((v for k2, v in nz if k2 == l), None)
                    if coeff is None:
                        continue
                    wbj = w.entry(b, j)
                    if wbj and (a, i) in index:
                        pos = rhs_offset + index[(a, i)]
                        row[pos] = row[pos] - first_w * coeff * wbj
                        nonzero = True
                    wai = w.entry(a, i)
                    if wai and (b, j) in index:
                        pos = rhs_offset + index[(b, j)]
                        row[pos] = row[pos] - second_w * coeff * wai
                        nonzero = True
                if nonzero:
                    rows.append(row)
    return rows


def _nullspace_maps(rows, slots, space, d_parity, field) -> list[ParityMap]:
    if not slots:
        return []
    if rows:
        system = Matrix(field, rows)
        kernel = nullspace(system)
    else:
        kernel = [
            Matrix.column(
                field,
                [field.one if i == j else field.zero for i in range(len(slots))],
            )
            for j in range(len(slots))
        ]
    maps = []
    for vec in kernel:
        flat = vec.vector()
        m = [[field.zero] * space.dim for _ in range(space.dim)]
        for (r, c), v in zip(slots, flat):
            m[r][c] = v
        maps.append(ParityMap(space, d_parity, Matrix(field, m)))
    return maps


def _twist_map(alpha, epsilon, m: int, n: int) -> Matrix:
    return hom_power(alpha, epsilon, m, n).m


def solve_superalgebra_derivations(
    a: SuperalgebraInstance, m: int, n: int, parity: int
) -> DerivationSpace:
    """All maps d with d commuting with both structure maps and satisfying the
    twisted super-Leibniz rule for the single product."""
    field = a.field
    slots = pattern_slots(a.space, parity)
    index = _slot_index(slots)
    w = _twist_map(a.alpha, a.epsilon, m, n)
    rows = _commutation_rows(a.alpha.m, slots, index, field)
    rows += _commutation_rows(a.epsilon.m, slots, index, field)
    rows += _leibniz_rows(
        a.prod, w, parity, slots, index, field,
        field.one, field.one, field.one, STANDARD,
    )
    basis = _nullspace_maps(rows, slots, a.space, parity, field)
    return DerivationSpace(DerivationSignature(m, n, parity), basis)


def solve_dialgebra_derivations(
    h: DialgebraInstance, m: int, n: int, parity: int, convention: str = STANDARD
) -> DerivationSpace:
    """Derivation space of a dialgebra instance: both products constrained."""
    _check_convention(convention)
    field = h.field
    slots = pattern_slots(h.space, parity)
    index = _slot_index(slots)
    w = _twist_map(h.alpha, h.epsilon, m, n)
    rows = _commutation_rows(h.alpha.m, slots, index, field)
    rows += _commutation_rows(h.epsilon.m, slots, index, field)
    for t in (h.left, h.right):
        rows += _leibniz_rows(
            t, w, parity, slots, index, field,
            field.one, field.one, field.one, convention,
        )
    basis = _nullspace_maps(rows, slots, h.space, parity, field)
    return DerivationSpace(DerivationSignature(m, n, parity), basis)


def solve_generalized(
    h: DialgebraInstance,
    params: GeneralizedParams,
    m: int,
    n: int,
    parity: int,
    convention: str = STANDARD,
) -> DerivationSpace:
    """Weighted Leibniz rule with fixed scalars (gamma, delta, lambda)."""
    _check_convention(convention)
    field = h.field
    gamma, delta, lam = (
        field.of(params.gamma),
        field.of(params.delta),
        field.of(params.lam),
    )
    slots = pattern_slots(h.space, parity)
    index = _slot_index(slots)
    w = _twist_map(h.alpha, h.epsilon, m, n)
    rows = _commutation_rows(h.alpha.m, slots, index, field)
    rows += _commutation_rows(h.epsilon.m, slots, index, field)
    for t in (h.left, h.right):
        rows += _leibniz_rows(
            t, w, parity, slots, index, field, gamma, delta, lam, convention
        )
    basis = _nullspace_maps(rows, slots, h.space, parity, field)
    return DerivationSpace(DerivationSignature(m, n, parity), basis)


def solve_quasi(
    h: DialgebraInstance, m: int, n: int, parity: int, convention: str = STANDARD
) -> list[QuasiPair]:
    """Joint solutions (d, d') where d' replaces d(p*q) in the Leibniz rule."""
    _check_convention(convention)
    field = h.field
    slots = pattern_slots(h.space, parity)
    index = _slot_index(slots)
    k = len(slots)
    if k == 0:
        return []
    w = _twist_map(h.alpha, h.epsilon, m, n)
    rows = []
    for block in (0, k):
        for g in (h.alpha.m, h.epsilon.m):
            for row in _commutation_rows(g, slots, index, field):
                padded = [field.zero] * (2 * k)
                padded[block : block + k] = row
                rows.append(padded)
    for t in (h.left, h.right):
        rows += _leibniz_rows(
            t, w, parity, slots, index, field,
            field.one, field.one, field.one, convention,
            rhs_offset=0, lhs_offset=k, width=2 * k,
        )
    if rows:
        kernel = nullspace(Matrix(field, rows))
    else:
        kernel = [
            Matrix.column(
                field,
                [field.one if i == j else field.zero for i in range(2 * k)],
            )
            for j in range(2 * k)
        ]
    pairs = []
    for vec in kernel:
        flat = vec.vector()
        md = [[field.zero] * h.space.dim for _ in range(h.space.dim)]
        mdp = [[field.zero] * h.space.dim for _ in range(h.space.dim)]
        for (r, c), v in zip(slots, flat[:k]):
            md[r][c] = v
        for (r, c), v in zip(slots, flat[k:]):
            mdp[r][c] = v
        pairs.append(
            QuasiPair(
                ParityMap(h.space, parity, Matrix(field, md)),
                ParityMap(h.space, parity, Matrix(field, mdp)),
            )
        )
    return pairs


def qder_projection_basis(pairs: list[QuasiPair]) -> list[ParityMap]:
    """A basis of the span of the d-components of quasi-derivation pairs."""
    if not pairs:
        return []
    field = pairs[0].d.m.field
    space = pairs[0].d.space
    n = space.dim
    rows = [
        [p.d.m.entry(i, j) for i in range(n) for j in range(n)] for p in pairs
    ]
    reduced, pivots = rref(Matrix(field, rows))
    out = []
    for r in range(len(pivots)):
        flat = reduced.row(r)
        m = [[flat[i * n + j] for j in range(n)] for i in range(n)]
        out.append(ParityMap(space, pairs[0].d.parity, Matrix(field, m)))
    return out


# ---------------------------------------------------------------------------
# bracket and verification


def bracket(d: ParityMap, d_prime: ParityMap) -> ParityMap:
    """Super-commutator [d, d'] = d d' - (-1)^(|d||d'|) d' d."""
    if d.space != d_prime.space:
        raise DimensionError("bracket of maps on different spaces")
    field = d.m.field
    sgn = field.sign(d.parity * d_prime.parity)
    mat = (d.m @ d_prime.m) - (d_prime.m @ d.m).scale(sgn)
    return ParityMap(d.space, (d.parity + d_prime.parity) % 2, mat)


def derivation_violations(
    h: DialgebraInstance,
    d: ParityMap,
    m: int,
    n: int,
    convention: str = STANDARD,
    first_only: bool = False,
) -> list[tuple]:
    """Direct evaluation of the dialgebra derivation identities for one map.

    Independent of the assembled linear system; used by the brute-force
    oracle and by closure verification.
    """
    _check_convention(convention)
    field = h.field
    viols: list[tuple] = []
    for tag, g in (("alpha", h.alpha.m), ("epsilon", h.epsilon.m)):
        if d.m @ g != g @ d.m:
            viols.append((f"commutes_{tag}", ()))
            if first_only:
                return viols
    w = _twist_map(h.alpha, h.epsilon, m, n)
    dim = h.space.dim
    dcols = [d.m.col(j) for j in range(dim)]
    wcols = [w.col(j) for j in range(dim)]
    for tag, t in (("left", h.left), ("right", h.right)):
        for i in range(dim):
            sgn = field.sign(d.parity * h.space.parity[i])
            s_first = sgn if convention == PAPER_DIALGEBRA else field.one
            s_second = sgn if convention == STANDARD else field.one
            for j in range(dim):
                lhs = d.m.apply(t.basis_product(i, j))
                first = evaluate(t, dcols[i], wcols[j])
                second = evaluate(t, wcols[i], dcols[j])
                rhs = tuple(
                    s_first * x + s_second * y for x, y in zip(first, second)
                )
                if lhs != rhs:
                    viols.append((f"leibniz_{tag}", (i, j)))
                    if first_only:
                        return viols
    return viols


def quasi_pair_violations(
    h: DialgebraInstance,
    d: ParityMap,
    d_prime: ParityMap,
    m: int,
    n: int,
    convention: str = STANDARD,
) -> list[tuple]:
    """Direct evaluation of the quasi-derivation conditions for a pair (d, d')."""
    _check_convention(convention)
    field = h.field
    viols: list[tuple] = []
    for label, g in (("alpha", h.alpha.m), ("epsilon", h.epsilon.m)):
        if d.m @ g != g @ d.m:
            viols.append((f"d_commutes_{label}", ()))
        if d_prime.m @ g != g @ d_prime.m:
            viols.append((f"d_prime_commutes_{label}", ()))
    w = _twist_map(h.alpha, h.epsilon, m, n)
    dim = h.space.dim
    dcols = [d.m.col(j) for j in range(dim)]
    wcols = [w.col(j) for j in range(dim)]
    for tag, t in (("left", h.left), ("right", h.right)):
        for i in range(dim):
            sgn = field.sign(d.parity * h.space.parity[i])
            s_first = sgn if convention == PAPER_DIALGEBRA else field.one
            s_second = sgn if convention == STANDARD else field.one
            for j in range(dim):
                lhs = d_prime.m.apply(t.basis_product(i, j))
                first = evaluate(t, dcols[i], wcols[j])
                second = evaluate(t, wcols[i], dcols[j])
                rhs = tuple(
                    s_first * x + s_second * y for x, y in zip(first, second)
                )
                if lhs != rhs:
                    viols.append((f"quasi_{tag}", (i, j)))
    return viols


def generalized_violations(
    h: DialgebraInstance,
    d: ParityMap,
    params: GeneralizedParams,
    m: int,
    n: int,
    convention: str = STANDARD,
    first_only: bool = False,
) -> list[tuple]:
    """Direct evaluation of the weighted Leibniz identities for one map."""
    _check_convention(convention)
    field = h.field
    gamma, delta, lam = (
        field.of(params.gamma),
        field.of(params.delta),
        field.of(params.lam),
    )
    viols: list[tuple] = []
    for tag, g in (("alpha", h.alpha.m), ("epsilon", h.epsilon.m)):
        if d.m @ g != g @ d.m:
            viols.append((f"commutes_{tag}", ()))
            if first_only:
                return viols
    w = _twist_map(h.alpha, h.epsilon, m, n)
    dim = h.space.dim
    dcols = [d.m.col(j) for j in range(dim)]
    wcols = [w.col(j) for j in range(dim)]
    for tag, t in (("left", h.left), ("right", h.right)):
        for i in range(dim):
            sgn = field.sign(d.parity * h.space.parity[i])
            w_first = delta * (sgn if convention == PAPER_DIALGEBRA else field.one)
            w_second = lam * (sgn if convention == STANDARD else field.one)
            for j in range(dim):
                lhs = d.m.apply(t.basis_product(i, j))
                first = evaluate(t, dcols[i], wcols[j])
                second = evaluate(t, wcols[i], dcols[j])
                if tuple(gamma * x for x in lhs) != tuple(
                    w_first * x + w_second * y for x, y in zip(first, second)
                ):
                    viols.append((f"generalized_{tag}", (i, j)))
                    if first_only:
                        return viols
    return viols


def in_span(space: DerivationSpace, d: ParityMap) -> tuple[bool, list | None]:
    """Membership of d in the span of a solved basis, with coordinates."""
    if not space.basis:
        zero = d.m.is_zero()
        return zero, [] if zero else None
    field = d.m.field
    n = d.space.dim
    cols = [
        [b.m.entry(i, j) for i in range(n) for j in range(n)] for b in space.basis
    ]
    target = Matrix.column(
        field, [d.m.entry(i, j) for i in range(n) for j in range(n)]
    )
    system = Matrix.from_columns(field, cols, n * n)
    result = solve(system, target)
    if result is None:
        return False, None
    return True, list(result.vector())


@dataclass
class ClosureEntry:
    index_pair: tuple[int, int]
    constraints_ok: bool
    in_span: bool
    coords: list | None
    violations: list = dc_field(default_factory=list)


@dataclass
class ClosureReport:
    target_signature: DerivationSignature
    target_dim: int
    entries: list[ClosureEntry]

    @property
    def ok(self) -> bool:
        return all(e.constraints_ok and e.in_span for e in self.entries)


def verify_bracket_closure(
    h: DialgebraInstance,
    space1: DerivationSpace,
    space2: DerivationSpace,
    convention: str = STANDARD,
) -> ClosureReport:
    """Check every bracket of basis pairs lands in the solved target space."""
    s1, s2 = space1.signature, space2.signature
    target_parity = (s1.parity + s2.parity) % 2
    target = solve_dialgebra_derivations(
        h, s1.m + s2.m, s1.n + s2.n, target_parity, convention
    )
    entries = []
    for i, d in enumerate(space1.basis):
        for j, dp in enumerate(space2.basis):
            b = bracket(d, dp)
            viols = derivation_violations(
                h, b, s1.m + s2.m, s1.n + s2.n, convention
            )
            member, coords = in_span(target, b)
            entries.append(
                ClosureEntry((i, j), not viols, member, coords, viols)
            )
    return ClosureReport(target.signature, target.dim, entries)


def verify_generalized_bracket(
    h: DialgebraInstance,
    space1: DerivationSpace,
    params1: GeneralizedParams,
    space2: DerivationSpace,
    params2: GeneralizedParams,
    convention: str = STANDARD,
) -> ClosureReport:
    """Membership of brackets in the parameter-sum generalized space.

    Failures are falsification evidence for the instance at hand, not
    library errors; callers record them.
    """
    field = h.field
    s1, s2 = space1.signature, space2.signature
    summed = GeneralizedParams(
        field.of(params1.gamma) + field.of(params2.gamma),
        field.of(params1.delta) + field.of(params2.delta),
        field.of(params1.lam) + field.of(params2.lam),
    )
    target_parity = (s1.parity + s2.parity) % 2
    target = solve_generalized(
        h, summed, s1.m + s2.m, s1.n + s2.n, target_parity, convention
    )
    entries = []
    for i, d in enumerate(space1.basis):
        for j, dp in enumerate(space2.basis):
            b = bracket(d, dp)
            viols = generalized_violations(
                h, b, summed, s1.m + s2.m, s1.n + s2.n, convention
            )
            member, coords = in_span(target, b)
            entries.append(
                ClosureEntry((i, j), not viols, member, coords, viols)
            )
    return ClosureReport(target.signature, target.dim, entries)


# ---------------------------------------------------------------------------
# inner derivations


@dataclass
class AdResult:
    map: ParityMap
    left_violations: list
    right_violations: list

    @property
    def left_leibniz_ok(self) -> bool:
        return not self.left_violations

    @property
    def right_leibniz_ok(self) -> bool:
        return not self.right_violations


def _vector_parity(space, vec) -> int:
    parities = {space.parity[i] for i, x in enumerate(vec) if x}
    if len(parities) > 1:
        raise PreconditionError("homogeneous_vector", tuple(sorted(parities)))
    return parities.pop() if parities else 0


def ad_operator(h: DialgebraInstance, r) -> AdResult:
    """The inner map p -> p -| eps(r) - (-1)^(|p||r|) alpha(r) |- p.

    Requires alpha = eps as matrices and homogeneous r.  The plain left
    Leibniz identity is verified; the right-product status is reported
    alongside without being asserted.
    """
    if h.alpha.m != h.epsilon.m:
        raise PreconditionError("alpha_equals_epsilon")
    field = h.field
    n = h.space.dim
    if len(r) != n:
        raise DimensionError(f"vector of length {len(r)} on dimension {n}")
    r = tuple(field.of(x) for x in r)
    r_parity = _vector_parity(h.space, r)
    er = h.epsilon.apply(r)
    ar = h.alpha.apply(r)
    cols = []
    for i in range(n):
        unit = _unit(field, n, i)
        sgn = field.sign(h.space.parity[i] * r_parity)
        first = evaluate(h.left, unit, er)
        second = evaluate(h.right, ar, unit)
        cols.append(tuple(x - sgn * y for x, y in zip(first, second)))
    ad = ParityMap(h.space, r_parity, Matrix.from_columns(field, cols, n))

    def plain_leibniz(t: ProductTensor) -> list[tuple[int, int]]:
        bad = []
        adcols = [ad.m.col(j) for j in range(n)]
        for i in range(n):
            for j in range(n):
                lhs = ad.m.apply(t.basis_product(i, j))
                rhs_first = evaluate(t, adcols[i], _unit(field, n, j))
                rhs_second = evaluate(t, _unit(field, n, i), adcols[j])
                if lhs != tuple(x + y for x, y in zip(rhs_first, rhs_second)):
                    bad.append((i, j))
        return bad

    return AdResult(ad, plain_leibniz(h.left), plain_leibniz(h.right))


def _unit(field, n: int, i: int) -> tuple:
    return tuple(field.one if t == i else field.zero for t in range(n))


# ---------------------------------------------------------------------------
# brute-force oracle


def brute_force_derivations(
    h: DialgebraInstance,
    m: int,
    n: int,
    parity: int,
    convention: str = STANDARD,
    bound: int = 10**7,
) -> DerivationSpace:
    """Exhaustive enumeration of derivation candidates over a prime field.

    Filters every pattern matrix by direct identity evaluation; the span of
    the surviving set is returned.  Errors when p^(free entries) exceeds the
    bound.
    """
    field = h.field
    if not isinstance(field, PrimeField):
        raise PreconditionError("prime_field", detail="oracle needs a finite field")
    slots = pattern_slots(h.space, parity)
    total = field.p ** len(slots)
    if total > bound:
        raise SearchBoundError(
            f"{field.p}^{len(slots)} = {total} candidates exceed bound {bound}"
        )
    dim = h.space.dim
    solutions = []
    for values in itertools.product(range(field.p), repeat=len(slots)):
        rows = [[field.zero] * dim for _ in range(dim)]
        for (r, c), v in zip(slots, values):
            rows[r][c] = field.of(v)
        cand = ParityMap(h.space, parity, Matrix(field, rows))
        if not derivation_violations(h, cand, m, n, convention, first_only=True):
            solutions.append(
                [cand.m.entry(i, j) for i in range(dim) for j in range(dim)]
            )
    basis = []
    if solutions and dim:
        reduced, pivots = rref(Matrix(field, solutions))
        for r in range(len(pivots)):
            flat = reduced.row(r)
            mat = [[flat[i * dim + j] for j in range(dim)] for i in range(dim)]
            basis.append(ParityMap(h.space, parity, Matrix(field, mat)))
    return DerivationSpace(DerivationSignature(m, n, parity), basis)


# ---------------------------------------------------------------------------
# serialization of solved spaces


def space_to_dict(space: DerivationSpace, instance_field) -> dict:
    return {
        "signature": {
            "m": space.signature.m,
            "n": space.signature.n,
            "parity": space.signature.parity,
        },
        "dim": space.dim,
        "basis": [
            [[instance_field.fmt(x) for x in row] for row in b.m.data]
            for b in space.basis
        ],
    }


def space_from_dict(obj: dict, space, field) -> DerivationSpace:
    sig = obj["signature"]
    basis = [
        ParityMap(space, sig["parity"], Matrix(field, rows)) for rows in obj["basis"]
    ]
    return DerivationSpace(
        DerivationSignature(sig["m"], sig["n"], sig["parity"]), basis
    )
