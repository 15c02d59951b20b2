"""Algebra-producing constructions: twists, quotients, ideals, morphisms.

The twist hypothesis is enforced in its strong form: the twisting pair must
be multiplicative for both products, commute with each other, and commute
with both structure maps.  The weaker reading (mere commuting endomorphisms)
does not support the rewriting steps that make the twisted axioms close.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .checks import (
    check_bihom_assoc_superalgebra,
    check_bihom_superdialgebra,
    check_hom_superdialgebra,
    check_multiplicative,
    check_regular,
    check_superdialgebra,
)
from .errors import DimensionError, PreconditionError, SingularMapError
from .linalg import Matrix, extend_to_basis, inverse, rref
from .model import (
    DialgebraInstance,
    DifferentialInstance,
    GradedMap,
    ProductTensor,
    SuperalgebraInstance,
    SuperSpace,
    evaluate,
    hom_power,
)


# ---------------------------------------------------------------------------
# twisting


def _is_endomorphism(g: GradedMap, t: ProductTensor) -> tuple[int, int] | None:
    """First basis pair where g fails to be multiplicative for t, else None."""
    n = g.space.dim
    cols = [g.m.col(j) for j in range(n)]
    for i in range(n):
        for j in range(n):
            if g.m.apply(t.basis_product(i, j)) != evaluate(t, cols[i], cols[j]):
                return (i, j)
    return None


def _twist_tensor(t: ProductTensor, a: GradedMap, e: GradedMap) -> ProductTensor:
    """The tensor of (p, q) -> t(a(p), e(q))."""
    n = t.space.dim
    acols = [a.m.col(j) for j in range(n)]
    ecols = [e.m.col(j) for j in range(n)]
    c = [[list(evaluate(t, acols[i], ecols[j])) for j in range(n)] for i in range(n)]
    return ProductTensor(t.space, t.field, c)


def _require_commuting(name: str, f: Matrix, g: Matrix) -> None:
    if f @ g != g @ f:
        raise PreconditionError(name)


def yau_twist(
    h: DialgebraInstance,
    a_prime: GradedMap,
    e_prime: GradedMap,
    check: bool = True,
) -> DialgebraInstance:
    """Twist both products by (a', e') and compose the structure maps.

    Returns (H, left o (a' x e'), right o (a' x e'), alpha a', epsilon e').
    """
    if a_prime.space != h.space or e_prime.space != h.space:
        raise DimensionError("twisting maps live on a different space")
    if check:
        base = check_bihom_superdialgebra(h)
        if not base.ok:
            first = base.violations[0]
            raise PreconditionError(
                "input_bihom_superdialgebra",
                witness=first.indices,
                detail=f"axiom {first.axiom} fails",
            )
        for label, g in (("a_prime", a_prime), ("e_prime", e_prime)):
            for side, t in (("left", h.left), ("right", h.right)):
                bad = _is_endomorphism(g, t)
                if bad is not None:
                    raise PreconditionError(f"{label}_multiplicative_{side}", bad)
        _require_commuting("a_prime_commutes_e_prime", a_prime.m, e_prime.m)
        _require_commuting("a_prime_commutes_alpha", a_prime.m, h.alpha.m)
        _require_commuting("a_prime_commutes_epsilon", a_prime.m, h.epsilon.m)
        _require_commuting("e_prime_commutes_alpha", e_prime.m, h.alpha.m)
        _require_commuting("e_prime_commutes_epsilon", e_prime.m, h.epsilon.m)
    return DialgebraInstance(
        h.space,
        _twist_tensor(h.left, a_prime, e_prime),
        _twist_tensor(h.right, a_prime, e_prime),
        h.alpha.compose(a_prime),
        h.epsilon.compose(e_prime),
    )


def power_twist(h: DialgebraInstance, n: int, check: bool = True) -> DialgebraInstance:
    """Twist by (alpha^n, epsilon^n), yielding structure maps alpha^(n+1), epsilon^(n+1)."""
    if n < 0:
        raise PreconditionError("nonnegative_power", (n,))
    if check:
        ok, report = check_multiplicative(h)
        if not ok:
            first = report.violations[0]
            raise PreconditionError("multiplicative", first.indices)
    a_n = hom_power(h.alpha, h.epsilon, n, 0)
    e_n = hom_power(h.alpha, h.epsilon, 0, n)
    return yau_twist(h, a_n, e_n, check=check)


def hom_to_bihom(
    h: DialgebraInstance, e: GradedMap, check: bool = True
) -> DialgebraInstance:
    """Turn a Hom-superdialgebra into a BiHom one by twisting with (alpha, e).

    The output is (H, left o (alpha x e), right o (alpha x e), alpha^2,
    alpha o e): the second structure map must pick up the alpha factor for
    the twisted axioms to close.
    """
    if check:
        rep = check_hom_superdialgebra(h)
        if not rep.ok:
            first = rep.violations[0]
            raise PreconditionError(
                "input_hom_superdialgebra",
                witness=first.indices,
                detail=f"axiom {first.axiom} fails",
            )
        for side, t in (("left", h.left), ("right", h.right)):
            bad = _is_endomorphism(e, t)
            if bad is not None:
                raise PreconditionError(f"e_multiplicative_{side}", bad)
        _require_commuting("e_commutes_alpha", e.m, h.alpha.m)
    as_bihom = DialgebraInstance(h.space, h.left, h.right, h.alpha, h.alpha)
    return yau_twist(as_bihom, h.alpha, e, check=False)


def untwist_regular(h: DialgebraInstance, check: bool = True) -> DialgebraInstance:
    """Invert the structure maps out of the products; the result has identity maps."""
    if check and not check_regular(h):
        raise SingularMapError("instance is not regular; cannot untwist")
    if check:
        rep = check_bihom_superdialgebra(h)
        if not rep.ok:
            first = rep.violations[0]
            raise PreconditionError(
                "input_bihom_superdialgebra",
                witness=first.indices,
                detail=f"axiom {first.axiom} fails",
            )
    a_inv = GradedMap(h.space, h.field, inverse(h.alpha.m))
    e_inv = GradedMap(h.space, h.field, inverse(h.epsilon.m))
    ident = GradedMap.identity(h.space, h.field)
    return DialgebraInstance(
        h.space,
        _twist_tensor(h.left, a_inv, e_inv),
        _twist_tensor(h.right, a_inv, e_inv),
        ident,
        ident,
    )


def superdialgebra_to_bihom(
    d: DialgebraInstance, a: GradedMap, e: GradedMap, check: bool = True
) -> DialgebraInstance:
    """Twist a plain superdialgebra by a commuting multiplicative pair (a, e)."""
    if check:
        rep = check_superdialgebra(d)
        if not rep.ok:
            first = rep.violations[0]
            raise PreconditionError(
                "input_superdialgebra",
                witness=first.indices,
                detail=f"axiom {first.axiom} fails",
            )
        for label, g in (("a", a), ("e", e)):
            for side, t in (("left", d.left), ("right", d.right)):
                bad = _is_endomorphism(g, t)
                if bad is not None:
                    raise PreconditionError(f"{label}_multiplicative_{side}", bad)
        _require_commuting("a_commutes_e", a.m, e.m)
    return DialgebraInstance(
        d.space,
        _twist_tensor(d.left, a, e),
        _twist_tensor(d.right, a, e),
        a,
        e,
    )


def from_associative(
    a: SuperalgebraInstance, check: bool = True
) -> DialgebraInstance:
    """Embed a BiHom-associative superalgebra as the dialgebra with -| = |- = product."""
    if check:
        rep = check_bihom_assoc_superalgebra(a)
        if not rep.ok:
            first = rep.violations[0]
            raise PreconditionError(
                "input_bihom_assoc_superalgebra",
                witness=first.indices,
                detail=f"axiom {first.axiom} fails",
            )
    return DialgebraInstance(a.space, a.prod, a.prod, a.alpha, a.epsilon)


def from_differential(di: DifferentialInstance, check: bool = True) -> DialgebraInstance:
    """Build the dialgebra p -| q = alpha(p).d(q), p |- q = d(p).eps(q).

    Hypotheses verified: the base is BiHom-associative, d^2 = 0, d commutes
    with both structure maps, the graded Leibniz rule holds, and alpha and
    epsilon are idempotent.
    """
    base, d = di.base, di.d
    n = base.space.dim
    fld = base.field
    if check:
        rep = check_bihom_assoc_superalgebra(base)
        if not rep.ok:
            first = rep.violations[0]
            raise PreconditionError(
                "base_bihom_assoc_superalgebra",
                witness=first.indices,
                detail=f"axiom {first.axiom} fails",
            )
        if not (d.m @ d.m).is_zero():
            raise PreconditionError("d_squared_zero")
        _require_commuting("d_commutes_alpha", d.m, base.alpha.m)
        _require_commuting("d_commutes_epsilon", d.m, base.epsilon.m)
        if base.alpha.m @ base.alpha.m != base.alpha.m:
            raise PreconditionError("alpha_idempotent")
        if base.epsilon.m @ base.epsilon.m != base.epsilon.m:
            raise PreconditionError("epsilon_idempotent")
        dcols = [d.m.col(j) for j in range(n)]
        for i in range(n):
            s = fld.sign(d.parity * base.space.parity[i])
            for j in range(n):
                lhs = d.m.apply(base.prod.basis_product(i, j))
                first_term = evaluate(base.prod, dcols[i], _basis(fld, n, j))
                second = evaluate(base.prod, _basis(fld, n, i), dcols[j])
                rhs = tuple(x + s * y for x, y in zip(first_term, second))
                if lhs != rhs:
                    raise PreconditionError("leibniz", (i, j))
    left = _twist_tensor(
        base.prod, base.alpha, GradedMap(base.space, fld, d.m)
    )
    right = _twist_tensor(
        base.prod, GradedMap(base.space, fld, d.m), base.epsilon
    )
    return DialgebraInstance(base.space, left, right, base.alpha, base.epsilon)


def _basis(field, n: int, i: int) -> tuple:
    return tuple(field.one if t == i else field.zero for t in range(n))


# ---------------------------------------------------------------------------
# subspaces, ideals, quotients


@dataclass
class Subspace:
    """A subspace held as a reduced row-echelon basis (rows of a matrix)."""

    field: object
    ambient_dim: int
    basis: Matrix  # rank x dim, rref rows
    pivots: tuple[int, ...]

    @classmethod
    def from_vectors(cls, field, ambient_dim: int, vectors) -> "Subspace":
        rows = [list(v.vector() if isinstance(v, Matrix) else v) for v in vectors]
        if not rows:
            return cls(field, ambient_dim, Matrix.zeros(field, 0, ambient_dim), ())
        m = Matrix(field, rows)
        if m.cols != ambient_dim:
            raise DimensionError("spanning vector of wrong length")
        reduced, pivots = rref(m)
        kept = [list(reduced.data[i]) for i in range(len(pivots))]
        return cls(
            field,
            ambient_dim,
            Matrix(field, kept) if kept else Matrix.zeros(field, 0, ambient_dim),
            pivots,
        )

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def contains(self, vec) -> bool:
        """Exact membership by reduction against the rref basis."""
        v = list(vec.vector() if isinstance(vec, Matrix) else vec)
        for row_idx, pc in enumerate(self.pivots):
            if v[pc]:
                f = v[pc]
                row = self.basis.data[row_idx]
                v = [x - f * y for x, y in zip(v, row)]
        return not any(v)

    def basis_vectors(self) -> list[tuple]:
        return [self.basis.row(i) for i in range(self.dim)]

    def union(self, other: "Subspace") -> "Subspace":
        vecs = list(self.basis_vectors()) + list(other.basis_vectors())
        return Subspace.from_vectors(self.field, self.ambient_dim, vecs)

    def homogeneous_basis(self, parity: tuple[int, ...]) -> list[tuple] | None:
        """A parity-homogeneous basis, or None when the subspace is not graded."""
        fld = self.field
        split: list[tuple] = []
        for row in self.basis_vectors():
            even = tuple(x if parity[i] == 0 else fld.zero for i, x in enumerate(row))
            odd = tuple(x if parity[i] == 1 else fld.zero for i, x in enumerate(row))
            if not self.contains(even) or not self.contains(odd):
                return None
            if any(even):
                split.append(even)
            if any(odd):
                split.append(odd)
        sub = Subspace.from_vectors(fld, self.ambient_dim, split)
        if sub.dim != self.dim:
            return None
        # rref of a homogeneous collection can mix parities only if the input
        # did; re-split row by row to keep homogeneity
        out: list[tuple] = []
        seen = Subspace.from_vectors(fld, self.ambient_dim, [])
        for v in split:
            if not seen.contains(v):
                out.append(v)
                seen = Subspace.from_vectors(
                    fld, self.ambient_dim, out
                )
        return out


@dataclass
class IdealWitness:
    """Classification flags of a subspace inside a dialgebra instance."""

    subspace: Subspace
    is_subalgebra: bool
    is_left: bool
    is_right: bool
    is_two_sided: bool
    offending: dict = dc_field(default_factory=dict)

    def to_dict(self, field) -> dict:
        return {
            "dim": self.subspace.dim,
            "is_subalgebra": self.is_subalgebra,
            "is_left": self.is_left,
            "is_right": self.is_right,
            "is_two_sided": self.is_two_sided,
            "offending": {k: list(v) for k, v in self.offending.items()},
            "basis": [
                [field.fmt(x) for x in row] for row in self.subspace.basis_vectors()
            ],
        }


def classify_subspace(h: DialgebraInstance, vectors) -> IdealWitness:
    """Compute subalgebra / left / right / two-sided flags by membership tests."""
    fld = h.field
    n = h.space.dim
    sub = Subspace.from_vectors(fld, n, vectors)
    offending: dict = {}

    def stable_under(g: GradedMap, tag: str) -> bool:
        for idx, v in enumerate(sub.basis_vectors()):
            if not sub.contains(g.apply(v)):
                offending[tag] = (idx,)
                return False
        return True

    stable = stable_under(h.alpha, "alpha_stability") and stable_under(
        h.epsilon, "epsilon_stability"
    )

    def closed_internal() -> bool:
        for i, v in enumerate(sub.basis_vectors()):
            for j, w in enumerate(sub.basis_vectors()):
                for tag, t in (("left_product", h.left), ("right_product", h.right)):
                    if not sub.contains(evaluate(t, v, w)):
                        offending[f"internal_{tag}"] = (i, j)
                        return False
        return True

    def absorbs(side: str) -> bool:
        units = [_basis(fld, n, j) for j in range(n)]
        for i, v in enumerate(sub.basis_vectors()):
            for j, u in enumerate(units):
                for tag, t in (("left_product", h.left), ("right_product", h.right)):
                    prod = evaluate(t, v, u) if side == "left" else evaluate(t, u, v)
                    if not sub.contains(prod):
                        offending[f"{side}_{tag}"] = (i, j)
                        return False
        return True

    is_sub = stable and closed_internal()
    left = is_sub and absorbs("left")
    right = is_sub and absorbs("right")
    return IdealWitness(sub, is_sub, left, right, left and right, offending)


def ideal_sum(h: DialgebraInstance, t1: IdealWitness, t2: IdealWitness) -> IdealWitness:
    """Classify the span-union of two subspaces."""
    joined = t1.subspace.union(t2.subspace)
    return classify_subspace(h, joined.basis_vectors())


def ideal_closure(h: DialgebraInstance, vectors) -> IdealWitness:
    """Smallest two-sided ideal containing the given vectors (by saturation)."""
    fld = h.field
    n = h.space.dim
    sub = Subspace.from_vectors(fld, n, vectors)
    units = [_basis(fld, n, j) for j in range(n)]
    changed = True
    while changed:
        changed = False
        new = list(sub.basis_vectors())
        for v in sub.basis_vectors():
            candidates = [h.alpha.apply(v), h.epsilon.apply(v)]
            for u in units:
                for t in (h.left, h.right):
                    candidates.append(evaluate(t, v, u))
                    candidates.append(evaluate(t, u, v))
            for c in candidates:
                if any(c) and not sub.contains(c):
                    new.append(c)
                    changed = True
        if changed:
            sub = Subspace.from_vectors(fld, n, new)
    return classify_subspace(h, sub.basis_vectors())


def quotient(h: DialgebraInstance, witness: IdealWitness) -> tuple[DialgebraInstance, Matrix]:
    """Quotient by a two-sided graded ideal; returns the instance and projection.

    Basis choice: a homogeneous basis of the ideal first, completed greedily
    with standard basis vectors, so the induced structure constants are
    deterministic.
    """
    if not witness.is_two_sided:
        raise PreconditionError("two_sided_ideal", detail="classification failed")
    fld = h.field
    n = h.space.dim
    homog = witness.subspace.homogeneous_basis(h.space.parity)
    if homog is None:
        raise PreconditionError(
            "graded_ideal", detail="ideal has no parity-homogeneous basis"
        )
    ideal_cols = [Matrix.column(fld, v) for v in homog]
    full = extend_to_basis(ideal_cols, n, fld)
    k = len(ideal_cols)
    q_dim = n - k
    change = Matrix.from_columns(fld, [c.vector() for c in full], n) if full else None
    inv_change = inverse(change) if change is not None else None

    def project(vec) -> tuple:
        coords = inv_change.apply(vec)
        return tuple(coords[k:])

    comp_cols = full[k:]
    comp_parity = []
    for c in comp_cols:
        v = c.vector()
        idx = next(i for i, x in enumerate(v) if x)
        comp_parity.append(h.space.parity[idx])
    q_space = SuperSpace(q_dim, tuple(comp_parity))

    def quotient_tensor(t: ProductTensor) -> ProductTensor:
        c = [
            [
                list(project(evaluate(t, comp_cols[i].vector(), comp_cols[j].vector())))
                for j in range(q_dim)
            ]
            for i in range(q_dim)
        ]
        return ProductTensor(q_space, fld, c)

    def quotient_map(g: GradedMap) -> GradedMap:
        cols = [project(g.apply(comp_cols[j].vector())) for j in range(q_dim)]
        return GradedMap(
            q_space, fld, Matrix.from_columns(fld, cols, q_dim) if cols else Matrix.zeros(fld, 0, 0)
        )

    inst = DialgebraInstance(
        q_space,
        quotient_tensor(h.left),
        quotient_tensor(h.right),
        quotient_map(h.alpha),
        quotient_map(h.epsilon),
    )
    proj_rows = [
        [inv_change.entry(i, j) for j in range(n)] for i in range(k, n)
    ]
    projection = (
        Matrix(fld, proj_rows) if proj_rows else Matrix.zeros(fld, 0, n)
    )
    return inst, projection


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class MorphismWitness:
    matrix: Matrix
    commutes_alpha: bool
    commutes_epsilon: bool
    left_compatible: bool
    right_compatible: bool
    offending: dict = dc_field(default_factory=dict)

    @property
    def is_morphism(self) -> bool:
        return (
            self.commutes_alpha
            and self.commutes_epsilon
            and self.left_compatible
            and self.right_compatible
        )


@dataclass
class MorphismResult:
    witness: MorphismWitness
    kernel_basis: list[Matrix]
    image_basis: list[Matrix]
    kernel_ideal: IdealWitness
    image_subalgebra: IdealWitness


def morphism_check(
    h1: DialgebraInstance, h2: DialgebraInstance, g: Matrix
) -> MorphismResult:
    """Verify the four morphism conditions, then classify kernel and image."""
    if g.rows != h2.space.dim or g.cols != h1.space.dim:
        raise DimensionError(
            f"morphism matrix must be {h2.space.dim}x{h1.space.dim}"
        )
    offending: dict = {}
    commutes_alpha = g @ h1.alpha.m == h2.alpha.m @ g
    if not commutes_alpha:
        offending["alpha_intertwines"] = ()
    commutes_epsilon = g @ h1.epsilon.m == h2.epsilon.m @ g
    if not commutes_epsilon:
        offending["epsilon_intertwines"] = ()
    n1 = h1.space.dim
    gcols = [g.col(j) for j in range(n1)]

    def compatible(t1: ProductTensor, t2: ProductTensor, tag: str) -> bool:
        for i in range(n1):
            for j in range(n1):
                if g.apply(t1.basis_product(i, j)) != evaluate(t2, gcols[i], gcols[j]):
                    offending[tag] = (i, j)
                    return False
        return True

    left_ok = compatible(h1.left, h2.left, "left_compatible")
    right_ok = compatible(h1.right, h2.right, "right_compatible")
    witness = MorphismWitness(
        g, commutes_alpha, commutes_epsilon, left_ok, right_ok, offending
    )

    from .linalg import nullspace  # local import to keep module top tidy

    kernel = nullspace(g)
    image_sub = Subspace.from_vectors(h2.field, h2.space.dim, gcols)
    image = [Matrix.column(h2.field, v) for v in image_sub.basis_vectors()]
    kernel_ideal = classify_subspace(h1, kernel)
    image_subalgebra = classify_subspace(h2, image)
    return MorphismResult(witness, kernel, image, kernel_ideal, image_subalgebra)
