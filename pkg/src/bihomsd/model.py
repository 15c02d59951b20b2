"""Graded data model: superspaces, product tensors, maps and instance bundles.

A product tensor stores structure constants c[i][j][k] meaning
e_i * e_j = sum_k c[i][j][k] e_k.  A graded map stores the matrix whose
column j is the image of e_j.  Candidate instances need not satisfy any
axioms; axiom status is established only by the checkers.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DimensionError, FieldMismatchError, NonCommutingError, SingularMapError
from .linalg import Matrix, inverse


@dataclass(frozen=True)
class SuperSpace:
    """A finite graded basis: dimension plus a Z2 parity per basis vector."""

    dim: int
    parity: tuple[int, ...]

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionError("negative dimension")
        if len(self.parity) != self.dim:
            raise DimensionError(
                f"parity vector of length {len(self.parity)} for dimension {self.dim}"
            )
        if any(p not in (0, 1) for p in self.parity):
            raise DimensionError("parity entries must be 0 or 1")


class ProductTensor:
    """Structure constants of one bilinear product on a superspace."""

    __slots__ = ("space", "field", "c", "_pairs")

    def __init__(self, space: SuperSpace, field, c):
        n = space.dim
        if len(c) != n or any(len(ci) != n for ci in c) or any(
            len(cij) != n for ci in c for cij in ci
        ):
            raise DimensionError(f"structure constants must be {n}x{n}x{n}")
        self.space = space
        self.field = field
        self.c = tuple(
            tuple(tuple(field.of(x) for x in cij) for cij in ci) for ci in c
        )
        # sparse view: (i, j) -> ((k, coeff), ...) over nonzero coefficients
        pairs = {}
        for i in range(n):
            for j in range(n):
                nz = tuple((k, v) for k, v in enumerate(self.c[i][j]) if v)
                if nz:
                    pairs[(i, j)] = nz
        self._pairs = pairs

    @classmethod
    def zero(cls, space: SuperSpace, field) -> "ProductTensor":
        n = space.dim
        z = field.zero
        return cls(space, field, [[[z] * n for _ in range(n)] for _ in range(n)])

    def basis_product(self, i: int, j: int) -> tuple:
        """The vector e_i * e_j."""
        return self.c[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, ProductTensor)
            and other.space == self.space
            and other.field == self.field
            and other.c == self.c
        )

    def __hash__(self):
        return hash((self.space, self.field, self.c))

    def is_zero(self) -> bool:
        return not self._pairs


def evaluate(t: ProductTensor, u, v) -> tuple:
    """Bilinear extension of the structure constants to vectors u, v."""
    n = t.space.dim
    if len(u) != n or len(v) != n:
        raise DimensionError(f"vectors of length {len(u)},{len(v)} on dimension {n}")
    out = [t.field.zero] * n
    pairs = t._pairs
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            nz = pairs.get((i, j))
            if not nz:
                continue
            w = ui * vj
            for k, coeff in nz:
                out[k] = out[k] + w * coeff
    return tuple(out)


class GradedMap:
    """An even linear endomorphism; column j of the matrix is the image of e_j."""

    __slots__ = ("space", "field", "m")

    def __init__(self, space: SuperSpace, field, m):
        if isinstance(m, Matrix):
            mat = m
        else:
            mat = Matrix(field, m)
        if mat.rows != space.dim or mat.cols != space.dim:
            raise DimensionError(
                f"map matrix {mat.rows}x{mat.cols} on dimension {space.dim}"
            )
        if mat.field != field:
            raise FieldMismatchError("map matrix field differs from declared field")
        self.space = space
        self.field = field
        self.m = mat

    @classmethod
    def identity(cls, space: SuperSpace, field) -> "GradedMap":
        return cls(space, field, Matrix.identity(field, space.dim))

    @classmethod
    def zero(cls, space: SuperSpace, field) -> "GradedMap":
        return cls(space, field, Matrix.zeros(field, space.dim, space.dim))

    def compose(self, other: "GradedMap") -> "GradedMap":
        return GradedMap(self.space, self.field, self.m @ other.m)

    def apply(self, vec) -> tuple:
        return self.m.apply(vec)

    def is_identity(self) -> bool:
        return self.m == Matrix.identity(self.field, self.space.dim)

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and other.space == self.space
            and other.m == self.m
        )

    def __hash__(self):
        return hash((self.space, self.m))


@dataclass(frozen=True)
class ParityMap:
    """A parity-homogeneous linear map of declared degree 0 or 1."""

    space: SuperSpace
    parity: int
    m: Matrix

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise DimensionError("map parity must be 0 or 1")
        if self.m.rows != self.space.dim or self.m.cols != self.space.dim:
            raise DimensionError("parity map matrix has wrong shape")

    def apply(self, vec) -> tuple:
        return self.m.apply(vec)

    def pattern_violations(self) -> list[tuple[int, int]]:
        """Entries breaking parity[i] = parity[j] + |d| (mod 2)."""
        par = self.space.parity
        bad = []
        for i in range(self.space.dim):
            for j in range(self.space.dim):
                if self.m.entry(i, j) and par[i] != (par[j] + self.parity) % 2:
                    bad.append((i, j))
        return bad


@dataclass(frozen=True)
class DialgebraInstance:
    """Bundle (space, left product, right product, alpha, epsilon)."""

    space: SuperSpace
    left: ProductTensor
    right: ProductTensor
    alpha: GradedMap
    epsilon: GradedMap

    def __post_init__(self):
        parts = (self.left, self.right, self.alpha, self.epsilon)
        if any(p.space != self.space for p in parts):
            raise DimensionError("instance components disagree on the superspace")
        fields = {p.field for p in parts}
        if len(fields) != 1:
            raise FieldMismatchError("instance components use different fields")

    @property
    def field(self):
        return self.left.field


@dataclass(frozen=True)
class SuperalgebraInstance:
    """Bundle (space, product, alpha, epsilon) for a single-product algebra."""

    space: SuperSpace
    prod: ProductTensor
    alpha: GradedMap
    epsilon: GradedMap

    def __post_init__(self):
        parts = (self.prod, self.alpha, self.epsilon)
        if any(p.space != self.space for p in parts):
            raise DimensionError("instance components disagree on the superspace")
        fields = {p.field for p in parts}
        if len(fields) != 1:
            raise FieldMismatchError("instance components use different fields")

    @property
    def field(self):
        return self.prod.field


@dataclass(frozen=True)
class DifferentialInstance:
    """A single-product instance together with a homogeneous square-zero map."""

    base: SuperalgebraInstance
    d: ParityMap

    def __post_init__(self):
        if self.d.space != self.base.space:
            raise DimensionError("differential lives on a different space")

    @property
    def field(self):
        return self.base.field


def hom_power(f: GradedMap, g: GradedMap, m: int, n: int) -> GradedMap:
    """The composite f^m g^n for commuting maps; negative powers invert."""
    if f.space != g.space:
        raise DimensionError("maps on different spaces")
    if f.field != g.field:
        raise FieldMismatchError("maps over different fields")
    if f.m @ g.m != g.m @ f.m:
        raise NonCommutingError("maps do not commute; powers are ill-defined")

    def matrix_power(mat: Matrix, k: int) -> Matrix:
        if k < 0:
            try:
                base = inverse(mat)
            except SingularMapError:
                raise SingularMapError(
                    "negative power of a non-invertible map"
                ) from None
            k = -k
        else:
            base = mat
        acc = Matrix.identity(f.field, f.space.dim)
        for _ in range(k):
            acc = acc @ base
        return acc

    return GradedMap(f.space, f.field, matrix_power(f.m, m) @ matrix_power(g.m, n))


@dataclass
class GradingReport:
    """Evenness violations of an instance's tensors and maps."""

    tensor_violations: list = dc_field(default_factory=list)  # (name, i, j, k)
    map_violations: list = dc_field(default_factory=list)  # (name, i, j)

    @property
    def ok(self) -> bool:
        return not self.tensor_violations and not self.map_violations

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "tensor_violations": [list(v) for v in self.tensor_violations],
            "map_violations": [list(v) for v in self.map_violations],
        }


def _tensor_grading(name: str, t: ProductTensor, report: GradingReport) -> None:
    par = t.space.parity
    for i in range(t.space.dim):
        for j in range(t.space.dim):
            for k, v in enumerate(t.c[i][j]):
                if v and par[k] != (par[i] + par[j]) % 2:
                    report.tensor_violations.append((name, i, j, k))


def _map_grading(name: str, g: GradedMap, report: GradingReport) -> None:
    par = g.space.parity
    for i in range(g.space.dim):
        for j in range(g.space.dim):
            if g.m.entry(i, j) and par[i] != par[j]:
                report.map_violations.append((name, i, j))


def check_grading(instance) -> GradingReport:
    """Report every evenness violation; an empty report means graded-well-formed."""
    report = GradingReport()
    if isinstance(instance, DialgebraInstance):
        _tensor_grading("left", instance.left, report)
        _tensor_grading("right", instance.right, report)
        _map_grading("alpha", instance.alpha, report)
        _map_grading("epsilon", instance.epsilon, report)
    elif isinstance(instance, SuperalgebraInstance):
        _tensor_grading("prod", instance.prod, report)
        _map_grading("alpha", instance.alpha, report)
        _map_grading("epsilon", instance.epsilon, report)
    elif isinstance(instance, DifferentialInstance):
        report = check_grading(instance.base)
        for i, j in instance.d.pattern_violations():
            report.map_violations.append(("d", i, j))
    else:
        raise TypeError(f"cannot grade-check {type(instance).__name__}")
    return report
