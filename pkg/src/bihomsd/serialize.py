"""JSON (de)serialization of instances.

Schema: top-level object with `field` ("Q" | "Fp" plus `p`), `dim`,
`parity`, then either `left`/`right` (dialgebra), `prod` (superalgebra) or
`prod` + `d` + `d_parity` (differential), with `alpha` and `epsilon` in all
cases.  Scalars are strings such as "3/2"; plain JSON integers are accepted
too.  Unknown fields are rejected by name.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .errors import SchemaError
from .fields import field_from_name
from .linalg import Matrix
from .model import (
    DialgebraInstance,
    DifferentialInstance,
    GradedMap,
    ParityMap,
    ProductTensor,
    SuperalgebraInstance,
    SuperSpace,
)

_DIALGEBRA_KEYS = {"field", "p", "dim", "parity", "left", "right", "alpha", "epsilon"}
_SUPERALGEBRA_KEYS = {"field", "p", "dim", "parity", "prod", "alpha", "epsilon"}
_DIFFERENTIAL_KEYS = _SUPERALGEBRA_KEYS | {"d", "d_parity"}


def _require(obj: dict, key: str):
    if key not in obj:
        raise SchemaError("missing required field", field=key)
    return obj[key]


def _parse_parity(obj: dict, dim: int) -> tuple[int, ...]:
    raw = _require(obj, "parity")
    if not isinstance(raw, list) or len(raw) != dim:
        raise SchemaError(f"expected a list of length {dim}", field="parity")
    for v in raw:
        if v not in (0, 1):
            raise SchemaError(f"entry {v!r} is not 0 or 1", field="parity")
    return tuple(raw)


def _parse_matrix(obj: dict, key: str, field, dim: int) -> Matrix:
    raw = _require(obj, key)
    if not isinstance(raw, list) or len(raw) != dim:
        raise SchemaError(f"expected {dim} rows", field=key)
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise SchemaError(f"row {i} must have {dim} entries", field=key)
        try:
            rows.append([field.of(x) for x in row])
        except SchemaError as exc:
            raise SchemaError(f"row {i}: {exc}", field=key) from None
    return Matrix(field, rows)


def _parse_tensor(obj: dict, key: str, space: SuperSpace, field) -> ProductTensor:
    dim = space.dim
    raw = _require(obj, key)
    if not isinstance(raw, list) or len(raw) != dim:
        raise SchemaError(f"expected a {dim}x{dim}x{dim} array", field=key)
    cube = []
    for i, plane in enumerate(raw):
        if not isinstance(plane, list) or len(plane) != dim:
            raise SchemaError(
                f"index {i}: expected {dim} rows of {dim} scalars", field=key
            )
        rows = []
        for j, line in enumerate(plane):
            if not isinstance(line, list) or len(line) != dim:
                raise SchemaError(
                    f"index ({i},{j}): expected {dim} scalars", field=key
                )
            try:
                rows.append([field.of(x) for x in line])
            except SchemaError as exc:
                raise SchemaError(f"index ({i},{j}): {exc}", field=key) from None
        cube.append(rows)
    return ProductTensor(space, field, cube)


def _project_tensor(t: ProductTensor) -> ProductTensor:
    par = t.space.parity
    n = t.space.dim
    c = [[list(t.c[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if par[k] != (par[i] + par[j]) % 2:
                    c[i][j][k] = t.field.zero
    return ProductTensor(t.space, t.field, c)


def _project_map(g: GradedMap) -> GradedMap:
    par = g.space.parity
    n = g.space.dim
    rows = [list(g.m.row(i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if par[i] != par[j]:
                rows[i][j] = g.field.zero
    return GradedMap(g.space, g.field, rows)


def from_dict(obj: dict, project_graded: bool = False):
    """Build an instance from a parsed JSON object."""
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    field_name = _require(obj, "field")
    p = obj.get("p")
    if field_name == "Q" and p is not None:
        raise SchemaError("'p' is only valid with field 'Fp'", field="p")
    if p is not None and not isinstance(p, int):
        raise SchemaError("prime must be an integer", field="p")
    fld = field_from_name(field_name, p)
    dim = _require(obj, "dim")
    if not isinstance(dim, int) or dim < 0:
        raise SchemaError("dimension must be a nonnegative integer", field="dim")
    space = SuperSpace(dim, _parse_parity(obj, dim))

    if "left" in obj or "right" in obj:
        allowed = _DIALGEBRA_KEYS
        kind = "dialgebra"
    elif "d" in obj or "d_parity" in obj:
        allowed = _DIFFERENTIAL_KEYS
        kind = "differential"
    elif "prod" in obj:
        allowed = _SUPERALGEBRA_KEYS
        kind = "superalgebra"
    else:
        raise SchemaError("object has neither 'left'/'right' nor 'prod'")
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError("unknown field", field=sorted(unknown)[0])

    alpha = GradedMap(space, fld, _parse_matrix(obj, "alpha", fld, dim))
    epsilon = GradedMap(space, fld, _parse_matrix(obj, "epsilon", fld, dim))
    if project_graded:
        alpha, epsilon = _project_map(alpha), _project_map(epsilon)

    if kind == "dialgebra":
        left = _parse_tensor(obj, "left", space, fld)
        right = _parse_tensor(obj, "right", space, fld)
        if project_graded:
            left, right = _project_tensor(left), _project_tensor(right)
        return DialgebraInstance(space, left, right, alpha, epsilon)

    prod = _parse_tensor(obj, "prod", space, fld)
    if project_graded:
        prod = _project_tensor(prod)
    base = SuperalgebraInstance(space, prod, alpha, epsilon)
    if kind == "superalgebra":
        return base

    d_parity = _require(obj, "d_parity")
    if d_parity not in (0, 1):
        raise SchemaError("must be 0 or 1", field="d_parity")
    d = ParityMap(space, d_parity, _parse_matrix(obj, "d", fld, dim))
    return DifferentialInstance(base, d)


def _fmt_matrix(m: Matrix, field) -> list[list[str]]:
    return [[field.fmt(x) for x in row] for row in m.data]


def _fmt_tensor(t: ProductTensor) -> list[list[list[str]]]:
    return [
        [[t.field.fmt(x) for x in line] for line in plane] for plane in t.c
    ]


def to_dict(instance) -> dict:
    fld = instance.field
    out: dict = {"field": fld.name}
    if fld.name == "Fp":
        out["p"] = fld.p
    if isinstance(instance, DialgebraInstance):
        out.update(
            dim=instance.space.dim,
            parity=list(instance.space.parity),
            left=_fmt_tensor(instance.left),
            right=_fmt_tensor(instance.right),
            alpha=_fmt_matrix(instance.alpha.m, fld),
            epsilon=_fmt_matrix(instance.epsilon.m, fld),
        )
    elif isinstance(instance, SuperalgebraInstance):
        out.update(
            dim=instance.space.dim,
            parity=list(instance.space.parity),
            prod=_fmt_tensor(instance.prod),
            alpha=_fmt_matrix(instance.alpha.m, fld),
            epsilon=_fmt_matrix(instance.epsilon.m, fld),
        )
    elif isinstance(instance, DifferentialInstance):
        out = to_dict(instance.base)
        out["d"] = _fmt_matrix(instance.d.m, fld)
        out["d_parity"] = instance.d.parity
    else:
        raise TypeError(f"cannot serialize {type(instance).__name__}")
    return out


def dumps(instance) -> str:
    return json.dumps(to_dict(instance), indent=2, sort_keys=True)


def digest(instance) -> str:
    return hashlib.sha256(dumps(instance).encode()).hexdigest()


def save(instance, path) -> None:
    Path(path).write_text(dumps(instance) + "\n", encoding="utf-8")


def load(path, project_graded: bool = False):
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return from_dict(obj, project_graded=project_graded)
