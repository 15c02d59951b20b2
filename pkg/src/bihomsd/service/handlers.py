"""Request handlers: pure functions from request models to response models.

The CLI calls these in-process; the FastAPI app exposes them over HTTP.
"""

from __future__ import annotations

import time

from .. import checks, derivations as der
from ..constructions import (
    classify_subspace,
    from_differential,
    ideal_closure,
    morphism_check,
    power_twist,
    quotient,
    untwist_regular,
    yau_twist,
)
from ..corpus import bihom_corpus, hom_instances, superdialgebras
from ..errors import PreconditionError, SchemaError
from ..fields import field_from_name
from ..linalg import Matrix
from ..model import DialgebraInstance, DifferentialInstance, GradedMap, check_grading
from ..serialize import digest
from . import models as m


def _fmt_matrix(mat: Matrix, field) -> list[list[str]]:
    return [[field.fmt(x) for x in row] for row in mat.data]


def _parse_matrix(field, rows, dim_rows: int, dim_cols: int, name: str) -> Matrix:
    if len(rows) != dim_rows or any(len(r) != dim_cols for r in rows):
        raise SchemaError(f"expected a {dim_rows}x{dim_cols} matrix", field=name)
    return Matrix(field, [[field.of(x) for x in row] for row in rows])


def _dialgebra(payload: m.InstancePayload, project_graded=False) -> DialgebraInstance:
    inst = payload.to_instance(project_graded)
    if not isinstance(inst, DialgebraInstance):
        raise SchemaError("expected a dialgebra instance (left/right products)")
    return inst


def handle_check(req: m.CheckRequest) -> m.CheckResponse:
    inst = req.instance.to_instance(req.project_graded)
    if req.which == "assoc":
        if isinstance(inst, DifferentialInstance):
            inst = inst.base
        if isinstance(inst, DialgebraInstance):
            raise SchemaError("'assoc' checks a superalgebra file (prod), not left/right")
    elif req.which != "grading" and not isinstance(inst, DialgebraInstance):
        raise SchemaError(f"'{req.which}' checks a dialgebra file (left/right products)")
    started = time.perf_counter()
    if req.which == "grading":
        report = check_grading(inst)
        elapsed = (time.perf_counter() - started) * 1000
        return m.CheckResponse(
            ok=report.ok,
            system="grading",
            counts={
                "tensor": len(report.tensor_violations),
                "map": len(report.map_violations),
            },
            capped_axioms=[],
            violations=[
                {"axiom": "grading.tensor", "indices": list(v[1:]), "component": v[0]}
                for v in report.tensor_violations
            ]
            + [
                {"axiom": "grading.map", "indices": list(v[1:]), "component": v[0]}
                for v in report.map_violations
            ],
            elapsed_ms=elapsed,
            input_digest=digest(inst),
        )
    if req.which == "regular":
        ok = checks.check_regular(inst)
        elapsed = (time.perf_counter() - started) * 1000
        return m.CheckResponse(
            ok=ok,
            system="regular",
            counts={},
            capped_axioms=[],
            violations=[] if ok else [{"axiom": "regular", "indices": []}],
            elapsed_ms=elapsed,
            input_digest=digest(inst),
        )
    if req.which == "multiplicative":
        ok, report = checks.check_multiplicative(inst, req.max_violations)
    elif req.which == "super":
        report = checks.check_superdialgebra(inst, req.max_violations)
    elif req.which == "hom":
        report = checks.check_hom_superdialgebra(inst, req.max_violations)
    elif req.which == "assoc":
        report = checks.check_bihom_assoc_superalgebra(inst, req.max_violations)
    else:
        report = checks.check_bihom_superdialgebra(inst, req.max_violations)
    elapsed = (time.perf_counter() - started) * 1000
    data = report.to_dict()
    return m.CheckResponse(
        ok=data["ok"],
        system=data["system"],
        counts=data["counts"],
        capped_axioms=data["capped_axioms"],
        violations=data["violations"],
        elapsed_ms=elapsed,
        input_digest=digest(inst),
    )


def handle_twist(req: m.TwistRequest) -> m.InstanceResponse:
    inst = _dialgebra(req.instance)
    field = inst.field
    n = inst.space.dim
    modes = sum(
        1
        for flag in (
            req.alpha_prime is not None or req.epsilon_prime is not None,
            req.power is not None,
            req.untwist,
            req.hom_epsilon is not None,
        )
        if flag
    )
    if modes != 1:
        raise SchemaError(
            "exactly one of (alpha_prime/epsilon_prime), power, untwist, "
            "hom_epsilon must be given"
        )
    if req.untwist:
        out = untwist_regular(inst)
    elif req.power is not None:
        out = power_twist(inst, req.power)
    elif req.hom_epsilon is not None:
        e = GradedMap(
            inst.space, field, _parse_matrix(field, req.hom_epsilon, n, n, "hom_epsilon")
        )
        from ..constructions import hom_to_bihom

        out = hom_to_bihom(inst, e)
    else:
        if req.alpha_prime is None or req.epsilon_prime is None:
            raise SchemaError("twisting needs both alpha_prime and epsilon_prime")
        a = GradedMap(
            inst.space, field, _parse_matrix(field, req.alpha_prime, n, n, "alpha_prime")
        )
        e = GradedMap(
            inst.space,
            field,
            _parse_matrix(field, req.epsilon_prime, n, n, "epsilon_prime"),
        )
        out = yau_twist(inst, a, e)
    verified = None
    if req.verify:
        which = "super" if req.untwist else "bihom"
        if which == "super":
            verified = checks.check_superdialgebra(out).ok
        else:
            verified = checks.check_bihom_superdialgebra(out).ok
    return m.InstanceResponse(
        instance=m.InstancePayload.from_instance(out),
        verified=verified,
        output_digest=digest(out),
    )


def handle_derivations(req: m.DerivationsRequest) -> m.DerivationsResponse:
    from ..model import SuperalgebraInstance

    inst = req.instance.to_instance()
    if isinstance(inst, DifferentialInstance):
        inst = inst.base
    field = inst.field
    if isinstance(inst, SuperalgebraInstance):
        if req.quasi or req.generalized is not None or req.oracle:
            raise SchemaError(
                "quasi/generalized/oracle solving applies to dialgebra files"
            )
        space = der.solve_superalgebra_derivations(inst, req.m, req.n, req.parity)
        return m.DerivationsResponse(
            signature={"m": req.m, "n": req.n, "parity": req.parity},
            dim=space.dim,
            basis=[_fmt_matrix(b.m, field) for b in space.basis],
        )
    quasi_primes = None
    if req.quasi:
        pairs = der.solve_quasi(inst, req.m, req.n, req.parity, req.convention)
        basis = [_fmt_matrix(p.d.m, field) for p in pairs]
        quasi_primes = [_fmt_matrix(p.d_prime.m, field) for p in pairs]
        space_dim = len(pairs)
    elif req.generalized is not None:
        if len(req.generalized) != 3:
            raise SchemaError("generalized needs [gamma, delta, lambda]", field="generalized")
        params = der.GeneralizedParams(*(field.parse(s) for s in req.generalized))
        space = der.solve_generalized(
            inst, params, req.m, req.n, req.parity, req.convention
        )
        basis = [_fmt_matrix(b.m, field) for b in space.basis]
        space_dim = space.dim
    else:
        space = der.solve_dialgebra_derivations(
            inst, req.m, req.n, req.parity, req.convention
        )
        basis = [_fmt_matrix(b.m, field) for b in space.basis]
        space_dim = space.dim
    oracle_agrees = None
    oracle_dim = None
    if req.oracle:
        if req.quasi or req.generalized is not None:
            raise SchemaError("the oracle checks plain derivation spaces only")
        oracle = der.brute_force_derivations(
            inst, req.m, req.n, req.parity, req.convention
        )
        oracle_dim = oracle.dim
        solved = der.solve_dialgebra_derivations(
            inst, req.m, req.n, req.parity, req.convention
        )
        oracle_agrees = oracle.dim == solved.dim and all(
            der.in_span(oracle, b)[0] for b in solved.basis
        ) and all(der.in_span(solved, b)[0] for b in oracle.basis)
    return m.DerivationsResponse(
        signature={"m": req.m, "n": req.n, "parity": req.parity},
        dim=space_dim,
        basis=basis,
        quasi_primes=quasi_primes,
        oracle_agrees=oracle_agrees,
        oracle_dim=oracle_dim,
    )


def _witness_response(witness, field) -> m.IdealResponse:
    data = witness.to_dict(field)
    return m.IdealResponse(**data)


def handle_ideal(req: m.SubspaceRequest) -> m.IdealResponse:
    inst = _dialgebra(req.instance)
    field = inst.field
    vectors = [
        [field.of(x) for x in row] for row in req.vectors
    ]
    fn = ideal_closure if req.closure else classify_subspace
    witness = fn(inst, vectors)
    if req.sum_with is not None:
        from ..constructions import ideal_sum

        other = fn(inst, [[field.of(x) for x in row] for row in req.sum_with])
        witness = ideal_sum(inst, witness, other)
    return _witness_response(witness, field)


def handle_quotient(req: m.SubspaceRequest) -> m.QuotientResponse:
    inst = _dialgebra(req.instance)
    field = inst.field
    vectors = [[field.of(x) for x in row] for row in req.vectors]
    fn = ideal_closure if req.closure else classify_subspace
    witness = fn(inst, vectors)
    if not witness.is_two_sided:
        raise PreconditionError(
            "two_sided_ideal", detail="the given subspace is not a two-sided ideal"
        )
    out, projection = quotient(inst, witness)
    return m.QuotientResponse(
        instance=m.InstancePayload.from_instance(out),
        projection=_fmt_matrix(projection, field),
        ideal=_witness_response(witness, field),
    )


def handle_morphism(req: m.MorphismRequest) -> m.MorphismResponse:
    source = _dialgebra(req.source)
    target = _dialgebra(req.target)
    field = source.field
    g = _parse_matrix(
        field, req.matrix, target.space.dim, source.space.dim, "matrix"
    )
    result = morphism_check(source, target, g)
    return m.MorphismResponse(
        is_morphism=result.witness.is_morphism,
        commutes_alpha=result.witness.commutes_alpha,
        commutes_epsilon=result.witness.commutes_epsilon,
        left_compatible=result.witness.left_compatible,
        right_compatible=result.witness.right_compatible,
        offending={k: list(v) for k, v in result.witness.offending.items()},
        kernel=[[field.fmt(x) for x in v.vector()] for v in result.kernel_basis],
        image=[[field.fmt(x) for x in v.vector()] for v in result.image_basis],
        kernel_ideal=_witness_response(result.kernel_ideal, field),
        image_subalgebra=_witness_response(result.image_subalgebra, field),
    )


def handle_ad(req: m.AdRequest) -> m.AdResponse:
    inst = _dialgebra(req.instance)
    field = inst.field
    if len(req.vector) != inst.space.dim:
        raise SchemaError(
            f"vector must have {inst.space.dim} entries", field="vector"
        )
    result = der.ad_operator(inst, tuple(field.of(x) for x in req.vector))
    return m.AdResponse(
        matrix=_fmt_matrix(result.map.m, field),
        parity=result.map.parity,
        left_leibniz_ok=result.left_leibniz_ok,
        right_leibniz_ok=result.right_leibniz_ok,
        left_violations=[list(v) for v in result.left_violations],
        right_violations=[list(v) for v in result.right_violations],
    )


def handle_bracket(req: m.BracketRequest) -> m.BracketResponse:
    inst = _dialgebra(req.instance)
    field = inst.field

    def to_space(payload: m.SpacePayload) -> der.DerivationSpace:
        return der.space_from_dict(
            {
                "signature": {
                    "m": payload.m,
                    "n": payload.n,
                    "parity": payload.parity,
                },
                "basis": payload.basis,
            },
            inst.space,
            field,
        )

    report = der.verify_bracket_closure(
        inst, to_space(req.space1), to_space(req.space2), req.convention
    )
    return m.BracketResponse(
        ok=report.ok,
        target_signature={
            "m": report.target_signature.m,
            "n": report.target_signature.n,
            "parity": report.target_signature.parity,
        },
        target_dim=report.target_dim,
        entries=[
            m.BracketEntry(
                pair=list(e.index_pair),
                constraints_ok=e.constraints_ok,
                in_span=e.in_span,
                coords=[field.fmt(x) for x in e.coords] if e.coords is not None else None,
            )
            for e in report.entries
        ],
    )


def handle_from_differential(req: m.CheckRequest) -> m.InstanceResponse:
    inst = req.instance.to_instance()
    if not isinstance(inst, DifferentialInstance):
        raise SchemaError("expected a differential instance (prod + d + d_parity)")
    out = from_differential(inst)
    verified = checks.check_bihom_superdialgebra(out).ok
    return m.InstanceResponse(
        instance=m.InstancePayload.from_instance(out),
        verified=verified,
        output_digest=digest(out),
    )


def handle_corpus(req: m.CorpusRequest) -> m.CorpusResponse:
    field = field_from_name(req.field, req.p)
    if req.kind == "superdialgebra":
        entries = superdialgebras(req.seed, field, req.count, req.dim_max)
    elif req.kind == "hom":
        entries = hom_instances(req.seed, field, req.count, req.dim_max)
    else:
        entries = bihom_corpus(req.seed, field, req.count, req.dim_max)
    items = [
        m.CorpusItem(
            name=e.name,
            tags=sorted(e.tags),
            digest=digest(e.instance),
            instance=m.InstancePayload.from_instance(e.instance),
        )
        for e in entries
    ]
    return m.CorpusResponse(seed=req.seed, items=items)
