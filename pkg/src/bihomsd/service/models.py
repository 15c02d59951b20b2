"""Pydantic request/response models mirroring the instance file schema."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict

from ..serialize import from_dict, to_dict

Which = Literal[
    "bihom", "super", "hom", "assoc", "multiplicative", "regular", "grading"
]
Convention = Literal["standard", "paper-dialgebra"]


class InstancePayload(BaseModel):
    """One instance in the wire format; scalars are strings such as "3/2"."""

    model_config = ConfigDict(extra="forbid")

    field: Literal["Q", "Fp"]
    p: int | None = None
    dim: int
    parity: list[int]
    left: list | None = None
    right: list | None = None
    prod: list | None = None
    alpha: list
    epsilon: list
    d: list | None = None
    d_parity: int | None = None

    def to_instance(self, project_graded: bool = False):
        return from_dict(self.model_dump(exclude_none=True), project_graded)

    @classmethod
    def from_instance(cls, instance) -> "InstancePayload":
        return cls(**to_dict(instance))


class CheckRequest(BaseModel):
    instance: InstancePayload
    which: Which = "bihom"
    max_violations: int = 100
    project_graded: bool = False


class CheckResponse(BaseModel):
    ok: bool
    system: str
    counts: dict[str, int]
    capped_axioms: list[str]
    violations: list[dict[str, Any]]
    elapsed_ms: float
    input_digest: str


class TwistRequest(BaseModel):
    instance: InstancePayload
    alpha_prime: list | None = None
    epsilon_prime: list | None = None
    power: int | None = None
    untwist: bool = False
    hom_epsilon: list | None = None
    verify: bool = False


class InstanceResponse(BaseModel):
    instance: InstancePayload
    verified: bool | None = None
    output_digest: str


class SpacePayload(BaseModel):
    m: int
    n: int
    parity: int
    basis: list  # list of dim x dim string matrices


class DerivationsRequest(BaseModel):
    instance: InstancePayload
    m: int = 0
    n: int = 0
    parity: int = 0
    generalized: list[str] | None = None  # [gamma, delta, lambda]
    quasi: bool = False
    oracle: bool = False
    convention: Convention = "standard"


class DerivationsResponse(BaseModel):
    signature: dict[str, int]
    dim: int
    basis: list
    quasi_primes: list | None = None
    oracle_agrees: bool | None = None
    oracle_dim: int | None = None


class SubspaceRequest(BaseModel):
    instance: InstancePayload
    vectors: list[list[str]]
    closure: bool = False
    sum_with: list[list[str]] | None = None


class IdealResponse(BaseModel):
    dim: int
    is_subalgebra: bool
    is_left: bool
    is_right: bool
    is_two_sided: bool
    offending: dict[str, list]
    basis: list[list[str]]


class QuotientResponse(BaseModel):
    instance: InstancePayload
    projection: list[list[str]]
    ideal: IdealResponse


class MorphismRequest(BaseModel):
    source: InstancePayload
    target: InstancePayload
    matrix: list[list[str]]


class MorphismResponse(BaseModel):
    is_morphism: bool
    commutes_alpha: bool
    commutes_epsilon: bool
    left_compatible: bool
    right_compatible: bool
    offending: dict[str, list]
    kernel: list[list[str]]
    image: list[list[str]]
    kernel_ideal: IdealResponse
    image_subalgebra: IdealResponse


class AdRequest(BaseModel):
    instance: InstancePayload
    vector: list[str]


class AdResponse(BaseModel):
    matrix: list[list[str]]
    parity: int
    left_leibniz_ok: bool
    right_leibniz_ok: bool
    left_violations: list
    right_violations: list


class BracketRequest(BaseModel):
    instance: InstancePayload
    space1: SpacePayload
    space2: SpacePayload
    convention: Convention = "standard"


class BracketEntry(BaseModel):
    pair: list[int]
    constraints_ok: bool
    in_span: bool
    coords: list[str] | None


class BracketResponse(BaseModel):
    ok: bool
    target_signature: dict[str, int]
    target_dim: int
    entries: list[BracketEntry]


class CorpusRequest(BaseModel):
    seed: int = 1
    count: int = 10
    kind: Literal["bihom", "superdialgebra", "hom"] = "bihom"
    field: Literal["Q", "Fp"] = "Q"
    p: int | None = None
    dim_max: int | None = None


class CorpusItem(BaseModel):
    name: str
    tags: list[str]
    digest: str
    instance: InstancePayload


class CorpusResponse(BaseModel):
    seed: int
    items: list[CorpusItem]


class ErrorBody(BaseModel):
    error: str
    detail: str
    name: str | None = None
    witness: list | None = None
