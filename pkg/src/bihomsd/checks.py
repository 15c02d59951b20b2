"""Axiom checkers with itemized counterexamples.

Each checker evaluates its identities on basis tuples only; bilinearity of
the products makes that equivalent to checking on all elements.  The axiom
texts carry no Koszul signs and are implemented literally.  Axiom labels:

  Def1.i        p|-(q-|r) = (p|-q)-|r
  Def1.ii.a     p-|(q-|r) = (p-|q)-|r
  Def1.ii.b     (p-|q)-|r = p-|(q|-r)
  Def1.iii.a    p|-(q|-r) = (p|-q)|-r
  Def1.iii.b    (p|-q)|-r = (p-|q)|-r
  Def2.i.*      multiplicativity of alpha for both products
  Def2.ii/iii   alpha-twisted associativity chains, Def2.iv the mixed law
  Def3.i-iii    BiHom-associative superalgebra laws
  Def4.i        alpha o epsilon = epsilon o alpha
  Def4.ii/iii   multiplicativity of alpha resp. epsilon for both products
  Def4.iv       (p-|q)-|eps(r) = alpha(p)-|(q-|r)
  Def4.v        (p|-q)-|eps(r) = alpha(p)|-(q-|r)
  Def4.vi       (p-|q)|-eps(r) = alpha(p)-|(q|-r)
  Def4.vii      (p|-q)|-eps(r) = alpha(p)|-(q|-r)
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg import rank
from .model import DialgebraInstance, SuperalgebraInstance, evaluate

DEFAULT_MAX_VIOLATIONS = 100


@dataclass
class Violation:
    axiom: str
    indices: tuple
    lhs: tuple
    rhs: tuple

    def to_dict(self, field) -> dict:
        return {
            "axiom": self.axiom,
            "indices": list(self.indices),
            "lhs": [field.fmt(x) for x in self.lhs],
            "rhs": [field.fmt(x) for x in self.rhs],
        }


@dataclass
class CheckReport:
    """Outcome of one axiom-system check; empty violations means pass."""

    system: str
    field: object
    violations: list[Violation] = dc_field(default_factory=list)
    capped_axioms: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.violations:
            out[v.axiom] = out.get(v.axiom, 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "ok": self.ok,
            "counts": self.counts(),
            "capped_axioms": list(self.capped_axioms),
            "violations": [v.to_dict(self.field) for v in self.violations],
        }

    def to_text(self) -> str:
        if self.ok:
            return f"{self.system}: PASS"
        lines = [f"{self.system}: FAIL ({len(self.violations)} violations)"]
        for axiom, n in sorted(self.counts().items()):
            capped = " (capped)" if axiom in self.capped_axioms else ""
            lines.append(f"  {axiom}: {n} violations{capped}")
        for v in self.violations[:10]:
            lhs = "(" + ", ".join(self.field.fmt(x) for x in v.lhs) + ")"
            rhs = "(" + ", ".join(self.field.fmt(x) for x in v.rhs) + ")"
            lines.append(f"    {v.axiom} at {v.indices}: {lhs} != {rhs}")
        if len(self.violations) > 10:
            lines.append(f"    ... {len(self.violations) - 10} more")
        return "\n".join(lines)


class _Runner:
    def __init__(self, system: str, field, cap: int):
        self.report = CheckReport(system, field)
        self.cap = cap

    def triples(self, axiom: str, n: int, lhs_fn, rhs_fn) -> None:
        count = 0
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = lhs_fn(i, j, k)
                    rhs = rhs_fn(i, j, k)
                    if lhs != rhs:
                        self.report.violations.append(
                            Violation(axiom, (i, j, k), lhs, rhs)
                        )
                        count += 1
                        if count >= self.cap:
                            self.report.capped_axioms.append(axiom)
                            return

    def pairs(self, axiom: str, n: int, lhs_fn, rhs_fn) -> None:
        count = 0
        for i in range(n):
            for j in range(n):
                lhs = lhs_fn(i, j)
                rhs = rhs_fn(i, j)
                if lhs != rhs:
                    self.report.violations.append(Violation(axiom, (i, j), lhs, rhs))
                    count += 1
                    if count >= self.cap:
                        self.report.capped_axioms.append(axiom)
                        return

    def map_commutation(self, axiom: str, f, g) -> None:
        n = f.space.dim
        fg = f.m @ g.m
        gf = g.m @ f.m
        count = 0
        for j in range(n):
            lhs, rhs = fg.col(j), gf.col(j)
            if lhs != rhs:
                self.report.violations.append(Violation(axiom, (j,), lhs, rhs))
                count += 1
                if count >= self.cap:
                    self.report.capped_axioms.append(axiom)
                    return


def _multiplicativity(runner: _Runner, axiom: str, g, t) -> None:
    cols = [g.m.col(j) for j in range(g.space.dim)]
    runner.pairs(
        axiom,
        g.space.dim,
        lambda i, j: g.m.apply(t.basis_product(i, j)),
        lambda i, j: evaluate(t, cols[i], cols[j]),
    )


def check_superdialgebra(
    h: DialgebraInstance, max_violations: int = DEFAULT_MAX_VIOLATIONS
) -> CheckReport:
    """Check the five untwisted dialgebra identities; structure maps are ignored."""
    n = h.space.dim
    left, right = h.left, h.right
    r = _Runner("superdialgebra", h.field, max_violations)
    r.triples(
        "Def1.i",
        n,
        lambda i, j, k: evaluate(right, _unit(h, i), left.basis_product(j, k)),
        lambda i, j, k: evaluate(left, right.basis_product(i, j), _unit(h, k)),
    )
    r.triples(
        "Def1.ii.a",
        n,
        lambda i, j, k: evaluate(left, _unit(h, i), left.basis_product(j, k)),
        lambda i, j, k: evaluate(left, left.basis_product(i, j), _unit(h, k)),
    )
    r.triples(
        "Def1.ii.b",
        n,
        lambda i, j, k: evaluate(left, left.basis_product(i, j), _unit(h, k)),
        lambda i, j, k: evaluate(left, _unit(h, i), right.basis_product(j, k)),
    )
    r.triples(
        "Def1.iii.a",
        n,
        lambda i, j, k: evaluate(right, _unit(h, i), right.basis_product(j, k)),
        lambda i, j, k: evaluate(right, right.basis_product(i, j), _unit(h, k)),
    )
    r.triples(
        "Def1.iii.b",
        n,
        lambda i, j, k: evaluate(right, right.basis_product(i, j), _unit(h, k)),
        lambda i, j, k: evaluate(right, left.basis_product(i, j), _unit(h, k)),
    )
    return r.report


def _unit(h, i: int) -> tuple:
    n = h.space.dim
    z, o = h.field.zero, h.field.one
    return tuple(o if t == i else z for t in range(n))


def check_hom_superdialgebra(
    h: DialgebraInstance, max_violations: int = DEFAULT_MAX_VIOLATIONS
) -> CheckReport:
    """Check the Hom-superdialgebra axioms; the epsilon component is ignored."""
    n = h.space.dim
    left, right = h.left, h.right
    a = [h.alpha.m.col(j) for j in range(n)]
    r = _Runner("hom-superdialgebra", h.field, max_violations)
    _multiplicativity(r, "Def2.i.left", h.alpha, left)
    _multiplicativity(r, "Def2.i.right", h.alpha, right)
    r.triples(
        "Def2.ii.a",
        n,
        lambda i, j, k: evaluate(left, a[i], left.basis_product(j, k)),
        lambda i, j, k: evaluate(left, left.basis_product(i, j), a[k]),
    )
    r.triples(
        "Def2.ii.b",
        n,
        lambda i, j, k: evaluate(left, left.basis_product(i, j), a[k]),
        lambda i, j, k: evaluate(left, a[i], right.basis_product(j, k)),
    )
    r.triples(
        "Def2.iii.a",
        n,
        lambda i, j, k: evaluate(right, a[i], right.basis_product(j, k)),
        lambda i, j, k: evaluate(right, right.basis_product(i, j), a[k]),
    )
    r.triples(
        "Def2.iii.b",
        n,
        lambda i, j, k: evaluate(right, right.basis_product(i, j), a[k]),
        lambda i, j, k: evaluate(right, left.basis_product(i, j), a[k]),
    )
    r.triples(
        "Def2.iv",
        n,
        lambda i, j, k: evaluate(right, a[i], left.basis_product(j, k)),
        lambda i, j, k: evaluate(left, right.basis_product(i, j), a[k]),
    )
    return r.report


def check_bihom_assoc_superalgebra(
    inst: SuperalgebraInstance, max_violations: int = DEFAULT_MAX_VIOLATIONS
) -> CheckReport:
    n = inst.space.dim
    prod = inst.prod
    a = [inst.alpha.m.col(j) for j in range(n)]
    e = [inst.epsilon.m.col(j) for j in range(n)]
    r = _Runner("bihom-associative-superalgebra", inst.field, max_violations)
    r.map_commutation("Def3.i", inst.alpha, inst.epsilon)
    _multiplicativity(r, "Def3.ii.alpha", inst.alpha, prod)
    _multiplicativity(r, "Def3.ii.epsilon", inst.epsilon, prod)
    r.triples(
        "Def3.iii",
        n,
        lambda i, j, k: evaluate(prod, a[i], prod.basis_product(j, k)),
        lambda i, j, k: evaluate(prod, prod.basis_product(i, j), e[k]),
    )
    return r.report


def check_bihom_superdialgebra(
    h: DialgebraInstance, max_violations: int = DEFAULT_MAX_VIOLATIONS
) -> CheckReport:
    n = h.space.dim
    left, right = h.left, h.right
    a = [h.alpha.m.col(j) for j in range(n)]
    e = [h.epsilon.m.col(j) for j in range(n)]
    r = _Runner("bihom-superdialgebra", h.field, max_violations)
    r.map_commutation("Def4.i", h.alpha, h.epsilon)
    _multiplicativity(r, "Def4.ii.left", h.alpha, left)
    _multiplicativity(r, "Def4.ii.right", h.alpha, right)
    _multiplicativity(r, "Def4.iii.left", h.epsilon, left)
    _multiplicativity(r, "Def4.iii.right", h.epsilon, right)
    r.triples(
        "Def4.iv",
        n,
        lambda i, j, k: evaluate(left, left.basis_product(i, j), e[k]),
        lambda i, j, k: evaluate(left, a[i], left.basis_product(j, k)),
    )
    r.triples(
        "Def4.v",
        n,
        lambda i, j, k: evaluate(left, right.basis_product(i, j), e[k]),
        lambda i, j, k: evaluate(right, a[i], left.basis_product(j, k)),
    )
    r.triples(
        "Def4.vi",
        n,
        lambda i, j, k: evaluate(right, left.basis_product(i, j), e[k]),
        lambda i, j, k: evaluate(left, a[i], right.basis_product(j, k)),
    )
    r.triples(
        "Def4.vii",
        n,
        lambda i, j, k: evaluate(right, right.basis_product(i, j), e[k]),
        lambda i, j, k: evaluate(right, a[i], right.basis_product(j, k)),
    )
    return r.report


def check_multiplicative(
    h: DialgebraInstance, max_violations: int = DEFAULT_MAX_VIOLATIONS
) -> tuple[bool, CheckReport]:
    """True iff alpha and epsilon are morphisms for both products."""
    r = _Runner("multiplicative", h.field, max_violations)
    _multiplicativity(r, "Def4.ii.left", h.alpha, h.left)
    _multiplicativity(r, "Def4.ii.right", h.alpha, h.right)
    _multiplicativity(r, "Def4.iii.left", h.epsilon, h.left)
    _multiplicativity(r, "Def4.iii.right", h.epsilon, h.right)
    return r.report.ok, r.report


def check_regular(h: DialgebraInstance) -> bool:
    """True iff both structure maps are bijective."""
    n = h.space.dim
    return rank(h.alpha.m) == n and rank(h.epsilon.m) == n
