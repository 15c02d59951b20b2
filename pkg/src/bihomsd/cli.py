"""Batch command-line front end.

The CLI contains no algebra of its own: it marshals files and flags into the
service request models, dispatches to the service handlers (in-process by
default, over HTTP with --server), and renders the response.  Exit codes:
0 = pass, 1 = falsified or failed hypothesis, 2 = malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .errors import EngineError, SchemaError
from .serialize import from_dict
from .service import handlers
from .service import models as m

_ENDPOINTS = {
    "check": ("check", m.CheckRequest, m.CheckResponse),
    "twist": ("twist", m.TwistRequest, m.InstanceResponse),
    "derivations": ("derivations", m.DerivationsRequest, m.DerivationsResponse),
    "ideal": ("ideal", m.SubspaceRequest, m.IdealResponse),
    "quotient": ("quotient", m.SubspaceRequest, m.QuotientResponse),
    "morphism": ("morphism", m.MorphismRequest, m.MorphismResponse),
    "ad": ("ad", m.AdRequest, m.AdResponse),
    "bracket": ("bracket", m.BracketRequest, m.BracketResponse),
    "from_differential": ("from-differential", m.CheckRequest, m.InstanceResponse),
    "corpus": ("corpus", m.CorpusRequest, m.CorpusResponse),
}


class Client:
    """Dispatch either to in-process handlers or to a running service."""

    def __init__(self, server: str | None = None):
        self.server = server.rstrip("/") if server else None

    def call(self, name: str, request):
        path, _, response_model = _ENDPOINTS[name]
        if self.server is None:
            return getattr(handlers, f"handle_{name}")(request)
        import httpx

        resp = httpx.post(
            f"{self.server}/{path}", json=request.model_dump(), timeout=300.0
        )
        if resp.status_code >= 400:
            body = resp.json()
            if body.get("error") == "SchemaError":
                raise SchemaError(body.get("detail", ""))
            raise EngineError(body.get("detail", resp.text))
        return response_model.model_validate(resp.json())


def _load_payload(path: str) -> m.InstancePayload:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SchemaError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None
    from_dict(obj)  # surface schema problems with field names before wiring
    return m.InstancePayload(**obj)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SchemaError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, payload: dict, text: str) -> None:
    body = json.dumps(payload, indent=2, sort_keys=True) if args.format == "json" else text
    if getattr(args, "out", None):
        _atomic_write(Path(args.out), body + "\n")
    else:
        print(body)


def _max_violations(args) -> int:
    if args.max_violations is not None:
        return args.max_violations
    env = os.environ.get("BIHOM_MAX_VIOLATIONS")
    return int(env) if env else 100


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args, client: Client) -> int:
    req = m.CheckRequest(
        instance=_load_payload(args.path),
        which=args.which,
        max_violations=_max_violations(args),
        project_graded=args.project_graded,
    )
    resp = client.call("check", req)
    lines = [
        f"system: {resp.system}",
        f"input: {resp.input_digest[:16]}",
        f"result: {'PASS' if resp.ok else 'FAIL'}",
        f"elapsed_ms: {resp.elapsed_ms:.2f}",
    ]
    for axiom, count in sorted(resp.counts.items()):
        lines.append(f"  {axiom}: {count}")
    for v in resp.violations[:10]:
        lines.append(f"  {v.get('axiom')} at {v.get('indices')}")
    _emit(args, resp.model_dump(), "\n".join(lines))
    return 0 if resp.ok else 1


def cmd_twist(args, client: Client) -> int:
    req = m.TwistRequest(
        instance=_load_payload(args.path),
        alpha_prime=_load_json(args.alpha_prime) if args.alpha_prime else None,
        epsilon_prime=_load_json(args.epsilon_prime) if args.epsilon_prime else None,
        power=args.power,
        untwist=args.untwist,
        hom_epsilon=_load_json(args.hom_epsilon) if args.hom_epsilon else None,
        verify=args.verify,
    )
    resp = client.call("twist", req)
    out_json = json.dumps(
        resp.instance.model_dump(exclude_none=True), indent=2, sort_keys=True
    )
    if args.out:
        _atomic_write(Path(args.out), out_json + "\n")
        print(f"wrote {args.out} ({resp.output_digest[:16]})")
    else:
        print(out_json)
    if resp.verified is not None:
        print(f"verified: {'PASS' if resp.verified else 'FAIL'}", file=sys.stderr)
        return 0 if resp.verified else 1
    return 0


def cmd_derivations(args, client: Client) -> int:
    req = m.DerivationsRequest(
        instance=_load_payload(args.path),
        m=args.m,
        n=args.n,
        parity=args.parity,
        generalized=args.generalized,
        quasi=args.quasi,
        oracle=args.oracle,
        convention=args.sign_convention,
    )
    resp = client.call("derivations", req)
    payload = resp.model_dump(exclude_none=True)
    lines = [
        f"signature: m={resp.signature['m']} n={resp.signature['n']} "
        f"parity={resp.signature['parity']}",
        f"dimension: {resp.dim}",
    ]
    if resp.oracle_agrees is not None:
        lines.append(
            f"oracle: dim={resp.oracle_dim} "
            f"{'AGREES' if resp.oracle_agrees else 'DISAGREES'}"
        )
    _emit(args, payload, "\n".join(lines))
    if resp.oracle_agrees is False:
        return 1
    return 0


def cmd_ideal(args, client: Client) -> int:
    req = m.SubspaceRequest(
        instance=_load_payload(args.path),
        vectors=_load_json(args.vectors),
        closure=args.closure,
        sum_with=_load_json(args.sum_with) if args.sum_with else None,
    )
    resp = client.call("ideal", req)
    text = (
        f"dim: {resp.dim}\n"
        f"subalgebra: {resp.is_subalgebra}\n"
        f"left: {resp.is_left}\nright: {resp.is_right}\n"
        f"two_sided: {resp.is_two_sided}"
    )
    _emit(args, resp.model_dump(), text)
    return 0 if resp.is_two_sided else 1


def cmd_quotient(args, client: Client) -> int:
    req = m.SubspaceRequest(
        instance=_load_payload(args.path),
        vectors=_load_json(args.ideal),
        closure=args.closure,
    )
    resp = client.call("quotient", req)
    out_json = json.dumps(
        resp.instance.model_dump(exclude_none=True), indent=2, sort_keys=True
    )
    if args.out:
        _atomic_write(Path(args.out), out_json + "\n")
        print(f"wrote {args.out} (quotient dim {resp.instance.dim})")
    else:
        print(out_json)
    return 0


def cmd_morphism(args, client: Client) -> int:
    req = m.MorphismRequest(
        source=_load_payload(args.source),
        target=_load_payload(args.target),
        matrix=_load_json(args.matrix),
    )
    resp = client.call("morphism", req)
    text = (
        f"morphism: {'PASS' if resp.is_morphism else 'FAIL'}\n"
        f"kernel dim: {len(resp.kernel)} (two-sided: {resp.kernel_ideal.is_two_sided})\n"
        f"image dim: {len(resp.image)} "
        f"(subalgebra: {resp.image_subalgebra.is_subalgebra})"
    )
    _emit(args, resp.model_dump(), text)
    return 0 if resp.is_morphism else 1


def cmd_ad(args, client: Client) -> int:
    req = m.AdRequest(
        instance=_load_payload(args.path),
        vector=[s.strip() for s in args.vector.split(",")],
    )
    resp = client.call("ad", req)
    text = (
        f"parity: {resp.parity}\n"
        f"left_leibniz: {'PASS' if resp.left_leibniz_ok else 'FAIL'}\n"
        f"right_leibniz: {'PASS' if resp.right_leibniz_ok else 'FAIL'} (informational)"
    )
    _emit(args, resp.model_dump(), text)
    return 0 if resp.left_leibniz_ok else 1


def cmd_bracket(args, client: Client) -> int:
    s1 = _load_json(args.space1)
    s2 = _load_json(args.space2)

    def payload(obj) -> m.SpacePayload:
        sig = obj.get("signature", obj)
        return m.SpacePayload(
            m=sig["m"], n=sig["n"], parity=sig["parity"], basis=obj["basis"]
        )

    req = m.BracketRequest(
        instance=_load_payload(args.path),
        space1=payload(s1),
        space2=payload(s2),
        convention=args.sign_convention,
    )
    resp = client.call("bracket", req)
    text = (
        f"target: m={resp.target_signature['m']} n={resp.target_signature['n']} "
        f"parity={resp.target_signature['parity']} (dim {resp.target_dim})\n"
        f"closure: {'PASS' if resp.ok else 'FAIL'} over {len(resp.entries)} pairs"
    )
    _emit(args, resp.model_dump(), text)
    return 0 if resp.ok else 1


def cmd_from_differential(args, client: Client) -> int:
    req = m.CheckRequest(instance=_load_payload(args.path))
    resp = client.call("from_differential", req)
    out_json = json.dumps(
        resp.instance.model_dump(exclude_none=True), indent=2, sort_keys=True
    )
    if args.out:
        _atomic_write(Path(args.out), out_json + "\n")
        print(f"wrote {args.out} (verified: {resp.verified})")
    else:
        print(out_json)
    return 0 if resp.verified else 1


def cmd_corpus(args, client: Client) -> int:
    if not args.generate:
        print("nothing to do; pass --generate", file=sys.stderr)
        return 2
    req = m.CorpusRequest(
        seed=args.seed,
        count=args.count,
        kind=args.kind,
        field=args.field,
        p=args.p,
        dim_max=args.dim_max,
    )
    resp = client.call("corpus", req)
    out_dir = Path(args.out)
    manifest = {"seed": resp.seed, "kind": args.kind, "files": {}}
    for idx, item in enumerate(resp.items):
        fname = f"{idx:03d}_{item.name}.json"
        _atomic_write(
            out_dir / fname,
            json.dumps(
                item.instance.model_dump(exclude_none=True), indent=2, sort_keys=True
            )
            + "\n",
        )
        manifest["files"][fname] = {"digest": item.digest, "tags": item.tags}
    _atomic_write(out_dir / "manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"seed: {resp.seed}")
    print(f"wrote {len(resp.items)} instances to {out_dir}")
    return 0


def cmd_serve(args, _client: Client) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bihomsd",
        description="Exact checks and constructions for BiHom-superdialgebras.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; default is in-process execution",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--format", choices=["text", "json"], default="text")
        if out:
            p.add_argument("--out", default=None, help="write the result to a file")

    p = sub.add_parser("check", help="run an axiom-system check on an instance file")
    p.add_argument("path")
    p.add_argument(
        "--which",
        choices=["bihom", "super", "hom", "assoc", "multiplicative", "regular", "grading"],
        default="bihom",
    )
    p.add_argument("--max-violations", type=int, default=None)
    p.add_argument("--project-graded", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("twist", help="twist, power-twist or untwist an instance")
    p.add_argument("path")
    p.add_argument("--alpha-prime", help="JSON matrix file")
    p.add_argument("--epsilon-prime", help="JSON matrix file")
    p.add_argument("--power", type=int, default=None)
    p.add_argument("--untwist", action="store_true")
    p.add_argument("--hom-epsilon", help="JSON matrix file; treat input as Hom instance")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_twist)

    p = sub.add_parser("derivations", help="solve a derivation space")
    p.add_argument("path")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--parity", type=int, choices=[0, 1], default=0)
    p.add_argument("--generalized", nargs=3, metavar=("GAMMA", "DELTA", "LAMBDA"))
    p.add_argument("--quasi", action="store_true")
    p.add_argument("--oracle", action="store_true")
    p.add_argument(
        "--sign-convention",
        choices=["standard", "paper-dialgebra"],
        default="standard",
    )
    common(p)
    p.set_defaults(fn=cmd_derivations)

    p = sub.add_parser("ideal", help="classify a spanned subspace")
    p.add_argument("path")
    p.add_argument("--vectors", required=True, help="JSON file: list of vectors")
    p.add_argument("--closure", action="store_true")
    p.add_argument("--sum-with", default=None, help="second vector file; classify the span union")
    common(p)
    p.set_defaults(fn=cmd_ideal)

    p = sub.add_parser("quotient", help="quotient by a two-sided graded ideal")
    p.add_argument("path")
    p.add_argument("--ideal", required=True, help="JSON file: list of spanning vectors")
    p.add_argument("--closure", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("morphism", help="verify a map between two instances")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--matrix", required=True, help="JSON matrix file")
    common(p)
    p.set_defaults(fn=cmd_morphism)

    p = sub.add_parser("ad", help="inner derivation attached to a vector")
    p.add_argument("path")
    p.add_argument("--vector", required=True, help="comma-separated scalars")
    common(p)
    p.set_defaults(fn=cmd_ad)

    p = sub.add_parser("bracket", help="bracket-closure check of two solved spaces")
    p.add_argument("path")
    p.add_argument("--space1", required=True, help="basis file from `derivations --out`")
    p.add_argument("--space2", required=True)
    p.add_argument(
        "--sign-convention",
        choices=["standard", "paper-dialgebra"],
        default="standard",
    )
    common(p)
    p.set_defaults(fn=cmd_bracket)

    p = sub.add_parser("from-differential", help="dialgebra from a differential instance")
    p.add_argument("path")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_from_differential)

    p = sub.add_parser("corpus", help="generate a directory of verified instances")
    p.add_argument("--generate", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--kind", choices=["bihom", "superdialgebra", "hom"], default="bihom")
    p.add_argument("--field", choices=["Q", "Fp"], default="Q")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--dim-max", type=int, default=None, help="cap instance dimension")
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    client = Client(args.server)
    try:
        return args.fn(args, client)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
