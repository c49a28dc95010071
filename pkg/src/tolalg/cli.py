"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 invariant violation, 4 undecided.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .algebra import associativity_report, element_from_json, star
from .circle import (
    Fejer,
    PartialSum,
    circle_truncate,
    positivity_check,
    torus_from_json,
    torus_star,
    trig_from_json,
    trig_star,
)
from .errors import InputError, InvariantViolation, ParseError, PreconditionViolation, Undecided
from .matrix import Tolerance, is_psd, matrix_from_json, matrix_to_json
from .povm import apply_povm, circulant_spectrum, is_informationally_complete, led_povm, pure_fiber_check
from .relation import (
    connected_components,
    dominant_vertices,
    is_equivalence,
    non_transitive_triple,
    parse_action,
    parse_relation,
    relation_from_action,
    relation_from_cover,
    relation_from_proximity,
)
from .states import classify_pure, decompose_weak_positive, is_weak_positive
from .sweep import CHECKS, RELATION_CHECKS

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_UNDECIDED = 0, 2, 3, 4


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _read_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON: {exc}") from exc


def _cx(z) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def _tol(args) -> Tolerance:
    return Tolerance(rel_eps=args.tol) if args.tol else Tolerance()


def load_relation(args, required=True):
    """Relation from whichever source flag was given; also returns action flags."""
    extra = {}
    if args.relation:
        return parse_relation(_read(args.relation)), extra
    if args.cover:
        obj = _read_json(args.cover)
        if not isinstance(obj, dict) or "n" not in obj or "sets" not in obj:
            raise ParseError('cover JSON needs "n" and "sets"')
        return relation_from_cover(obj["n"], obj["sets"]), extra
    if args.points:
        if args.eps is None:
            raise ParseError("--points needs --eps")
        obj = _read_json(args.points)
        pts = obj["points"] if isinstance(obj, dict) else obj
        return relation_from_proximity(pts, args.eps), extra
    if args.action:
        R, free, transitive = relation_from_action(parse_action(_read(args.action)))
        return R, {"free": free, "transitive": transitive}
    if required:
        raise ParseError("give one of --relation, --cover, --points/--eps, --action")
    return None, extra


def relation_summary(R, extra=None) -> dict:
    triple = non_transitive_triple(R)
    out = {
        "n": R.n,
        "edges": R.to_json()["edges"],
        "components": connected_components(R),
        "dominant": dominant_vertices(R),
        "equivalence": is_equivalence(R),
        "triple": list(triple) if triple else None,
    }
    out.update(extra or {})
    return out


def run_relation(args) -> tuple[dict, int]:
    R, extra = load_relation(args)
    return relation_summary(R, extra), EXIT_OK


def run_algebra(args) -> tuple[dict, int]:
    tol = _tol(args)
    R, _ = load_relation(args, required=not args.a)
    a = element_from_json(_read_json(args.a), tol) if args.a else None
    if R is None:
        R = a.relation
    out = {"relation": R.to_json(), **associativity_report(R).to_json()}
    if args.a:
        if a.relation != R:
            raise InvariantViolation("--a lives on a different relation")
        b = element_from_json(_read_json(args.b), tol) if args.b else a
        if b.relation != R:
            raise InvariantViolation("--b lives on a different relation")
        out["product"] = matrix_to_json(star(a, b).mat)
    return out, EXIT_OK


def _vector_from_json(obj) -> np.ndarray:
    vec = obj["vector"] if isinstance(obj, dict) else obj
    try:
        return np.array([complex(*z) if isinstance(z, list) else complex(z) for z in vec])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad vector: {exc}") from exc


def run_states(args) -> tuple[dict, int]:
    tol = _tol(args)
    if args.vector:
        R, _ = load_relation(args)
        v = _vector_from_json(_read_json(args.vector))
        if args.normalize:
            v = v / np.linalg.norm(v)
        return classify_pure(v, R, tol).to_json(), EXIT_OK
    if args.element:
        a = element_from_json(_read_json(args.element), tol)
        out = {"relation": a.relation.to_json(), "psd": is_psd(a.mat, tol)}
        try:
            cert = is_weak_positive(a, tol, max_iter=args.max_iter)
        except Undecided as exc:
            out.update({"weakly_positive": None, "undecided": str(exc)})
            return out, EXIT_UNDECIDED
        out["weakly_positive"] = cert is not None
        if cert is not None:
            out["certificate"] = matrix_to_json(cert)
            if args.decompose:
                bs = decompose_weak_positive(a, certificate=cert, tol=tol)
                out["decomposition"] = [matrix_to_json(b.mat) for b in bs]
        return out, EXIT_OK
    raise ParseError("states needs --vector or --element")


def run_povm(args) -> tuple[dict, int]:
    P = led_povm(args.n, args.k)
    cert = is_informationally_complete(P)
    out = {
        "n": args.n,
        "k": args.k,
        "ic": cert.ic,
        "rank": cert.rank,
        "spectrum": [_cx(z) for z in circulant_spectrum(args.n, args.k)],
    }
    if args.rho:
        rho = matrix_from_json(_read_json(args.rho))
        dist = apply_povm(rho, P, _tol(args))
        out["distribution"] = [float(p) for p in dist]
        if args.k < args.n:
            out["pure_index"] = pure_fiber_check(dist, args.n, args.k)
    return out, EXIT_OK


def run_circle(args) -> tuple[dict, int]:
    if args.torus_f:
        F = torus_from_json(_read_json(args.torus_f))
        G = torus_from_json(_read_json(args.torus_g)) if args.torus_g else F
        return {"theta": args.theta, "product": torus_star(F, G, args.theta).to_json()}, EXIT_OK
    if not args.f:
        raise ParseError("circle needs --f (or --torus-f)")
    f = trig_from_json(_read_json(args.f))
    t = Fejer(args.n) if args.kind == "fejer" else PartialSum(args.n)
    out = {"kind": args.kind, "n": args.n, "truncation": circle_truncate(f, t).to_json()}
    if args.g:
        g = trig_from_json(_read_json(args.g))
        out["product"] = trig_star(f, g, t).to_json()
    try:
        out["positivity_preserved"] = positivity_check(f, t, args.grid)
    except PreconditionViolation:
        out["positivity_preserved"] = None
    return out, EXIT_OK


def run_sweep(args) -> tuple[dict, int]:
    checks = list(CHECKS) if args.check == "all" else [args.check]
    if any(c in RELATION_CHECKS for c in checks) and args.max_n > 5:
        raise InputError("relation sweeps are limited to --max-n <= 5")
    if args.max_n < 1 or args.max_n > 64:
        raise InputError("--max-n must be in 1..64")
    results = [CHECKS[c](args.max_n) for c in checks]
    out = {"max_n": args.max_n, "results": [r.to_json() for r in results],
           "passed": all(r.passed for r in results)}
    return out, EXIT_OK if out["passed"] else EXIT_INVARIANT


def _add_source(p):
    g = p.add_argument_group("relation source")
    g.add_argument("--relation", metavar="FILE", help="relation JSON or edge list")
    g.add_argument("--cover", metavar="FILE", help='cover JSON {"n":..,"sets":[[..],..]}')
    g.add_argument("--points", metavar="FILE", help="points JSON (list of vectors)")
    g.add_argument("--eps", type=float, help="proximity threshold, strict d < eps")
    g.add_argument("--action", metavar="FILE", help="magma action JSON")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None, help="relative tolerance (default 1e-9)")

    parser = argparse.ArgumentParser(prog="tolalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relation", parents=[common], help="analyze a tolerance relation")
    _add_source(p)
    p.set_defaults(func=run_relation)

    p = sub.add_parser("algebra", parents=[common], help="associativity report and products")
    _add_source(p)
    p.add_argument("--a", metavar="FILE", help="algebra element JSON")
    p.add_argument("--b", metavar="FILE", help="algebra element JSON (default: --a)")
    p.set_defaults(func=run_algebra)

    p = sub.add_parser("states", parents=[common], help="purity and weak positivity")
    _add_source(p)
    p.add_argument("--vector", metavar="FILE", help="vector JSON, classify T(P_v)")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--element", metavar="FILE", help="element JSON, decide weak positivity")
    p.add_argument("--decompose", action="store_true", help="also write it as a sum of b * b^*")
    p.add_argument("--max-iter", type=int, default=5000)
    p.set_defaults(func=run_states)

    p = sub.add_parser("povm", parents=[common], help="LED-detector POVM")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rho", metavar="FILE", help="density matrix JSON")
    p.set_defaults(func=run_povm)

    p = sub.add_parser("circle", parents=[common], help="circle truncations and torus products")
    p.add_argument("--f", metavar="FILE")
    p.add_argument("--g", metavar="FILE")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--kind", choices=("partial", "fejer"), default="fejer")
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--torus-f", metavar="FILE")
    p.add_argument("--torus-g", metavar="FILE")
    p.add_argument("--theta", type=float, default=2 ** 0.5 - 1)
    p.set_defaults(func=run_circle)

    p = sub.add_parser("sweep", parents=[common], help="exhaustive cross-checks")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--check", choices=("all", *CHECKS), default="all")
    p.set_defaults(func=run_sweep)
    return parser


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], dict)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_text(x, indent) + (f"\n{pad}--" if i < len(obj) - 1 else "") for i, x in enumerate(obj))
    return f"{pad}{json.dumps(obj)}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    np.random.seed(args.seed)
    try:
        out, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except Undecided as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    out = {**out, "seed": args.seed}
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        print(_text(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
