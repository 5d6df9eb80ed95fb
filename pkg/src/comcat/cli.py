"""Command-line front end: reproducible model checks over JSON files.

Exit codes: 0 property verified / object produced, 1 property refuted
(with a witness in the report), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import models, report, serialize
from .com import Com, validate_com
from .composites import tensor
from .conditioning import remote_evaluate
from .config import DEFAULT_SEED, numeric_tolerance, set_tolerance
from .errors import ComcatError
from .protocols import check_theory_compact_closed, find_teleportation, verify_teleportation
from .selfdual import (
    check_symmetric_self_duality,
    check_weak_self_duality,
    dagger_compactness_verdict,
)
from .serialize import (
    SchemaError,
    certificate_to_json,
    com_from_json,
    com_to_json,
    state_from_json,
    structure_to_json,
    vector_to_json,
)

DUAL_TWIN = {"min": "max", "max": "min", "spatial": "spatial", "spatial_quantum": "spatial"}


def _load_json(path: str):
    return json.loads(Path(path).read_text())


def _resolve_model(spec: str) -> tuple[Com, dict]:
    """Model plus an input descriptor with a content hash."""
    if spec.startswith("builtin:"):
        com = models.builtin(spec[len("builtin:") :])
        digest = report.hash_text(serialize.dumps(com_to_json(com)))
        return com, {"source": spec, "sha256": digest}
    raw = Path(spec).read_bytes()
    com = com_from_json(json.loads(raw))
    return com, {"source": spec, "sha256": report.hash_bytes(raw)}


def _emit(data: dict, output: str | None) -> None:
    text = serialize.dumps(data, indent=2) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _finish(args, command, inputs, verdicts, residuals=None, certificates=None, ok=True, t0=None):
    rep = report.make_report(
        command=command,
        inputs=inputs,
        seed=args.seed,
        tolerance=numeric_tolerance(),
        verdicts=verdicts,
        residuals=residuals,
        certificates=certificates,
        runtime_seconds=None if t0 is None else round(time.time() - t0, 6),
    )
    _emit(rep, args.output)
    return 0 if ok else 1


def _cmd_validate(args) -> int:
    t0 = time.time()
    com, desc = _resolve_model(args.model)
    violations = validate_com(com, sample_seed=args.seed)
    return _finish(
        args,
        "validate",
        {"model": desc},
        {"valid": not violations, "violations": violations},
        ok=not violations,
        t0=t0,
    )


def _cmd_model(args) -> int:
    if args.which == "classical":
        com = models.classical(args.n)
    elif args.which == "quantum":
        com = models.quantum(args.d)
    elif args.which == "gbit":
        com = models.gbit()
    else:  # mackey
        data = _load_json(args.triple)
        triple = models.mackey_triple(
            data["outcomes"],
            data["states"],
            [[serialize.num_from_json(v) for v in row] for row in data["table"]],
        )
        com = models.from_mackey(triple)
    _emit(com_to_json(com), args.output)
    return 0


def _cmd_tensor(args) -> int:
    A, _ = _resolve_model(args.a)
    B, _ = _resolve_model(args.b)
    AB = tensor(A, B, args.kind)
    _emit(com_to_json(AB), args.output)
    return 0


def _cmd_remote_eval(args) -> int:
    t0 = time.time()
    A, da = _resolve_model(args.models[0])
    B, db = _resolve_model(args.models[1])
    C, dc = _resolve_model(args.models[2])
    f = state_from_json(_load_json(args.f))
    omega = state_from_json(_load_json(args.omega))
    alpha = state_from_json(_load_json(args.alpha))
    result = remote_evaluate(f, omega, alpha, A, B, C)
    return _finish(
        args,
        "remote-eval",
        {"a": da, "b": db, "c": dc},
        {"both_sides_agree": True, "result": vector_to_json(result)},
        t0=t0,
    )


def _composite_pair(A: Com, B: Com, kind: str):
    """State-side composite of the named kind plus its dual twin for the
    effect side (the twin carries the complementary effect cone)."""
    state_side = tensor(B, A, kind)
    effect_side = tensor(A, B, DUAL_TWIN.get(kind, kind))
    return state_side, effect_side


def _cmd_teleport(args) -> int:
    t0 = time.time()
    A, da = _resolve_model(args.a)
    B, db = _resolve_model(args.b)
    ba, ab = _composite_pair(A, B, args.composite)
    cert = find_teleportation(A, B, ab, ba)
    if cert is None:
        return _finish(
            args,
            "teleport",
            {"a": da, "b": db},
            {"teleportable": False, "composite": args.composite, "exhausted": True},
            ok=False,
            t0=t0,
        )
    check = verify_teleportation(cert, A, B)
    return _finish(
        args,
        "teleport",
        {"a": da, "b": db},
        {"teleportable": check.ok, "composite": args.composite},
        residuals={k: serialize.num_to_json(v) for k, v in check.residuals.items()},
        certificates=certificate_to_json(cert),
        ok=check.ok,
        t0=t0,
    )


def _load_theory(spec: str):
    """A theory file lists objects, pairwise composite kinds and optional
    structure variants; bare object specs form a one-object theory."""
    if spec.startswith("builtin:") or not spec.endswith(".json"):
        com, desc = _resolve_model(spec)
        return [com], {}, {}, {"theory": desc}
    raw = Path(spec).read_bytes()
    data = json.loads(raw)
    objs = []
    for entry in data["objects"]:
        if isinstance(entry, str):
            com, _ = _resolve_model(entry)
        else:
            com = com_from_json(entry)
        objs.append(com)
    composites = data.get("composites", {})
    structures = data.get("structures", {})
    return objs, composites, structures, {"theory": {"source": spec, "sha256": report.hash_bytes(raw)}}


def _default_kind(A: Com, B: Com) -> str:
    if A.kind == "psd" and B.kind == "psd":
        return "spatial"
    if A.label.startswith("classical") or B.label.startswith("classical"):
        return "min"
    return "max"


def _cmd_compact_check(args) -> int:
    t0 = time.time()
    objs, designations, _, inputs = _load_theory(args.theory)
    composites = {}
    for A in objs:
        for B in objs:
            kind = designations.get(f"{A.label}|{B.label}", args.composite or _default_kind(A, B))
            composites[(A.label, B.label)] = tensor(A, B, kind)
            composites[("effects", A.label, B.label)] = tensor(A, B, DUAL_TWIN.get(kind, kind))
    out = check_theory_compact_closed(objs, composites)
    verdicts = {
        "compact_closed": out["theory_compact_closed"],
        "objects": {
            A.label: {
                "compact": out[A.label]["compact"],
                "partner": out[A.label]["partner"],
                "exhausted": [" ".join(t) for t in out[A.label]["exhausted"]],
            }
            for A in objs
        },
    }
    certs = {
        A.label: [certificate_to_json(c) for c in out[A.label]["certificates"]]
        for A in objs
        if out[A.label]["certificates"]
    }
    return _finish(
        args,
        "compact-check",
        inputs,
        verdicts,
        certificates=certs,
        ok=out["theory_compact_closed"],
        t0=t0,
    )


def _cmd_wsd(args) -> int:
    t0 = time.time()
    com, desc = _resolve_model(args.model)
    found = (
        check_symmetric_self_duality(com) if args.symmetric else check_weak_self_duality(com)
    )
    if found is None:
        return _finish(
            args,
            "wsd",
            {"model": desc},
            {"weakly_self_dual": False, "symmetric_required": args.symmetric},
            ok=False,
            t0=t0,
        )
    return _finish(
        args,
        "wsd",
        {"model": desc},
        {"weakly_self_dual": True, "symmetric_required": args.symmetric},
        certificates=structure_to_json(found),
        t0=t0,
    )


def _structure_for(com: Com, variant: str | None):
    name = com.label if variant is None else f"{com.label}:{variant}"
    return models.builtin_structure(name)


def _cmd_dagger(args) -> int:
    t0 = time.time()
    objs, _, structure_spec, inputs = _load_theory(args.theory)
    variants = dict(structure_spec)
    for item in args.structure or []:
        label, _, variant = item.partition("=")
        variants[label] = variant
    structures = []
    for com in objs:
        try:
            structures.append(_structure_for(com, variants.get(com.label)))
        except KeyError:
            found = check_symmetric_self_duality(com) or check_weak_self_duality(com)
            if found is None:
                return _finish(
                    args,
                    "dagger",
                    inputs,
                    {"dagger_compact": False, "reason": f"no structure for {com.label}"},
                    ok=False,
                    t0=t0,
                )
            structures.append(found)
    verdict = dagger_compactness_verdict(structures)
    verdicts = {
        "dagger_compact": verdict["dagger_compact"],
        "all_equivalences_consistent": verdict["all_consistent"],
        "objects": [
            {
                "label": entry["label"],
                "symmetric": entry["symmetric"],
                "involutive": entry["trio"]["i"],
                "tau_is_identity": entry["trio"]["ii"],
                "consistent": entry["trio"]["consistent"],
            }
            for entry in verdict["objects"]
        ],
    }
    certs = {D.com.label: structure_to_json(D) for D in structures}
    return _finish(
        args,
        "dagger",
        inputs,
        verdicts,
        certificates=certs,
        ok=verdict["dagger_compact"],
        t0=t0,
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help="PRNG seed recorded in reports"
    )
    common.add_argument(
        "--tolerance", type=float, default=None, help="override the spectral tolerance"
    )
    common.add_argument("--output", "-o", default=None, help="write the report/object to a file")

    p = argparse.ArgumentParser(
        prog="comcat",
        description="Verification toolkit for finite-dimensional convex operational models.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common], help="check the model triple invariants")
    v.add_argument("model")
    v.set_defaults(func=_cmd_validate)

    m = sub.add_parser("model", help="emit a builtin or linearized model")
    msub = m.add_subparsers(dest="which", required=True)
    mc = msub.add_parser("classical", parents=[common])
    mc.add_argument("--n", type=int, required=True)
    mq = msub.add_parser("quantum", parents=[common])
    mq.add_argument("--d", type=int, required=True)
    msub.add_parser("gbit", parents=[common])
    mm = msub.add_parser("mackey", parents=[common])
    mm.add_argument("triple")
    m.set_defaults(func=_cmd_model)

    t = sub.add_parser("tensor", parents=[common], help="compose two models")
    t.add_argument("--kind", choices=["min", "max", "spatial"], required=True)
    t.add_argument("a")
    t.add_argument("b")
    t.set_defaults(func=_cmd_tensor)

    r = sub.add_parser("remote-eval", parents=[common], help="evaluate a remote protocol, both sides")
    r.add_argument("--f", required=True)
    r.add_argument("--omega", required=True)
    r.add_argument("--alpha", required=True)
    r.add_argument("--models", nargs=3, required=True, metavar=("A", "B", "C"))
    r.set_defaults(func=_cmd_remote_eval)

    tp = sub.add_parser("teleport", parents=[common], help="search for a teleportation protocol")
    tp.add_argument("a")
    tp.add_argument("b")
    tp.add_argument("--composite", choices=["min", "max"], default="min",
                    help="composite hosting the shared state")
    tp.set_defaults(func=_cmd_teleport)

    cc = sub.add_parser("compact-check", parents=[common], help="teleportation verdict per object")
    cc.add_argument("theory")
    cc.add_argument("--composite", choices=["min", "max"], default=None)
    cc.set_defaults(func=_cmd_compact_check)

    w = sub.add_parser("wsd", parents=[common], help="search for a (symmetric) self-duality structure")
    w.add_argument("model")
    w.add_argument("--symmetric", action="store_true")
    w.set_defaults(func=_cmd_wsd)

    d = sub.add_parser("dagger", parents=[common], help="dagger-compactness verdict for a theory")
    d.add_argument("theory")
    d.add_argument(
        "--structure",
        action="append",
        metavar="LABEL=VARIANT",
        help="structure variant per object, e.g. gbit=rotation",
    )
    d.set_defaults(func=_cmd_dagger)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tolerance is not None:
        set_tolerance(args.tolerance)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, SchemaError, KeyError, ValueError) as exc:
        print(f"comcat: input error: {exc}", file=sys.stderr)
        return 2
    except ComcatError as exc:
        print(f"comcat: {exc}", file=sys.stderr)
        return 1
    finally:
        set_tolerance(None)


if __name__ == "__main__":
    sys.exit(main())
