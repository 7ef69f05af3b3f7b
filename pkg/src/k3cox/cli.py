"""Command-line interface: every library operation behind one subcommand.

Output is JSON on stdout (SVG goes to a file when requested).  Exit codes:
0 success, 1 usage error, 2 validation error, 3 reference-value mismatch
from verify-paper.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import reference
from .chamber import Chamber, NotInCone, count_boundary_divisors, default_chamber
from .diagrams import (
    DiagramEnumeration,
    Unclassifiable,
    classify,
    shape,
    vertices_of,
)
from .ias import (
    Degenerate,
    IASphere,
    NotClosed,
    TrianglesOverlap,
    ZeroVolume,
    build_sphere,
    dual_decomposition,
    render_svg,
)
from .kulikov import (
    OddMultiple,
    ParityViolation,
    contraction_plan,
    stable_model_label,
    triangulate,
    typeii_model,
)
from .lattice import (
    AVector,
    Inconsistent,
    NotInImage,
    Underdetermined,
    complete_a,
    default_root_system,
)

VALIDATION_ERRORS = (
    NotInImage,
    Inconsistent,
    Underdetermined,
    NotInCone,
    NotClosed,
    TrianglesOverlap,
    ZeroVolume,
    Degenerate,
    ParityViolation,
    OddMultiple,
    Unclassifiable,
    ValueError,
)


def _parse_int_list(text):
    return [int(x) for x in text.replace(" ", "").split(",") if x != ""]


def _avector_from_args(args, rs) -> AVector:
    if getattr(args, "vector", None):
        vals = _parse_int_list(args.vector)
        if len(vals) != 24:
            raise ValueError("a-vector needs 24 comma-separated integers")
        return AVector(rs, vals)
    partial = {}
    if args.zeros:
        for i in _parse_int_list(args.zeros):
            partial[i] = 0
    for item in args.set or []:
        key, _, val = item.partition("=")
        partial[int(key)] = int(val)
    if not partial:
        raise ValueError("provide a 24-entry vector or --zeros/--set data")
    return complete_a(rs, partial)


def _emit(payload):
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _add_vector_arguments(sub, positional=True):
    if positional:
        sub.add_argument("vector", nargs="?", help="24 comma-separated integers")
    sub.add_argument("--zeros", help="comma-separated vertices forced to zero")
    sub.add_argument(
        "--set", action="append", metavar="I=V", help="pin entry i to value v"
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="k3cox",
        description="Exact Coxeter-diagram combinatorics and integral-affine spheres "
        "for degree-2 K3 degenerations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("gram", help="the 24x24 Gram matrix")

    p = sub.add_parser("enumerate", help="count elliptic subdiagrams by rank")
    p.add_argument("--rank", type=int, help="single rank 1..18")
    p.add_argument("--mod", choices=["s3"], help="reduce modulo the diagram symmetry")

    sub.add_parser("parabolics", help="the four maximal parabolic classes")

    p = sub.add_parser("classify", help="classify a vertex subset")
    p.add_argument("vertices", help="comma-separated vertex indices")

    p = sub.add_parser("reduce", help="reflect an a-vector into the chamber")
    _add_vector_arguments(p)

    p = sub.add_parser("cone", help="cone of the fan containing a chamber vector")
    _add_vector_arguments(p)

    p = sub.add_parser("ias", help="integral-affine sphere commands")
    ias_sub = p.add_subparsers(dest="ias_command", required=True)
    pb = ias_sub.add_parser("build", help="build the sphere B(a)")
    _add_vector_arguments(pb)
    pb.add_argument("--svg", help="write an SVG rendering to this file")
    pb.add_argument(
        "--placement", choices=["symmetric", "vertex"], default="symmetric"
    )

    p = sub.add_parser("label", help="stable-model degeneration label")
    _add_vector_arguments(p)

    p = sub.add_parser("kulikov", help="triangulation statistics and labels")
    _add_vector_arguments(p)

    sub.add_parser("verify-paper", help="re-check every published reference value")
    return parser


def _cmd_gram(args, rs):
    _emit(rs.to_json())
    return 0


def _cmd_enumerate(args, rs):
    enum = DiagramEnumeration(rs)
    mod = args.mod
    if args.rank is not None:
        count = enum.elliptic_count(args.rank, mod)
        _emit({"rank": args.rank, "mod": mod, "count": count})
        return 0
    counts = {str(r): enum.elliptic_count(r, mod) for r in range(1, 19)}
    payload = {"mod": mod, "counts": counts}
    if mod == "s3":
        payload["rays"] = len(enum.maximal_parabolics()) + counts["18"]
    _emit(payload)
    return 0


def _cmd_parabolics(args, rs):
    enum = DiagramEnumeration(rs)
    _emit({"classes": [
        {"name": m["name"], "parts": m["parts"]} for m in enum.maximal_parabolics()
    ]})
    return 0


def _cmd_classify(args, rs):
    vs = _parse_int_list(args.vertices)
    sd = classify(rs, vs)
    payload = sd.to_json(rs)
    if sd.cls != "indefinite" and sd.components:
        labels = [shape(rs, c) for c in sd.components]
        payload["shape"] = " ".join(
            f"{l.base}{l.size}" + ("*" if l.suffix == "*" else "") for l in labels
        )
        payload["label"] = " ".join(l.ascii for l in labels)
    _emit(payload)
    return 0


def _cmd_reduce(args, rs):
    a = _avector_from_args(args, rs)
    ch = default_chamber()
    res = ch.reduce(a)
    _emit(
        {
            "reduced": res.vector.to_json()["a"],
            "word": list(res.word),
            "certificate": [str(x) for x in res.certificate],
        }
    )
    return 0


def _cmd_cone(args, rs):
    a = _avector_from_args(args, rs)
    ch = default_chamber()
    _emit(ch.cone_of(a).to_json())
    return 0


def _cmd_ias(args, rs):
    a = _avector_from_args(args, rs)
    sphere = build_sphere(a, rs, args.placement)
    payload = sphere.to_json()
    if isinstance(sphere, IASphere):
        payload["dual_decomposition"] = dual_decomposition(a, rs).to_json()
    if args.svg:
        if not isinstance(sphere, IASphere):
            raise Degenerate("no picture for an interval degeneration")
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(sphere))
        payload["svg"] = args.svg
    _emit(payload)
    return 0


def _cmd_label(args, rs):
    a = _avector_from_args(args, rs)
    lab = stable_model_label(a, rs)
    _emit({"label": lab.text, "kind": lab.kind, "components": list(lab.components)})
    return 0


def _cmd_kulikov(args, rs):
    a = _avector_from_args(args, rs)
    if a.norm() == 0:
        _emit({"type": "II", "model": typeii_model(a, rs).to_json(),
               "label": stable_model_label(a, rs).to_json()})
        return 0
    t = triangulate(a, rs)
    payload = t.to_json()
    payload["label"] = stable_model_label(a, rs).to_json()
    payload["contraction"] = contraction_plan(t, a, rs).to_json()["counts"]
    _emit(payload)
    return 0


def _cmd_verify(args, rs):
    report = reference.verify_all(rs)
    for line in report["lines"]:
        print(line)
    _emit({"passed": report["passed"], "failed": report["failed"]})
    return 0 if not report["failed"] else 3


COMMANDS = {
    "gram": _cmd_gram,
    "enumerate": _cmd_enumerate,
    "parabolics": _cmd_parabolics,
    "classify": _cmd_classify,
    "reduce": _cmd_reduce,
    "cone": _cmd_cone,
    "ias": _cmd_ias,
    "label": _cmd_label,
    "kulikov": _cmd_kulikov,
    "verify-paper": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    rs = default_root_system()
    try:
        return COMMANDS[args.command](args, rs)
    except VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
