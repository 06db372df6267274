"""Command-line front end.

Every command prints canonical JSON on stdout except ``render`` (SVG).
Errors print a JSON object with a machine-readable code on stderr and exit
with status 1. ``carries`` additionally uses exit status 2 for a non-proper
partition and 3 when the arrangement carries no partition.

Input arguments are paths to arrangement JSON files; the name of a shipped
fixture (ex1, ex1_broken, parl, y3, pent, polar2) is accepted as well.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fixtures
from .arrangement import CAP_ENV, Arrangement, CapExceeded, ContractViolation, Verdict, carries, project_pi
from .atlas import enum_d1_json
from .exactgeom import GeometryError, HomogeneousCone
from .faces import enumerate_faces
from .io import (
    arrangement_from_json,
    assignment_to_json,
    dumps,
    load_arrangement,
    load_assignment,
    partition_to_json,
)
from .metric import DEFAULT_SAMPLES, distance
from .nodes import ConsistencyError, InvalidNodeSystem, comb_equiv, comb_type, node_system_dim
from .realization import (
    assignment_cone_family,
    check_constraints,
    export_constraints,
    fz_check,
    partition_cone_family,
    prepare,
    reconstruct,
    region_cone_family,
    tiling_oracle,
)
from .render import UnsupportedDimension, render

EXIT_OK, EXIT_ERROR, EXIT_NONPROPER, EXIT_NO_CARRY = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def read_arrangement(arg: str) -> Arrangement:
    path = Path(arg)
    if path.exists():
        return load_arrangement(path)
    if arg in fixtures.FIXTURE_NAMES:
        return fixtures.load(arg)
    raise CliError("input_error", f"no such file or fixture: {arg}")


def read_partition(arg: str):
    A = read_arrangement(arg)
    return project_pi(A)


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_carries(args) -> int:
    res = carries(read_arrangement(args.input))
    _emit(args, dumps(res.to_json()))
    return {
        Verdict.CARRIES_PROPER: EXIT_OK,
        Verdict.CARRIES_NONPROPER: EXIT_NONPROPER,
        Verdict.DOES_NOT_CARRY: EXIT_NO_CARRY,
    }[res.verdict]


def cmd_faces(args) -> int:
    _emit(args, dumps(enumerate_faces(read_partition(args.input)).to_json()))
    return EXIT_OK


def cmd_type(args) -> int:
    _emit(args, dumps(comb_type(read_partition(args.input), seed=args.seed).to_json()))
    return EXIT_OK


def cmd_equiv(args) -> int:
    P, Q = read_partition(args.first), read_partition(args.second)
    _emit(args, dumps({"equivalent": comb_equiv(P, Q)}))
    return EXIT_OK


def cmd_distance(args) -> int:
    P, Q = read_partition(args.first), read_partition(args.second)
    method = args.method
    if method == "auto":
        method = None if P.d <= 2 else "monte_carlo"
    elif method == "exact":
        method = None
        if P.d > 2:
            raise CliError("unsupported_dimension", "exact measures exist only for d <= 2")
    if method == "monte_carlo" and args.seed is None:
        raise CliError("seed_required", "Monte Carlo distances need --seed")
    value = distance(P, Q, method=method, samples=args.samples, seed=args.seed)
    _emit(args, dumps(value.to_json()))
    return EXIT_OK


def cmd_nodes(args) -> int:
    P = read_partition(args.input)
    ctx = prepare(P) if args.seed is None else _seeded_ctx(P, args.seed)
    out = {
        "node_system_dim": node_system_dim(P, ctx.poset),
        "nodes": ctx.N.to_json(),
        "PN": ctx.PN.to_json(P.n),
        "frames": len(ctx.frames),
        "flats": sorted(k for k, s in ctx.reference.items() if s == 0),
    }
    _emit(args, dumps(out))
    return EXIT_OK


def _seeded_ctx(P, seed: int):
    from .nodes import default_node_system

    poset = enumerate_faces(P)
    return prepare(P, default_node_system(P, poset, seed=seed), poset)


def _ctx(P, seed):
    return prepare(P) if seed is None else _seeded_ctx(P, seed)


def cmd_reconstruct(args) -> int:
    P = read_partition(args.input)
    ctx = prepare(P)
    X = load_assignment(args.assignment)
    report = check_constraints(P, ctx.N, X, seed=args.seed, ctx=ctx)
    out: dict = {"report": report.to_json()}
    if report.passed:
        out["partition"] = partition_to_json(reconstruct(P, ctx.N, X, ctx=ctx, report=report))
    _emit(args, dumps(out))
    return EXIT_OK if report.passed else EXIT_ERROR


def cmd_check(args) -> int:
    P = read_partition(args.input)
    ctx = prepare(P)
    X = load_assignment(args.assignment)
    _emit(args, dumps(check_constraints(P, ctx.N, X, seed=args.seed, ctx=ctx).to_json()))
    return EXIT_OK


def cmd_constraints(args) -> int:
    P = read_partition(args.input)
    _emit(args, dumps(export_constraints(P, ctx=_ctx(P, args.node_seed))))
    return EXIT_OK


def cmd_fzcheck(args) -> int:
    P = read_partition(args.input)
    if args.family == "regions":
        cones = region_cone_family(P)
        ctx = None
    else:
        ctx = prepare(P)
        if args.family == "assignment":
            if not args.assignment:
                raise CliError("input_error", "--family assignment needs --assignment")
            cones = assignment_cone_family(ctx, load_assignment(args.assignment))
        else:
            cones = partition_cone_family(P, ctx=ctx)
    res = fz_check(cones, HomogeneousCone.upper(P.dim), seed=args.seed)
    out = res.to_json()
    out["family"] = args.family
    out["cones"] = len(cones)
    if args.confirm:
        out["tiling_oracle"] = tiling_oracle(cones, P.dim, samples=args.confirm, seed=args.seed).to_json()
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_enum_d1(args) -> int:
    _emit(args, dumps(enum_d1_json(args.n)))
    return EXIT_OK


def cmd_render(args) -> int:
    P = read_partition(args.input)
    _emit(args, render(P, args.view, tuple(args.window)))
    return EXIT_OK


def cmd_identity(args) -> int:
    """Write the identity node assignment of a partition (a starting point for edits)."""
    P = read_partition(args.input)
    _emit(args, dumps(assignment_to_json(prepare(P).N.vectors())))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convpart", description="Convex partitions: carrying, faces, types, metric, realization.")
    p.add_argument("--cap", type=int, help=f"enumeration cap (overrides ${CAP_ENV})")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, inputs=("input",)):
        sp = sub.add_parser(name, help=help_text)
        for arg in inputs:
            sp.add_argument(arg)
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        sp.set_defaults(func=func)
        return sp

    add("carries", cmd_carries, "source test on an arrangement (exit 0 proper, 2 non-proper, 3 no partition)")
    add("faces", cmd_faces, "face poset of the carried partition")
    add("type", cmd_type, "combinatorial type").add_argument("--seed", type=int, default=None)
    add("equiv", cmd_equiv, "combinatorial equivalence of two partitions", ("first", "second"))
    sp = add("distance", cmd_distance, "spherical-measure distance", ("first", "second"))
    sp.add_argument("--seed", type=int)
    sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sp.add_argument("--method", choices=("auto", "exact", "monte_carlo"), default="auto")
    add("nodes", cmd_nodes, "node system and the refined complex P_N").add_argument("--seed", type=int, default=None)
    add("identity", cmd_identity, "identity node assignment as JSON")
    for name, func, text in (
        ("reconstruct", cmd_reconstruct, "check an assignment and rebuild the partition"),
        ("check", cmd_check, "check an assignment against the realization constraints"),
    ):
        sp = add(name, func, text)
        sp.add_argument("--assignment", required=True)
        sp.add_argument("--seed", type=int, default=0)
    add("constraints", cmd_constraints, "export the polynomial constraint system").add_argument("--node-seed", type=int, default=None)
    sp = add("fzcheck", cmd_fzcheck, "cone-partition test on a cone family")
    sp.add_argument("--family", choices=("barycentric", "regions", "assignment"), default="barycentric")
    sp.add_argument("--assignment")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--confirm", type=int, default=0, metavar="SAMPLES", help="also run the sampling oracle")
    sp = sub.add_parser("enum-d1", help="combinatorial types of partitions of the line")
    sp.add_argument("n", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_enum_d1)
    sp = add("render", cmd_render, "SVG drawing of a partition of the plane")
    sp.add_argument("--view", choices=("affine", "hemisphere"), default="hemisphere")
    sp.add_argument("--window", nargs=4, default=["-3", "3", "-3", "3"], metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    return p


_ERROR_CODES = (
    (CliError, None),
    (CapExceeded, "cap_exceeded"),
    (ContractViolation, "contract_violation"),
    (UnsupportedDimension, "unsupported_dimension"),
    (InvalidNodeSystem, "invalid_node_system"),
    (ConsistencyError, "internal_error"),
    (GeometryError, "input_error"),
    (json.JSONDecodeError, "input_error"),
    (OSError, "input_error"),
    (ValueError, "input_error"),
)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get(CAP_ENV)
    if args.cap is not None:
        os.environ[CAP_ENV] = str(args.cap)
    try:
        return args.func(args)
    except tuple(cls for cls, _ in _ERROR_CODES) as exc:
        code = getattr(exc, "code", None) if isinstance(exc, CliError) else next(c for cls, c in _ERROR_CODES if isinstance(exc, cls))
        sys.stderr.write(dumps({"error": {"code": code, "message": str(exc)}}))
        return EXIT_ERROR
    finally:
        # the override is scoped to this call
        if args.cap is not None:
            if saved is None:
                os.environ.pop(CAP_ENV, None)
            else:
                os.environ[CAP_ENV] = saved


if __name__ == "__main__":
    sys.exit(main())
