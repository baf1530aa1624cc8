"""Command-line interface: batch certification and the exact solvers.

Exit codes: 0 all checks passed, 1 at least one certification check
failed, 2 usage error, 3 I/O error.  Range verification may fan out over
worker processes; output is ordered by n and byte-identical regardless of
the parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import families
from .eisenstein import EisensteinNumber
from .curves import GraphCurve, VerticalFiber, intersect_graph_fiber, intersect_graphs
from .surfaces import volume_from_chi

JOBS_ENV_VAR = "BALLQ_JOBS"


class UsageError(Exception):
    pass


def _parse_n_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse n or range {text!r}") from exc
    if lo < 1 or hi < lo:
        raise UsageError(f"need 1 <= first <= last in range, got {text!r}")
    return list(range(lo, hi + 1))


def _resolve_jobs(args: argparse.Namespace) -> int:
    if args.jobs is not None:
        jobs = args.jobs
    else:
        try:
            jobs = int(os.environ.get(JOBS_ENV_VAR, "1"))
        except ValueError as exc:
            raise UsageError(f"{JOBS_ENV_VAR} must be an integer") from exc
    if jobs < 1:
        raise UsageError("jobs must be at least 1")
    return jobs


def _report_dict(task: tuple[str, int]) -> dict[str, object]:
    family, n = task
    return families.build_family(family, n).to_json_dict()


def _emit(text: str, out_path: str | None) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return 3
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    ns = _parse_n_range(args.n)
    jobs = _resolve_jobs(args)
    tasks = [(args.family, n) for n in ns]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            docs = list(pool.map(_report_dict, tasks))
    else:
        docs = [_report_dict(task) for task in tasks]
    if args.format == "json":
        lines = [json.dumps(doc) for doc in docs]
    else:
        lines = [families.render_markdown(doc) for doc in docs]
    status = _emit("\n".join(lines) + "\n", args.out)
    if status:
        return status
    return 0 if all(doc["passed"] for doc in docs) else 1


def _cmd_spectrum(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise UsageError("count must be at least 1")
    rows = []
    for n in range(1, args.count + 1):
        volume = volume_from_chi(n)
        rows.append({"n": n, **volume.to_json()})
    coefficients = {row["pi_squared_coefficient"] for row in rows}
    expected = {str(Fraction(8, 3) * k) for k in range(1, args.count + 1)}
    saturated = coefficients == expected
    if args.format == "json":
        doc = {
            "rows": rows,
            "saturates_volume_spectrum": saturated,
            "statement": ("every admissible volume (a positive integer multiple"
                          " of (8/3)·π²) up to the cutoff is attained"),
        }
        text = json.dumps(doc) + "\n"
    else:
        lines = ["| n | volume |", "| --- | --- |"]
        lines += [f"| {row['n']} | {row['text']} |" for row in rows]
        lines.append("")
        lines.append(f"saturates volume spectrum up to cutoff: {saturated}")
        text = "\n".join(lines) + "\n"
    status = _emit(text, args.out)
    if status:
        return status
    return 0 if saturated else 1


def _parse_curve_spec(spec: str, torus) -> GraphCurve | VerticalFiber:
    kind, _, payload = spec.partition(":")
    if kind == "graph":
        parts = payload.split(",")
        if len(parts) != 2:
            raise UsageError(f"graph spec needs 'graph:slope,offset', got {spec!r}")
        slope = EisensteinNumber.from_string(parts[0])
        offset = EisensteinNumber.from_string(parts[1])
        return GraphCurve(torus, slope, offset)
    if kind == "fiber":
        return VerticalFiber(torus, EisensteinNumber.from_string(payload))
    raise UsageError(f"curve spec must start with 'graph:' or 'fiber:', got {spec!r}")


def _cmd_intersect(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise UsageError("n must be at least 1")
    torus = families.product_torus(args.n)
    try:
        first = _parse_curve_spec(args.first, torus)
        second = _parse_curve_spec(args.second, torus)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(first, GraphCurve) and isinstance(second, GraphCurve):
        doc = intersect_graphs(first, second).to_json()
    elif isinstance(first, GraphCurve) and isinstance(second, VerticalFiber):
        point = intersect_graph_fiber(first, second)
        doc = {"kind": "points", "count": 1, "points": [point.to_json()]}
    elif isinstance(first, VerticalFiber) and isinstance(second, GraphCurve):
        point = intersect_graph_fiber(second, first)
        doc = {"kind": "points", "count": 1, "points": [point.to_json()]}
    else:
        same = first.z0 == second.z0
        doc = {"kind": "identical" if same else "empty"}
    return _emit(json.dumps(doc) + "\n", args.out)


_CLI_MULTIPLIERS = {"neg": "-1", "-1": "-1", "i": "i", "rho": "rho", "zeta": "zeta"}


def _cmd_classify(args: argparse.Namespace) -> int:
    multiplier = _CLI_MULTIPLIERS.get(args.multiplier)
    if multiplier is None:
        raise UsageError(f"unknown multiplier {args.multiplier!r}")
    result = families.bdf_classify(args.order, multiplier, args.translation_order)
    return _emit(json.dumps(result.to_json()) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballq",
        description="exact certification of the two bielliptic ball-quotient families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run and certify family builders")
    verify.add_argument("--family", choices=(families.GAMMA, families.LAMBDA),
                        required=True)
    verify.add_argument("--n", required=True,
                        help="a single level or an inclusive range a..b")
    verify.add_argument("--format", choices=("json", "markdown"), default="json")
    verify.add_argument("--out", default=None, help="output path (default stdout)")
    verify.add_argument("--jobs", type=int, default=None,
                        help=f"worker processes (default ${JOBS_ENV_VAR} or 1)")
    verify.set_defaults(handler=_cmd_verify)

    spectrum = sub.add_parser("spectrum", help="tabulate exact volumes up to a cutoff")
    spectrum.add_argument("--count", type=int, required=True, help="largest level")
    spectrum.add_argument("--format", choices=("json", "markdown"), default="markdown")
    spectrum.add_argument("--out", default=None)
    spectrum.set_defaults(handler=_cmd_spectrum)

    intersect = sub.add_parser("intersect", help="intersect two curves exactly")
    intersect.add_argument("first", help="curve spec 'graph:slope,offset' or 'fiber:z0'")
    intersect.add_argument("second")
    intersect.add_argument("--n", type=int, required=True, help="level of the z-factor")
    intersect.add_argument("--out", default=None)
    intersect.set_defaults(handler=_cmd_intersect)

    classify = sub.add_parser("classify", help="look up a Bagnera-de Franchis type")
    classify.add_argument("--order", type=int, required=True)
    classify.add_argument("--multiplier", required=True,
                          help="one of neg, i, rho, zeta")
    classify.add_argument("--translation-order", type=int, default=None)
    classify.add_argument("--out", default=None)
    classify.set_defaults(handler=_cmd_classify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
