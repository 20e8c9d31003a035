"""Command-line interface.

    vbquiver validate FILE... [--biquandle FILE]
    vbquiver homset KNOT --data DV
    vbquiver weights KNOT --data DV [--mode M] [--vectors]
    vbquiver quiver KNOT --data DV [--dot] [--matrices]
    vbquiver invariant KNOT --data DV --kind K [--mode M] [--trail-cap N] [--json]
    vbquiver batch TABLE --data DV [--out CSV] [--both-orientations]

KNOT is a diagram or knot-table file, a bundled knot name or a Gauss code.
DV is a data vector file or directory, or a bundled data vector name.

Exit codes: 0 ok, 1 validation failure, 2 unreadable or malformed input,
3 trail enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import StructureError
from .diagram import DiagramError, VirtualDiagram, reverse_all
from .homset import crossing_vectors, find_colorings, weight_multiset
from .invariants import DEFAULT_TRAIL_CAP, KINDS, TrailCapError, compute_invariant, invariant_to_json, poly_to_string
from .io import (
    DataVector,
    InputError,
    biquandle_from_dict,
    data_vector_from_dict,
    load_data_vector,
    load_diagrams,
    read_json,
    weight_from_dict,
)
from .quiver import MODES, QuiverError, build_quiver, quiver_to_json, to_dot
from .weights import is_strongly_compatible, validate_boltzmann

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
CSV_COLUMNS = ["name", "orientation", "homset_size", "edge_char", "edge_matrix", "path_char", "path_matrix", "error"]


class ValidationFailed(Exception):
    pass


def data_vector_problems(dv: DataVector) -> list[str]:
    problems = [f"biquandle: {v}" for v in dv.X.validate().violations]
    for k, W in enumerate(dv.C):
        problems += [f"weight {k}: {v}" for v in validate_boltzmann(dv.X, W).violations]
    return problems


def _load_checked(ref: str) -> DataVector:
    dv = load_data_vector(ref)
    problems = data_vector_problems(dv)
    if problems:
        raise ValidationFailed(f"data vector {ref} is invalid:\n  " + "\n  ".join(problems))
    return dv


def _one_knot(ref: str) -> VirtualDiagram:
    diagrams = load_diagrams(ref)
    if len(diagrams) != 1:
        raise InputError(f"{ref} holds {len(diagrams)} diagrams; pass a single diagram")
    return diagrams[0]


def _format_value(dv: DataVector, value) -> str:
    A = dv.group
    if isinstance(value, tuple) and len(value) == 2 and isinstance(value[0], tuple):
        return f"({A.format(value[0])}, {A.format(value[1])})"
    return A.format(value)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, out) -> int:
    failed = False
    X = biquandle_from_dict(read_json(args.biquandle)) if args.biquandle else None
    for ref in args.files:
        path = Path(ref)
        data = read_json(path / "datavector.json" if path.is_dir() else path)
        if isinstance(data, dict) and "biquandle" in data:
            dv = data_vector_from_dict(data, path if path.is_dir() else path.parent, name=path.stem)
            problems = data_vector_problems(dv)
        elif isinstance(data, dict) and "under" in data:
            problems = [str(v) for v in biquandle_from_dict(data).validate().violations]
        elif isinstance(data, dict) and "phi" in data:
            if X is None:
                raise InputError(f"{ref}: validating a weight needs --biquandle")
            W = weight_from_dict(data, X.n)
            problems = [str(v) for v in validate_boltzmann(X, W).violations]
        else:
            raise InputError(f"{ref}: not a biquandle, weight or data vector file")
        if problems:
            failed = True
            print(f"{ref}: INVALID", file=out)
            for p in problems:
                print(f"  {p}", file=out)
        else:
            print(f"{ref}: ok", file=out)
    return EXIT_INVALID if failed else EXIT_OK


def cmd_homset(args, out) -> int:
    dv = _load_checked(args.data)
    D = _one_knot(args.knot)
    colorings = find_colorings(D, dv.X)
    print(f"{len(colorings)} colorings", file=out)
    for c in colorings:
        print(" ".join(map(str, c)), file=out)
    return EXIT_OK


def cmd_weights(args, out) -> int:
    dv = _load_checked(args.data)
    D = _one_knot(args.knot)
    mode = args.mode or dv.mode
    for k, W in enumerate(dv.C):
        strong = mode == "strong" or (mode == "auto" and is_strongly_compatible(dv.X, W))
        counts = weight_multiset(D, dv.X, W, strong=strong)
        body = ", ".join(f"{_format_value(dv, v)}: {n}" for v, n in sorted(counts.items()))
        print(f"weight {k} ({'pair' if strong else 'sum'}): {{{body}}}", file=out)
    if args.vectors:
        for c in find_colorings(D, dv.X):
            vec = crossing_vectors(D, dv.X, c)
            print(" ".join(map(str, c)), "classical", vec.nonzero("classical"), "virtual", vec.nonzero("virtual"), file=out)
    return EXIT_OK


def cmd_quiver(args, out) -> int:
    dv = _load_checked(args.data)
    q = build_quiver(_one_knot(args.knot), dv.X, dv.S, dv.C, mode=args.mode or dv.mode)
    out.write(to_dot(q, with_matrices=args.matrices) if args.dot else quiver_to_json(q) + "\n")
    return EXIT_OK


def cmd_invariant(args, out) -> int:
    dv = _load_checked(args.data)
    q = build_quiver(_one_knot(args.knot), dv.X, dv.S, dv.C, mode=args.mode or dv.mode)
    value = compute_invariant(q, args.kind, args.trail_cap)
    if args.json:
        print(json.dumps(invariant_to_json(value), sort_keys=True), file=out)
    else:
        print(poly_to_string(value), file=out)
    return EXIT_OK


@dataclass
class BatchResult:
    name: str
    orientation: str
    homset_size: int | str = ""
    edge_char: str = ""
    edge_matrix: str = ""
    path_char: str = ""
    path_matrix: str = ""
    error: str = ""

    def row(self) -> list:
        return [getattr(self, c) for c in CSV_COLUMNS]


def batch_row(D: VirtualDiagram, orientation: str, dv: DataVector, mode: str, cap: int) -> BatchResult:
    result = BatchResult(D.name, orientation)
    try:
        q = build_quiver(D, dv.X, dv.S, dv.C, mode=mode)
    except (StructureError, QuiverError) as exc:
        result.error = str(exc)
        return result
    result.homset_size = len(q.vertices)
    errors = []
    for kind in KINDS:
        try:
            setattr(result, kind.replace("-", "_"), poly_to_string(compute_invariant(q, kind, cap)))
        except TrailCapError as exc:
            errors.append(f"{kind}: {exc}")
    result.error = "; ".join(errors)
    return result


def run_batch(diagrams, dv: DataVector, mode: str, cap: int, both: bool) -> list[BatchResult]:
    rows = []
    for D in diagrams:
        rows.append(batch_row(D, "given", dv, mode, cap))
        if both:
            rows.append(batch_row(reverse_all(D), "reversed", dv, mode, cap))
    return rows


def cmd_batch(args, out) -> int:
    dv = _load_checked(args.data)
    if not Path(args.table).exists():
        raise InputError(f"{args.table}: no such file")
    diagrams = load_diagrams(args.table)
    rows = run_batch(diagrams, dv, args.mode or dv.mode, args.trail_cap, args.both_orientations)
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(r.row())
    if args.out:
        Path(args.out).write_text(buf.getvalue())
        print(f"wrote {len(rows)} rows to {args.out}", file=out)
    else:
        out.write(buf.getvalue())
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vbquiver", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check biquandle, weight and data vector files")
    p.add_argument("files", nargs="+")
    p.add_argument("--biquandle", help="biquandle file used to check standalone weight files")
    p.set_defaults(func=cmd_validate)

    def knot_command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("knot")
        p.add_argument("--data", required=True, help="data vector file, directory or bundled name")
        p.add_argument("--mode", choices=MODES, default=None, help="override the data vector's mode")
        p.set_defaults(func=func)
        return p

    knot_command("homset", cmd_homset, "list the colorings of a diagram")
    p = knot_command("weights", cmd_weights, "Boltzmann weight multisets")
    p.add_argument("--vectors", action="store_true", help="also print crossing vectors per coloring")
    p = knot_command("quiver", cmd_quiver, "the coloring quiver as JSON or DOT")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--matrices", action="store_true", help="label DOT edges with their matrices")
    p = knot_command("invariant", cmd_invariant, "one of the four polynomial invariants")
    p.add_argument("--kind", choices=list(KINDS), required=True)
    p.add_argument("--trail-cap", type=int, default=DEFAULT_TRAIL_CAP)
    p.add_argument("--json", action="store_true", help="print the {terms: [{coef, exps}]} form")

    p = sub.add_parser("batch", help="all four invariants for every diagram of a knot table, as CSV")
    p.add_argument("table")
    p.add_argument("--data", required=True)
    p.add_argument("--mode", choices=MODES, default=None)
    p.add_argument("--trail-cap", type=int, default=DEFAULT_TRAIL_CAP)
    p.add_argument("--both-orientations", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_batch)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, DiagramError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TrailCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValidationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (StructureError, QuiverError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
