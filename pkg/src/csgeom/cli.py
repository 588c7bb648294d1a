"""Command-line front end.

Exit codes: 0 on pass / all_equal, 1 on fail / not all_equal, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from typing import List, Optional

import numpy as np

from . import embed, models
from .models import Disc, Grassmann, Model, SpecSyntaxError
from .verify import (
    CHECKS,
    CheckReport,
    EnergyFunction,
    MorseSearch,
    SevenNumbersReport,
    matching_flag,
    morse_search,
    seven_numbers,
)

CHECK_CSV_HEADER = ["check", "model", "trials", "seed", "tolerance", "max_abs_error", "pass", "witnesses", "skipped"]
SEVEN_CSV_HEADER = ["model", "flag", "n1", "n2", "n3", "n4", "n5", "n6", "n7", "all_equal"]
DIM_CHECKS = {"geodesic", "anandan", "bargmann"}
THREADED_CHECKS = {"cauchy", "diastasis", "geodesic", "injectivity"}
DIST_KINDS = ("cayley", "study", "wick", "bargmann", "diastasis", "intrinsic", "pseudo", "overlap")


class UsageError(Exception):
    pass


def parse_model_spec(s: str) -> Model:
    try:
        return models.parse_model(s)
    except SpecSyntaxError as exc:
        raise UsageError(f"malformed model spec: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"parameter out of range: {exc}") from None


_IMAG_UNIT = re.compile(r"(^|[+\-])i$")


def parse_complex(token: str) -> complex:
    """``a+bi`` with optional parts: ``1``, ``-2.5i``, ``i``, ``0.3-0.1i``."""
    t = token.strip().replace(" ", "")
    if not t:
        raise UsageError("empty complex number")
    t = _IMAG_UNIT.sub(lambda m: m.group(1) + "1i", t)
    try:
        return complex(t.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {token!r}") from None


def parse_point(model: Model, text: str):
    rows = [r for r in text.split(";")]
    values = [[parse_complex(tok) for tok in r.split(",")] for r in rows]
    try:
        if isinstance(model, Disc):
            if len(values) != 1 or len(values[0]) != 1:
                raise UsageError("disc points are single complex numbers")
            return model.point(values[0][0])
        if isinstance(model, Grassmann):
            return model.point(np.array(values, dtype=complex))
        return model.point(np.array(values, dtype=complex).reshape(-1))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- serialization ---------------------------------------------------------------------

def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _dump(obj) -> str:
    """JSON with key order preserved and floats at 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_record(report) -> dict:
    if isinstance(report, CheckReport):
        return {
            "check": report.check_name,
            "model": report.model,
            "trials": report.trials,
            "seed": report.seed,
            "tolerance": report.tolerance,
            "max_abs_error": report.max_abs_error,
            "pass": report.passed,
            "witnesses": report.witnesses,
            "skipped": report.skipped,
        }
    if isinstance(report, SevenNumbersReport):
        rec = {"model": report.model, "flag": report.flag}
        for i, v in enumerate(report.numbers, start=1):
            rec[f"n{i}"] = v
        rec["all_equal"] = report.all_equal
        rec["n1_lower_bound"] = report.n1_lower_bound
        rec["morse_discarded"] = report.morse_discarded
        rec["methods"] = report.methods
        return rec
    if isinstance(report, dict):
        return report
    raise TypeError(f"unknown report type {type(report).__name__}")


def emit_report(report, fmt: str = "json") -> str:
    rec = report_record(report)
    if fmt == "json":
        return _dump(rec) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(report, CheckReport):
        writer.writerow(CHECK_CSV_HEADER)
        writer.writerow([rec["check"], rec["model"], rec["trials"], rec["seed"],
                         _fmt_float(rec["tolerance"]), _fmt_float(rec["max_abs_error"]),
                         str(rec["pass"]).lower(), len(rec["witnesses"]), rec["skipped"]])
    elif isinstance(report, SevenNumbersReport):
        writer.writerow(SEVEN_CSV_HEADER)
        writer.writerow([rec["model"], rec["flag"]] + [rec[f"n{i}"] for i in range(1, 8)]
                        + [str(rec["all_equal"]).lower()])
    else:
        writer.writerow(list(rec))
        writer.writerow([_fmt_float(v) if isinstance(v, float) else v for v in rec.values()])
    return buf.getvalue()


# --- commands --------------------------------------------------------------------------

def _default_seed() -> int:
    env = os.environ.get("CSGEOM_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CSGEOM_SEED must be an integer, got {env!r}") from None


def _cmd_verify(args) -> tuple:
    if args.list:
        lines = [f"{name:<12} {fn.__name__:<28} {claim}" for name, (fn, claim) in CHECKS.items()]
        return "\n".join(lines) + "\n", 0
    if args.check is None:
        raise UsageError("verify needs a check name (see --list)")
    if args.check not in CHECKS:
        raise UsageError(f"unknown check {args.check!r}; choose from {', '.join(CHECKS)}")
    fn, _ = CHECKS[args.check]
    kwargs = {"seed": args.seed}
    if args.trials is not None:
        kwargs["trials"] = args.trials
    if args.tol is not None:
        if args.check == "injectivity":
            raise UsageError("injectivity has a fixed zero-violation tolerance")
        kwargs["tol"] = args.tol
    if args.check in THREADED_CHECKS:
        kwargs["threads"] = args.threads
    if args.check in DIM_CHECKS:
        report = fn(dim=args.dim, **kwargs)
    else:
        if args.model is None:
            raise UsageError(f"check {args.check!r} needs --model")
        model = parse_model_spec(args.model)
        try:
            report = fn(model, **kwargs)
        except models.UnsupportedModelError as exc:
            raise UsageError(str(exc)) from None
    return emit_report(report, args.format), 0 if report.passed else 1


def _cmd_seven(args) -> tuple:
    model = parse_model_spec(args.model)
    try:
        matching_flag(model)
        report = seven_numbers(model, seed=args.seed)
    except (models.UnsupportedModelError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return emit_report(report, args.format), 0 if report.all_equal else 1


def _cmd_morse(args) -> tuple:
    model = parse_model_spec(args.model)
    try:
        ef = EnergyFunction(model, args.h) if args.h else EnergyFunction.default(model)
    except (models.UnsupportedModelError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    search: MorseSearch = morse_search(ef, args.starts, args.seed)
    rec = {"model": model.spec, "h": [float(x) for x in ef.h], "seed": args.seed,
           "count": search.count, "discarded": search.discarded, "values": search.values}
    return emit_report(rec, args.format), 0 if search.discarded == 0 else 1


def _cmd_probe(args) -> tuple:
    model = parse_model_spec(args.model)
    rec = {"model": model.spec, "compact": model.compact, "chart_dim": model.chart_dim}
    if model.compact:
        rec["embedding_dim"] = embed.section_count(model)
        rec["fixed_points"] = len(models.fixed_points(model))
        flag = matching_flag(model)
        rec["flag"] = f"{flag.lie_type}{flag.rank}"
        rng = np.random.default_rng(args.seed)
        rec["differential_rank"] = embed.differential_rank(model, model.sample(rng))
    return emit_report(rec, args.format), 0


def _cmd_dist(args) -> tuple:
    model = parse_model_spec(args.model)
    z1 = parse_point(model, getattr(args, "from"))
    z2 = parse_point(model, args.to)
    kind = args.kind
    try:
        if kind == "overlap":
            ov = models.overlap(model, z1, z2)
            return f"{_fmt_float(ov.real)} {_fmt_float(ov.imag)}\n", 0
        if kind == "diastasis":
            value = embed.diastasis(model, z1, z2)
        elif kind == "intrinsic":
            value = model.intrinsic_distance(z1, z2)
        elif kind == "pseudo":
            value = embed.pseudo_distance(model, z1, z2)
        else:
            if not model.compact:
                raise UsageError(f"{kind} distance needs a compact model; use pseudo for the disc")
            w1, w2 = embed.iota(model, z1), embed.iota(model, z2)
            value = {
                "cayley": embed.cayley_distance,
                "study": embed.study_distance,
                "wick": embed.wick_distance,
                "bargmann": embed.bargmann_distance,
            }[kind](w1, w2)
    except (models.UnsupportedModelError, embed.PolarPairError) as exc:
        raise UsageError(str(exc)) from None
    return _fmt_float(value) + "\n", 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csgeom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, model_required=True):
        p.add_argument("--model", required=model_required,
                       help="cp:n=<int>,m=<int> | gr:k=<int>,n=<int> | disc:twok=<int>")
        p.add_argument("--seed", type=int, default=None, help="default 0, or $CSGEOM_SEED")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("verify", help="run one identity check as a seeded campaign")
    p.add_argument("check", nargs="?", help="one of: " + ", ".join(CHECKS))
    common(p, model_required=False)
    p.add_argument("--trials", type=int, default=None,
                   help="defaults: cauchy/diastasis 1000, homogeneity/anandan/bargmann 10000, "
                        "geodesic 100, injectivity 500")
    p.add_argument("--tol", type=float, default=None,
                   help="defaults: cauchy 1e-10, diastasis 1e-9, homogeneity 1e-6, geodesic 1e-9, "
                        "anandan 1e-12, bargmann 1e-12 (slack); injectivity fixed at 0 violations")
    p.add_argument("--dim", type=int, default=4, help="ray-space dimension for geodesic/anandan/bargmann")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--list", action="store_true", help="list checks and the claim each one tests")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("seven", help="the seven integer invariants of a compact model")
    common(p)
    p.set_defaults(func=_cmd_seven)

    p = sub.add_parser("morse", help="critical points of the torus energy function")
    common(p)
    p.add_argument("--starts", type=int, default=None)
    p.add_argument("--h", type=float, nargs="+", default=None, help="strictly increasing diagonal of H")
    p.set_defaults(func=_cmd_morse)

    p = sub.add_parser("probe", help="basic facts about a model")
    common(p)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("dist", help="distance between two chart points")
    common(p)
    p.add_argument("--from", required=True, help="complex entries a+bi, comma-separated; ';' between rows")
    p.add_argument("--to", required=True)
    p.add_argument("--kind", choices=DIST_KINDS, default="cayley")
    p.set_defaults(func=_cmd_dist)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        text, code = args.func(args)
    except UsageError as exc:
        print(f"csgeom: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
