"""``kwayneg`` command line: analyze, family, sweep, verify.

Exit codes: 0 ok, 1 verification failure, 2 usage or parse error,
3 normalization or domain error, 4 numerical failure.
"""
import argparse
import csv
import io
import json
import math
import re
import sys
import time

import numpy as np

from . import __version__
from . import verify as verify_mod
from ._config import DEFAULT_TOLERANCES
from .document import ReportDocument, encode_complex
from .errors import DomainError, InputError, KwayNegError, NormalizationError
from .families import FAMILY_NAMES, build_family, canonical_name, free_parameters, make_params, oracle_quantities
from .linalg import LETTERS, pure_state
from .negativity import build_report
from .sweep import Axis, SweepSpec, figure_preset, format_number, parse_axis, parse_real, run_sweep, to_csv

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3, 4

_TOL_FLAGS = {
    "norm": "norm_tol",
    "herm": "herm_tol",
    "trace": "trace_tol",
    "eig": "eig_tol",
    "neg": "neg_threshold",
    "report": "report_tol",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


_COMPLEX_RE = re.compile(r"^[0-9eE.+\-ij]+$")


def parse_complex(text):
    """``re+imi`` (``0.5+0.25i``, ``-i``, ``1e-3``) or a real expression (``1/sqrt(2)``)."""
    s = str(text).strip().replace(" ", "")
    if not s:
        raise InputError("empty number")
    if "i" not in s and "j" not in s:
        return complex(parse_real(s))
    if not _COMPLEX_RE.match(s):
        raise InputError(f"cannot parse complex number {text!r}")
    try:
        z = complex(s.replace("i", "j"))
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError(f"non-finite value {text!r}")
    return z


def parse_qubits(text):
    """``A,B`` or ``AB`` or ``all``."""
    s = str(text).strip().upper()
    if s in ("ALL", ""):
        return list(LETTERS[:4])
    letters = [c for c in s.replace(",", "") if not c.isspace()]
    for c in letters:
        if c not in LETTERS[:4]:
            raise InputError(f"unknown qubit {c!r}; use A, B, C or D")
    if len(set(letters)) != len(letters):
        raise InputError(f"repeated qubit in {text!r}")
    return letters


def parse_assignments(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise InputError(f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        k = k.strip()
        if k in out:
            raise InputError(f"parameter {k!r} given twice")
        out[k] = parse_complex(v)
    return out


def _read_amplitudes(args):
    if args.file:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
        text = text.strip()
        if text.startswith("["):
            try:
                raw = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InputError(f"bad JSON amplitude file: {exc}") from None
            return [complex(*v) if isinstance(v, list) else parse_complex(str(v)) for v in raw]
        tokens = text.replace(",", " ").split()
    else:
        tokens = args.amplitudes
    return [parse_complex(t) for t in tokens]


def _tolerances(args):
    overrides = {field: getattr(args, f"tol_{flag}") for flag, field in _TOL_FLAGS.items()}
    overrides = {k: v for k, v in overrides.items() if v is not None}
    try:
        return DEFAULT_TOLERANCES.with_overrides(**overrides)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _reports_csv(reports, with_oracle=False):
    # long format: pair and triple labels differ from one reference qubit to the next
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["qubit", "quantity", "value"] + (["oracle", "delta"] if with_oracle else []))
    for r in reports:
        oracle = r.extra.get("oracle", {}) if with_oracle else {}
        for key, value in r.flat().items():
            row = [r.reference_qubit, key, format_number(value)]
            if with_oracle:
                want = oracle.get(key)
                row += [format_number(want), format_number(None if want is None else abs(value - want))]
            writer.writerow(row)
    return buf.getvalue()


def _document(args, input_desc, psi, qubits, tol, decorate=None):
    start = time.perf_counter()
    reports = [build_report(psi, q, tol) for q in qubits]
    if decorate:
        for r in reports:
            decorate(r)
    elapsed = (time.perf_counter() - start) * 1e3
    timing = {"reports": elapsed} if args.timing else None
    return ReportDocument(input=input_desc, reports=reports, timing_ms=timing)


def _write_document(args, doc):
    if args.format == "csv":
        _emit(args, _reports_csv(doc.reports))
    else:
        _emit(args, doc.to_json())


def cmd_analyze(args):
    tol = _tolerances(args)
    amps = _read_amplitudes(args)
    if len(amps) != 16:
        raise InputError(f"expected 16 amplitudes, got {len(amps)}")
    psi = pure_state(amps, normalize=args.normalize, tol=tol)
    qubits = parse_qubits(args.qubits)
    desc = {
        "command": "analyze",
        "amplitudes": [encode_complex(z) for z in psi],
        "normalized_on_input": bool(args.normalize),
        "qubits": qubits,
    }
    _write_document(args, _document(args, desc, psi, qubits, tol))
    return EXIT_OK


def cmd_family(args):
    tol = _tolerances(args)
    name = canonical_name(args.name)
    values = parse_assignments(args.params)
    params = make_params(name, tol=tol, **values)
    psi = build_family(params, tol)
    qubits = parse_qubits(args.qubits)

    def decorate(report):
        oracle = oracle_quantities(params, report.reference_qubit)
        flat = report.flat()
        report.extra = {
            "oracle": oracle,
            "delta": {k: abs(flat[k] - v) for k, v in oracle.items()},
        }

    desc = {
        "command": "family",
        "family": name,
        "params": {k: encode_complex(v) for k, v in params.params.items()},
        "derived": {k: float(v) for k, v in params.derived.items()},
        "amplitudes": [encode_complex(z) for z in psi],
        "qubits": qubits,
    }
    doc = _document(args, desc, psi, qubits, tol, decorate)
    if args.format == "csv":
        _emit(args, _reports_csv(doc.reports, with_oracle=True))
    else:
        _emit(args, doc.to_json())
    return EXIT_OK


def _sweep_spec(args):
    if args.figure is not None:
        base = figure_preset(args.figure)
        family = args.family or base.family
        if canonical_name(family) != base.family:
            raise InputError(f"figure {args.figure} sweeps {base.family}, not {family}")
    else:
        if not args.family:
            raise InputError("sweep needs a family or --figure")
        base = None
        family = canonical_name(args.family)
    axes = tuple(parse_axis(a) for a in args.axis) if args.axis else (base.axes if base else ())
    if not axes:
        raise InputError("sweep needs at least one --axis name:start:stop:steps")
    if args.steps is not None:
        axes = tuple(Axis(ax.name, ax.start, ax.stop, args.steps) for ax in axes)
    quantities = tuple(q.strip() for q in args.quantities.split(",")) if args.quantities else None
    if quantities is None:
        quantities = base.quantities if base else ("NG*E4", "NG*E2")
    qubit = args.qubit or (base.reference_qubit if base else "A")
    fixed = parse_assignments(args.set)
    unknown = set(fixed) - set(free_parameters(family))
    if unknown:
        raise InputError(f"{sorted(unknown)} not parameters of {family}")
    return SweepSpec(family, axes, parse_qubits(qubit)[0], quantities, fixed)


def cmd_sweep(args):
    tol = _tolerances(args)
    spec = _sweep_spec(args)
    if args.jobs < 1:
        raise InputError("--jobs must be at least 1")
    start = time.perf_counter()
    header, rows = run_sweep(spec, tol, jobs=args.jobs)
    elapsed = (time.perf_counter() - start) * 1e3
    if args.format == "json":
        doc = {
            "schema_version": "1.0",
            "input": {
                "command": "sweep",
                "family": spec.family,
                "reference_qubit": spec.reference_qubit,
                "axes": [[ax.name, ax.start, ax.stop, ax.steps] for ax in spec.axes],
                "fixed": {k: encode_complex(v) for k, v in spec.fixed.items()},
            },
            "header": header,
            "rows": [[None if x is None else float(x) + 0.0 for x in row] for row in rows],
            "timing_ms": {"sweep": elapsed} if args.timing else None,
        }
        _emit(args, json.dumps(doc, indent=2, allow_nan=False) + "\n")
    else:
        _emit(args, to_csv(header, rows))
    return EXIT_OK


def cmd_verify(args):
    tol = _tolerances(args)
    results = verify_mod.run(args.suite, seed=args.seed, tol=tol)
    ok = all(r.passed for r in results)
    if args.format == "json":
        payload = {
            "schema_version": "1.0",
            "seed": args.seed,
            "passed": ok,
            "suites": [
                {"name": r.name, "passed": r.passed, "checks": r.checks, "worst": r.worst, "detail": r.detail}
                for r in results
            ],
        }
        _emit(args, json.dumps(payload, indent=2, allow_nan=False) + "\n")
    else:
        lines = [r.line() for r in results]
        passed = sum(r.passed for r in results)
        lines.append(f"{passed}/{len(results)} suites passed (seed {args.seed})")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def _seed(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"tolerance must be positive and finite, got {text!r}")
    return v


def _add_common(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = p.add_argument_group("common options")
    for flag, field in _TOL_FLAGS.items():
        g.add_argument(
            f"--tol-{flag}",
            type=_positive_float,
            default=d(None),
            metavar="X",
            help=f"override {field} (default {getattr(DEFAULT_TOLERANCES, field):g})",
        )
    g.add_argument("--seed", type=_seed, default=d(0), help="seed for randomized suites (u64, default 0)")
    g.add_argument("--out", default=d(None), metavar="PATH", help="write output here instead of stdout")
    g.add_argument("--normalize", action="store_true", default=d(False), help="rescale input amplitudes to unit norm")
    fmt = g.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", default=d(None))
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv", default=d(None))
    g.add_argument("--timing", action="store_true", default=d(False), help="record wall-clock timings (output is then not reproducible byte for byte)")


def build_parser():
    parser = _Parser(prog="kwayneg", description="Partial K-way negativities of four-qubit pure states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("analyze", help="report on an arbitrary 16-amplitude state")
    p.add_argument("amplitudes", nargs="*", help="16 amplitudes, e.g. 0.5 0 0.5+0.25i ...")
    p.add_argument("--file", help="read amplitudes from a file ('-' for stdin): whitespace/comma list or JSON")
    p.add_argument("--qubits", default="all", help="reference qubits, e.g. A,D (default all)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("family", help="report on a family state with oracle deltas")
    p.add_argument("name", help=f"one of {', '.join(FAMILY_NAMES)}")
    p.add_argument("params", nargs="*", help="parameters as name=value, e.g. a=0.5 b=0.25+0.1i")
    p.add_argument("--qubits", default="all", help="reference qubits (default all)")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sweep", help="CSV grid of report quantities over family parameters")
    p.add_argument("family", nargs="?", help="family name (optional with --figure)")
    p.add_argument("--figure", type=int, choices=range(1, 6), help="preset grid and quantities for figure 1-5")
    p.add_argument("--axis", action="append", help="name:start:stop:steps (repeat for a second axis)")
    p.add_argument("--steps", type=int, help="override the step count of every axis")
    p.add_argument("--quantities", help="comma-separated report quantities, e.g. 'NG*E4,NG*(E2-E0)'")
    p.add_argument("--qubit", help="reference qubit (default A, or the figure's)")
    p.add_argument("--set", action="append", help="fix a parameter, name=value")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output order is unaffected)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", nargs="?", default="all", help=f"all or one of {', '.join(verify_mod.SUITES)}")
    p.set_defaults(func=cmd_verify)

    for name, sp in sub.choices.items():
        _add_common(sp, suppress=True)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise InputError("missing command: analyze, family, sweep or verify")
        return args.func(args)
    except InputError as exc:
        print(f"kwayneg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NormalizationError, DomainError) as exc:
        print(f"kwayneg: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KwayNegError as exc:
        print(f"kwayneg: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"kwayneg: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"kwayneg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
