"""Parameter sweeps over family states, producing figure data as CSV."""
import ast
import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import io
import math
import operator

import numpy as np

from ._config import resolve
from .errors import DomainError, InputError
from .families import build_family, canonical_name, free_parameters, make_params
from .negativity import evaluate_quantities


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    steps: int

    def values(self):
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """Grid over one or two family parameters.

    Parameters not on an axis and not in ``fixed`` are *completed*: they
    take equal nonnegative real values that exhaust the remaining norm (only
    meaningful for ``gabcd``, whose parameters must be caller-normalized).
    """

    family: str
    axes: tuple
    reference_qubit: str = "A"
    quantities: tuple = ("NG*E4", "NG*E2")
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        canonical_name(self.family)
        if not 1 <= len(self.axes) <= 2:
            raise InputError("a sweep takes one or two axes")
        names = [ax.name for ax in self.axes]
        allowed = free_parameters(self.family)
        for ax in self.axes:
            if ax.steps < 2:
                raise InputError(f"axis {ax.name} needs at least 2 steps")
            if ax.name not in allowed:
                raise InputError(f"{ax.name!r} is not a parameter of {self.family}; expected {allowed}")
        if len(set(names)) != len(names):
            raise InputError("axis names must be distinct")
        if not self.quantities:
            raise InputError("a sweep needs at least one quantity")

    @property
    def row_count(self):
        return math.prod(ax.steps for ax in self.axes)


_FIG_QUANTITIES = {
    1: ("NG*E4", "NG*E2", "E4", "E2"),
    2: ("NG*(E4-E0)", "NG2", "E4", "E0"),
    3: ("NG*(E3-E0)", "NG*(E2-E0)", "E3", "E2", "E0"),
    4: ("NG", "NG2", "NG*E4", "NG*E3", "NG*E2", "NG*(E4-E0)", "NG*(E3-E0)", "NG*(E2-E0)", "E4", "E3", "E2", "E0"),
}
_FIG_QUANTITIES[5] = _FIG_QUANTITIES[4]


def figure_preset(number):
    """Default sweep reproducing the data behind one of the five figures."""
    a_max = 1 / math.sqrt(3)
    if number == 1:
        axes = (Axis("a", 0.0, 1.0, 101), Axis("b", 0.0, 1.0, 101))
        return SweepSpec("gabcd", axes, "A", _FIG_QUANTITIES[1])
    if number in (2, 3):
        axes = (Axis("a", 0.0, a_max, 101), Axis("b", 0.0, 1.0, 101))
        return SweepSpec("lab3", axes, "A", _FIG_QUANTITIES[number])
    if number in (4, 5):
        return SweepSpec("la4", (Axis("a", 0.0, 0.5, 201),), "A" if number == 4 else "D", _FIG_QUANTITIES[number])
    raise InputError(f"no figure {number}; choose 1-5")


def _point_params(spec, point, tol):
    values = dict(spec.fixed)
    values.update(point)
    missing = [k for k in free_parameters(spec.family) if k not in values]
    if missing:
        rest = 1.0 - sum(abs(complex(v)) ** 2 for v in values.values())
        if rest < -tol.norm_tol:
            raise DomainError("given parameters exceed unit norm")
        share = math.sqrt(max(rest, 0.0) / len(missing))
        values.update({k: share for k in missing})
    return make_params(spec.family, tol=tol, **values)


def evaluate_point(spec, point, tol=None):
    """Quantities at one grid point, or ``None`` when the point is infeasible."""
    tol = resolve(tol)
    try:
        params = _point_params(spec, point, tol)
    except DomainError:
        return None
    return evaluate_quantities(build_family(params, tol), spec.reference_qubit, spec.quantities, tol)


def grid_points(spec):
    """Grid in row order: outer (first) axis ascending, inner axis ascending."""
    grids = [ax.values() for ax in spec.axes]
    if len(grids) == 1:
        return [{spec.axes[0].name: float(x)} for x in grids[0]]
    return [{spec.axes[0].name: float(x), spec.axes[1].name: float(y)} for x in grids[0] for y in grids[1]]


def _eval_star(args):
    return evaluate_point(*args)


def run_sweep(spec, tol=None, jobs=1):
    """Evaluate every grid point; returns ``(header, rows)`` in grid order."""
    tol = resolve(tol)
    points = grid_points(spec)
    # fail fast on bad quantity names before fanning out
    for point in points:
        if evaluate_point(spec, point, tol) is not None:
            break
    work = [(spec, point, tol) for point in points]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_eval_star, work, chunksize=max(1, len(work) // (8 * jobs))))
    else:
        results = [_eval_star(w) for w in work]
    header = [ax.name for ax in spec.axes] + list(spec.quantities)
    rows = []
    for point, values in zip(points, results):
        row = [point[ax.name] for ax in spec.axes]
        row += values if values is not None else [None] * len(spec.quantities)
        rows.append(row)
    return header, rows


def format_number(x):
    if x is None:
        return ""
    x = float(x)
    if not math.isfinite(x):
        raise ArithmeticError(f"refusing to serialize non-finite value {x!r}")
    return repr(x + 0.0)  # repr gives the shortest round-trip form; +0.0 drops -0.0


def to_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(x) for x in row])
    return buf.getvalue()


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}


def parse_real(text):
    """Parse a real number; simple arithmetic and ``sqrt`` are allowed (``1/sqrt(3)``)."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt"
            and len(node.args) == 1
        ):
            return math.sqrt(ev(node.args[0]))
        raise ValueError

    try:
        value = ev(ast.parse(str(text).strip(), mode="eval"))
    except (SyntaxError, ValueError, TypeError, ZeroDivisionError, OverflowError):
        raise InputError(f"cannot parse real number {text!r}") from None
    if not math.isfinite(value):
        raise InputError(f"non-finite value {text!r}")
    return value


def parse_axis(text):
    """``name:start:stop:steps``."""
    parts = str(text).split(":")
    if len(parts) != 4:
        raise InputError(f"axis must look like name:start:stop:steps, got {text!r}")
    name, start, stop, steps = parts
    try:
        n = int(steps)
    except ValueError:
        raise InputError(f"axis steps must be an integer, got {steps!r}") from None
    return Axis(name.strip(), parse_real(start), parse_real(stop), n)
