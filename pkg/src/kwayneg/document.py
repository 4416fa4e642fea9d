"""JSON report documents: one state, one report per requested qubit."""
from dataclasses import dataclass, field
import json
import math

from .errors import InputError
from .negativity import NegativityReport

SCHEMA_VERSION = "1.0"


def encode_complex(z):
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def decode_complex(pair):
    re, im = pair
    return complex(re, im)


def _check_finite(obj, path="$"):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise ArithmeticError(f"non-finite number at {path}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_finite(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _check_finite(v, f"{path}[{i}]")


@dataclass
class ReportDocument:
    """Top-level JSON layout ``{schema_version, input, reports, residuals, timing_ms}``.

    ``residuals`` maps each reference qubit to its identity residuals;
    ``timing_ms`` is ``None`` unless timing was requested, so documents are
    byte-identical across runs by default.
    """

    input: dict
    reports: list
    timing_ms: dict = None
    schema_version: str = SCHEMA_VERSION
    residuals: dict = field(default=None)

    def __post_init__(self):
        if self.residuals is None:
            self.residuals = {r.reference_qubit: dict(r.residuals) for r in self.reports}

    def to_dict(self):
        return {
            "schema_version": self.schema_version,
            "input": self.input,
            "reports": [r.to_dict() for r in self.reports],
            "residuals": self.residuals,
            "timing_ms": self.timing_ms,
        }

    def to_json(self):
        d = self.to_dict()
        _check_finite(d)
        # repr-based float output keeps 17 significant digits where needed
        return json.dumps(d, indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, d):
        missing = {"schema_version", "input", "reports"} - set(d)
        if missing:
            raise InputError(f"report document lacks {sorted(missing)}")
        return cls(
            input=d["input"],
            reports=[NegativityReport.from_dict(r) for r in d["reports"]],
            timing_ms=d.get("timing_ms"),
            schema_version=d["schema_version"],
            residuals=d.get("residuals"),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))
