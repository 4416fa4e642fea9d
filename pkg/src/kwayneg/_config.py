from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every module.

    ``neg_threshold`` decides when an eigenvalue counts as negative;
    ``report_tol`` bounds the identity residuals recorded in reports.
    """

    norm_tol: float = 1e-10
    herm_tol: float = 1e-10
    trace_tol: float = 1e-10
    eig_tol: float = 1e-12
    neg_threshold: float = 1e-9
    report_tol: float = 1e-8

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ValueError(f"tolerance {f.name} must be strictly positive, got {value!r}")

    def with_overrides(self, **kwargs):
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT_TOLERANCES = Tolerances()


def resolve(tol):
    return DEFAULT_TOLERANCES if tol is None else tol
