"""Domain types shared by every other module, plus the true-effect computations.

Instances are keyed by a seven character lowercase hex identifier (the ufid).
Observed outcomes use ``None`` as the censored marker; counter-factual label
rows are always fully observed. All types are immutable after construction
and safe to share between concurrent workers.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

UFID_RE = re.compile(r"[0-9a-f]{7}\Z")


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


@dataclass(frozen=True, eq=False)
class CovariateTable:
    """Dense numeric feature matrix with one row per sample (the x.csv role)."""

    sample_ids: tuple[str, ...]
    feature_names: tuple[str, ...]
    values: np.ndarray
    _row_index: dict = field(init=False, repr=False)

    def __post_init__(self):
        ids = tuple(str(s) for s in self.sample_ids)
        names = tuple(str(s) for s in self.feature_names)
        values = np.array(self.values, dtype=float)
        _check(values.ndim == 2, "covariate values must be a 2-d matrix")
        _check(values.shape[0] == len(ids),
               f"row count {values.shape[0]} != sample_id count {len(ids)}")
        _check(values.shape[1] == len(names),
               f"column count {values.shape[1]} != feature name count {len(names)}")
        _check(bool(np.all(np.isfinite(values))), "covariate values must be finite")
        index: dict[str, int] = {}
        for i, sid in enumerate(ids):
            if sid in index:
                raise ValidationError(f"duplicate sample_id {sid!r}")
            index[sid] = i
        values.setflags(write=False)
        object.__setattr__(self, "sample_ids", ids)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_row_index", index)

    @property
    def n_samples(self) -> int:
        return len(self.sample_ids)

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    def rows_for(self, sample_ids) -> np.ndarray:
        """Row indices for the given sample_ids, in the given order."""
        missing = [s for s in sample_ids if s not in self._row_index]
        if missing:
            preview = ", ".join(repr(s) for s in missing[:5])
            raise ValidationError(
                f"{len(missing)} sample_id(s) not in covariate table: {preview}")
        return np.array([self._row_index[s] for s in sample_ids], dtype=int)


@dataclass(frozen=True)
class ObservationRecord:
    """One factual row: treatment assignment and possibly-censored outcome."""

    sample_id: str
    z: int
    y: float | None

    def __post_init__(self):
        object.__setattr__(self, "sample_id", str(self.sample_id))
        _check(self.z in (0, 1), f"treatment indicator must be 0 or 1, got {self.z!r}")
        object.__setattr__(self, "z", int(self.z))
        if self.y is not None:
            y = float(self.y)
            _check(math.isfinite(y), f"outcome must be finite or censored, got {y!r}")
            object.__setattr__(self, "y", y)

    @property
    def censored(self) -> bool:
        return self.y is None


@dataclass(frozen=True)
class CounterfactualRecord:
    """Both simulated potential outcomes for one sample (never censored)."""

    sample_id: str
    y0: float
    y1: float

    def __post_init__(self):
        object.__setattr__(self, "sample_id", str(self.sample_id))
        y0, y1 = float(self.y0), float(self.y1)
        _check(math.isfinite(y0) and math.isfinite(y1),
               f"label outcomes must be finite, got ({self.y0!r}, {self.y1!r})")
        object.__setattr__(self, "y0", y0)
        object.__setattr__(self, "y1", y1)


@dataclass(frozen=True)
class InstancePair:
    """An observation file and its counter-factual label file, sharing a ufid."""

    ufid: str
    observations: tuple[ObservationRecord, ...]
    labels: tuple[CounterfactualRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "observations", tuple(self.observations))
        object.__setattr__(self, "labels", tuple(self.labels))
        _check(UFID_RE.fullmatch(self.ufid) is not None,
               f"ufid must match [0-9a-f]{{7}}, got {self.ufid!r}")
        n = len(self.observations)
        _check(n >= 1, "empty instance")
        obs_ids = {r.sample_id for r in self.observations}
        lab_ids = {r.sample_id for r in self.labels}
        _check(len(obs_ids) == n, "duplicate sample_id in observations")
        _check(len(lab_ids) == len(self.labels), "duplicate sample_id in labels")
        _check(obs_ids == lab_ids,
               "observation and label files must cover the same sample_ids")

    @property
    def n(self) -> int:
        return len(self.observations)


@dataclass(frozen=True)
class PopulationPrediction:
    """One submitted row: point effect estimate plus 95% CI edges."""

    ufid: str
    effect_size: float
    li: float
    ri: float

    def __post_init__(self):
        effect = float(self.effect_size)
        li, ri = float(self.li), float(self.ri)
        _check(math.isfinite(effect), f"effect_size must be finite, got {effect!r}")
        _check(not math.isnan(li) and not math.isnan(ri), "CI edges must not be NaN")
        _check(li <= ri, f"CI is inverted: li={li!r} > ri={ri!r}")
        if not (li <= effect <= ri):
            warnings.warn(
                f"effect_size {effect!r} lies outside its own CI [{li!r}, {ri!r}]"
                f" for ufid {self.ufid!r}")
        object.__setattr__(self, "effect_size", effect)
        object.__setattr__(self, "li", li)
        object.__setattr__(self, "ri", ri)


@dataclass(frozen=True)
class IndividualPredictionSet:
    """Submitted per-sample potential-outcome predictions for one instance."""

    ufid: str
    rows: tuple[tuple[str, float, float], ...]

    def __post_init__(self):
        rows = []
        seen = set()
        for sid, y0, y1 in self.rows:
            sid = str(sid)
            y0, y1 = float(y0), float(y1)
            _check(math.isfinite(y0) and math.isfinite(y1),
                   f"non-finite prediction for sample_id {sid!r}")
            if sid in seen:
                raise ValidationError(f"duplicate sample_id {sid!r} in predictions")
            seen.add(sid)
            rows.append((sid, y0, y1))
        _check(len(rows) >= 1, "empty instance")
        object.__setattr__(self, "rows", tuple(rows))

    @property
    def sample_ids(self) -> tuple[str, ...]:
        return tuple(r[0] for r in self.rows)

    def estimated_effects(self) -> dict[str, float]:
        """Predicted individual effect (y1_hat - y0_hat) keyed by sample_id."""
        return {sid: y1 - y0 for sid, y0, y1 in self.rows}


_METRIC_FIELDS = ("enormse", "rmse", "bias", "coverage", "cic", "encis")


def _check_metric_ranges(obj) -> None:
    for name in ("enormse", "rmse", "encis"):
        v = getattr(obj, name)
        if v is not None:
            _check(not math.isnan(v) and v >= 0.0, f"{name} must be >= 0, got {v!r}")
    if obj.bias is not None:
        _check(not math.isnan(obj.bias), "bias must not be NaN")
    if obj.coverage is not None:
        _check(0.0 <= obj.coverage <= 1.0,
               f"coverage must lie in [0, 1], got {obj.coverage!r}")


@dataclass(frozen=True)
class MetricsPerSize:
    """The scores for one dataset-size group (CI metrics absent for the
    individual track)."""

    n: int
    instance_count: int
    enormse: float | None = None
    rmse: float | None = None
    bias: float | None = None
    coverage: float | None = None
    cic: float | None = None
    encis: float | None = None

    def __post_init__(self):
        _check(self.n >= 1, f"dataset size must be >= 1, got {self.n!r}")
        _check(self.instance_count >= 1,
               f"instance_count must be >= 1, got {self.instance_count!r}")
        _check_metric_ranges(self)


@dataclass(frozen=True)
class AggregateMetrics:
    """One cross-size value per metric."""

    instance_count: int
    enormse: float | None = None
    rmse: float | None = None
    bias: float | None = None
    coverage: float | None = None
    cic: float | None = None
    encis: float | None = None

    def __post_init__(self):
        _check(self.instance_count >= 1,
               f"instance_count must be >= 1, got {self.instance_count!r}")
        _check_metric_ranges(self)


@dataclass(frozen=True)
class AggregateReport:
    """Per-size metric blocks plus their cross-size aggregation."""

    per_size: tuple[MetricsPerSize, ...]
    aggregate: AggregateMetrics

    def __post_init__(self):
        object.__setattr__(self, "per_size", tuple(self.per_size))
        _check(len(self.per_size) >= 1, "report must contain at least one size")


def true_individual_effects(labels) -> list[float]:
    """Element-wise y1 - y0 over the label rows, order preserved."""
    labels = list(labels)
    if not labels:
        raise ValidationError("empty instance")
    return [rec.y1 - rec.y0 for rec in labels]


def true_population_effect(labels) -> float:
    """Mean individual effect over the label rows."""
    effects = true_individual_effects(labels)
    return math.fsum(effects) / len(effects)
