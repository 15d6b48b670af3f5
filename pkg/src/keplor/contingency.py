"""2x2 case-control tables: estimators and parameterization conversions.

A table of counts (rows: cases/controls, columns: exposed/unexposed) supports
two equivalent descriptions of the underlying population: the cohort
parameterization (exposure probability among cases, among controls, and the
case prevalence) and the risk parameterization (disease risk among exposed,
among unexposed, and the pooled exposure probability).  This module holds the
count estimators and the Bayes maps between the two parameterizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, ZeroCell, ZeroMargin

__all__ = [
    "TwoByTwoTable",
    "CohortParams",
    "RiskParams",
    "EffectSummary",
    "Proportions",
    "OddsRatioEstimate",
    "EffectRatios",
    "estimate_proportions",
    "estimate_odds_ratio",
    "t_statistic",
    "cohort_to_risk",
    "risk_to_cohort",
    "odds_and_risk_ratio",
]

# Standardized effects cannot exceed the Laplace limit; checked post-hoc on
# EffectSummary with one spare digit of slack.
_STANDARDIZED_CAP = 0.6627434194


def _check_probability(name: str, value: float) -> None:
    # NaN fails both comparisons, so it is rejected here too.
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name} must lie strictly inside (0, 1), got {value!r}")


def _check_count(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer count, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value!r}")


@dataclass(frozen=True)
class TwoByTwoTable:
    """Counts n11, n12 (cases exposed/unexposed), n21, n22 (controls)."""

    n11: int
    n12: int
    n21: int
    n22: int

    def __post_init__(self) -> None:
        for name in ("n11", "n12", "n21", "n22"):
            _check_count(name, getattr(self, name))
        if self.n11 + self.n12 < 1:
            raise ZeroMargin("table has no cases (first row sums to zero)")
        if self.n21 + self.n22 < 1:
            raise ZeroMargin("table has no controls (second row sums to zero)")

    @property
    def cases(self) -> int:
        return self.n11 + self.n12

    @property
    def controls(self) -> int:
        return self.n21 + self.n22

    @property
    def total(self) -> int:
        return self.cases + self.controls

    def cells(self) -> tuple[int, int, int, int]:
        return (self.n11, self.n12, self.n21, self.n22)

    @classmethod
    def from_text(cls, text: str) -> "TwoByTwoTable":
        """Parse 'n11,n12,n21,n22' (row-major, non-negative integers)."""
        parts = [piece.strip() for piece in text.split(",")]
        if len(parts) != 4:
            raise DomainError(
                f"expected four comma-separated counts n11,n12,n21,n22, got {text!r}"
            )
        counts = []
        for piece in parts:
            try:
                counts.append(int(piece))
            except ValueError:
                raise DomainError(f"count {piece!r} is not an integer") from None
        return cls(*counts)


@dataclass(frozen=True)
class CohortParams:
    """Exposure probabilities among cases and controls, plus case prevalence."""

    exposure_cases: float
    exposure_controls: float
    prevalence: float

    def __post_init__(self) -> None:
        _check_probability("exposure_cases", self.exposure_cases)
        _check_probability("exposure_controls", self.exposure_controls)
        _check_probability("prevalence", self.prevalence)


@dataclass(frozen=True)
class RiskParams:
    """Disease risks among exposed and unexposed, plus pooled exposure."""

    risk_exposed: float
    risk_unexposed: float
    exposure: float

    def __post_init__(self) -> None:
        _check_probability("risk_exposed", self.risk_exposed)
        _check_probability("risk_unexposed", self.risk_unexposed)
        _check_probability("exposure", self.exposure)


@dataclass(frozen=True)
class EffectSummary:
    """Odds ratio, risk ratio, log odds, its standard deviation, and their quotient."""

    odds_ratio: float
    risk_ratio: float
    log_odds: float
    sigma: float
    standardized: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.odds_ratio) and self.odds_ratio > 0.0):
            raise DomainError(f"odds_ratio must be positive, got {self.odds_ratio!r}")
        if not (math.isfinite(self.risk_ratio) and self.risk_ratio > 0.0):
            raise DomainError(f"risk_ratio must be positive, got {self.risk_ratio!r}")
        if not (math.isfinite(self.sigma) and self.sigma > 0.0):
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")
        if self.log_odds != math.log(self.odds_ratio):
            raise DomainError("log_odds must equal log(odds_ratio) by construction")
        if self.standardized != self.log_odds / self.sigma:
            raise DomainError("standardized must equal log_odds/sigma by construction")
        if not abs(self.standardized) < _STANDARDIZED_CAP:
            raise DomainError(
                f"standardized effect {self.standardized!r} exceeds the "
                f"attainable bound {_STANDARDIZED_CAP}"
            )


class Proportions(NamedTuple):
    exposure_cases: float
    exposure_controls: float
    case_fraction: float
    total: int


class OddsRatioEstimate(NamedTuple):
    odds_ratio: float
    log_odds: float


class EffectRatios(NamedTuple):
    odds_ratio: float
    risk_ratio: float


def estimate_proportions(table: TwoByTwoTable) -> Proportions:
    """Row-wise exposure proportions, the case fraction, and the grand total."""
    return Proportions(
        exposure_cases=table.n11 / table.cases,
        exposure_controls=table.n21 / table.controls,
        case_fraction=table.cases / table.total,
        total=table.total,
    )


def _corrected_cells(table: TwoByTwoTable, correction: bool) -> tuple[float, ...]:
    if correction:
        return tuple(c + 0.5 for c in table.cells())
    if 0 in table.cells():
        raise ZeroCell(
            "table contains an empty cell; pass correction=True to add 0.5 "
            "to every cell"
        )
    return tuple(float(c) for c in table.cells())


def estimate_odds_ratio(
    table: TwoByTwoTable, correction: bool = False
) -> OddsRatioEstimate:
    """Cross-product odds ratio (n11*n22)/(n12*n21) and its natural log.

    With ``correction=True`` every cell gets 0.5 added first, which keeps the
    estimate finite in the presence of empty cells.
    """
    c11, c12, c21, c22 = _corrected_cells(table, correction)
    odds_ratio = (c11 * c22) / (c12 * c21)
    return OddsRatioEstimate(odds_ratio=odds_ratio, log_odds=math.log(odds_ratio))


def t_statistic(table: TwoByTwoTable, correction: bool = False) -> float:
    """Standardized log odds ratio: log_odds / sqrt(sum of reciprocal cells).

    Algebraically identical to sqrt(N) * log_odds / sigma(case_fraction) with
    sigma evaluated at the observed proportions; asymptotically standard
    normal under the null.
    """
    cells = _corrected_cells(table, correction)
    log_odds = estimate_odds_ratio(table, correction).log_odds
    return log_odds / math.sqrt(sum(1.0 / c for c in cells))


def cohort_to_risk(cohort: CohortParams) -> RiskParams:
    """Bayes map from (exposure_cases, exposure_controls, prevalence) to risks."""
    p = cohort.exposure_cases
    q = cohort.exposure_controls
    w = cohort.prevalence
    exposure = w * p + (1.0 - w) * q
    return RiskParams(
        risk_exposed=w * p / exposure,
        risk_unexposed=w * (1.0 - p) / (1.0 - exposure),
        exposure=exposure,
    )


def risk_to_cohort(risk: RiskParams) -> CohortParams:
    """Inverse Bayes map; round-trips with cohort_to_risk."""
    re_ = risk.risk_exposed
    ru = risk.risk_unexposed
    v = risk.exposure
    prevalence = v * re_ + (1.0 - v) * ru
    return CohortParams(
        exposure_cases=v * re_ / prevalence,
        exposure_controls=v * (1.0 - re_) / (1.0 - prevalence),
        prevalence=prevalence,
    )


def odds_and_risk_ratio(risk: RiskParams) -> EffectRatios:
    """Odds ratio and risk ratio implied by a pair of risks.

    Both are invariant in the pooled exposure, so only the two risks enter.
    """
    odds_exposed = risk.risk_exposed / (1.0 - risk.risk_exposed)
    odds_unexposed = risk.risk_unexposed / (1.0 - risk.risk_unexposed)
    return EffectRatios(
        odds_ratio=odds_exposed / odds_unexposed,
        risk_ratio=risk.risk_exposed / risk.risk_unexposed,
    )
