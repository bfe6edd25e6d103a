"""
Growth-rate and critical-exponent estimation by differential approximants.

A family of linear ODEs with polynomial coefficients is fitted exactly to
prefixes of the series (no held-out confirmation: these are approximants,
not conjectures).  Each fit contributes one estimate: the dominant
singularity is the smallest-modulus root of its leading polynomial (with a
positive real root preferred among ties, as counting sequences have one by
positivity), and the local exponent at a simple root x_c of p_r follows
from the lowest-order balance of the equation there,

    theta = r - 1 - p_{r-1}(x_c) / p_r'(x_c),

so that a_n ~ C * (1/x_c)^n * n^(-1-theta).  Estimates are aggregated by
median, with the interquartile spread across fits reported as dispersion;
secondary root locations shared by most fits are reported as subdominant
singularity candidates.  Few terms or scattered fits downgrade the
confidence field; with only a dozen terms the method tags its own output
as low-confidence rather than pretending to the precision it reaches on
hundred-term series.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from statistics import median
from typing import Optional, Sequence

from .counting import IntegerSeries
from .guessing import _fit_ode
from .ode import PolynomialODE
from .ratpoly import Root, isolate_roots, smallest_positive_real_root

RECOMMENDED_TERMS = 15


@dataclass(frozen=True)
class GrowthEstimate:
    """Aggregated output of a differential-approximant run."""

    singularity_location: Optional[float]
    growth_rate: Optional[float]
    critical_exponent: Optional[float]
    dispersion: float
    exponent_dispersion: float
    subdominant_singularities: tuple[float, ...]
    amplitude: Optional[float]
    n_terms: int
    n_fits: int
    confidence: str
    note: str

    @property
    def no_estimate(self) -> bool:
        return self.growth_rate is None

    def to_json_dict(self) -> dict:
        return {
            "singularity_location": self.singularity_location,
            "growth_rate": self.growth_rate,
            "critical_exponent": self.critical_exponent,
            "dispersion": self.dispersion,
            "exponent_dispersion": self.exponent_dispersion,
            "subdominant_singularities": list(self.subdominant_singularities),
            "amplitude": self.amplitude,
            "n_terms": self.n_terms,
            "n_fits": self.n_fits,
            "confidence": self.confidence,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class ApproximantEstimate:
    order: int
    degree: int
    singularity: float
    exponent: Optional[float]
    other_roots: tuple[float, ...] = field(default=())


def _candidate_sizes(length: int, max_order: int) -> list[tuple[int, int]]:
    """(order, degree) ladder: for each order, the several largest degrees
    whose exactly-determined fit still fits inside the series prefix."""
    out = []
    for order in range(1, max_order + 1):
        top = (length - order + 1) // (order + 2) - 1
        for degree in range(max(1, top - 3), top + 1):
            if degree < 1:
                continue
            unknowns = (order + 2) * (degree + 1)
            if unknowns - 1 <= length - order:
                out.append((order, degree))
    return sorted(set(out))


def _exponent_at(ode: PolynomialODE, x_c: float) -> Optional[float]:
    lead = ode.leading
    dlead = lead.derivative()
    denom = dlead(complex(x_c, 0.0))
    if denom == 0:
        return None
    below = ode.coeffs[ode.order - 1] if ode.order >= 1 else None
    num = below(complex(x_c, 0.0)) if below is not None else 0.0
    theta = (ode.order - 1) - num / denom
    if abs(theta.imag) > 1e-6 * max(1.0, abs(theta.real)):
        return None
    return theta.real


def _fit_estimate(
    terms: Sequence[int], order: int, degree: int, max_radius: float, digits: int
) -> Optional[ApproximantEstimate]:
    unknowns = (order + 2) * (degree + 1)
    ode = _fit_ode(terms, order, degree, unknowns - 1)
    if ode is None:
        return None
    roots = isolate_roots(ode.leading, digits=digits)
    dominant = smallest_positive_real_root(roots, max_radius=max_radius)
    if dominant is None:
        return None
    x_c = dominant.value.real if dominant.is_real else abs(dominant.value)
    if x_c <= 0:
        return None
    exponent = _exponent_at(ode, x_c) if dominant.is_real else None
    others = tuple(
        sorted(
            r.value.real
            for r in roots
            if r.is_real
            and r.value.real > x_c * (1 + 1e-9)
            and r.value.real <= max_radius
        )
    )
    return ApproximantEstimate(order, degree, x_c, exponent, others)


def differential_approximation(
    series,
    *,
    max_order: int = 3,
    max_radius: float = 2.0,
    digits: int = 12,
) -> GrowthEstimate:
    """
    Estimate the dominant singularity, exponential growth rate, and critical
    exponent of a counting sequence from its initial terms.  The exponent
    convention matches an asymptotic form C * mu^n * n^(-1-alpha).

    Degenerate fits (no usable kernel vector, leading polynomial without a
    root inside (0, max_radius]) are dropped; if every fit degenerates the
    returned estimate is explicitly empty rather than an error.
    """
    terms = series.terms if isinstance(series, IntegerSeries) else tuple(series)
    length = len(terms)
    if length < 6:
        raise ValueError("differential approximation needs at least 6 terms")
    estimates: list[ApproximantEstimate] = []
    for order, degree in _candidate_sizes(length, max_order):
        est = _fit_estimate(terms, order, degree, max_radius, digits)
        if est is not None:
            estimates.append(est)
    if not estimates:
        return GrowthEstimate(
            singularity_location=None,
            growth_rate=None,
            critical_exponent=None,
            dispersion=0.0,
            exponent_dispersion=0.0,
            subdominant_singularities=(),
            amplitude=None,
            n_terms=length,
            n_fits=0,
            confidence="none",
            note="all approximant fits degenerated; no estimate",
        )
    sing = median(e.singularity for e in estimates)
    growths = sorted(1.0 / e.singularity for e in estimates)
    growth = 1.0 / sing
    dispersion = _iqr(growths)
    exponents = sorted(e.exponent for e in estimates if e.exponent is not None)
    exponent = median(exponents) if exponents else None
    exp_disp = _iqr(exponents) if exponents else 0.0
    subdominant = _shared_subdominant(estimates)
    amplitude = _rough_amplitude(terms, growth, exponent)
    confidence, note = _confidence(length, len(estimates), growth, dispersion)
    return GrowthEstimate(
        singularity_location=sing,
        growth_rate=growth,
        critical_exponent=exponent,
        dispersion=dispersion,
        exponent_dispersion=exp_disp,
        subdominant_singularities=subdominant,
        amplitude=amplitude,
        n_terms=length,
        n_fits=len(estimates),
        confidence=confidence,
        note=note,
    )


def _iqr(values: Sequence[float]) -> float:
    if len(values) < 2:
        return 0.0
    data = sorted(values)
    lo = _quantile(data, 0.25)
    hi = _quantile(data, 0.75)
    return hi - lo


def _quantile(data: Sequence[float], q: float) -> float:
    pos = (len(data) - 1) * q
    lo = math.floor(pos)
    hi = math.ceil(pos)
    if lo == hi:
        return data[lo]
    return data[lo] + (data[hi] - data[lo]) * (pos - lo)


def _shared_subdominant(estimates: Sequence[ApproximantEstimate]) -> tuple[float, ...]:
    # report the median of each fit's nearest secondary root, when at least
    # half the fits see one
    secondaries = [e.other_roots[0] for e in estimates if e.other_roots]
    if len(secondaries) * 2 < len(estimates):
        return ()
    return (median(secondaries),)


def _rough_amplitude(
    terms: Sequence[int], growth: float, exponent: Optional[float]
) -> Optional[float]:
    if exponent is None or growth <= 0:
        return None
    samples = []
    for n in range(max(2, len(terms) - 5), len(terms)):
        a_n = terms[n]
        if a_n <= 0:
            continue
        try:
            log_c = math.log(a_n) - n * math.log(growth) + (1 + exponent) * math.log(n)
        except ValueError:
            return None
        if log_c > 700:
            return None
        samples.append(math.exp(log_c))
    return median(samples) if samples else None


def _confidence(
    n_terms: int, n_fits: int, growth: float, dispersion: float
) -> tuple[str, str]:
    rel = dispersion / abs(growth) if growth else float("inf")
    if n_terms < RECOMMENDED_TERMS:
        return (
            "low",
            f"only {n_terms} terms (< {RECOMMENDED_TERMS} recommended); "
            f"estimates from {n_fits} small approximants, relative spread {rel:.2e}",
        )
    if rel > 0.02 or n_fits < 3:
        return (
            "low",
            f"approximants scatter (relative spread {rel:.2e} across {n_fits} fits)",
        )
    if n_terms >= 30 and rel < 1e-4:
        return (
            "high",
            f"{n_fits} approximants agree to relative spread {rel:.2e}",
        )
    return (
        "medium",
        f"{n_fits} approximants, relative spread {rel:.2e}",
    )
