"""
Exact-arithmetic guessing of rational and linear-ODE generating functions.

Both guessers follow the same discipline: candidate sizes are searched in
increasing total size, each candidate is fitted by exact nullspace
computation on coefficient equations built from a prefix of the series, and
a candidate is accepted only when the held-out coefficient equations (the
last few, never used in the fit) are satisfied exactly as well.  Absence of
a confirmed fit is a normal outcome and returns None; short or noisy
series can never be coerced into an answer.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .counting import IntegerSeries
from .ode import PolynomialODE, series_coefficients_of_ode
from .ratpoly import RationalPolynomial, nullspace, poly_gcd


@dataclass(frozen=True)
class RationalFit:
    numerator: RationalPolynomial
    denominator: RationalPolynomial

    def series_prefix(self, length: int) -> list[Fraction]:
        """Expand numerator/denominator as a power series (denominator has
        nonzero constant term by construction)."""
        inv_d0 = 1 / self.denominator[0]
        out: list[Fraction] = []
        for t in range(length):
            acc = self.numerator[t]
            for s in range(1, t + 1):
                acc -= self.denominator[s] * out[t - s]
            out.append(acc * inv_d0)
        return out

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})"


def _terms_of(series) -> tuple[int, ...]:
    return series.terms if isinstance(series, IntegerSeries) else tuple(series)


def guess_rational(
    series, *, holdout: int = 3, max_total_degree: Optional[int] = None
) -> Optional[RationalFit]:
    """
    Search for polynomials N, D of minimal combined degree with
    D(x) * f(x) = N(x) through every available series coefficient, fitting
    on all but the last ``holdout`` coefficients and confirming on those.
    Returns None when nothing confirms.

    >>> fit = guess_rational([1, 1, 2, 4, 8, 16, 32, 64, 128, 256])
    >>> str(fit)
    '(1 + -1*x) / (1 + -2*x)'
    """
    terms = _terms_of(series)
    length = len(terms)
    if length < 8:
        raise ValueError("rational guessing needs at least 8 terms")
    if holdout < 1:
        raise ValueError("holdout must be positive")
    fit_orders = length - holdout
    cap = fit_orders - 2 if max_total_degree is None else max_total_degree
    for total in range(0, cap + 1):
        for deg_n in range(total + 1):
            deg_d = total - deg_n
            unknowns = total + 2
            if unknowns > fit_orders:
                continue
            # unknowns: n_0..n_degN, d_0..d_degD; equation at order t:
            # sum_s d_s a_{t-s} - n_t = 0
            rows = []
            for t in range(fit_orders):
                row = [Fraction(0)] * unknowns
                if t <= deg_n:
                    row[t] = Fraction(-1)
                for s in range(min(deg_d, t) + 1):
                    row[deg_n + 1 + s] = Fraction(terms[t - s])
                rows.append(row)
            for vec in nullspace(rows, unknowns):
                num = RationalPolynomial(tuple(vec[: deg_n + 1]))
                den = RationalPolynomial(tuple(vec[deg_n + 1 :]))
                if den.is_zero() or den[0] == 0:
                    continue
                if _confirm_rational(num, den, terms):
                    return _normalize_rational(num, den)
    return None


def _confirm_rational(
    num: RationalPolynomial, den: RationalPolynomial, terms: Sequence[int]
) -> bool:
    # check D * f - N = 0 at *every* order, held-out ones included
    for t in range(len(terms)):
        acc = -num[t]
        for s in range(min(den.degree, t) + 1):
            acc += den[s] * terms[t - s]
        if acc != 0:
            return False
    return True


def _normalize_rational(num: RationalPolynomial, den: RationalPolynomial) -> RationalFit:
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num // g
        den = den // g
    scale = 1 / den[0]
    return RationalFit(numerator=num * scale, denominator=den * scale)


def guess_dfinite(
    series,
    max_order: int = 4,
    max_degree: int = 8,
    *,
    holdout: int = 5,
) -> Optional[PolynomialODE]:
    """
    Search (order, degree) pairs in increasing order + degree for a linear
    ODE with polynomial coefficients and polynomial inhomogeneous part that
    the series satisfies exactly, requiring at least ``holdout`` coefficient
    equations beyond the fitted ones to confirm.  Returns the smallest
    accepted equation, or None (a perfectly informative outcome: the series
    shows no small equation at this term count).
    """
    terms = _terms_of(series)
    n_top = len(terms) - 1
    if holdout < 1:
        raise ValueError("holdout must be positive")
    candidates = sorted(
        (
            (order + degree, order, degree)
            for order in range(1, max_order + 1)
            for degree in range(0, max_degree + 1)
        )
    )
    for _, order, degree in candidates:
        available = n_top - order + 1  # coefficient equations 0..n_top-order
        unknowns = (order + 2) * (degree + 1)
        if unknowns + holdout > available:
            continue
        fit_orders = available - holdout
        ode = _fit_ode(terms, order, degree, fit_orders)
        if ode is None:
            continue
        # confirm on the full truncation-safe range, holdout included
        residuals = series_coefficients_of_ode(ode, terms, n_top - order)
        if all(v == 0 for v in residuals):
            return ode
    return None


def _fit_ode(
    terms: Sequence[int], order: int, degree: int, fit_orders: int
) -> Optional[PolynomialODE]:
    """Exact nullspace fit of an (order, degree) equation on coefficient
    equations 0..fit_orders-1; the first kernel vector with a nonzero
    leading polynomial wins."""
    width = degree + 1
    unknowns = (order + 2) * width
    # unknown layout: p_j coefficient c at j*width + c, q at (order+1)*width + c
    rows = []
    for t in range(fit_orders):
        row = [Fraction(0)] * unknowns
        for j in range(order + 1):
            for c in range(min(degree, t) + 1):
                m = t - c + j
                if m > len(terms) - 1:
                    continue
                fall = 1
                for step in range(j):
                    fall *= m - step
                row[j * width + c] = Fraction(terms[m] * fall)
        if t <= degree:
            row[(order + 1) * width + t] = Fraction(1)
        rows.append(row)
    for vec in nullspace(rows, unknowns):
        coeffs = tuple(
            RationalPolynomial(tuple(vec[j * width : (j + 1) * width]))
            for j in range(order + 1)
        )
        inhom = RationalPolynomial(tuple(vec[(order + 1) * width :]))
        if coeffs[-1].is_zero():
            continue
        return PolynomialODE(coeffs=coeffs, inhomogeneous=inhom)
    return None
