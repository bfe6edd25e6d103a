"""
Linear ODEs with exact rational polynomial coefficients, their verification
against truncated power series, and the equivalent term recurrences.

An equation is  p_r(x) f^(r)(x) + ... + p_0(x) f(x) + q(x) = 0.

The text format used for shipping equations alongside series data is::

    # optional comment lines
    order: 3
    degree: 8
    p0: -8, 76, -329, 716, -700, 200
    ...
    p3: 0, 0, 0, -2, 33, -146, 245, -140, -40, 200   (ascending degree)
    q: 8, -40, 50

Coefficients may be integers or fractions like ``-3/2``.

Extracting coefficients of x^t from the equation turns it into a linear
recurrence for the series terms whose coefficients are polynomials in the
index; ``ode_to_recurrence`` builds that recurrence and can run it forward
to extend a series, which must reproduce independently computed terms
whenever the equation is genuine.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .counting import IntegerSeries
from .ratpoly import RationalPolynomial


@dataclass(frozen=True)
class PolynomialODE:
    """Coefficient polynomials for f, f', ..., f^(order), plus the
    inhomogeneous polynomial; the leading polynomial must be nonzero."""

    coeffs: tuple[RationalPolynomial, ...]
    inhomogeneous: RationalPolynomial

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("an ODE needs at least the f coefficient")
        if self.coeffs[-1].is_zero():
            raise ValueError("leading coefficient polynomial must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def max_degree(self) -> int:
        degs = [p.degree for p in self.coeffs if not p.is_zero()]
        if not self.inhomogeneous.is_zero():
            degs.append(self.inhomogeneous.degree)
        return max(degs)

    @property
    def leading(self) -> RationalPolynomial:
        return self.coeffs[-1]

    def to_text(self, header: str | None = None) -> str:
        lines = []
        if header:
            for h in header.splitlines():
                lines.append(f"# {h}")
        lines.append(f"order: {self.order}")
        lines.append(f"degree: {self.max_degree}")
        for j, p in enumerate(self.coeffs):
            lines.append(f"p{j}: " + ", ".join(str(c) for c in p.coeffs or (Fraction(0),)))
        lines.append("q: " + ", ".join(str(c) for c in self.inhomogeneous.coeffs or (Fraction(0),)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PolynomialODE":
        order = None
        polys: dict[str, RationalPolynomial] = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition(":")
            key = key.strip().lower()
            value = value.strip()
            if key == "order":
                order = int(value)
            elif key == "degree":
                continue  # informational; recomputed from the polynomials
            elif key == "q" or (key.startswith("p") and key[1:].isdigit()):
                coeffs = tuple(Fraction(tok.strip()) for tok in value.split(",") if tok.strip())
                polys[key] = RationalPolynomial(coeffs)
            else:
                raise ValueError(f"unrecognized line in ODE file: {raw!r}")
        if order is None:
            raise ValueError("ODE file is missing the order header")
        coeffs = tuple(polys.get(f"p{j}", RationalPolynomial.zero()) for j in range(order + 1))
        return cls(coeffs=coeffs, inhomogeneous=polys.get("q", RationalPolynomial.zero()))

    @classmethod
    def load(cls, path: str) -> "PolynomialODE":
        with open(path) as fh:
            return cls.from_text(fh.read())


def _falling(n: int, j: int) -> int:
    out = 1
    for step in range(j):
        out *= n - step
    return out


def series_coefficients_of_ode(
    ode: PolynomialODE, terms: Sequence[int | Fraction], upto: int
) -> list[Fraction]:
    """
    Coefficients 0..upto of the left-hand side evaluated at the truncated
    series; ``upto`` must stay within the truncation-safe range
    len(terms) - 1 - order.
    """
    n_top = len(terms) - 1
    if upto > n_top - ode.order:
        raise ValueError("requested order exceeds the truncation-safe range")
    out = [Fraction(0)] * (upto + 1)
    for j, poly in enumerate(ode.coeffs):
        if poly.is_zero():
            continue
        for c, pc in enumerate(poly.coeffs):
            if pc == 0:
                continue
            for t in range(c, upto + 1):
                m = t - c + j
                out[t] += pc * _falling(m, j) * Fraction(terms[m])
    for t in range(min(upto, ode.inhomogeneous.degree) + 1):
        out[t] += ode.inhomogeneous[t]
    return out


@dataclass(frozen=True)
class OdeCheck:
    ok: bool
    checked_orders: int
    first_bad_order: Optional[int] = None
    residual: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_ode(ode: PolynomialODE, series: IntegerSeries | Sequence[int]) -> OdeCheck:
    """
    Substitute the truncated series into the equation with exact arithmetic.
    Passes iff every coefficient that the truncation determines completely
    is exactly zero; the first nonzero residual is reported otherwise.
    """
    terms = series.terms if isinstance(series, IntegerSeries) else tuple(series)
    if len(terms) <= ode.order:
        raise ValueError("series must be longer than the ODE order")
    safe = len(terms) - 1 - ode.order
    residuals = series_coefficients_of_ode(ode, terms, safe)
    for t, value in enumerate(residuals):
        if value != 0:
            return OdeCheck(False, safe + 1, first_bad_order=t, residual=value)
    return OdeCheck(True, safe + 1)


@dataclass(frozen=True)
class PRecurrence:
    """
    The linear recurrence implied by an ODE.  ``shift_polys[s - s_min]`` is
    the polynomial (in the coefficient index t of the originating equation)
    that multiplies the series term a_{t+s}; the inhomogeneous polynomial
    contributes at small t only.  ``leading`` multiplies the newest term.
    """

    s_min: int
    s_max: int
    shift_polys: tuple[RationalPolynomial, ...]
    inhomogeneous: RationalPolynomial

    @property
    def window(self) -> int:
        """How many consecutive earlier terms one step looks back at."""
        return self.s_max - self.s_min

    @property
    def leading(self) -> RationalPolynomial:
        return self.shift_polys[-1]

    def coefficient(self, s: int) -> RationalPolynomial:
        if not self.s_min <= s <= self.s_max:
            return RationalPolynomial.zero()
        return self.shift_polys[s - self.s_min]

    @property
    def min_seed(self) -> int:
        """
        Number of leading terms that must be supplied before the recurrence
        can run forward: enough to cover the look-back window and every
        index where the leading polynomial vanishes.
        """
        lead = self.leading
        bound = 1 + max(
            (abs(c / lead.coeffs[-1]) for c in lead.coeffs[:-1]), default=Fraction(0)
        )
        last_zero = -1
        t = 0
        zeros_found = 0
        while t <= bound and zeros_found < lead.degree:
            if lead.eval_fraction(t) == 0:
                last_zero = t
                zeros_found += 1
            t += 1
        return max(self.window, self.s_max + last_zero + 1, 1)

    def extend(self, terms: Sequence[int | Fraction], count: int) -> list[Fraction]:
        """
        Append ``count`` further terms to a seed sequence.  The seed must be
        at least ``min_seed`` long; the equation index for the new term
        a_M is t = M - s_max, and the step fails if the leading polynomial
        vanishes there.
        """
        if len(terms) < self.min_seed:
            raise ValueError(
                f"need at least {self.min_seed} seed terms, got {len(terms)}"
            )
        out = [Fraction(x) for x in terms]
        for _ in range(count):
            m_new = len(out)
            t = m_new - self.s_max
            lead = self.leading.eval_fraction(t)
            if lead == 0:
                raise ArithmeticError(
                    f"leading recurrence coefficient vanishes at index {t}"
                )
            acc = Fraction(0)
            for s in range(self.s_min, self.s_max):
                idx = t + s
                if idx < 0:
                    continue
                coeff = self.shift_polys[s - self.s_min].eval_fraction(t)
                if coeff:
                    acc += coeff * out[idx]
            if t <= self.inhomogeneous.degree:
                acc += self.inhomogeneous[t]
            out.append(-acc / lead)
        return out

    def extend_integer_series(self, series: IntegerSeries, count: int) -> IntegerSeries:
        new_terms = self.extend(series.terms, count)
        ints = []
        for value in new_terms:
            if value.denominator != 1:
                raise ArithmeticError(f"extension left the integers: {value}")
            ints.append(value.numerator)
        return IntegerSeries(series.label, tuple(ints))


def ode_to_recurrence(ode: PolynomialODE) -> PRecurrence:
    """
    Extract the term recurrence: the coefficient of x^t in the equation is
    sum over (j, c) of p_{j,c} * (t-c+j)_falling_j * a_{t-c+j}, plus q_t.
    Grouping by the shift s = j - c gives polynomials in t multiplying
    a_{t+s}; terms whose index would go negative vanish identically because
    the falling factorial hits zero first.
    """
    pairs = [
        (j, c)
        for j, poly in enumerate(ode.coeffs)
        for c in range(poly.degree + 1)
        if poly[c] != 0
    ]
    s_min = min(j - c for j, c in pairs)
    s_max = max(j - c for j, c in pairs)
    shift_polys = []
    for s in range(s_min, s_max + 1):
        acc = RationalPolynomial.zero()
        for j, c in pairs:
            if j - c != s:
                continue
            # (t - c + j) falling j, expanded as a polynomial in t
            prod = RationalPolynomial.of(1)
            for step in range(j):
                prod = prod * RationalPolynomial.of(s - step, 1)
            acc = acc + ode.coeffs[j][c] * prod
        shift_polys.append(acc)
    if shift_polys[-1].is_zero():
        raise ValueError("degenerate ODE: top-shift recurrence coefficient is zero")
    return PRecurrence(
        s_min=s_min,
        s_max=s_max,
        shift_polys=tuple(shift_polys),
        inhomogeneous=ode.inhomogeneous,
    )
