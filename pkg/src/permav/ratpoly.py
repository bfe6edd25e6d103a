"""
Exact univariate polynomials over the rationals, a nullspace solver, and
validated numeric root isolation.

Everything that feeds a conclusion is exact: coefficients are
``fractions.Fraction``, elimination is plain fraction arithmetic, and only
the final root *estimates* are floating point (mpmath refines them to a
requested digit count after an exact square-free split, so multiple roots
lose no accuracy).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

RationalLike = int | Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalPolynomial:
    """Coefficients ascending by degree, trailing zeros trimmed."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [_frac(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- construction ------------------------------------------------------

    @classmethod
    def of(cls, *coeffs) -> "RationalPolynomial":
        return cls(tuple(_frac(c) for c in coeffs))

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls(())

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RationalPolynomial":
        return cls((Fraction(0),) * degree + (_frac(coeff),))

    # -- basics -------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        out = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + (c if not isinstance(x, (float, complex)) else float(c))
        return out

    def eval_fraction(self, x: RationalLike) -> Fraction:
        out = Fraction(0)
        fx = _frac(x)
        for c in reversed(self.coeffs):
            out = out * fx + c
        return out

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(tuple(out))

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(tuple(c * _frac(other) for c in self.coeffs))
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(
            tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)
        )

    def divmod(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        div = other.coeffs
        dq = len(rem) - len(div)
        if dq < 0:
            return RationalPolynomial.zero(), self
        quo = [Fraction(0)] * (dq + 1)
        for i in range(dq, -1, -1):
            if len(rem) < len(div) + i:
                continue
            factor = rem[len(div) + i - 1] / div[-1]
            quo[i] = factor
            if factor:
                for j, d in enumerate(div):
                    rem[i + j] -= factor * d
            rem.pop()
        return RationalPolynomial(tuple(quo)), RationalPolynomial(tuple(rem))

    def __floordiv__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self.divmod(other)[1]

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return RationalPolynomial(tuple(c / lead for c in self.coeffs))

    def shift_up(self, m: int) -> "RationalPolynomial":
        """Multiply by x^m."""
        if self.is_zero():
            return self
        return RationalPolynomial((Fraction(0),) * m + self.coeffs)

    def trailing_zero_order(self) -> int:
        """Multiplicity of the root at x = 0."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{i}")
        return " + ".join(parts)


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(
    p: RationalPolynomial,
) -> list[tuple[RationalPolynomial, int]]:
    """
    Yun's split of p into pairwise-coprime square-free factors with their
    multiplicities (constant factors dropped): p = lead * prod f_i^i.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free decomposition")
    p = p.monic()
    out: list[tuple[RationalPolynomial, int]] = []
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        if p.degree > 0:
            out.append((p, 1))
        return out
    w = p // g
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, g)
        factor = w // y
        if factor.degree > 0:
            out.append((factor.monic(), i))
        w = y
        g = g // y
        i += 1
    return out


# ---------------------------------------------------------------------------
# exact linear algebra


def nullspace(rows: Sequence[Sequence[RationalLike]], ncols: int) -> list[list[Fraction]]:
    """
    Basis of the kernel of the matrix with the given rows, by fraction
    Gauss-Jordan.  Basis vectors correspond to free columns in ascending
    order, so the result is deterministic.
    """
    mat = [[_frac(x) for x in row] for row in rows]
    for row in mat:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# root isolation


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    is_real: bool

    @property
    def modulus(self) -> float:
        return abs(self.value)


def isolate_roots(p: RationalPolynomial, digits: int = 12) -> list[Root]:
    """
    All complex roots of p with multiplicities, accurate to the requested
    number of significant digits.  The polynomial is split exactly into
    square-free factors first, so multiple roots are refined as simple
    roots of their factor; the root at zero is read off exactly.  Roots are
    ordered by modulus, then argument.

    >>> [r.value for r in isolate_roots(RationalPolynomial.of(-1, 2))]
    [(0.5+0j)]
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    roots: list[Root] = []
    zero_mult = p.trailing_zero_order()
    if zero_mult:
        roots.append(Root(0j, zero_mult, True))
        p = RationalPolynomial(p.coeffs[zero_mult:])
    if p.degree >= 1:
        with mpmath.workdps(max(digits + 15, 30)):
            for factor, mult in squarefree_decomposition(p):
                mp_coeffs = [
                    mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                    for c in reversed(factor.coeffs)
                ]
                found = mpmath.polyroots(mp_coeffs, maxsteps=200, extraprec=120)
                for z in found:
                    re = float(mpmath.re(z))
                    im = float(mpmath.im(z))
                    scale = max(abs(re), abs(im), 1e-300)
                    real = abs(im) <= 10 ** (-digits) * max(scale, 1.0)
                    roots.append(Root(complex(re, 0.0 if real else im), mult, real))
    roots.sort(key=lambda root: (round(abs(root.value), digits), _arg_key(root.value)))
    return roots


def _arg_key(z: complex) -> float:
    import cmath

    if z == 0:
        return 0.0
    return cmath.phase(z)


def smallest_positive_real_root(
    roots: Iterable[Root], *, max_radius: float = float("inf"), tol: float = 1e-9
) -> Root | None:
    """
    The dominant-singularity pick: smallest modulus wins, with a positive
    real root preferred among (numerically) tied moduli; roots at zero or
    beyond max_radius are ignored.
    """
    live = [r for r in roots if tol < abs(r.value) <= max_radius]
    if not live:
        return None
    best_mod = min(abs(r.value) for r in live)
    tied = [r for r in live if abs(r.value) <= best_mod * (1 + 1e-9)]
    for r in tied:
        if r.is_real and r.value.real > 0:
            return r
    return tied[0]
