"""
Partition shapes, standard Young tableaux, and the Robinson-Schensted
correspondence.

A shape is a weakly decreasing tuple of positive row lengths.  A standard
tableau stores its rows as tuples of integers; rows increase left to right
and columns top to bottom, with entries exactly 1..n.

Counting is exact everywhere: single shapes go through the hook length
formula, and families of shapes with a bounded first row go through an
add-a-box DP over column profiles, which stays polynomial in n for a fixed
bound and therefore reaches n in the hundreds.
"""
from __future__ import annotations

import threading
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Sequence

from .perms import Perm, as_perm

Shape = tuple[int, ...]


def check_shape(shape: Sequence[int]) -> Shape:
    rows = tuple(shape)
    if any(r <= 0 for r in rows):
        raise ValueError(f"shape rows must be positive: {rows!r}")
    if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
        raise ValueError(f"shape rows must be weakly decreasing: {rows!r}")
    return rows


def conjugate(shape: Sequence[int]) -> Shape:
    """Transpose a shape: (3, 1) -> (2, 1, 1)."""
    rows = check_shape(shape)
    if not rows:
        return ()
    return tuple(sum(1 for r in rows if r > j) for j in range(rows[0]))


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if not self.is_standard():
            raise ValueError(f"not a standard tableau: {self.rows!r}")

    @property
    def shape(self) -> Shape:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_standard(self) -> bool:
        rows = self.rows
        entries = [v for r in rows for v in r]
        if sorted(entries) != list(range(1, len(entries) + 1)):
            return False
        for r in rows:
            if any(r[i] >= r[i + 1] for i in range(len(r) - 1)):
                return False
        for i in range(len(rows) - 1):
            if len(rows[i]) < len(rows[i + 1]):
                return False
            if any(rows[i][j] >= rows[i + 1][j] for j in range(len(rows[i + 1]))):
                return False
        return True

    def row_of(self, value: int) -> int:
        for i, r in enumerate(self.rows):
            if value in r:
                return i
        raise ValueError(f"{value} not in tableau")

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{v}" for v in r) for r in self.rows)


# ---------------------------------------------------------------------------
# Robinson-Schensted


def rsk(p: Sequence[int]) -> tuple[StandardTableau, StandardTableau]:
    """
    Row insertion with recording: each entry bumps the smallest entry
    strictly larger than it to the next row.  Returns the insertion and
    recording tableaux, which share a shape whose first row length equals
    the longest increasing subsequence of p.

    >>> P, Q = rsk((1, 3, 2))
    >>> P.rows, Q.rows
    (((1, 2), (3,)), ((1, 2), (3,)))
    """
    p = as_perm(p)
    prows: list[list[int]] = []
    qrows: list[list[int]] = []
    for step, v in enumerate(p, start=1):
        row = 0
        while True:
            if row == len(prows):
                prows.append([v])
                qrows.append([step])
                break
            pos = bisect_right(prows[row], v)
            if pos == len(prows[row]):
                prows[row].append(v)
                qrows[row].append(step)
                break
            v, prows[row][pos] = prows[row][pos], v
            row += 1
    return (
        StandardTableau(tuple(tuple(r) for r in prows)),
        StandardTableau(tuple(tuple(r) for r in qrows)),
    )


def inverse_rsk(P: StandardTableau, Q: StandardTableau) -> Perm:
    """
    The unique permutation whose insertion pair is (P, Q).  Runs the
    insertion backwards, peeling entries in the order recorded by Q.
    """
    if P.shape != Q.shape:
        raise ValueError(f"shape mismatch: {P.shape} vs {Q.shape}")
    n = P.size
    prows = [list(r) for r in P.rows]
    where = {}
    for i, r in enumerate(Q.rows):
        for v in r:
            where[v] = i
    out: list[int] = []
    for step in range(n, 0, -1):
        row = where[step]
        v = prows[row].pop()
        for r in range(row - 1, -1, -1):
            pos = bisect_left(prows[r], v) - 1
            v, prows[r][pos] = prows[r][pos], v
        out.append(v)
        if not prows[row]:
            prows.pop(row)
    return tuple(reversed(out))


def descent_set(x) -> set[int]:
    """
    Descents of a permutation (positions i with p_i > p_{i+1}, 1-indexed) or
    of a standard tableau (values i with i+1 strictly lower than i).  The
    recording tableau of a permutation has the same descent set as the
    permutation itself.

    >>> sorted(descent_set((3, 7, 5, 2, 4, 1, 6)))
    [2, 3, 5]
    """
    if isinstance(x, StandardTableau):
        return {
            i for i in range(1, x.size) if x.row_of(i + 1) > x.row_of(i)
        }
    p = tuple(x)
    return {i + 1 for i in range(len(p) - 1) if p[i] > p[i + 1]}


# ---------------------------------------------------------------------------
# exact counting


def syt_count(shape: Sequence[int]) -> int:
    """
    Number of standard fillings of a shape, by the hook length formula.
    The hook product divides n! only as a whole, so the division happens
    once at the end.

    >>> syt_count((2, 2)), syt_count((2, 1, 1))
    (2, 3)
    """
    rows = check_shape(shape)
    n = sum(rows)
    cols = conjugate(rows)
    hook_product = 1
    for i, r in enumerate(rows):
        for j in range(r):
            hook_product *= (r - j) + (cols[j] - i) - 1
    return factorial(n) // hook_product


# Layered add-a-box DP over column profiles (the conjugate shape), keyed by
# the first-row bound.  layers[m] maps a column profile with |profile| = m
# boxes to its number of standard fillings.  Extended on demand and shared
# across calls; the lock makes concurrent extension safe.
_layer_cache: dict[int, list[dict[tuple[int, ...], int]]] = {}
_layer_lock = threading.Lock()


def _bounded_layers(max_first_row: int, n: int) -> list[dict[tuple[int, ...], int]]:
    if max_first_row < 1:
        raise ValueError("first-row bound must be >= 1")
    with _layer_lock:
        layers = _layer_cache.setdefault(max_first_row, [{(): 1}])
        while len(layers) <= n:
            nxt: dict[tuple[int, ...], int] = {}
            for cols, cnt in layers[-1].items():
                width = len(cols)
                for j in range(width):
                    if j == 0 or cols[j - 1] > cols[j]:
                        grown = cols[:j] + (cols[j] + 1,) + cols[j + 1 :]
                        nxt[grown] = nxt.get(grown, 0) + cnt
                if width < max_first_row:
                    grown = cols + (1,)
                    nxt[grown] = nxt.get(grown, 0) + cnt
            layers.append(nxt)
        return layers


def syt_count_bounded(n: int, max_first_row: int) -> int:
    """
    Number of standard Young tableaux on n boxes whose first row is at most
    max_first_row (equivalently: at most that many columns).

    >>> syt_count_bounded(4, 2), syt_count_bounded(5, 2)
    (6, 10)
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    layers = _bounded_layers(max_first_row, n)
    return sum(layers[n].values())


def syt_pair_count_bounded(n: int, max_first_row: int) -> int:
    """
    Number of ordered pairs of same-shape standard tableaux on n boxes with
    first row at most max_first_row: the sum of squared fill counts over
    those shapes.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    layers = _bounded_layers(max_first_row, n)
    return sum(cnt * cnt for cnt in layers[n].values())


def iter_syt(shape: Sequence[int]) -> Iterator[StandardTableau]:
    """
    Brute-force generator of all standard fillings of a shape, placing
    1..n in order into every cell whose upper and left neighbours are
    already filled.  Only sensible for small shapes; used as an oracle.
    """
    rows = check_shape(shape)
    n = sum(rows)
    grid = [[0] * r for r in rows]

    def fill(num: int) -> Iterator[StandardTableau]:
        if num > n:
            yield StandardTableau(tuple(tuple(r) for r in grid))
            return
        for i, r in enumerate(grid):
            for j in range(len(r)):
                if r[j] == 0:
                    above_ok = i == 0 or grid[i - 1][j] != 0
                    left_ok = j == 0 or r[j - 1] != 0
                    if above_ok and left_ok:
                        r[j] = num
                        yield from fill(num + 1)
                        r[j] = 0
                    break  # only the leftmost empty cell of each row is a candidate
        return

    yield from fill(1)


def iter_shapes(n: int, max_first_row: int | None = None) -> Iterator[Shape]:
    """All partitions of n (optionally with bounded first part), largest part first."""

    def gen(remaining: int, cap: int, acc: tuple[int, ...]) -> Iterator[Shape]:
        if remaining == 0:
            yield acc
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from gen(remaining - part, part, acc + (part,))

    cap = n if max_first_row is None else min(n, max_first_row)
    if n == 0:
        yield ()
        return
    yield from gen(n, cap, ())
