"""
Permutations, patterns, and the rank-word encoding.

A permutation of length n is stored in one-line notation as a tuple of the
values 1..n, e.g. (3, 7, 5, 2, 4, 1, 6).  The same representation doubles as
a pattern.  Short patterns may be written as digit strings ("2413"), which
restricts that notation to length <= 9; every built-in pattern family stays
well below that.

The *rank* of an entry is the length of the longest increasing subsequence
ending at that entry.  Two words derived from the ranks -- one indexed by
position, one by value -- encode a permutation injectively and can be decoded
again; see ``rank_profile`` and ``decode_rank_profile``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

Perm = tuple[int, ...]


def is_perm(word: Sequence[int]) -> bool:
    """
    Check that word is an arrangement of 1..n where n = len(word).

    >>> [is_perm(w) for w in [(), (1,), (2, 1), (1, 3), (1, 1, 2)]]
    [True, True, True, False, False]
    """
    return sorted(word) == list(range(1, len(word) + 1))


def as_perm(word: Sequence[int]) -> Perm:
    p = tuple(word)
    if not is_perm(p):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p!r}")
    return p


def perm_from_string(text: str) -> Perm:
    """
    Parse one-line digit notation, e.g. "3752416".  Only lengths <= 9 are
    representable this way.
    """
    text = text.strip()
    if not text.isdigit() and text != "":
        raise ValueError(f"permutation string must be digits: {text!r}")
    return as_perm(tuple(int(c) for c in text))


def perm_to_string(p: Perm) -> str:
    if len(p) > 9:
        raise ValueError("digit notation only covers lengths <= 9")
    return "".join(str(v) for v in p)


def standardize(values: Sequence[int]) -> Perm:
    """
    Relabel distinct values by their relative order: (3, 7, 2, 6) -> (2, 4, 1, 3).
    """
    order = sorted(values)
    if len(set(values)) != len(values):
        raise ValueError("values must be distinct")
    rank_of = {v: i + 1 for i, v in enumerate(order)}
    return tuple(rank_of[v] for v in values)


def iter_perms(n: int) -> Iterator[Perm]:
    """All permutations of length n in lexicographic order."""
    return itertools.permutations(range(1, n + 1))


# ---------------------------------------------------------------------------
# containment


def _embedding_windows(q: Perm) -> tuple[list[int], list[int]]:
    # For each pattern position j, the index (< j) of the value-closest earlier
    # entry below resp. above q[j]; -1 when there is none.  During the
    # backtracking search these give the tightest value window a candidate
    # entry must fall into.
    lower = []
    upper = []
    for j, qj in enumerate(q):
        lo = hi = -1
        for t in range(j):
            if q[t] < qj and (lo < 0 or q[t] > q[lo]):
                lo = t
            if q[t] > qj and (hi < 0 or q[t] < q[hi]):
                hi = t
        lower.append(lo)
        upper.append(hi)
    return lower, upper


def contains(p: Sequence[int], q: Sequence[int]) -> bool:
    """
    True iff some subsequence of p is order-isomorphic to the pattern q.

    >>> contains((3, 7, 5, 2, 4, 1, 6), (2, 4, 1, 3))
    True
    >>> contains((1, 2, 3, 4, 5, 6), (2, 1))
    False
    """
    p = tuple(p)
    q = tuple(q)
    n, k = len(p), len(q)
    if k == 0:
        return True
    if k > n:
        return False
    lower, upper = _embedding_windows(q)
    chosen = [0] * k

    def search(j: int, start: int) -> bool:
        if j == k:
            return True
        lo = chosen[lower[j]] if lower[j] >= 0 else 0
        hi = chosen[upper[j]] if upper[j] >= 0 else n + 1
        # remaining-length cut: leave room for the k-j-1 entries after j
        for pos in range(start, n - (k - j) + 1):
            v = p[pos]
            if lo < v < hi:
                chosen[j] = v
                if search(j + 1, pos + 1):
                    return True
        return False

    return search(0, 0)


def avoids(p: Sequence[int], q: Sequence[int]) -> bool:
    return not contains(p, q)


def contains_ending_at_last(p: Sequence[int], q: Sequence[int]) -> bool:
    """
    True iff p has an occurrence of q whose final pattern entry is the final
    entry of p.  Extending a permutation on the right can only create
    occurrences of this restricted kind, which is what makes prefix pruning
    in the enumerator exact.
    """
    p = tuple(p)
    q = tuple(q)
    n, k = len(p), len(q)
    if k == 0 or k > n:
        return k == 0
    x = p[-1]
    if k == 1:
        return True
    lower, upper = _embedding_windows(q)
    last_val = q[-1]
    chosen = [0] * k
    chosen[k - 1] = x

    def search(j: int, start: int) -> bool:
        if j == k - 1:
            return True
        lo = chosen[lower[j]] if lower[j] >= 0 else 0
        hi = chosen[upper[j]] if upper[j] >= 0 else n + 1
        # the final entry is already placed, so fold in its window too
        if q[j] < last_val:
            hi = min(hi, x)
        else:
            lo = max(lo, x)
        for pos in range(start, n - 1 - (k - 1 - j) + 1):
            v = p[pos]
            if lo < v < hi:
                chosen[j] = v
                if search(j + 1, pos + 1):
                    return True
        return False

    return search(0, 0)


# ---------------------------------------------------------------------------
# pattern sets and the built-in families


def _family_patterns(k: int) -> list[Perm]:
    # the k patterns of length k that open with an increasing run of length
    # k-1: sort {1..k} minus the final entry, then append that entry
    pats = []
    for last in range(1, k + 1):
        head = [v for v in range(1, k + 1) if v != last]
        pats.append(tuple(head + [last]))
    return pats


@dataclass(frozen=True)
class PatternSet:
    """
    A finite set of patterns to avoid, optionally tagged with the family
    label it was built from ("A(5)" or "A(5,2)").
    """

    patterns: tuple[Perm, ...]
    label: Optional[str] = None

    def __post_init__(self):
        pats = tuple(sorted(set(tuple(q) for q in self.patterns)))
        for q in pats:
            if not is_perm(q):
                raise ValueError(f"pattern is not a permutation: {q!r}")
            if len(q) == 0:
                raise ValueError("empty pattern is not allowed")
        object.__setattr__(self, "patterns", pats)
        if self.label is not None:
            expected = _family_set_for_label(self.label)
            if expected is not None and expected != self.patterns:
                raise ValueError(f"label {self.label!r} does not match patterns")

    @classmethod
    def of(cls, *patterns: Sequence[int] | str) -> "PatternSet":
        parsed = []
        for q in patterns:
            parsed.append(perm_from_string(q) if isinstance(q, str) else as_perm(q))
        return cls(tuple(parsed))

    @classmethod
    def from_string(cls, text: str) -> "PatternSet":
        """Parse a comma-separated list of digit-string patterns."""
        parts = [part for part in (s.strip() for s in text.split(",")) if part]
        if not parts:
            raise ValueError("no patterns given")
        return cls.of(*parts)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __contains__(self, q) -> bool:
        return tuple(q) in self.patterns

    def __str__(self) -> str:
        if self.label:
            return self.label
        return "{" + ",".join(perm_to_string(q) for q in self.patterns) + "}"


def _family_set_for_label(label: str) -> Optional[tuple[Perm, ...]]:
    import re

    m = re.fullmatch(r"A\((\d+)\)", label)
    if m:
        return tuple(sorted(_family_patterns(int(m.group(1)))))
    m = re.fullmatch(r"A\((\d+),(\d+)\)", label)
    if m:
        k, i = int(m.group(1)), int(m.group(2))
        return tuple(sorted(q for q in _family_patterns(k) if q[-1] != i))
    return None


def family_a(k: int) -> PatternSet:
    """
    The k patterns of length k that start with an increasing run of length
    k-1 (one pattern per choice of final entry).

    >>> [perm_to_string(q) for q in family_a(3)]
    ['123', '132', '231']
    """
    if k < 3:
        raise ValueError("family A(k) needs k >= 3")
    return PatternSet(tuple(_family_patterns(k)), label=f"A({k})")


def family_aki(k: int, i: int) -> PatternSet:
    """
    family_a(k) with the pattern ending in i removed; k-1 patterns.

    >>> [perm_to_string(q) for q in family_aki(4, 1)]
    ['1234', '1243', '1342']
    """
    if k < 3:
        raise ValueError("family A(k,i) needs k >= 3")
    if not 1 <= i <= k:
        raise ValueError(f"index i must lie in 1..{k}, got {i}")
    pats = tuple(q for q in _family_patterns(k) if q[-1] != i)
    return PatternSet(pats, label=f"A({k},{i})")


def as_pattern_set(patterns: "PatternSet | Iterable[Sequence[int]] | str") -> PatternSet:
    if isinstance(patterns, PatternSet):
        return patterns
    if isinstance(patterns, str):
        return PatternSet.from_string(patterns)
    return PatternSet.of(*patterns)


def avoids_all(p: Sequence[int], patterns) -> bool:
    """
    True iff p contains none of the given patterns.

    >>> avoids_all((1, 3, 2), PatternSet.of("123", "231"))
    True
    """
    p = tuple(p)
    return all(not contains(p, q) for q in as_pattern_set(patterns))


# ---------------------------------------------------------------------------
# rank words


def ranks(p: Sequence[int]) -> tuple[int, ...]:
    """
    For each position, the length of the longest increasing subsequence
    ending there.  Quadratic DP; every caller keeps n small.

    >>> ranks((3, 7, 5, 2, 4, 1, 6))
    (1, 2, 2, 1, 2, 1, 3)
    """
    out: list[int] = []
    for i, v in enumerate(p):
        best = 0
        for j in range(i):
            if p[j] < v and out[j] > best:
                best = out[j]
        out.append(best + 1)
    return tuple(out)


def lis_length(p: Sequence[int]) -> int:
    r = ranks(p)
    return max(r) if r else 0


@dataclass(frozen=True)
class RankProfile:
    """
    The two rank words of a permutation: ``by_position[i]`` is the rank of
    the entry at position i, ``by_value[t]`` the rank of the entry with
    value t+1.  Entries sharing a rank form a decreasing subsequence, which
    is why the pair determines the permutation.
    """

    by_position: tuple[int, ...]
    by_value: tuple[int, ...]

    def __post_init__(self):
        if len(self.by_position) != len(self.by_value):
            raise ValueError("rank words must have equal length")

    @property
    def max_rank(self) -> int:
        return max(self.by_position) if self.by_position else 0


def rank_profile(p: Sequence[int]) -> RankProfile:
    """
    >>> rp = rank_profile((3, 7, 5, 2, 4, 1, 6))
    >>> rp.by_position, rp.by_value
    ((1, 2, 2, 1, 2, 1, 3), (1, 1, 1, 2, 2, 3, 2))
    """
    p = as_perm(p)
    w = ranks(p)
    z = [0] * len(p)
    for pos, v in enumerate(p):
        z[v - 1] = w[pos]
    return RankProfile(by_position=w, by_value=tuple(z))


def decode_rank_profile(
    by_position: Sequence[int], by_value: Sequence[int]
) -> Optional[Perm]:
    """
    Reconstruct the permutation with the given rank words, or return None
    when the pair is not the image of any permutation.  Within each rank the
    values must decrease along positions, so values of a fixed rank (taken
    largest first) are matched to that rank's positions left to right; a
    round trip then confirms the result.

    >>> decode_rank_profile((1, 2, 2, 1, 2, 1, 3), (1, 1, 1, 2, 2, 3, 2))
    (3, 7, 5, 2, 4, 1, 6)
    >>> decode_rank_profile((1, 2), (2, 1)) is None
    True
    """
    w = tuple(by_position)
    z = tuple(by_value)
    n = len(w)
    if len(z) != n:
        return None
    if any(not 1 <= letter <= n for letter in w + z):
        return None
    out = [0] * n
    for r in set(w) | set(z):
        positions = [j for j in range(n) if w[j] == r]
        values = [t + 1 for t in range(n) if z[t] == r]
        if len(positions) != len(values):
            return None
        for pos, val in zip(positions, reversed(values)):
            out[pos] = val
    candidate = tuple(out)
    if not is_perm(candidate):
        return None
    rp = rank_profile(candidate)
    if rp.by_position != w or rp.by_value != z:
        return None
    return candidate
