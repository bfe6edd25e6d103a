"""
An explicit injection from Av(A(k,k-1)) into Av(A(k,k)).

In a permutation avoiding A(k,k-1), once an entry of rank k-1 appears, every
later entry also has rank k-1, so the suffix from the leftmost such entry is
decreasing.  Reversing that suffix yields a permutation whose top-rank
entries sit in one increasing run at the end, which is enough to avoid
A(k,k).  The map is injective but not onto, and ``preimage`` reconstructs
the unique candidate source (or reports that there is none) by reversing
back from the single rank-(k-1) entry of the maximal increasing suffix.

Applied to a whole avoidance class, ``verify`` checks injectivity, image
membership, and the preimage round trip element by element, certifying the
counting inequality av_n(A(k,k-1)) <= av_n(A(k,k)) at that size.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Optional

from .counting import count_avoiders, iter_avoiders
from .perms import Perm, as_perm, avoids_all, family_aki, perm_to_string, ranks


def _leftmost_of_rank(p: Perm, target: int) -> Optional[int]:
    for pos, r in enumerate(ranks(p)):
        if r == target:
            return pos
    return None


def apply(p, k: int) -> Perm:
    """
    Map p in Av(A(k,k-1)) into Av(A(k,k)) by reversing the suffix that
    starts at the leftmost entry of rank k-1; fixed point if no such entry.

    >>> apply((1, 3, 2), 3)
    (1, 2, 3)
    >>> apply((2, 1), 3)
    (2, 1)
    """
    p = as_perm(p)
    if k < 3:
        raise ValueError("k must be >= 3")
    src = family_aki(k, k - 1)
    if not avoids_all(p, src):
        raise ValueError(f"{perm_to_string(p) if len(p) <= 9 else p} is not in Av({src.label})")
    rk = ranks(p)
    # avoiding A(k,k-1) keeps the pattern 12..k forbidden, so no rank
    # reaches k; the construction relies on that
    assert not rk or max(rk) <= k - 1, (p, rk)
    i = _leftmost_of_rank(p, k - 1)
    if i is None:
        return p
    suffix = p[i:]
    # all entries from the leftmost rank-(k-1) entry on share that rank,
    # hence decrease
    assert all(suffix[a] > suffix[a + 1] for a in range(len(suffix) - 1)), p
    return p[:i] + tuple(reversed(suffix))


def preimage(r, k: int) -> Optional[Perm]:
    """
    The unique possible source of r under ``apply``, or None when r is not
    in the image.  The candidate reverses the suffix of r starting at the
    lone rank-(k-1) entry of r's maximal increasing suffix and is accepted
    only if it lies in Av(A(k,k-1)) and maps back to r.

    >>> preimage((1, 2, 3), 3)
    (1, 3, 2)
    """
    r = as_perm(r)
    if k < 3:
        raise ValueError("k must be >= 3")
    target = family_aki(k, k)
    if not avoids_all(r, target):
        raise ValueError(f"{perm_to_string(r) if len(r) <= 9 else r} is not in Av({target.label})")
    rk = ranks(r)
    if not rk or max(rk) < k - 1:
        candidate = r
    else:
        n = len(r)
        start = n - 1
        while start > 0 and r[start - 1] < r[start]:
            start -= 1
        # ranks strictly increase along an increasing run, so at most one
        # entry of the suffix has rank exactly k-1
        hits = [pos for pos in range(start, n) if rk[pos] == k - 1]
        if len(hits) != 1:
            return None
        t = hits[0]
        candidate = r[:t] + tuple(reversed(r[t:]))
    if not avoids_all(candidate, family_aki(k, k - 1)):
        return None
    if apply(candidate, k) != r:
        return None
    return candidate


@dataclass
class InjectionReport:
    k: int
    n: int
    domain_size: int
    codomain_size: int
    images_distinct: bool = True
    images_in_codomain: bool = True
    preimage_round_trip: bool = True
    counts_consistent: bool = True
    witness: Optional[Perm] = None
    failures: list[str] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return (
            self.images_distinct
            and self.images_in_codomain
            and self.preimage_round_trip
            and self.counts_consistent
        )

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "domain": f"Av(A({self.k},{self.k - 1}))",
            "codomain": f"Av(A({self.k},{self.k}))",
            "domain_size": str(self.domain_size),
            "codomain_size": str(self.codomain_size),
            "images_distinct": self.images_distinct,
            "images_in_codomain": self.images_in_codomain,
            "preimage_round_trip": self.preimage_round_trip,
            "counts_consistent": self.counts_consistent,
            "all_pass": self.all_pass,
            "witness": list(self.witness) if self.witness else None,
            "failures": self.failures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def verify(k: int, n: int) -> InjectionReport:
    """
    Enumerate Av_n(A(k,k-1)), push every element through ``apply``, and
    check: images pairwise distinct, images inside Av_n(A(k,k)), preimage
    recovers each element, and the implied count inequality holds.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n >= 12:
        warnings.warn(
            f"verify(k={k}, n={n}) enumerates a full avoidance class; "
            "sizes past n=11 may be infeasible",
            RuntimeWarning,
            stacklevel=2,
        )
    target = family_aki(k, k)
    codomain_size = count_avoiders(target, n).terms[n]
    report = InjectionReport(k=k, n=n, domain_size=0, codomain_size=codomain_size)
    seen: set[Perm] = set()
    for p in iter_avoiders(family_aki(k, k - 1), n):
        report.domain_size += 1
        image = apply(p, k)
        if image in seen:
            report.images_distinct = False
            report.failures.append(f"duplicate image {image}")
            report.witness = report.witness or p
        seen.add(image)
        if not avoids_all(image, target):
            report.images_in_codomain = False
            report.failures.append(f"image {image} escapes the codomain")
            report.witness = report.witness or p
        if preimage(image, k) != p:
            report.preimage_round_trip = False
            report.failures.append(f"preimage round trip failed at {p}")
            report.witness = report.witness or p
    report.counts_consistent = report.domain_size <= codomain_size
    if not report.counts_consistent:
        report.failures.append(
            f"count inequality fails: {report.domain_size} > {codomain_size}"
        )
    return report
