"""Independent brute-force oracles the library code is tested against."""
import itertools


def oracle_contains(p, q):
    """Containment by scanning all index subsets."""
    k = len(q)
    if k > len(p):
        return False
    for idx in itertools.combinations(range(len(p)), k):
        vals = [p[i] for i in idx]
        if all(
            (vals[a] < vals[b]) == (q[a] < q[b])
            for a in range(k)
            for b in range(a + 1, k)
        ):
            return True
    return False


def oracle_count_avoiders(patterns, n_max):
    """Counting by filtering all n! permutations."""
    pats = [tuple(q) for q in patterns]
    out = []
    for n in range(n_max + 1):
        out.append(
            sum(
                1
                for p in itertools.permutations(range(1, n + 1))
                if not any(oracle_contains(p, q) for q in pats)
            )
        )
    return tuple(out)


def oracle_avoiders(patterns, n):
    """The avoiders themselves, for set-level comparisons."""
    pats = [tuple(q) for q in patterns]
    return [
        p
        for p in itertools.permutations(range(1, n + 1))
        if not any(oracle_contains(p, q) for q in pats)
    ]
