"""Shared test utilities: independent reference routes and corpus builders.

The reference implementations here deliberately avoid the package's own
enumeration and evaluation helpers (itertools.combinations instead of bit
tricks, direct row sums instead of AdditiveFunction) so that agreement
between a solver and a reference is evidence, not tautology.
"""

from __future__ import annotations

from itertools import combinations

from xosmax import XosRepresentation, random_explicit
from xosmax.rng import SplitMix64


def bits_of(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if (mask >> i) & 1]


def ref_rep_value(weights: list[list[int]], mask: int) -> int:
    """Max-of-row-sums evaluated directly from a weight matrix."""
    members = bits_of(mask)
    return max(sum(row[v] for v in members) for row in weights)


def canonical_masks(n: int) -> list[int]:
    """All subset masks ordered by cardinality, then numeric value,
    built from itertools rather than the package's own enumerators."""
    out = []
    for c in range(n + 1):
        masks = [sum(1 << v for v in combo) for combo in combinations(range(n), c)]
        out.extend(sorted(masks))
    return out


def ref_brute_max(evaluate, n: int) -> tuple[int, int]:
    """(best value, first canonical maximizer) by exhaustive evaluation."""
    best_mask = 0
    best_val = evaluate(0)
    for mask in canonical_masks(n):
        v = evaluate(mask)
        if v > best_val:
            best_mask, best_val = mask, v
    return best_val, best_mask


def rep_as_lists(rep: XosRepresentation) -> list[list[int]]:
    return [list(c.weights) for c in rep.components]


def random_rep(n: int, k: int, seed: int, low: int = -8, high: int = 8,
               positive_singletons: bool = False) -> XosRepresentation:
    return random_explicit(n, k, low, high, seed, positive_singletons=positive_singletons)


def random_star_representation(n: int, k: int, seed: int) -> XosRepresentation:
    """Random representation satisfying the star condition by construction:
    element v has a positive peak value c_v carried by at least one
    component; every other weight for v is either c_v again or negative."""
    rng = SplitMix64(seed)
    cols: list[list[int]] = []
    for _ in range(n):
        peak = 1 + rng.randrange(8)
        forced = rng.randrange(k)
        col = []
        for i in range(k):
            if i == forced or rng.randrange(2) == 0:
                col.append(peak)
            else:
                col.append(-(1 + rng.randrange(8)))
        cols.append(col)
    rows = [tuple(cols[v][i] for v in range(n)) for i in range(k)]
    return XosRepresentation.from_weights(rows)


def clique_of_rep(rep: XosRepresentation, i: int) -> int:
    """Reference clique: elements whose component-i weight attains the
    function's singleton value (computed from raw rows)."""
    rows = rep_as_lists(rep)
    mask = 0
    for v in range(rep.n):
        fv = max(row[v] for row in rows)
        if rows[i][v] == fv:
            mask |= 1 << v
    return mask


def inclusion_maximal(masks) -> set[int]:
    out = set()
    unique = set(masks)
    for m in unique:
        if not any(m != other and (m & other) == m for other in unique):
            out.add(m)
    return out
