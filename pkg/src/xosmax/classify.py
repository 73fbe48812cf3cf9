"""Set-function class membership checks on dense value tables.

A :class:`DenseFunction` is the full table of 2^n values (n <= 16). Checks
test the defining inequality of each class exhaustively and return a
violating witness on failure:

* normalized:  f(empty) = 0
* monotone:    X subset of Y  =>  f(X) <= f(Y)
* additive:    f(X) = sum of singleton values over X
* submodular:  f(X) + f(Y) >= f(X | Y) + f(X & Y) for all pairs
* subadditive: f(X) + f(Y) >= f(X | Y) for all pairs

The pair scans cost 4^n comparisons (vectorized per row when values are
small enough for safe 64-bit sums, pure Python otherwise), which is the
point: they are the ground truth the fast structure-specific routes are
judged against. ``check_submodular_marginal`` is an intentionally separate
route through the pairwise-marginal characterization, kept independent so
the two can cross-validate each other.
"""

from __future__ import annotations

from typing import Callable, Union

import numpy as np

from .core import (
    CapExceededError,
    CountingOracle,
    INT64_MAX,
    INT64_MIN,
    XosRepresentation,
    check_value,
)

MATERIALIZE_CAP = 16

# Pair scans add two table entries; staying within +-2^62 keeps int64 sums exact.
_SAFE_SUM_BOUND = 1 << 62

CLASS_NAMES = ("normalized", "monotone", "additive", "submodular", "subadditive")

Witness = Union[tuple[int, ...], None]


class DenseFunction:
    """Value table over all subsets of {0..n-1}, indexed by bitmask."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values) -> None:
        if not 1 <= n <= MATERIALIZE_CAP:
            raise CapExceededError(f"dense tables support 1 <= n <= {MATERIALIZE_CAP}, got {n}")
        vals = list(values)
        if len(vals) != 1 << n:
            raise ValueError(f"expected {1 << n} values, got {len(vals)}")
        for v in vals:
            check_value(v)
        self.n = n
        self.values = np.asarray(vals, dtype=np.int64)

    def __getitem__(self, mask: int) -> int:
        return int(self.values[mask])

    def __len__(self) -> int:
        return len(self.values)

    def max_value(self) -> int:
        return int(self.values.max())

    @property
    def _numpy_safe(self) -> bool:
        return (
            int(self.values.max(initial=0)) < _SAFE_SUM_BOUND
            and int(self.values.min(initial=0)) > -_SAFE_SUM_BOUND
        )


def materialize(
    source: Union[XosRepresentation, CountingOracle, Callable[[int], int]],
    n: int | None = None,
) -> DenseFunction:
    """Build the dense table for a representation, oracle, or callable.

    Representations take a vectorized subset-sum path; oracles are evaluated
    mask by mask (counted, 2^n calls). A bare callable needs ``n``.
    """
    if isinstance(source, XosRepresentation):
        return _dense_from_representation(source)
    if isinstance(source, CountingOracle):
        size_n = source.n
        fn = source.evaluate
    elif callable(source):
        if n is None:
            raise ValueError("materialize(callable) needs the ground size n")
        size_n = n
        fn = source
    else:
        raise TypeError(f"cannot materialize {type(source).__name__}")
    if not 1 <= size_n <= MATERIALIZE_CAP:
        raise CapExceededError(f"materialize supports 1 <= n <= {MATERIALIZE_CAP}, got {size_n}")
    return DenseFunction(size_n, [fn(mask) for mask in range(1 << size_n)])


def _dense_from_representation(rep: XosRepresentation) -> DenseFunction:
    n = rep.n
    if not 1 <= n <= MATERIALIZE_CAP:
        raise CapExceededError(f"materialize supports 1 <= n <= {MATERIALIZE_CAP}, got {n}")
    # The doubling sums stay exact in int64 only if no partial sum can leave
    # the range; otherwise fall back to checked per-mask evaluation.
    for comp in rep.components:
        if sum(abs(w) for w in comp.weights) > INT64_MAX:
            return DenseFunction(n, [rep.evaluate(m) for m in range(1 << n)])
    size = 1 << n
    table = None
    for comp in rep.components:
        sums = np.zeros(size, dtype=np.int64)
        for v, w in enumerate(comp.weights):
            if w == 0:
                continue
            step = 1 << v
            view = sums.reshape(-1, 2 * step)
            view[:, step:] = view[:, :step] + w
        table = sums if table is None else np.maximum(table, sums)
    out = DenseFunction.__new__(DenseFunction)
    out.n = n
    out.values = table
    return out


# ---------------------------------------------------------------------------
# Class checks (defining inequalities, exhaustive)


def check_normalized(f: DenseFunction) -> tuple[bool, Witness]:
    if f[0] != 0:
        return False, (0,)
    return True, None


def check_monotone(f: DenseFunction) -> tuple[bool, Witness]:
    """f(X) <= f(X + v) for every X and v outside X (equivalent by chaining)."""
    vals = f.values
    idx = np.arange(len(vals))
    for v in range(f.n):
        bit = 1 << v
        without = idx[(idx & bit) == 0]
        bad = np.nonzero(vals[without] > vals[without | bit])[0]
        if bad.size:
            x = int(without[bad[0]])
            return False, (x, x | bit)
    return True, None


def check_additive(f: DenseFunction) -> tuple[bool, Witness]:
    singles = np.array([f[1 << v] for v in range(f.n)], dtype=np.int64)
    if not f._numpy_safe or np.abs(singles).sum() >= _SAFE_SUM_BOUND:
        for mask in range(len(f)):
            if f[mask] != sum(int(singles[v]) for v in range(f.n) if (mask >> v) & 1):
                return False, (mask,)
        return True, None
    sums = np.zeros(len(f), dtype=np.int64)
    for v in range(f.n):
        step = 1 << v
        view = sums.reshape(-1, 2 * step)
        view[:, step:] = view[:, :step] + singles[v]
    bad = np.nonzero(f.values != sums)[0]
    if bad.size:
        return False, (int(bad[0]),)
    return True, None


def _pair_scan(f: DenseFunction, submodular: bool) -> tuple[bool, Witness]:
    """First (X, Y) violating the pair inequality, scanning X then Y ascending."""
    size = len(f)
    vals = f.values
    if f._numpy_safe:
        ys = np.arange(size)
        for x in range(size):
            rhs = vals[x | ys]
            if submodular:
                rhs = rhs + vals[x & ys]
            bad = np.nonzero(vals[x] + vals < rhs)[0]
            if bad.size:
                return False, (x, int(bad[0]))
        return True, None
    for x in range(size):
        fx = int(vals[x])
        for y in range(size):
            rhs = int(vals[x | y]) + (int(vals[x & y]) if submodular else 0)
            if fx + int(vals[y]) < rhs:
                return False, (x, y)
    return True, None


def check_submodular(f: DenseFunction) -> tuple[bool, Witness]:
    """f(X) + f(Y) >= f(X | Y) + f(X & Y), all 4^n pairs."""
    return _pair_scan(f, submodular=True)


def check_subadditive(f: DenseFunction) -> tuple[bool, Witness]:
    """f(X) + f(Y) >= f(X | Y), all 4^n pairs."""
    return _pair_scan(f, submodular=False)


_CHECKS: dict[str, Callable[[DenseFunction], tuple[bool, Witness]]] = {
    "normalized": check_normalized,
    "monotone": check_monotone,
    "additive": check_additive,
    "submodular": check_submodular,
    "subadditive": check_subadditive,
}


def check_class(f: DenseFunction, cls: str) -> tuple[bool, Witness]:
    """Dispatch to one of normalized/monotone/additive/submodular/subadditive."""
    try:
        fn = _CHECKS[cls]
    except KeyError:
        raise ValueError(f"unknown class {cls!r}; expected one of {CLASS_NAMES}") from None
    return fn(f)


def check_submodular_marginal(f: DenseFunction) -> tuple[bool, Witness]:
    """Submodularity via diminishing pairwise marginals, as a separate route.

    f is submodular iff f(X+u) + f(X+v) >= f(X+u+v) + f(X) for all X and
    distinct u, v outside X. Pure Python on purpose; cross-validates
    check_submodular.
    """
    n = f.n
    vals = f.values
    for x in range(len(f)):
        fx = int(vals[x])
        for u in range(n):
            bu = 1 << u
            if x & bu:
                continue
            for v in range(u + 1, n):
                bv = 1 << v
                if x & bv:
                    continue
                if int(vals[x | bu]) + int(vals[x | bv]) < int(vals[x | bu | bv]) + fx:
                    return False, (x, x | bu, x | bv)
    return True, None


def check_star_condition(rep: XosRepresentation) -> tuple[bool, Witness]:
    """Every weight w_i(v) equals the singleton value f({v}) or is nonpositive.

    Under this condition some maximizer is additive over one component's
    clique, so the best maximal clique is exact. Witness is (element,
    component index) for the first weight that is positive yet short of the
    singleton value, scanning elements then components in ascending order.
    """
    for v in range(rep.n):
        fv = rep.singleton_value(v)
        for i, comp in enumerate(rep.components):
            w = comp.weights[v]
            if w != fv and w > 0:
                return False, (v, i)
    return True, None
