"""Core types for XOS set-function maximization in the value-oracle model.

An XOS (max-of-additive) function over a ground set V = {0, ..., n-1} is

    f(X) = max_i  sum_{v in X} w_i(v),        i = 1..k,

the pointwise maximum of k additive functions. The number k is the width of
the representation. Algorithms in this package interact with f only through
a :class:`CountingOracle`, whose call counter is the complexity measure of
record; white-box accessors (:meth:`XosRepresentation.maximizer_indices`,
:meth:`XosRepresentation.clique_of`) exist for tests and diagnostics.

Conventions used throughout the package:

* Subsets are plain ``int`` bitmasks over a single machine word. Bit ``v``
  set means element ``v`` is in the subset. Ground sizes are limited to
  1 <= n <= 63 so any subset fits a word.
* Function values are exact integers constrained to the signed 64-bit range.
  Arithmetic is checked: a weight or an evaluated component sum outside
  [-2^63, 2^63 - 1] raises :class:`ValueOverflowError`, never wraps.
* The canonical enumeration order of subsets is ascending cardinality, then
  ascending numeric mask value. Argmax scans keep the first maximizer, so
  every tie-break in the package is deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

MAX_GROUND_SIZE = 63


class ValueOverflowError(OverflowError):
    """A value or component sum left the signed 64-bit range."""


class InstanceFormatError(ValueError):
    """An instance description (JSON or dict) is malformed."""


class CapExceededError(RuntimeError):
    """An exhaustive computation was requested beyond its configured cap."""


def check_value(v: int, what: str = "value") -> int:
    """Validate that ``v`` is a plain int inside the signed 64-bit range."""
    if isinstance(v, bool) or not isinstance(v, int):
        raise InstanceFormatError(f"{what} must be an integer, got {type(v).__name__}")
    if not INT64_MIN <= v <= INT64_MAX:
        raise ValueOverflowError(f"{what} {v} outside signed 64-bit range")
    return v


# ---------------------------------------------------------------------------
# Subset helpers (subsets are plain int bitmasks)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def elements_of(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for v in elements:
        m |= 1 << v
    return m


def masks_of_card(n: int, c: int) -> Iterator[int]:
    """All c-element subsets of {0..n-1} in ascending numeric mask order."""
    if c < 0 or c > n:
        return
    if c == 0:
        yield 0
        return
    x = (1 << c) - 1
    limit = 1 << n
    while x < limit:
        yield x
        # Gosper's hack: next mask with the same popcount.
        u = x & -x
        v = x + u
        x = v | (((x ^ v) // u) >> 2)


def iter_masks_by_card(n: int, max_card: int | None = None) -> Iterator[int]:
    """Subsets of {0..n-1} in canonical order: ascending cardinality, then mask.

    ``max_card`` truncates the enumeration; the empty set is always first.
    """
    top = n if max_card is None else min(max_card, n)
    for c in range(top + 1):
        yield from masks_of_card(n, c)


@dataclass(frozen=True)
class GroundSet:
    """Ground set {0, ..., n-1} with 1 <= n <= 63."""

    n: int

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise InstanceFormatError("ground size must be an integer")
        if not 1 <= self.n <= MAX_GROUND_SIZE:
            raise InstanceFormatError(
                f"ground size must be in [1, {MAX_GROUND_SIZE}], got {self.n}"
            )

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def validate_subset(self, mask: int) -> int:
        if isinstance(mask, bool) or not isinstance(mask, int):
            raise TypeError("subset must be an int bitmask")
        if mask < 0 or mask >> self.n:
            raise ValueError(f"mask {mask:#x} is not a subset of a ground set of size {self.n}")
        return mask

    def subsets(self, max_card: int | None = None) -> Iterator[int]:
        return iter_masks_by_card(self.n, max_card)


# ---------------------------------------------------------------------------
# Functions


@dataclass(frozen=True)
class AdditiveFunction:
    """Additive set function given by one weight per element."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(self.weights))
        if not self.weights:
            raise InstanceFormatError("additive function needs at least one weight")
        for w in self.weights:
            check_value(w, "weight")

    @property
    def n(self) -> int:
        return len(self.weights)

    def evaluate(self, mask: int) -> int:
        """Sum of weights over the set bits of ``mask`` (checked)."""
        s = 0
        w = self.weights
        m = mask
        while m:
            low = m & -m
            s += w[low.bit_length() - 1]
            m ^= low
        if not INT64_MIN <= s <= INT64_MAX:
            raise ValueOverflowError(f"component sum {s} outside signed 64-bit range")
        return s

    def positive_part_sum(self) -> int:
        """sum_v max(w(v), 0); the maximum of this additive function over all subsets."""
        s = sum(w for w in self.weights if w > 0)
        if s > INT64_MAX:
            raise ValueOverflowError("positive part sum outside signed 64-bit range")
        return s


@dataclass(frozen=True)
class XosRepresentation:
    """Explicit max-of-additive representation: f(X) = max_i components[i](X).

    Immutable and safe to share across threads. ``evaluate`` is white-box
    (uncounted); wrap in a :class:`CountingOracle` for query accounting.
    """

    ground: GroundSet
    components: tuple[AdditiveFunction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise InstanceFormatError("representation needs at least one component")
        for comp in self.components:
            if comp.n != self.ground.n:
                raise InstanceFormatError(
                    f"component has {comp.n} weights for ground size {self.ground.n}"
                )

    @classmethod
    def from_weights(cls, weights: Iterable[Iterable[int]]) -> "XosRepresentation":
        rows = [tuple(row) for row in weights]
        if not rows:
            raise InstanceFormatError("weight matrix is empty")
        return cls(GroundSet(len(rows[0])), tuple(AdditiveFunction(r) for r in rows))

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def width(self) -> int:
        return len(self.components)

    def evaluate(self, mask: int) -> int:
        """f(mask) = max over components. f(empty) = 0 since every sum is 0."""
        best = None
        for comp in self.components:
            s = comp.evaluate(mask)
            if best is None or s > best:
                best = s
        return best  # type: ignore[return-value]

    def maximizer_indices(self, mask: int) -> set[int]:
        """Indices of components attaining f(mask)."""
        sums = [comp.evaluate(mask) for comp in self.components]
        top = max(sums)
        return {i for i, s in enumerate(sums) if s == top}

    def singleton_value(self, v: int) -> int:
        return max(comp.weights[v] for comp in self.components)

    def clique_of(self, i: int) -> int:
        """Elements whose singleton value is attained by component ``i``.

        For a grown set G inside this clique, f(G) equals the additive sum of
        singleton values, which is what the growth algorithms exploit.
        """
        comp = self.components[i]
        m = 0
        for v in range(self.n):
            if comp.weights[v] == self.singleton_value(v):
                m |= 1 << v
        return m

    def exact_maximum(self) -> int:
        """max_X f(X) = max_i sum_v max(w_i(v), 0), exact and O(k n)."""
        return max(comp.positive_part_sum() for comp in self.components)

    def to_json_dict(self) -> dict:
        return {
            "type": "explicit",
            "n": self.n,
            "weights": [list(comp.weights) for comp in self.components],
        }


class CountingOracle:
    """Value oracle wrapper that counts every ``evaluate`` call.

    The counter is the query-complexity measure reported by all solvers.
    ``peek`` evaluates without counting and exists for verification and
    tests only; library algorithms never call it. Instances are cheap and
    single-threaded; use one oracle per trial.
    """

    __slots__ = ("ground", "calls", "_func")

    def __init__(self, ground: GroundSet, func: Callable[[int], int]):
        self.ground = ground
        self.calls = 0
        self._func = func

    @classmethod
    def for_representation(cls, rep: XosRepresentation) -> "CountingOracle":
        return cls(rep.ground, rep.evaluate)

    @property
    def n(self) -> int:
        return self.ground.n

    def evaluate(self, mask: int) -> int:
        self.ground.validate_subset(mask)
        self.calls += 1
        return self._func(mask)

    def peek(self, mask: int) -> int:
        """Uncounted evaluation; verification only."""
        self.ground.validate_subset(mask)
        return self._func(mask)


@dataclass(frozen=True)
class SolveReport:
    """Result of one solver run.

    ``oracle_calls`` counts only the calls made by that run. ``seed`` is set
    for randomized solvers, ``budget_override`` echoes a per-round sample
    budget override when one was supplied.
    """

    algorithm: str
    output: int
    value: int
    oracle_calls: int
    seed: int | None = None
    budget_override: int | None = None


# ---------------------------------------------------------------------------
# Explicit instance format


def parse_explicit(doc: dict) -> XosRepresentation:
    """Parse {"type": "explicit", "n": ..., "weights": [[...], ...]}.

    Rejects ragged rows, out-of-range n, and non-integer weights.
    """
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be an object")
    if doc.get("type") != "explicit":
        raise InstanceFormatError(f"not an explicit instance: type={doc.get('type')!r}")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise InstanceFormatError("explicit instance needs integer field 'n'")
    if not 1 <= n <= MAX_GROUND_SIZE:
        raise InstanceFormatError(f"n must be in [1, {MAX_GROUND_SIZE}], got {n}")
    weights = doc.get("weights")
    if not isinstance(weights, list) or not weights:
        raise InstanceFormatError("explicit instance needs a nonempty 'weights' list")
    rows = []
    for idx, row in enumerate(weights):
        if not isinstance(row, list) or len(row) != n:
            raise InstanceFormatError(f"weights row {idx} must be a list of length {n}")
        for w in row:
            check_value(w, f"weights[{idx}] entry")
        rows.append(tuple(row))
    return XosRepresentation.from_weights(rows)


def load_explicit(path_or_text: str) -> XosRepresentation:
    """Load an explicit instance from a JSON string."""
    try:
        doc = json.loads(path_or_text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from exc
    return parse_explicit(doc)
