"""Query-efficient maximization of XOS functions given by a value oracle.

Solvers (query costs count oracle calls, including their own preprocessing):

========================  =======================================  ==============
solver                    guarantee                                queries
========================  =======================================  ==============
solve_enum_small_sets     (eps*n)-approximation                    sum C(n,i), i<=ceil(1/eps)
solve_random_sampling     rho-approximation in expectation,        n^(1/eps+1) * O(log n / eps)
                          rho = eps*n/ln(n)
solve_exact_2xos          exact when the oracle is 2-XOS           <= 6n+10
solve_k_minus_1           (k-1)-approximation, width k unknown;    O(k^2 n)
                          exact when the oracle is 2-XOS
solve_exact_star          exact when singleton weights are         O(n^(k+1))
                          peaked-or-nonpositive (star condition)
solve_brute_force         exact, any oracle                        2^n
========================  =======================================  ==============

All solvers except brute force start by querying the n singleton values and
retaining only elements with strictly positive value; dropped elements can
never help a maximizer because removing one never lowers the max-of-sums.
The retained singleton values are cached, so additivity tests of the form
f(X + u) = f(X) + f(u) cost one query each. The empty retained set short-
circuits to (empty set, 0).

Determinism: every tie is broken by keeping the first maximizer in a fixed
scan order (canonical subset order for enumeration; ascending element index
for growth scans; family discovery order for clique candidates), so reports
are bit-identical across runs given the same seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CapExceededError,
    CountingOracle,
    SolveReport,
    elements_of,
    iter_bits,
    iter_masks_by_card,
    masks_of_card,
)
from .rng import SplitMix64, sample_positions

# Below this approximation factor the sampling analysis needs more samples
# than brute force would cost, so the solver enumerates instead.
RHO_FALLBACK_THRESHOLD = 2 * math.e / (math.e - 2)

DEFAULT_BRUTE_CAP = 20


class BruteForceCapError(CapExceededError):
    """Exhaustive enumeration was requested beyond the configured cap."""


def as_fraction(eps: Fraction | int | str) -> Fraction:
    """Coerce an exact rational epsilon; floats are rejected on purpose."""
    if isinstance(eps, Fraction):
        f = eps
    elif isinstance(eps, int) and not isinstance(eps, bool):
        f = Fraction(eps)
    elif isinstance(eps, str):
        try:
            f = Fraction(eps)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"epsilon must be a rational like '1/3', got {eps!r}") from exc
    else:
        raise ValueError("epsilon must be an exact rational (int, Fraction, or 'p/q' string)")
    if f <= 0:
        raise ValueError(f"epsilon must be positive, got {f}")
    return f


@dataclass(frozen=True)
class EnumParams:
    """Parameters for solve_enum_small_sets; cap = ceil(1/epsilon)."""

    epsilon: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))

    @property
    def size_cap(self) -> int:
        # ceil(q/p) for epsilon = p/q
        return -(-self.epsilon.denominator // self.epsilon.numerator)


@dataclass(frozen=True)
class SamplingParams:
    """Parameters for solve_random_sampling.

    ``sample_budget_override`` replaces the per-round default of
    ceil(n^(1/epsilon + 1)) samples; overrides are for desk-scale runs and
    void the expectation guarantee, so they are echoed in the report.
    ``high_probability`` multiplies the per-round budget by ceil(2*epsilon*n),
    which upgrades the expectation guarantee to probability >= 1 - 1/n.
    ``fallback_cap`` bounds the exhaustive fallback (see solver docstring).
    """

    epsilon: Fraction
    seed: int = 0
    sample_budget_override: int | None = None
    high_probability: bool = False
    fallback_cap: int = DEFAULT_BRUTE_CAP

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if self.sample_budget_override is not None and self.sample_budget_override < 1:
            raise ValueError("sample_budget_override must be >= 1")


# ---------------------------------------------------------------------------
# Preprocessing and clique growth


def _scan_singletons(oracle: CountingOracle) -> tuple[int, list[int]]:
    """Query all n singletons (exactly n calls); keep strictly positive ones."""
    n = oracle.n
    singles = [0] * n
    retained = 0
    for v in range(n):
        val = oracle.evaluate(1 << v)
        singles[v] = val
        if val > 0:
            retained |= 1 << v
    return retained, singles


def preprocess(oracle: CountingOracle) -> int:
    """Return the mask of elements with f({v}) > 0, using exactly n queries.

    Discarding an element with nonpositive singleton value never hurts: in a
    max-of-sums, removing it from any set drops the value by at most f({v}).
    All solvers below run on the retained set and treat dropped elements as
    absent.
    """
    return _scan_singletons(oracle)[0]


def _grow_from(
    oracle: CountingOracle,
    cur: int,
    cur_val: int,
    universe: int,
    singles,
) -> tuple[int, int]:
    """Greedy additive closure: add u when f(X + u) = f(X) + f(u).

    Scans ascending element index; one query per scanned element. The
    running value needs no extra queries because a passed test pins it.
    """
    for u in iter_bits(universe & ~cur):
        t = oracle.evaluate(cur | (1 << u))
        if t == cur_val + singles[u]:
            cur |= 1 << u
            cur_val = t
    return cur, cur_val


def grow_clique(oracle: CountingOracle, start: int, universe: int, singles=None) -> int:
    """Grow the additive closure of {start} inside ``universe``.

    For an XOS oracle the result is the intersection of the cliques of all
    components that attain every accepted singleton, which is what makes the
    width-2 solver exact. Costs at most |universe| queries beyond the cached
    singleton values (``singles``); when no cache is supplied, the needed
    singletons are queried here and counted.
    """
    oracle.ground.validate_subset(universe)
    if not (universe >> start) & 1:
        raise ValueError(f"start element {start} is not in the universe mask")
    if singles is None:
        singles = {v: oracle.evaluate(1 << v) for v in iter_bits(universe)}
    mask, _ = _grow_from(oracle, 1 << start, singles[start], universe, singles)
    return mask


def _expand_improving(
    oracle: CountingOracle, base: int, base_val: int, universe: int
) -> tuple[int, int]:
    """Adjoin every v outside ``base`` with f(base + v) > f(base), then evaluate."""
    out = base
    for v in iter_bits(universe & ~base):
        if oracle.evaluate(base | (1 << v)) > base_val:
            out |= 1 << v
    if out == base:
        return base, base_val
    return out, oracle.evaluate(out)


def _translate(sub: int, elems: tuple[int, ...]) -> int:
    """Map a mask over compressed positions to a mask over actual elements."""
    actual = 0
    m = sub
    while m:
        low = m & -m
        actual |= 1 << elems[low.bit_length() - 1]
        m ^= low
    return actual


def _empty_report(algorithm: str, oracle: CountingOracle, start_calls: int, **extra) -> SolveReport:
    return SolveReport(algorithm, 0, 0, oracle.calls - start_calls, **extra)


# ---------------------------------------------------------------------------
# Solvers


def solve_enum_small_sets(oracle: CountingOracle, params: EnumParams) -> SolveReport:
    """Enumerate all subsets of the retained set up to size ceil(1/epsilon).

    Returns a set whose value is within a factor epsilon*n of the optimum:
    a maximizer X* of size > cap contains a subset of size cap whose best
    component sum is at least (cap/|X*|) * f(X*). Queries: n preprocessing
    plus sum_{i=0}^{min(cap, n)} C(n, i) over the retained size; every
    enumerated subset (including the empty set and singletons) is evaluated
    through the oracle exactly once.
    """
    start_calls = oracle.calls
    retained, _ = _scan_singletons(oracle)
    elems = elements_of(retained)
    r = len(elems)
    cap = min(params.size_cap, r)
    best_mask = 0
    best_val = None
    for sub in iter_masks_by_card(r, cap):
        actual = _translate(sub, elems)
        v = oracle.evaluate(actual)
        if best_val is None or v > best_val:
            best_mask, best_val = actual, v
    return SolveReport("enum", best_mask, best_val, oracle.calls - start_calls)


def _ceil_root(n: int, d: int) -> int:
    """Smallest integer t >= 1 with t**d >= n, for n >= 1 (exact, no floats)."""
    if d == 1 or n <= 1:
        return n if d == 1 else 1
    t = 1 << -(-n.bit_length() // d)  # 2^ceil(bits/d) >= n^(1/d)
    while True:
        nt = ((d - 1) * t + n // t ** (d - 1)) // d
        if nt >= t:
            break
        t = nt
    if t ** d < n:
        t += 1
    return t


def solve_random_sampling(oracle: CountingOracle, params: SamplingParams) -> SolveReport:
    """Uniform fixed-size sampling; rho-approximation in expectation.

    For rho = epsilon*n/ln(n) >= 2e/(e-2), sampling ceil(n^(1/epsilon + 1))
    uniform subsets of each size m = 1..ceil(2 ln(n)/epsilon) and keeping the
    best hits, in expectation, a value >= OPT/rho. Below that threshold (or
    when only one element survives preprocessing) the analysis is void and n
    is bounded by a constant, so the solver enumerates the retained subsets
    exhaustively instead; the exhaustive path is only taken when the retained
    size is at most ``fallback_cap``, otherwise the sampling loops run anyway
    (2^n enumeration at desk scale would not terminate for small epsilon).

    Deterministic given ``params.seed``: samples come from a splitmix64
    stream via partial Fisher-Yates, so replays are bit-identical.
    """
    start_calls = oracle.calls
    retained, _ = _scan_singletons(oracle)
    elems = elements_of(retained)
    r = len(elems)
    extra = {"seed": params.seed, "budget_override": params.sample_budget_override}
    if r == 0:
        return _empty_report("sample", oracle, start_calls, **extra)

    eps = params.epsilon
    p, q = eps.numerator, eps.denominator
    if r == 1 or (p * r) / (q * math.log(r)) < RHO_FALLBACK_THRESHOLD:
        if r <= params.fallback_cap:
            best_mask = 0
            best_val = None
            for sub in iter_masks_by_card(r):
                actual = _translate(sub, elems)
                v = oracle.evaluate(actual)
                if best_val is None or v > best_val:
                    best_mask, best_val = actual, v
            return SolveReport(
                "sample", best_mask, best_val, oracle.calls - start_calls, **extra
            )
        # Retained set too large to enumerate; sample anyway (guarantee void).

    rounds = math.ceil(2 * math.log(r) * q / p)
    if params.sample_budget_override is not None:
        per_round = params.sample_budget_override
    else:
        per_round = _ceil_root(r ** (p + q), p)  # ceil(r^(1/eps + 1)), exact
    if params.high_probability:
        per_round *= -((-2 * p * r) // q)  # ceil(2*epsilon*r)

    rng = SplitMix64(params.seed)
    best_mask = 0
    best_val = None
    for m in range(1, min(rounds, r) + 1):
        for _ in range(per_round):
            actual = 0
            for pos in sample_positions(r, m, rng):
                actual |= 1 << elems[pos]
            v = oracle.evaluate(actual)
            if best_val is None or v > best_val:
                best_mask, best_val = actual, v
    return SolveReport("sample", best_mask, best_val, oracle.calls - start_calls, **extra)


def solve_exact_2xos(oracle: CountingOracle) -> SolveReport:
    """Exact maximizer for width-2 oracles in at most 6n + 10 queries.

    Grows the additive closure V1 from the smallest retained element; if it
    covers everything, it is optimal. Otherwise grows V2 from the smallest
    element outside V1 (the two closures cover the retained set when the
    oracle is 2-XOS), expands each closure by all elements that strictly
    improve it, and returns the better expansion: a maximizer restricted to
    one component's clique extends the closure only through improving
    elements.
    """
    start_calls = oracle.calls
    retained, singles = _scan_singletons(oracle)
    if retained == 0:
        return _empty_report("exact2", oracle, start_calls)
    v1 = (retained & -retained).bit_length() - 1
    V1, val1 = _grow_from(oracle, 1 << v1, singles[v1], retained, singles)
    if V1 == retained:
        return SolveReport("exact2", V1, val1, oracle.calls - start_calls)
    rest = retained & ~V1
    v2 = (rest & -rest).bit_length() - 1
    V2, val2 = _grow_from(oracle, 1 << v2, singles[v2], retained, singles)
    Y1, y1 = _expand_improving(oracle, V1, val1, retained)
    Y2, y2 = _expand_improving(oracle, V2, val2, retained)
    if y2 > y1:
        return SolveReport("exact2", Y2, y2, oracle.calls - start_calls)
    return SolveReport("exact2", Y1, y1, oracle.calls - start_calls)


def solve_k_minus_1(oracle: CountingOracle) -> SolveReport:
    """(k-1)-approximation for any width-k oracle; k is not an input.

    Repeatedly grows additive closures from the smallest uncovered element
    until they cover the retained set (at most k closures for a width-k
    oracle, since each closure absorbs a full component clique). Candidates
    are the closures, their improving expansions, and every closure-pair
    union with one extra element; the best candidate is within a factor
    (k-1): a maximizer splits across component cliques, and either one
    clique carries a (k-1) share or two cliques plus a bridge element do.
    Query cost is O(k^2 n); exact for 2-XOS oracles (the pair family then
    contains the same candidates as the width-2 solver).

    Candidate order is fixed (closures, then expansions, then pairs in
    lexicographic order with the extra element ascending); the first
    maximizer wins.
    """
    start_calls = oracle.calls
    retained, singles = _scan_singletons(oracle)
    if retained == 0:
        return _empty_report("kminus1", oracle, start_calls)

    cliques: list[tuple[int, int]] = []
    covered = 0
    while covered != retained:
        rest = retained & ~covered
        v = (rest & -rest).bit_length() - 1
        V, val = _grow_from(oracle, 1 << v, singles[v], retained, singles)
        cliques.append((V, val))
        covered |= V

    best_mask = 0
    best_val = None

    def consider(mask: int, val: int) -> None:
        nonlocal best_mask, best_val
        if best_val is None or val > best_val:
            best_mask, best_val = mask, val

    for V, val in cliques:
        consider(V, val)
    for V, val in cliques:
        consider(*_expand_improving(oracle, V, val, retained))
    for i in range(len(cliques)):
        for j in range(i + 1, len(cliques)):
            union = cliques[i][0] | cliques[j][0]
            union_val = None
            for v in iter_bits(retained):
                if (union >> v) & 1:
                    if union_val is None:
                        union_val = oracle.evaluate(union)
                    consider(union, union_val)
                else:
                    z = union | (1 << v)
                    consider(z, oracle.evaluate(z))
    return SolveReport("kminus1", best_mask, best_val, oracle.calls - start_calls)


def _maximal_cliques(
    oracle: CountingOracle, retained: int, singles
) -> tuple[tuple[int, int], ...]:
    """Shared core of enumerate_maximal_cliques / solve_exact_star.

    Round c tests every retained c-subset X for additivity
    (f(X) = sum of singleton values; free for c = 1) and grows the additive
    closure of each additive X. Every closure is a maximal clique, and once
    the family size equals the round number the family is complete: a
    missing clique would contain, for each found clique, an element outside
    it, and those fingerprint elements form an additive set of size at most
    the family size whose closure would have been found in an earlier round.
    """
    elems = elements_of(retained)
    r = len(elems)
    found: list[tuple[int, int]] = []
    seen: set[int] = set()
    for card in range(1, r + 1):
        for sub in masks_of_card(r, card):
            actual = _translate(sub, elems)
            ssum = sum(singles[v] for v in iter_bits(actual))
            if card > 1 and oracle.evaluate(actual) != ssum:
                continue
            clique, cval = _grow_from(oracle, actual, ssum, retained, singles)
            if clique not in seen:
                seen.add(clique)
                found.append((clique, cval))
        if len(found) == card:
            break
        # For a non-XOS oracle the size condition may never fire; stop once
        # rounds exceed the retained size and return what was found.
    return tuple(found)


def enumerate_maximal_cliques(oracle: CountingOracle) -> tuple[int, ...]:
    """All maximal cliques of an XOS oracle, in discovery order.

    A clique is a set on which f is additive (a subset of one component's
    singleton-maximizer set); maximal cliques are the inclusion-maximal
    additive closures. Query cost is O(n^(k+1)) for width k: the family-size
    stop condition fires after at most k rounds. Includes its own
    preprocessing (n queries); behavior for non-XOS oracles is undefined but
    terminating.
    """
    retained, singles = _scan_singletons(oracle)
    if retained == 0:
        return ()
    return tuple(mask for mask, _ in _maximal_cliques(oracle, retained, singles))


def solve_exact_star(oracle: CountingOracle) -> SolveReport:
    """Best maximal clique; exact under the star condition.

    Star condition: every per-component singleton weight either equals the
    function's singleton value or is nonpositive. Then some maximizer is a
    clique, every maximal clique's value is its additive singleton sum, and
    the best maximal clique is an exact maximizer.
    """
    start_calls = oracle.calls
    retained, singles = _scan_singletons(oracle)
    if retained == 0:
        return _empty_report("star", oracle, start_calls)
    best_mask = 0
    best_val = None
    for mask, val in _maximal_cliques(oracle, retained, singles):
        if best_val is None or val > best_val:
            best_mask, best_val = mask, val
    return SolveReport("star", best_mask, best_val, oracle.calls - start_calls)


def solve_brute_force(oracle: CountingOracle, cap: int = DEFAULT_BRUTE_CAP) -> SolveReport:
    """Exact maximizer by evaluating all 2^n subsets in canonical order.

    Refuses to run for n > cap (default 20) with BruteForceCapError; raise
    the cap explicitly for bigger grounds. No preprocessing: the all-negative
    instance returns the empty set at value 0 because the empty set comes
    first in canonical order.
    """
    n = oracle.n
    if n > cap:
        raise BruteForceCapError(f"brute force over n={n} exceeds cap {cap}")
    start_calls = oracle.calls
    best_mask = 0
    best_val = None
    for mask in iter_masks_by_card(n):
        v = oracle.evaluate(mask)
        if best_val is None or v > best_val:
            best_mask, best_val = mask, v
    return SolveReport("brute", best_mask, best_val, oracle.calls - start_calls)
