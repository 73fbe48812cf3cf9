"""Loading, saving, and generating instance documents.

Two document shapes, both JSON objects:

* explicit:  {"type": "explicit", "n": <int>, "weights": [[w_1(0), ...], ...]}
* hidden:    {"type": "needle" | "hard_general" | "hard_general_remark" |
              "hard_kxos", "params": {...}, "seed": <u64>}

Hidden documents store parameters and seed only; the planted sets are
reconstructed from the seed, so instance files can be shared without
leaking them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .core import (
    CountingOracle,
    InstanceFormatError,
    XosRepresentation,
    parse_explicit,
)
from .hardness import (
    HardKxosInstance,
    HiddenInstance,
    parse_hidden,
)
from .rng import SplitMix64


@dataclass(frozen=True)
class InstanceHandle:
    """A loaded instance: either an explicit representation or a hidden family.

    ``oracle()`` returns a fresh counting oracle each call (one per trial);
    ``exact_optimum(cap)`` returns (value, provenance) with provenance in
    {"planted", "brute", "unknown"}.
    """

    kind: str
    explicit: XosRepresentation | None = None
    hidden: HiddenInstance | None = None

    @property
    def n(self) -> int:
        return self.explicit.n if self.explicit is not None else self.hidden.n

    @property
    def width(self) -> int | None:
        if self.explicit is not None:
            return self.explicit.width
        return self.hidden.width

    def oracle(self) -> CountingOracle:
        if self.explicit is not None:
            return CountingOracle.for_representation(self.explicit)
        return self.hidden.oracle()

    def planted(self) -> tuple[int, int] | None:
        """Planted maximizer and value, when one exists and is optimal."""
        if self.hidden is None:
            return None
        if isinstance(self.hidden, HardKxosInstance) and not self.hidden.planted_is_optimal:
            return None
        return self.hidden.planted_optimum()

    def exact_optimum(self, cap: int) -> tuple[int | None, str]:
        """Exact OPT if obtainable: planted value, white-box maximum of an
        explicit representation, or exhaustive evaluation up to ``cap``."""
        p = self.planted()
        if p is not None:
            return p[1], "planted"
        if self.explicit is not None:
            return self.explicit.exact_maximum(), "brute"
        if self.n <= cap:
            fn = self.hidden.evaluate
            return max(fn(mask) for mask in range(1 << self.n)), "brute"
        return None, "unknown"

    def to_json_dict(self) -> dict:
        if self.explicit is not None:
            return self.explicit.to_json_dict()
        return self.hidden.to_json_dict()


def instance_from_dict(doc: dict) -> InstanceHandle:
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    kind = doc.get("type")
    if kind == "explicit":
        return InstanceHandle("explicit", explicit=parse_explicit(doc))
    hidden = parse_hidden(doc)
    return InstanceHandle(hidden.kind, hidden=hidden)


def load_instance(source: Union[str, Path, dict]) -> InstanceHandle:
    """Load an instance from a dict, a JSON string, or a file path."""
    if isinstance(source, dict):
        return instance_from_dict(source)
    text = None
    path = Path(source)
    try:
        if path.exists():
            text = path.read_text()
    except OSError as exc:
        raise InstanceFormatError(f"cannot read instance file {source}: {exc}") from exc
    if text is None:
        stripped = str(source).lstrip()
        if stripped.startswith("{"):
            text = str(source)
        else:
            raise InstanceFormatError(f"instance file not found: {source}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid instance JSON: {exc}") from exc
    return instance_from_dict(doc)


def dump_instance(handle_or_doc: Union[InstanceHandle, dict]) -> str:
    doc = (
        handle_or_doc.to_json_dict()
        if isinstance(handle_or_doc, InstanceHandle)
        else handle_or_doc
    )
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def random_explicit(
    n: int,
    k: int,
    low: int,
    high: int,
    seed: int,
    positive_singletons: bool = False,
) -> XosRepresentation:
    """Seeded random width-k representation with weights uniform in [low, high].

    Weights are drawn column by column (element, then component) from one
    splitmix64 stream, so instances are reproducible across versions. With
    ``positive_singletons`` a column is redrawn until some component gives
    the element a positive weight, which keeps preprocessing from dropping
    anything.
    """
    if k < 1:
        raise InstanceFormatError("need at least one component")
    if low > high:
        raise InstanceFormatError("empty weight range")
    if positive_singletons and high <= 0:
        raise InstanceFormatError("positive_singletons needs high > 0")
    rng = SplitMix64(seed)
    cols: list[list[int]] = []
    for _ in range(n):
        while True:
            col = [rng.randint(low, high) for _ in range(k)]
            if not positive_singletons or max(col) > 0:
                break
        cols.append(col)
    rows = [tuple(cols[v][i] for v in range(n)) for i in range(k)]
    return XosRepresentation.from_weights(rows)
