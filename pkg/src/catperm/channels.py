"""Discrete memoryless channels, with and without state, and exact product-measure outputs.

Channels are dense conditional-probability tables (desk-scale alphabets only).
Output sequence spaces are indexed lexicographically, position 0 most
significant; that ordering is part of the on-disk report format.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .probcore import (
    DEFAULT_ENUMERATION_CAP,
    Distribution,
    EmpiricalType,
    EnumerationCapError,
    InvalidInputError,
    enumerate_type_class,
    type_class_size,
)

#: Channel tables loaded from external config must row-sum to 1 within this.
ROW_TOLERANCE = 1e-9


def _check_rows(table: np.ndarray, what: str):
    sums = table.sum(axis=-1)
    if np.any(table < 0.0):
        raise InvalidInputError(f"{what} has a negative entry")
    if np.any(np.abs(sums - 1.0) > ROW_TOLERANCE):
        worst = float(np.max(np.abs(sums - 1.0)))
        raise InvalidInputError(f"{what} rows must sum to 1 within {ROW_TOLERANCE} (off by {worst:.3g})")


@dataclass(frozen=True)
class DMC:
    """Stateless discrete memoryless channel t(y|x) as an |X| x |Y| table."""

    table: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.table, dtype=float).copy()
        if arr.ndim != 2 or arr.size == 0:
            raise InvalidInputError("DMC table must be 2-D (|X| x |Y|)")
        _check_rows(arr, "DMC table")
        arr.flags.writeable = False
        object.__setattr__(self, "table", arr)

    @property
    def x_size(self) -> int:
        return self.table.shape[0]

    @property
    def y_size(self) -> int:
        return self.table.shape[1]

    def row(self, x: int) -> np.ndarray:
        return self.table[x]


@dataclass(frozen=True)
class StateChannel:
    """Channel with state u(z|x,s) as an |X| x |S| x |Z| table."""

    table: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.table, dtype=float).copy()
        if arr.ndim != 3 or arr.size == 0:
            raise InvalidInputError("state channel table must be 3-D (|X| x |S| x |Z|)")
        _check_rows(arr, "state channel table")
        arr.flags.writeable = False
        object.__setattr__(self, "table", arr)

    @property
    def x_size(self) -> int:
        return self.table.shape[0]

    @property
    def s_size(self) -> int:
        return self.table.shape[1]

    @property
    def z_size(self) -> int:
        return self.table.shape[2]

    def row(self, x: int, s: int) -> np.ndarray:
        return self.table[x, s]

    def fixed_state_dmc(self, s: int) -> DMC:
        """The stateless channel induced by holding the state at symbol ``s``."""
        return DMC(self.table[:, s, :])


@dataclass(frozen=True)
class StateSource:
    """State-sequence generator: i.i.d. from a distribution, or uniform over a type class."""

    iid_q: Distribution | None = None
    type_q: EmpiricalType | None = None

    def __post_init__(self):
        if (self.iid_q is None) == (self.type_q is None):
            raise InvalidInputError("exactly one of iid_q / type_q must be set")

    @staticmethod
    def iid(q: Distribution) -> "StateSource":
        return StateSource(iid_q=q)

    @staticmethod
    def type_constrained(q: EmpiricalType) -> "StateSource":
        return StateSource(type_q=q)

    @property
    def mode(self) -> str:
        return "iid" if self.iid_q is not None else "type"


# ---------------------------------------------------------------------------
# exact output distributions
# ---------------------------------------------------------------------------

def product_output_distribution(rows: Sequence[np.ndarray],
                                cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """Product measure over output sequences from per-position single-symbol rows.

    Entry ``i`` of the result is the probability of the output sequence with
    lexicographic index ``i`` (position 0 most significant).
    """
    total = 1
    for r in rows:
        total *= len(r)
    if total > cap:
        raise EnumerationCapError(f"output space of size {total} exceeds cap {cap}")
    out = np.array([1.0])
    for r in rows:
        out = np.kron(out, r)
    return out


def dmc_output_distribution(ch: DMC, x: Sequence[int],
                            cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """Exact distribution of Y^n given input sequence ``x``, over |Y|^n lex-indexed outputs."""
    for xi in x:
        if not 0 <= xi < ch.x_size:
            raise InvalidInputError(f"input symbol {xi} outside alphabet of size {ch.x_size}")
    return product_output_distribution([ch.row(xi) for xi in x], cap=cap)


def state_output_distribution(ch: StateChannel, x: Sequence[int], s: Sequence[int],
                              cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """Exact distribution of Z^n given input ``x`` and state sequence ``s``."""
    if len(x) != len(s):
        raise InvalidInputError(f"input length {len(x)} != state length {len(s)}")
    for xi in x:
        if not 0 <= xi < ch.x_size:
            raise InvalidInputError(f"input symbol {xi} outside alphabet of size {ch.x_size}")
    for si in s:
        if not 0 <= si < ch.s_size:
            raise InvalidInputError(f"state symbol {si} outside alphabet of size {ch.s_size}")
    return product_output_distribution([ch.row(xi, si) for xi, si in zip(x, s)], cap=cap)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def sample_symbol(masses: np.ndarray, rng: np.random.Generator) -> int:
    """Inverse-CDF draw of one symbol; deterministic for a given generator state."""
    u = rng.random()
    acc = 0.0
    for i, m in enumerate(masses):
        acc += m
        if u < acc:
            return i
    return len(masses) - 1


def sample_state_sequence(src: StateSource, length: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Draw a state sequence: i.i.d. in iid mode, uniform over the type class in type mode.

    Uniform choice over the type class is the non-adversarial baseline; the
    adversarial sweep lives in the analysis module.
    """
    if src.mode == "iid":
        masses = src.iid_q.as_array()
        return tuple(sample_symbol(masses, rng) for _ in range(length))
    t = src.type_q
    if length != t.n:
        raise InvalidInputError(f"requested length {length} != type blocklength {t.n}")
    # lay the multiset out canonically, then shuffle in place (Fisher-Yates)
    seq = np.repeat(np.arange(t.alphabet_size), t.counts)
    for i in range(len(seq) - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        seq[i], seq[j] = seq[j], seq[i]
    return tuple(int(v) for v in seq)


def uniform_type_class_index(t: EmpiricalType, index: int,
                             cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[int, ...]:
    """The ``index``-th element of the type class in lexicographic order."""
    size = type_class_size(t)
    if not 0 <= index < size:
        raise InvalidInputError(f"index {index} out of range for type class of size {size}")
    for i, seq in enumerate(enumerate_type_class(t, cap=cap)):
        if i == index:
            return seq
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# small table factories used by fixtures and example configs
# ---------------------------------------------------------------------------

def identity_dmc(size: int) -> DMC:
    return DMC(np.eye(size))


def binary_symmetric_channel(crossover: float) -> DMC:
    if not 0.0 <= crossover <= 1.0:
        raise InvalidInputError(f"crossover {crossover} outside [0, 1]")
    return DMC(np.array([[1 - crossover, crossover], [crossover, 1 - crossover]]))


def tap_or_noise_channel() -> StateChannel:
    """Binary eavesdropper channel: state 1 copies the input, state 0 outputs uniform noise."""
    table = np.zeros((2, 2, 2))
    table[:, 0, :] = 0.5
    table[0, 1, :] = [1.0, 0.0]
    table[1, 1, :] = [0.0, 1.0]
    return StateChannel(table)


def useless_state_channel(x_size: int = 2, s_size: int = 2, z_size: int = 2) -> StateChannel:
    """Eavesdropper output independent of both input and state."""
    return StateChannel(np.full((x_size, s_size, z_size), 1.0 / z_size))


def perfect_tap_channel(size: int = 2, s_size: int = 2) -> StateChannel:
    """z = x regardless of state."""
    table = np.zeros((size, s_size, size))
    for x in range(size):
        table[x, :, x] = 1.0
    return StateChannel(table)
