"""Finite-alphabet probability, method-of-types combinatorics, information measures.

All information quantities are in bits (log base 2), with the 0*log(0) = 0
convention throughout.  Combinatorial quantities (type class sizes, multinomial
coefficients) are exact arbitrary-precision integers; probabilities that would
underflow as floats are carried in log2 space, with an exact `fractions`-based
route available for oracle checks at small blocklengths.

Symbols of an alphabet of size B are the integers 0..B-1.  Sequence spaces are
indexed lexicographically with position 0 most significant (so for B=2, n=2:
(0,0) -> 0, (0,1) -> 1, (1,0) -> 2, (1,1) -> 3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

LN2 = math.log(2.0)

#: Default ceiling on the number of sequences any exhaustive enumeration may visit.
DEFAULT_ENUMERATION_CAP = 10_000_000

#: Tolerance for "sums to one" checks on probability vectors.
MASS_TOLERANCE = 1e-12


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class EnumerationCapError(RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Alphabet:
    """A finite symbol alphabet; symbols are the indices 0..size-1."""

    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise InvalidInputError(f"alphabet size must be a positive integer, got {self.size!r}")

    def __contains__(self, symbol) -> bool:
        return isinstance(symbol, (int, np.integer)) and 0 <= symbol < self.size


@dataclass(frozen=True)
class Distribution:
    """Probability vector over a finite alphabet.

    Masses must be nonnegative and sum to 1 within ``MASS_TOLERANCE``.
    """

    masses: tuple[float, ...]

    def __post_init__(self):
        masses = tuple(float(m) for m in self.masses)
        object.__setattr__(self, "masses", masses)
        if len(masses) < 1:
            raise InvalidInputError("distribution needs at least one mass")
        if any(m < 0.0 for m in masses):
            raise InvalidInputError(f"negative probability mass in {masses}")
        total = math.fsum(masses)
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise InvalidInputError(f"masses sum to {total!r}, not 1 within {MASS_TOLERANCE}")

    def __len__(self) -> int:
        return len(self.masses)

    def __getitem__(self, i: int) -> float:
        return self.masses[i]

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.masses) if m > 0.0)

    def as_array(self) -> np.ndarray:
        return np.array(self.masses, dtype=float)

    def min_mass(self) -> float:
        return min(self.masses)

    @staticmethod
    def uniform(size: int) -> "Distribution":
        return Distribution(tuple(1.0 / size for _ in range(size)))

    @staticmethod
    def point_mass(symbol: int, size: int) -> "Distribution":
        if not 0 <= symbol < size:
            raise InvalidInputError(f"symbol {symbol} outside alphabet of size {size}")
        return Distribution(tuple(1.0 if i == symbol else 0.0 for i in range(size)))


@dataclass(frozen=True)
class EmpiricalType:
    """Integer count vector of a length-n sequence; the n-normalized counts
    form an empirical distribution whose masses are all multiples of 1/n."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) < 1:
            raise InvalidInputError("type needs at least one symbol count")
        if any(c < 0 for c in counts):
            raise InvalidInputError(f"negative count in {counts}")
        if sum(counts) < 1:
            raise InvalidInputError("type must describe a nonempty sequence")

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def alphabet_size(self) -> int:
        return len(self.counts)

    def as_distribution(self) -> Distribution:
        n = self.n
        return Distribution(tuple(c / n for c in self.counts))

    def as_fractions(self) -> tuple[Fraction, ...]:
        n = self.n
        return tuple(Fraction(c, n) for c in self.counts)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.counts) if c > 0)


@dataclass(frozen=True)
class JointDistribution:
    """Joint probability table over (row alphabet x column alphabet)."""

    table: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.table, dtype=float)
        if arr.ndim != 2 or arr.size == 0:
            raise InvalidInputError("joint table must be a nonempty 2-D array")
        if np.any(arr < 0.0):
            raise InvalidInputError("joint table has a negative cell")
        total = float(arr.sum())
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise InvalidInputError(f"joint table sums to {total!r}, not 1 within {MASS_TOLERANCE}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "table", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.table.shape

    def row_marginal(self) -> Distribution:
        return Distribution(tuple(self.table.sum(axis=1)))

    def col_marginal(self) -> Distribution:
        return Distribution(tuple(self.table.sum(axis=0)))

    def transpose(self) -> "JointDistribution":
        return JointDistribution(self.table.T)


# ---------------------------------------------------------------------------
# sequence-space indexing
# ---------------------------------------------------------------------------

def sequence_to_index(seq: Sequence[int], alphabet_size: int) -> int:
    """Lexicographic rank of ``seq`` in the space {0..B-1}^n, position 0 most significant."""
    idx = 0
    for s in seq:
        if not 0 <= s < alphabet_size:
            raise InvalidInputError(f"symbol {s} outside alphabet of size {alphabet_size}")
        idx = idx * alphabet_size + int(s)
    return idx


def index_to_sequence(index: int, alphabet_size: int, length: int) -> tuple[int, ...]:
    """Inverse of :func:`sequence_to_index`."""
    if not 0 <= index < alphabet_size ** length:
        raise InvalidInputError(f"index {index} out of range for length {length}")
    out = [0] * length
    for pos in range(length - 1, -1, -1):
        index, out[pos] = divmod(index, alphabet_size)
    return tuple(out)


def all_sequences(alphabet_size: int, length: int,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every sequence in {0..B-1}^length in lexicographic order."""
    total = alphabet_size ** length
    if total > cap:
        raise EnumerationCapError(f"{total} sequences exceeds cap {cap}")
    for idx in range(total):
        yield index_to_sequence(idx, alphabet_size, length)


# ---------------------------------------------------------------------------
# empirical distributions and type classes
# ---------------------------------------------------------------------------

def empirical_distribution(seq: Sequence[int], alphabet_size: int) -> EmpiricalType:
    """Count vector of ``seq`` over the alphabet 0..alphabet_size-1.

    Raises
    ------
    InvalidInputError
        If ``seq`` is empty or contains a symbol outside the alphabet.
    """
    if len(seq) == 0:
        raise InvalidInputError("cannot take the empirical distribution of an empty sequence")
    counts = [0] * alphabet_size
    for s in seq:
        if not 0 <= s < alphabet_size:
            raise InvalidInputError(f"symbol {s!r} outside alphabet of size {alphabet_size}")
        counts[int(s)] += 1
    return EmpiricalType(tuple(counts))


def multinomial_coefficient(counts: Sequence[int]) -> int:
    """Exact n! / prod(counts_i!) with n = sum(counts)."""
    n = sum(counts)
    value = math.factorial(n)
    for c in counts:
        if c:
            value //= math.factorial(c)
    return value


def type_class_size(t: EmpiricalType) -> int:
    """Number of length-n sequences with empirical type ``t`` (exact integer)."""
    return multinomial_coefficient(t.counts)


def enumerate_type_class(t: EmpiricalType,
                         cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every sequence of type ``t`` exactly once, in lexicographic order."""
    size = type_class_size(t)
    if size > cap:
        raise EnumerationCapError(f"type class size {size} exceeds cap {cap}")

    counts = list(t.counts)
    n = t.n
    prefix: list[int] = []

    def gen() -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for s in range(len(counts)):
            if counts[s] > 0:
                counts[s] -= 1
                prefix.append(s)
                yield from gen()
                prefix.pop()
                counts[s] += 1

    return gen()


def sequence_log2_prob(base: Distribution, seq: Sequence[int]) -> float:
    """log2 of the product measure base^n evaluated at ``seq``; -inf on zero mass."""
    total = 0.0
    for s in seq:
        m = base[s]
        if m == 0.0:
            return float("-inf")
        total += math.log2(m)
    return total


def type_class_log_prob(base: Distribution, t: EmpiricalType) -> float:
    """log2 of the probability that an i.i.d. ``base`` string of length n has type ``t``.

    That probability is multinomial(t) * prod_i base[i]^counts[i]; the
    multinomial factor is computed exactly in arbitrary precision and only the
    final value is rounded to a float.  Returns -inf when some positive count
    sits on a zero-mass symbol.
    """
    if len(base) != t.alphabet_size:
        raise InvalidInputError("base distribution and type have different alphabets")
    log2p = float(math.log2(multinomial_coefficient(t.counts)))
    for c, m in zip(t.counts, base.masses):
        if c == 0:
            continue
        if m == 0.0:
            return float("-inf")
        log2p += c * math.log2(m)
    return log2p


def type_class_prob_exact(base: Sequence[Fraction], t: EmpiricalType) -> Fraction:
    """Exact rational probability of the type class under an exactly rational base."""
    if len(base) != t.alphabet_size:
        raise InvalidInputError("base distribution and type have different alphabets")
    prob = Fraction(multinomial_coefficient(t.counts))
    for c, m in zip(t.counts, base):
        if c == 0:
            continue
        m = Fraction(m)
        if m == 0:
            return Fraction(0)
        prob *= m ** c
    return prob


def log2_fraction(x: Fraction) -> float:
    """log2 of a positive rational, accurate through arbitrarily large terms."""
    if x <= 0:
        raise InvalidInputError(f"log2 of non-positive rational {x}")
    return math.log2(x.numerator) - math.log2(x.denominator)


def stirling_type_prob_interval(base: Distribution, t: EmpiricalType) -> tuple[float, float]:
    """Certified (lower, upper) interval for :func:`type_class_log_prob`, in log2.

    The interval is the leading-order term

        (2*pi*k)^(-(m-1)/2) * (prod_{i in supp} q_hat(i))^(-1/2) * 2^(-k*D(q_hat||base))

    (m = support size, q_hat = counts/k, zero-count symbols excluded from the
    product) multiplied by two-sided factorial corrections: Robbins' bounds

        sqrt(2*pi*n) (n/e)^n e^(1/(12n+1))  <  n!  <  sqrt(2*pi*n) (n/e)^n e^(1/(12n))

    applied to the numerator factorial k! and to every positive denominator
    factorial.  A one-sided remainder of size 1/(12k) on the leading term alone
    is not wide enough to cover the exact value at small k, so both directions
    are kept.

    When only one symbol has positive count the multinomial is exactly 1 and
    the interval degenerates to the exact single-sequence log-probability.
    """
    if len(base) != t.alphabet_size:
        raise InvalidInputError("base distribution and type have different alphabets")
    support = t.support()
    for i in support:
        if base[i] == 0.0:
            raise InvalidInputError(f"count {t.counts[i]} on zero-mass symbol {i}")
    k = t.n

    if len(support) == 1:
        exact = k * math.log2(base[support[0]])
        return (exact, exact)

    m = len(support)
    log2_leading = -0.5 * (m - 1) * math.log2(2.0 * math.pi * k)
    divergence = 0.0  # D(q_hat || base) in bits
    for i in support:
        q_hat = t.counts[i] / k
        log2_leading -= 0.5 * math.log2(q_hat)
        divergence += q_hat * (math.log2(q_hat) - math.log2(base[i]))
    log2_leading -= k * divergence

    lo_nats = 1.0 / (12 * k + 1) - sum(1.0 / (12 * t.counts[i]) for i in support)
    hi_nats = 1.0 / (12 * k) - sum(1.0 / (12 * t.counts[i] + 1) for i in support)
    return (log2_leading + lo_nats / LN2, log2_leading + hi_nats / LN2)


# ---------------------------------------------------------------------------
# information measures (bits)
# ---------------------------------------------------------------------------

def entropy(p: Distribution) -> float:
    """Shannon entropy in bits."""
    return -math.fsum(m * math.log2(m) for m in p.masses if m > 0.0)


def kl_divergence(p: Distribution, q: Distribution) -> float:
    """D(p||q) = sum_i p(i) log2(p(i)/q(i)); +inf if p is not absolutely continuous w.r.t. q."""
    if len(p) != len(q):
        raise InvalidInputError("distributions live on different alphabets")
    total = 0.0
    for pm, qm in zip(p.masses, q.masses):
        if pm == 0.0:
            continue
        if qm == 0.0:
            return float("inf")
        total += pm * (math.log2(pm) - math.log2(qm))
    return max(total, 0.0)


def total_variation_and_pinsker(p: Distribution, q: Distribution) -> tuple[float, float]:
    """L1 distance sum_i |p(i)-q(i)| and the Pinsker lower bound L1^2/(2 ln 2) on D(p||q) in bits."""
    if len(p) != len(q):
        raise InvalidInputError("distributions live on different alphabets")
    l1 = math.fsum(abs(pm - qm) for pm, qm in zip(p.masses, q.masses))
    return l1, l1 * l1 / (2.0 * LN2)


def conditional_entropy(j: JointDistribution) -> float:
    """H(X|Y) in bits, X indexing rows and Y columns of the joint table."""
    table = j.table
    py = table.sum(axis=0)
    total = 0.0
    for x in range(table.shape[0]):
        for y in range(table.shape[1]):
            pxy = table[x, y]
            if pxy > 0.0:
                total -= pxy * math.log2(pxy / py[y])
    return max(total, 0.0)


def mutual_information(j: JointDistribution) -> float:
    """I(X;Y) in bits between the row and column variables of the joint table."""
    table = j.table
    px = table.sum(axis=1)
    py = table.sum(axis=0)
    total = 0.0
    for x in range(table.shape[0]):
        for y in range(table.shape[1]):
            pxy = table[x, y]
            if pxy > 0.0:
                total += pxy * math.log2(pxy / (px[x] * py[y]))
    # exact zero for product joints; guard the rounding dust
    return max(total, 0.0)
