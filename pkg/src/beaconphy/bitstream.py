"""Bit-vector helpers shared by every coding and simulation module.

Bits live in one-dimensional numpy uint8 arrays holding only 0 and 1.
Index 0 is always the first transmitted bit.
"""

from __future__ import annotations

import numpy as np


def as_bits(values) -> np.ndarray:
    """Coerce to a validated 1-D uint8 bit array."""
    arr = np.asarray(values, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("bit vector must be one-dimensional")
    if arr.size and arr.max() > 1:
        raise ValueError("bit vector may only contain 0 and 1")
    return arr


def zeros(n: int) -> np.ndarray:
    return np.zeros(n, dtype=np.uint8)


def ones(n: int) -> np.ndarray:
    return np.ones(n, dtype=np.uint8)


def xor(a, b) -> np.ndarray:
    """Elementwise XOR of two equal-length bit vectors."""
    a = as_bits(a)
    b = as_bits(b)
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    return a ^ b


def ones_fraction(v) -> float:
    """Fraction of one bits; undefined (raises) for an empty vector."""
    v = as_bits(v)
    if v.size == 0:
        raise ValueError("ones_fraction of an empty vector is undefined")
    return int(v.sum()) / v.size


def max_run_length(v) -> int:
    """Length of the longest run of identical consecutive bits (0 if empty)."""
    v = as_bits(v)
    if v.size == 0:
        return 0
    starts = np.flatnonzero(np.diff(v)) + 1
    edges = np.concatenate(([0], starts, [v.size]))
    return int(np.diff(edges).max())


def random_bits(rng: np.random.Generator, n: int, p_one: float = 0.5) -> np.ndarray:
    """n independent Bernoulli(p_one) bits drawn from rng."""
    return (rng.random(n) < p_one).astype(np.uint8)


def to_text(v) -> str:
    """Serialize to a '0'/'1' string, index 0 leftmost."""
    v = as_bits(v)
    return bytes(v + ord("0")).decode("ascii")


def from_text(s: str) -> np.ndarray:
    """Parse a '0'/'1' string (surrounding whitespace ignored)."""
    s = s.strip()
    if not set(s) <= {"0", "1"}:
        raise ValueError("bitstream text may only contain '0' and '1'")
    return (np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0")).astype(np.uint8)
