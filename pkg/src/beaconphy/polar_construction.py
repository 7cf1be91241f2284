"""Polar code construction from the erasure-channel reliability recursion.

A code is the triple (N, K, info_set).  Reliabilities come from the
Bhattacharyya recursion on a binary erasure channel with design parameter
eps: each polarization level splits a channel with parameter z into a
degraded copy (2z - z^2) and an upgraded copy (z^2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


def bhattacharyya_profile(n: int, eps: float) -> np.ndarray:
    """Reliability parameter of each bit channel after n polarization levels.

    Index bits select the splits most-significant bit first: a 0 bit takes
    the degraded branch, a 1 bit the upgraded branch.  Position 2**n - 1
    (all upgrades) is therefore the most reliable and position 0 the least.

    Args:
        n: number of levels; the profile has length 2**n.
        eps: design erasure probability, 0 < eps < 1.

    Returns:
        float64 array of length 2**n; smaller means more reliable.
    """
    if n < 0:
        raise ValueError("level count must be nonnegative")
    if not 0.0 < eps < 1.0:
        raise ValueError("design erasure probability must lie in (0, 1)")
    z = np.array([eps], dtype=np.float64)
    for _ in range(n):
        nxt = np.empty(2 * z.size, dtype=np.float64)
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return z


@dataclass(frozen=True)
class PolarSpec:
    """Frozen description of one constructed code."""

    n: int
    N: int
    K: int
    eps: float
    info_set: tuple[int, ...]

    def __post_init__(self):
        if self.N != 1 << self.n:
            raise ValueError("N must equal 2**n")
        if not 0 < self.K <= self.N:
            raise ValueError("K must satisfy 0 < K <= N")
        info = tuple(self.info_set)
        if len(info) != self.K or sorted(set(info)) != list(info):
            raise ValueError("info_set must be K sorted distinct indices")
        if info and not 0 <= info[0] <= info[-1] < self.N:
            raise ValueError("info_set indices must lie in [0, N)")
        object.__setattr__(self, "info_set", info)

    @property
    def rate(self) -> float:
        return self.K / self.N

    def info_indices(self) -> np.ndarray:
        return np.array(self.info_set, dtype=np.intp)

    def info_mask(self) -> np.ndarray:
        mask = np.zeros(self.N, dtype=bool)
        mask[self.info_indices()] = True
        return mask


def construct(N: int, K: int, eps: float = 0.5) -> PolarSpec:
    """Pick the K most reliable positions of an N = 2**n polar transform.

    Ties in the reliability profile are broken toward the larger index, so
    the returned set is a deterministic function of (N, K, eps) and the sets
    for successive K are nested.
    """
    if N <= 0 or N & (N - 1):
        raise ValueError("N must be a power of two")
    if not 0 < K <= N:
        raise ValueError("K must satisfy 0 < K <= N")
    n = N.bit_length() - 1
    z = bhattacharyya_profile(n, eps)
    order = sorted(range(N), key=lambda i: (z[i], -i))
    return PolarSpec(n=n, N=N, K=K, eps=eps, info_set=tuple(sorted(order[:K])))


def to_dict(spec: PolarSpec) -> dict:
    return {
        "n": spec.n,
        "N": spec.N,
        "K": spec.K,
        "eps": spec.eps,
        "info_set": list(spec.info_set),
    }


def from_dict(doc: dict) -> PolarSpec:
    try:
        return PolarSpec(
            n=int(doc["n"]),
            N=int(doc["N"]),
            K=int(doc["K"]),
            eps=float(doc["eps"]),
            info_set=tuple(int(i) for i in doc["info_set"]),
        )
    except KeyError as missing:
        raise ValueError(f"code description lacks field {missing}") from None


def save(spec: PolarSpec, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(to_dict(spec), fh, indent=1)
        fh.write("\n")


def load(path) -> PolarSpec:
    with open(path, "r", encoding="ascii") as fh:
        return from_dict(json.load(fh))
