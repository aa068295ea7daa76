"""Generators for the frequency families the experiments run on.

consecutive      -- {1..n}, the maximally non-flat baseline.
random_set       -- n distinct uniform draws, seeded and reproducible.
erdos_turan_sidon / difference_set -- a Sidon set mod a prime and its
    positive differences: the cosine sum over the differences equals
    (|sum_a e^{iax}|^2 - m)/2 >= -m/2, so its negated minimum is at most
    m/2 with N = m(m-1)/2 frequencies packed below 2p^2.
rounded_exponential -- lambda_j = round(e^(j^(1/3))), the growth profile
    of the stretched-exponential constructions, duplicates bumped upward.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .core import MAX_FREQ, FrequencySet
from .errors import DomainError

__all__ = ["SidonSet", "consecutive", "random_set", "erdos_turan_sidon",
           "is_sidon", "difference_set", "rounded_exponential", "is_prime"]

# Sprp bases certifying primality for every n < 2^64 (Sinclair's 7-base set).
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class SidonSet:
    """Distinct non-negative integers with all pairwise differences distinct."""

    elems: tuple[int, ...]
    p: int | None = None  # generating prime, when one applies

    def __post_init__(self):
        if len(self.elems) < 2:
            raise DomainError("Sidon set needs at least 2 elements")
        if any(e < 0 for e in self.elems):
            raise DomainError("Sidon set elements must be non-negative")
        if any(b <= a for a, b in zip(self.elems, self.elems[1:])):
            raise DomainError("Sidon set elements must be strictly increasing")

    @property
    def m(self) -> int:
        return len(self.elems)


def consecutive(n: int) -> FrequencySet:
    """{1, ..., n}."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return FrequencySet(range(1, n + 1))


def random_set(n: int, lambda_min: int, lambda_max: int, seed: int) -> FrequencySet:
    """n distinct uniform integers in [lambda_min, lambda_max], sorted.

    Deterministic for a fixed seed.  Large ranges sample by rejection so the
    cost stays O(n), small ones by a seeded permutation.
    """
    if not (0 <= seed < 1 << 64):
        raise DomainError("seed must fit in 64 bits")
    if n < 1:
        raise DomainError("n must be >= 1")
    if lambda_min < 1 or lambda_max > MAX_FREQ:
        raise DomainError("frequency range outside [1, 2^46]")
    span = lambda_max - lambda_min + 1
    if span < n:
        raise DomainError(f"range of {span} values cannot hold {n} distinct draws")
    rng = np.random.default_rng(seed)
    if span <= max(4 * n, 1 << 22):
        draw = rng.choice(span, size=n, replace=False)
        return FrequencySet(sorted(int(v) + lambda_min for v in draw))
    chosen: set[int] = set()
    while len(chosen) < n:
        batch = rng.integers(lambda_min, lambda_max + 1, size=2 * (n - len(chosen)))
        for v in batch:
            chosen.add(int(v))
            if len(chosen) == n:
                break
    return FrequencySet(sorted(chosen))


def erdos_turan_sidon(p: int) -> SidonSet:
    """{2*p*j + (j^2 mod p) : j = 0..p-1} for prime p; all elements < 2p^2."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    elems = tuple(2 * p * j + (j * j) % p for j in range(p))
    return SidonSet(elems=elems, p=p)


def is_sidon(s: Union[SidonSet, FrequencySet, Iterable[int]]) -> bool:
    """Brute-force check that every positive pairwise difference is unique."""
    if isinstance(s, SidonSet):
        elems = s.elems
    elif isinstance(s, FrequencySet):
        elems = s.freqs
    else:
        elems = tuple(s)
    if len(elems) < 2:
        raise DomainError("need at least 2 elements")
    a = np.asarray(elems, dtype=np.int64)
    i, j = np.triu_indices(a.size, k=1)
    diffs = a[j] - a[i]
    return np.unique(diffs).size == diffs.size


def difference_set(s: SidonSet) -> FrequencySet:
    """All m(m-1)/2 positive differences of a Sidon set, sorted."""
    if not is_sidon(s):
        raise DomainError("input is not a Sidon set; differences would collide")
    a = np.asarray(s.elems, dtype=np.int64)
    i, j = np.triu_indices(a.size, k=1)
    return FrequencySet(sorted(int(d) for d in a[j] - a[i]))


def rounded_exponential(n: int) -> FrequencySet:
    """lambda_j = round(e^(j^(1/3))), j = 1..n, duplicates bumped upward.

    Bumping to the next unused integer (== prev+1, since output is kept
    sorted) preserves strict increase and exactly n entries; every entry
    stays >= its un-bumped rounded value.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if round(math.exp(n ** (1.0 / 3.0))) > MAX_FREQ:
        raise DomainError("largest frequency would exceed the 2^46 cap")
    out = []
    prev = 0
    for j in range(1, n + 1):
        v = round(math.exp(j ** (1.0 / 3.0)))
        v = max(v, prev + 1)
        out.append(v)
        prev = v
    return FrequencySet(out)
