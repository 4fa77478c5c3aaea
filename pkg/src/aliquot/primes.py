"""Segmented sieving: prime streams and fully factored integer ranges.

Ranges are processed in cache-sized segments.  A segment is factored by
marking the multiples of every prime p <= sqrt(hi) and dividing out exact
prime powers (a smallest-prime-factor style sweep, no per-integer trial
division); whatever remains after all base primes is either 1 or a single
prime above sqrt(hi).  Memory is bounded by the segment size, never by the
range length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .arith import Factorization
from .errors import ParameterError, ResourceError

DEFAULT_SEGMENT_SIZE = 1 << 20
MAX_SEGMENT_SIZE = 1 << 25
MAX_RANGE_END = 10**10


@lru_cache(maxsize=8)
def _dense_primes(limit: int) -> np.ndarray:
    """All primes <= limit by a plain dense sieve (int64)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def check_range(lo: int, hi: int, segment_size: int) -> None:
    if segment_size <= 0:
        raise ParameterError(f"segment_size must be positive, got {segment_size}")
    if segment_size > MAX_SEGMENT_SIZE:
        raise ResourceError(
            f"segment_size {segment_size} exceeds the {MAX_SEGMENT_SIZE} cap; "
            f"use more, smaller segments"
        )
    if hi > MAX_RANGE_END:
        raise ResourceError(
            f"range end {hi} exceeds the supported bound {MAX_RANGE_END}; "
            f"split the computation into sub-ranges"
        )


def iter_prime_segments(
    lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> Iterator[np.ndarray]:
    """Yield the primes of [lo, hi] as int64 arrays, one per segment."""
    if lo < 2:
        lo = 2
    if hi < lo:
        return
    check_range(lo, hi, segment_size)
    base = _dense_primes(math.isqrt(hi))
    seg_lo = lo
    while seg_lo <= hi:
        seg_hi = min(seg_lo + segment_size - 1, hi)
        size = seg_hi - seg_lo + 1
        mask = np.ones(size, dtype=bool)
        for p in base[base * base <= seg_hi]:
            p = int(p)
            start = max(p * p, ((seg_lo + p - 1) // p) * p)
            if start <= seg_hi:
                mask[start - seg_lo :: p] = False
        primes = np.flatnonzero(mask).astype(np.int64) + seg_lo
        yield primes
        seg_lo = seg_hi + 1


def primes_in_range(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """Exactly the primes in the inclusive range [lo, hi], ascending."""
    if lo > hi:
        return np.empty(0, dtype=np.int64)
    chunks = list(iter_prime_segments(lo, hi, segment_size))
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


@dataclass
class SegmentFactors:
    """One factored segment.

    ``events`` lists (p, m, idx): the segment positions idx where p^m
    exactly divides the integer.  ``rem`` holds what is left after dividing
    every base prime power out: 1, or one prime above sqrt(hi).
    """

    n_values: np.ndarray
    events: list[tuple[int, int, np.ndarray]]
    rem: np.ndarray


def _factor_segment(n0: int, size: int, stride: int, base: np.ndarray) -> SegmentFactors:
    n_values = n0 + stride * np.arange(size, dtype=np.int64)
    rem = n_values.copy()
    events: list[tuple[int, int, np.ndarray]] = []
    n_max = int(n_values[-1]) if size else 0
    for p in base[base * base <= n_max]:
        p = int(p)
        if stride == 2:
            if p == 2:
                continue
            i0 = ((-n0) * pow(2, -1, p)) % p
        else:
            i0 = (-n0) % p
        if i0 >= size:
            continue
        idx = np.arange(i0, size, p, dtype=np.int64)
        v = n_values[idx] // p
        m = 1
        while True:
            deeper = (v % p) == 0
            exact = idx[~deeper]
            if exact.size:
                events.append((p, m, exact))
                rem[exact] //= p**m
            idx = idx[deeper]
            if idx.size == 0:
                break
            v = v[deeper] // p
            m += 1
    return SegmentFactors(n_values, events, rem)


def iter_factor_segments(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    odd_only: bool = False,
) -> Iterator[SegmentFactors]:
    """Factor [lo, hi] segment by segment.

    With ``odd_only`` the segment arrays contain only the odd integers of
    the range.  Segment boundaries fall on multiples of segment_size in the
    integer range, so the concatenated output is independent of the chosen
    segment size.
    """
    if lo < 1:
        raise ParameterError(f"range start must be >= 1, got {lo}")
    if hi < lo:
        return
    check_range(lo, hi, segment_size)
    base = _dense_primes(math.isqrt(hi))
    seg_lo = lo
    while seg_lo <= hi:
        seg_hi = min(seg_lo + segment_size - 1, hi)
        if odd_only:
            n0 = seg_lo if seg_lo % 2 == 1 else seg_lo + 1
            if n0 > seg_hi:
                seg_lo = seg_hi + 1
                continue
            size = (seg_hi - n0) // 2 + 1
            yield _factor_segment(n0, size, 2, base)
        else:
            yield _factor_segment(seg_lo, seg_hi - seg_lo + 1, 1, base)
        seg_lo = seg_hi + 1


def sigma_of_segment(seg: SegmentFactors) -> np.ndarray:
    """sigma(n) for every n of a factored segment, exact int64."""
    sig = np.ones(seg.n_values.size, dtype=np.int64)
    for p, m, idx in seg.events:
        sig[idx] *= (p ** (m + 1) - 1) // (p - 1)
    tail = seg.rem > 1
    if tail.any():
        sig[tail] *= seg.rem[tail] + 1
    return sig


def iter_sigma_segments(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    odd_only: bool = False,
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (n_values, sigma_values) per segment over [lo, hi]."""
    for seg in iter_factor_segments(lo, hi, segment_size, odd_only):
        yield seg.n_values, sigma_of_segment(seg)


@dataclass
class FactoredRangeStream:
    """Iterable over (n, Factorization of n) for every n in [lo, hi].

    The yielded sequence is strictly increasing in n and bit-identical for
    any segment_size; with ``odd_only`` only odd n are yielded.
    """

    lo: int
    hi: int
    segment_size: int = DEFAULT_SEGMENT_SIZE
    odd_only: bool = False

    def __iter__(self) -> Iterator[tuple[int, Factorization]]:
        make = Factorization
        for seg in iter_factor_segments(self.lo, self.hi, self.segment_size, self.odd_only):
            size = seg.n_values.size
            if size == 0:
                continue
            if seg.events:
                all_idx = np.concatenate([idx for _, _, idx in seg.events])
                all_p = np.concatenate(
                    [np.full(idx.size, p, dtype=np.int64) for p, _, idx in seg.events]
                )
                all_m = np.concatenate(
                    [np.full(idx.size, m, dtype=np.int64) for _, m, idx in seg.events]
                )
                # Events are appended in ascending-p order, so a stable sort
                # by position keeps each integer's primes ascending.
                order = np.argsort(all_idx, kind="stable")
                pairs = list(zip(all_p[order].tolist(), all_m[order].tolist()))
                counts = np.bincount(all_idx, minlength=size).tolist()
            else:
                pairs = []
                counts = [0] * size
            ns = seg.n_values.tolist()
            rems = seg.rem.tolist()
            pos = 0
            for i in range(size):
                c = counts[i]
                if c:
                    entries = tuple(pairs[pos : pos + c])
                    pos += c
                else:
                    entries = ()
                r = rems[i]
                if r > 1:
                    entries += ((r, 1),)
                n = ns[i]
                yield n, make(entries, n)


def factored_range(
    lo: int,
    hi: int,
    odd_only: bool = False,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> FactoredRangeStream:
    """Stream complete factorizations of [lo, hi] (see FactoredRangeStream)."""
    if lo < 1:
        raise ParameterError(f"range start must be >= 1, got {lo}")
    check_range(lo, max(hi, lo), segment_size)
    return FactoredRangeStream(lo, hi, segment_size, odd_only)
