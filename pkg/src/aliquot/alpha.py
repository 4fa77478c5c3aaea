"""Certified upper bound for the per-prime logarithmic constant alpha.

alpha = 2*alpha(2) + sum over odd primes p of alpha(p), where

    alpha(p) = sum over m >= 1 of (1/p^m) * log((1+p+...+p^m)/(p+...+p^m)).

The computation truncates the p = 2 series at depth L (in a rearranged
form whose tail is quadratically small, see alpha_two_part), truncates
every odd prime's series at depth M, cuts primes at N, and adds explicit
tail bounds for all three truncations:

    upper bound = finite sums + float radius
                  + 2*A(2,L) + sum over odd p <= N of A(p,M) + 1/N,

with A(p, M) = p/(p-1) * p^(-2(M+1)) dominating each dropped prime tail
and 1/N dominating the dropped primes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .numerics import (
    CertifiedValue,
    certified_combine,
    combine_blocks,
    compensated_sum,
    map_blocks,
    parts_to_certified,
    block_sum_parts,
)
from .primes import check_range, iter_prime_segments

DEFAULT_BLOCK_SIZE = 1 << 20


@dataclass(frozen=True)
class AlphaParams:
    """Prime cutoff N, dyadic depth L, odd-prime depth M (N > 2, L, M > 1)."""

    N: int
    L: int
    M: int

    def __post_init__(self):
        if self.N <= 2:
            raise ParameterError(f"N must exceed 2, got {self.N}")
        if self.L <= 1 or self.M <= 1:
            raise ParameterError(f"L and M must exceed 1, got L={self.L}, M={self.M}")


@dataclass
class AlphaResult:
    params: AlphaParams
    sums: CertifiedValue
    tail_total: float
    upper_bound: float
    n_primes: int
    elapsed_seconds: float

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "params": {"N": self.params.N, "L": self.params.L, "M": self.params.M},
            "sums_value": self.sums.value,
            "sums_error_radius": self.sums.error_radius,
            "tail_total": self.tail_total,
            "upper_bound": self.upper_bound,
            "n_odd_primes": self.n_primes,
            "elapsed_seconds": self.elapsed_seconds,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def alpha_term(p: int, m: int) -> float:
    """(1/p^m) * log((1+p+...+p^m)/(p+...+p^m)), via log1p for stability.

    The ratio equals 1 + 1/(p+...+p^m); the denominator is formed exactly
    in integer arithmetic while it fits a float, else in floating point.
    """
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    q = p**m
    if q > 10**300:
        raise ParameterError(f"p**m = {p}**{m} too large")
    geom = (q * p - p) // (p - 1)  # p + p^2 + ... + p^m, exact
    return math.log1p(1.0 / geom) / q


def tail_a(p: int, M: int) -> float:
    """A(p, M) = p/(p-1) * (p^-(M+1))^2, the depth-M series tail bound."""
    if M < 1:
        raise ParameterError(f"M must be >= 1, got {M}")
    return (p / (p - 1.0)) * float(p) ** (-2.0 * (M + 1))


def alpha_two_part(L: int) -> CertifiedValue:
    """The p = 2 part 2*alpha(2), truncated at depth L.

    Uses the rearrangement 2*alpha(2) = log 2 + sum over m >= 1 of
    2^-m * log(1 - 2^-(m+1)): summing the geometric weights against the
    constant log 2 exactly leaves a tail of order 4^-L, which the caller
    covers with 2*A(2, L).  (The unrearranged truncation would leave a
    tail of order 2^-L instead.)
    """
    if L <= 1:
        raise ParameterError(f"L must exceed 1, got {L}")
    terms = [math.log(2.0)]
    terms += [2.0**-m * math.log1p(-(2.0 ** -(m + 1))) for m in range(1, L + 1)]
    return compensated_sum(terms)


def _block_sums(primes: np.ndarray, M: int) -> tuple[tuple, tuple]:
    """Per-block pieces: the alpha terms for m = 1..M and the A(p, M) tails.

    Vectorized over the block's primes; powers beyond the float range
    underflow harmlessly to zero-value terms.
    """
    p = primes.astype(np.float64)
    term_arrays = []
    with np.errstate(over="ignore", under="ignore"):
        q = p.copy()
        for _ in range(M):
            geom = (q * p - p) / (p - 1.0)
            term_arrays.append(np.log1p(1.0 / geom) / q)
            q = q * p
        terms = np.concatenate(term_arrays) if term_arrays else np.empty(0)
        tails = (p / (p - 1.0)) * p ** (-2.0 * (M + 1))
    return block_sum_parts(terms), block_sum_parts(tails)


def alpha_upper_bound(
    params: AlphaParams,
    *,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
) -> AlphaResult:
    """Certified upper bound for alpha at the given truncation parameters.

    The finite sums are alpha_two_part(L) plus the depth-M terms over all
    odd primes p <= N, block-reduced deterministically; the tail total is
    2*A(2,L) + sum of A(p,M) over the same primes + 1/N.  The bound is
    sums value + sums radius + tails, nudged up two ulps to cover the
    final additions.
    """
    import time

    t0 = time.time()
    N, L, M = params.N, params.L, params.M
    check_range(2, N, block_size)

    blocks = []
    start = 3
    while start <= N:
        boundary = ((start // block_size) + 1) * block_size - 1
        end = min(boundary, N)
        blocks.append((start, end))
        start = end + 1

    counts = [0]

    def eval_block(lo: int, hi: int):
        segs = list(iter_prime_segments(lo, hi, segment_size=block_size))
        primes = np.concatenate(segs) if segs else np.empty(0, dtype=np.int64)
        primes = primes[primes >= 3]
        counts[0] += primes.size
        term_parts, tail_parts = _block_sums(primes, M)
        return (
            parts_to_certified(*term_parts),
            parts_to_certified(*tail_parts),
        )

    results = map_blocks(blocks, eval_block, workers)
    odd_sum = combine_blocks([r[0] for r in results])
    tail_sum = combine_blocks([r[1] for r in results])

    sums = certified_combine(alpha_two_part(L), odd_sum, "add")
    # Tail pieces are upper bounds themselves; their float radius is folded
    # into the total on the high side.
    tail_total = 2.0 * tail_a(2, L) + tail_sum.value + tail_sum.error_radius + 1.0 / N

    ub = sums.value + sums.error_radius + tail_total
    ub = math.nextafter(math.nextafter(ub, math.inf), math.inf)
    return AlphaResult(
        params=params,
        sums=sums,
        tail_total=tail_total,
        upper_bound=ub,
        n_primes=counts[0],
        elapsed_seconds=time.time() - t0,
    )


def alpha_p_product_form(p: int, depth: int) -> float:
    """Reference evaluation of alpha(p) in its product form,

        (1 - 1/p) * sum over m = 1..depth of p^-m * log(1 + 1/p + ... + 1/p^m),

    used to cross-check the term-form series (they agree in the limit).
    """
    total = 0.0
    terms = []
    for m in range(1, depth + 1):
        q = p**m
        partial = (q * p - 1) // (p - 1)  # 1 + p + ... + p^m, exact
        terms.append(math.log(partial / q) / q)
    total = math.fsum(terms)
    return (1.0 - 1.0 / p) * total
