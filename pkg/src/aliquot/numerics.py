"""Compensated summation and certified-value arithmetic.

Every long sum in this package flows through two primitives: an error-free
compensated sum over one block of terms, and a deterministic ordered merge
of block results.  A value is always carried together with a rigorous
absolute error radius covering floating-point effects; truncation tails of
infinite series are added by the callers that know them.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ParameterError

# Machine epsilon used in all error budgets (2^-52, the spacing of doubles
# around 1; deliberately the conservative choice, twice the unit roundoff).
EPS = 2.0 ** -52


@dataclass(frozen=True)
class CertifiedValue:
    """A computed real number with a rigorous absolute error radius.

    The true quantity lies in [value - error_radius, value + error_radius].
    Arithmetic on certified values only ever grows the radius.
    """

    value: float
    error_radius: float

    def __post_init__(self):
        if not (self.error_radius >= 0.0):
            raise ParameterError(f"error_radius must be >= 0, got {self.error_radius}")

    @property
    def lower(self) -> float:
        return self.value - self.error_radius

    @property
    def upper(self) -> float:
        return self.value + self.error_radius

    def widened(self, extra: float) -> "CertifiedValue":
        """Same value with ``extra`` (>= 0) added to the radius."""
        if extra < 0:
            raise ParameterError("widening amount must be >= 0")
        return CertifiedValue(self.value, self.error_radius + extra)


ZERO = CertifiedValue(0.0, 0.0)


@dataclass(frozen=True)
class BlockSumPlan:
    """Partition of the inclusive integer range [range_start, range_end]
    into consecutive blocks of ``block_size`` (last block possibly short).

    An empty plan (range_end < range_start) has no blocks and sums to zero.
    """

    range_start: int
    range_end: int
    block_size: int

    def __post_init__(self):
        if self.block_size <= 0:
            raise ParameterError(f"block_size must be positive, got {self.block_size}")

    def blocks(self) -> list[tuple[int, int]]:
        """Inclusive (lo, hi) bounds of each block, in ascending order."""
        out = []
        lo = self.range_start
        while lo <= self.range_end:
            hi = min(lo + self.block_size - 1, self.range_end)
            out.append((lo, hi))
            lo = hi + 1
        return out


def compensated_sum(terms) -> CertifiedValue:
    """Sum a finite sequence of floats with an error-free transformation.

    The value is the correctly rounded sum (Shewchuk accumulation via
    math.fsum).  The reported radius uses the conservative a-posteriori
    budget n * EPS * sum(|t|), which dominates the true rounding error.

    Raises ParameterError on a non-finite term, identifying its index.
    """
    arr = np.asarray(terms, dtype=np.float64)
    if arr.ndim != 1:
        arr = arr.ravel()
    n = arr.size
    if n == 0:
        return ZERO
    finite = np.isfinite(arr)
    if not finite.all():
        bad = int(np.flatnonzero(~finite)[0])
        raise ParameterError(f"non-finite term at index {bad}: {arr[bad]!r}")
    value = math.fsum(arr.tolist())
    abs_sum = float(np.abs(arr).sum())
    return CertifiedValue(value, n * EPS * abs_sum)


def certified_combine(a: CertifiedValue, b: CertifiedValue, kind: str = "add") -> CertifiedValue:
    """Add or subtract two certified values.

    Radii add, plus a rounding allowance EPS * |result| for the one
    floating-point operation performed.
    """
    if kind == "add":
        value = a.value + b.value
    elif kind == "subtract":
        value = a.value - b.value
    else:
        raise ParameterError(f"kind must be 'add' or 'subtract', got {kind!r}")
    return CertifiedValue(value, a.error_radius + b.error_radius + EPS * abs(value))


def certified_product(a: CertifiedValue, b: CertifiedValue) -> CertifiedValue:
    """Product of two certified values, radius by the bilinear expansion."""
    value = a.value * b.value
    radius = (
        abs(a.value) * b.error_radius
        + abs(b.value) * a.error_radius
        + a.error_radius * b.error_radius
        + EPS * abs(value)
    )
    return CertifiedValue(value, radius)


def combine_blocks(block_values: Sequence[CertifiedValue]) -> CertifiedValue:
    """Merge per-block certified sums in the given (ascending) order."""
    acc = ZERO
    for cv in block_values:
        acc = certified_combine(acc, cv, "add")
    return acc


BlockEval = Callable[[int, int], CertifiedValue]


def map_blocks(
    blocks: Sequence[tuple[int, int]], eval_block: BlockEval, workers: int = 1
) -> list[CertifiedValue]:
    """Evaluate ``eval_block(lo, hi)`` for every block, results in block order.

    Workers only add concurrency; the returned list (and hence any ordered
    merge of it) is bit-identical for every worker count because each block
    is evaluated independently by a pure function.
    """
    if workers <= 1 or len(blocks) <= 1:
        return [eval_block(lo, hi) for lo, hi in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: eval_block(b[0], b[1]), blocks))


def deterministic_block_reduce(
    plan: BlockSumPlan,
    term_generator: Callable,
    *,
    vectorized: bool = False,
    workers: int = 1,
) -> CertifiedValue:
    """Sum term_generator(n) over the plan's range, blockwise and in order.

    Each block is summed independently with compensated_sum; block results
    are merged in ascending block order, so the result does not depend on
    the number of concurrent workers.  With ``vectorized`` the generator is
    called once per block with an int64 ndarray of the block's integers and
    must return the corresponding float array.
    """
    blocks = plan.blocks()
    if not blocks:
        return ZERO

    if vectorized:
        def eval_block(lo: int, hi: int) -> CertifiedValue:
            return compensated_sum(term_generator(np.arange(lo, hi + 1, dtype=np.int64)))
    else:
        def eval_block(lo: int, hi: int) -> CertifiedValue:
            return compensated_sum([term_generator(n) for n in range(lo, hi + 1)])

    return combine_blocks(map_blocks(blocks, eval_block, workers))


def block_sum_parts(values: np.ndarray) -> tuple[float, float, int]:
    """Raw pieces of a compensated block sum: (value, abs_sum, n_terms).

    Helper for sieve-driven kernels that assemble CertifiedValues for
    several quantities out of one streamed segment.
    """
    n = values.size
    if n == 0:
        return 0.0, 0.0, 0
    return math.fsum(values.tolist()), float(np.abs(values).sum()), n


def parts_to_certified(value: float, abs_sum: float, n_terms: int, ops_allowance: int = 64) -> CertifiedValue:
    """CertifiedValue from block_sum_parts output.

    ``ops_allowance`` covers the relative error of computing each term from
    exact inputs (a bounded number of roundings per term), on top of the
    summation budget.
    """
    return CertifiedValue(value, (n_terms + ops_allowance) * EPS * abs_sum)
