"""Certified lower bound for the signed-series constant beta.

beta = sum over j >= 1 of (1/j) * (2 beta_j(2) - 1) * prod over odd p of beta_j(p),

where beta_j(p) = (1 - 1/p) * sum over m >= 0 of p^-m (p^m/sigma(p^m))^j.
Expanding the products turns each j-term into a sum of the signed
multiplicative function

    beta_j(n) = (-1)^nu(n) g_j(n) h_j(n),
    g_j(n) = (1/n) (n/sigma(n))^j,
    h_j(p^m) = (1 + 1/(p sigma(p^{m-1})))^j - 1,      h_j(1) = 1,

over odd n, times a 2-adic factor sum over powers of two.  Cutting the
odd sum at N leaves two remainders: integers with h_j(n) <= n^-e, whose
total is bounded by (2je N^e)^-1 (2/3)^j, and the finite exceptional set
S = {n : h_j(n) > n^-e}, handled either by exhaustive enumeration (its
members are products of prime powers from a finite set T) or by a
certified moment bound on everything past N.

Every quantity feeding the final bound carries an explicit error radius;
subtractions are always taken on the pessimistic side.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import Factorization
from .checkpoint import BlockRecord, CheckpointStore
from .errors import ParameterError, ResourceError, SSetBudgetExceeded
from .numerics import (
    EPS,
    CertifiedValue,
    certified_product,
    combine_blocks,
    compensated_sum,
    map_blocks,
    parts_to_certified,
    block_sum_parts,
)
from .primes import check_range, iter_factor_segments, primes_in_range

DEFAULT_BLOCK_SIZE = 1 << 20
DEFAULT_K2 = 64
DEFAULT_NODE_BUDGET = 500_000
# Inflation applied to tail bounds whose constants were computed in floats.
_FLOAT_SLOP = 1.0 + 1e-9


def _sigma_pp(p: int, m: int) -> int:
    """sigma(p^m) = 1 + p + ... + p^m, exact."""
    return (p ** (m + 1) - 1) // (p - 1)


def g_prime_power(j: int, p: int, m: int) -> float:
    """g_j(p^m) = p^-m (p^m/sigma(p^m))^j."""
    pm = p**m
    ratio = pm / _sigma_pp(p, m)
    if pm > 10**300:
        return 0.0
    return ratio**j / pm


def h_prime_power(j: int, p: int, m: int) -> float:
    """h_j(p^m) = (1 + 1/(p sigma(p^{m-1})))^j - 1, stably via expm1/log1p."""
    den = p * _sigma_pp(p, m - 1)
    if den > 10**300:
        return 0.0
    return math.expm1(j * math.log1p(1.0 / den))


def h_prime_power_binomial(j: int, p: int, m: int) -> float:
    """Reference form: sum over k = 1..j of C(j,k) / (p sigma(p^{m-1}))^k."""
    den = p * _sigma_pp(p, m - 1)
    total = Fraction(0)
    for k in range(1, j + 1):
        total += Fraction(math.comb(j, k), den**k)
    return float(total)


def g(j: int, f: Factorization) -> float:
    """g_j(n), multiplicatively over the prime powers of n."""
    val = 1.0
    for p, m in f.entries:
        val *= g_prime_power(j, p, m)
    return val


def h(j: int, f: Factorization) -> float:
    """h_j(n), multiplicatively over the prime powers of n; h_j(1) = 1."""
    val = 1.0
    for p, m in f.entries:
        val *= h_prime_power(j, p, m)
    return val


def beta_signed(j: int, f: Factorization) -> float:
    """beta_j(n) = (-1)^nu(n) g_j(n) h_j(n) for odd n; beta_j(1) = 1."""
    if f.n % 2 == 0:
        raise ParameterError(f"beta_signed is defined on odd n, got {f.n}")
    sign = -1.0 if len(f.entries) % 2 else 1.0
    return sign * g(j, f) * h(j, f)


def two_beta2_minus_one(j: int, K2: int = DEFAULT_K2) -> CertifiedValue:
    """2 beta_j(2) - 1 = sum over m >= 1 of g_j(2^m), truncated at K2.

    The dropped tail is below (2/3)^j 2^(1-K2) (each term is at most
    (2/3)^j 2^-m) and is folded into the radius.
    """
    if K2 < 8:
        raise ParameterError(f"K2 must be >= 8, got {K2}")
    terms = []
    for m in range(1, K2 + 1):
        num = 1 << m
        den = (1 << (m + 1)) - 1
        terms.append((num / den) ** j / num)
    return compensated_sum(terms).widened((2.0 / 3.0) ** j * 2.0 ** (1 - K2))


def beta_prime(j: int, p: int, depth: int) -> CertifiedValue:
    """beta_j(p) by its Euler-factor series, truncated at the given depth.

    Tail folded into the radius with the conservative geometric bound
    sum over m > depth of p^-m = p^-depth/(p-1).
    """
    if depth < 4:
        raise ParameterError(f"depth must be >= 4, got {depth}")
    terms = []
    pm = 1
    sig = 1
    for m in range(depth + 1):
        if m > 0:
            pm *= p
            sig = sig * p + 1
        if pm > 10**300:
            break
        terms.append((pm / sig) ** j / pm)
    value = compensated_sum(terms)
    scaled = CertifiedValue(
        (1.0 - 1.0 / p) * value.value,
        value.error_radius + EPS * abs(value.value),
    )
    return scaled.widened(float(p) ** (-depth) / (p - 1))


def error_term(j: int, e: float, N: int) -> float:
    """Dropped-tail bound (2 j e N^e)^-1 (2/3)^j for the odd part above N."""
    if j < 1:
        raise ParameterError(f"j must be >= 1, got {j}")
    if not 0 < e <= 1:
        raise ParameterError(f"e must lie in (0, 1], got {e}")
    if N < 2:
        raise ParameterError(f"N must be >= 2, got {N}")
    return (2.0 / 3.0) ** j / (2.0 * j * e * N**e)


# ---------------------------------------------------------------------------
# The finite sets T and S and the constant M
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimePowerEntry:
    p: int
    m: int
    h_value: float
    g_value: float


def t_set(j: int, e: float, c: float, odd_only: bool = True) -> list[PrimePowerEntry]:
    """All prime powers p^m with h_j(p^m) >= 1/(c (p^m)^e) (inclusive).

    Finite for 0 < e < 1: since h_j(p^m) <= 2j/p^m once p^m >= 2j (checked
    for every scanned entry), nothing beyond p^m = (2jc)^(1/(1-e)) can
    qualify, so scanning prime powers up to that cutoff is exhaustive.
    """
    if not 0.0 < e < 1.0:
        raise ParameterError(f"t_set requires 0 < e < 1, got {e}")
    if c <= 0:
        raise ParameterError(f"c must be positive, got {c}")
    cutoff = (2.0 * j * c) ** (1.0 / (1.0 - e))
    if cutoff > 1e8:
        raise ResourceError(
            f"t_set cutoff {cutoff:.3g} too large to scan; lower c or e"
        )
    limit = int(cutoff) + 1  # one past, so a float-rounded boundary cannot drop
    entries = []
    start = 3 if odd_only else 2
    for p in primes_in_range(start, limit).tolist():
        pm = p
        m = 1
        while pm <= limit:
            hv = h_prime_power(j, p, m)
            if pm >= 2 * j and hv > 2.0 * j / pm * (1 + 1e-12):
                raise AssertionError(
                    f"h bound violated at p={p}, m={m}: {hv} > 2j/p^m"
                )
            if hv * c * pm**e >= 1.0:
                entries.append(PrimePowerEntry(p, m, hv, g_prime_power(j, p, m)))
            m += 1
            pm *= p
    return entries


def m_const(j: int, e: float, odd_only: bool = True) -> float:
    """M = max over n of h_j(n) n^e.

    Only prime powers with h_j(p^m) (p^m)^e > 1, i.e. members of the c = 1
    set, can contribute a factor above 1, so M is the product over their
    primes of the worst per-prime factor (and at least 1, from n = 1).
    """
    worst: dict[int, float] = {}
    for entry in t_set(j, e, 1.0, odd_only):
        val = entry.h_value * entry.p ** (e * entry.m)
        if val > worst.get(entry.p, 1.0):
            worst[entry.p] = val
    result = 1.0
    for val in worst.values():
        result *= max(1.0, val)
    return result


@dataclass(frozen=True)
class SElement:
    n: int
    h_value: float
    g_value: float
    nu: int

    @property
    def signed_value(self) -> float:
        sign = -1.0 if self.nu % 2 else 1.0
        return sign * self.g_value * self.h_value


def s_set(
    j: int,
    e: float,
    odd_only: bool = True,
    *,
    node_budget: int | None = DEFAULT_NODE_BUDGET,
) -> list[SElement]:
    """The exceptional set S = {n : h_j(n) > n^-e}, fully enumerated.

    Members are exactly the products of prime powers from the c = M set
    (one power per prime); depth-first search over those primes, pruning a
    branch as soon as even the best remaining factors cannot push
    h_j(n) n^e above 1.  The inequality is strict, matching the set
    definition (so n = 1 is never a member).

    e = 1 is accepted only for j = 1, where h_1(p^m) p^m =
    p^{m-1}/sigma(p^{m-1}) <= 1 makes the set empty with no enumeration.

    Raises SSetBudgetExceeded (with the partial member count) if the
    search visits more than ``node_budget`` nodes.
    """
    if e == 1.0:
        if j == 1:
            return []
        raise ParameterError("e = 1 is only supported for j = 1 (empty set)")
    target = m_const(j, e, odd_only)
    entries = t_set(j, e, target, odd_only)
    by_prime: dict[int, list[PrimePowerEntry]] = {}
    for entry in entries:
        by_prime.setdefault(entry.p, []).append(entry)
    primes = sorted(by_prime)
    options = []
    for p in primes:
        opts = []
        for entry in by_prime[p]:
            w = math.log(entry.h_value) + e * entry.m * math.log(entry.p)
            opts.append((w, entry))
        options.append(opts)
    best_gain = [max((w for w, _ in opts), default=0.0) for opts in options]
    best_gain = [max(0.0, bg) for bg in best_gain]
    suffix = [0.0] * (len(primes) + 1)
    for i in range(len(primes) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + best_gain[i]

    found: list[SElement] = []
    nodes = 0

    def visit(i: int, w: float, n: int, hv: float, gv: float, cnt: int) -> None:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SSetBudgetExceeded(
                f"exceptional-set search for j={j}, e={e} passed {node_budget} nodes",
                partial_count=len(found),
            )
        if n > 1 and w > 1e-9:
            found.append(SElement(n, hv, gv, cnt))
        elif n > 1 and abs(w) <= 1e-9:
            # Boundary within float noise: re-decide with wide arithmetic.
            if _wide_membership(j, e, n):
                found.append(SElement(n, hv, gv, cnt))
        for t in range(i, len(primes)):
            if w + suffix[t] <= -1e-9:
                break
            for wv, entry in options[t]:
                visit(
                    t + 1,
                    w + wv,
                    n * entry.p**entry.m,
                    hv * entry.h_value,
                    gv * entry.g_value,
                    cnt + 1,
                )

    visit(0, 0.0, 1, 1.0, 1.0, 0)
    found.sort(key=lambda el: el.n)
    return found


def _wide_membership(j: int, e: float, n: int) -> bool:
    """h_j(n) n^e > 1 decided in 60-digit decimal arithmetic."""
    from decimal import Decimal, getcontext

    from .arith import factorize

    getcontext().prec = 60
    log_total = Decimal(0)
    for p, m in factorize(n).entries:
        den = p * _sigma_pp(p, m - 1)
        ratio = (Decimal(den + 1) / Decimal(den)) ** j - 1
        log_total += ratio.ln()
    log_total += Decimal(e) * Decimal(n).ln()
    return log_total > 0


# ---------------------------------------------------------------------------
# Main terms: the odd signed sums and the 2-adic factor
# ---------------------------------------------------------------------------


def _block_odd_signed(lo: int, hi: int, j_list: list[int], block_size: int) -> dict[int, tuple]:
    """Per-j (value, abs_sum, n_terms) of sum of beta_j(n) over odd n in [lo, hi].

    One factored segment pass; g, h, and the sign are accumulated in
    arrays, with one scatter per prime-power event and a vectorized sweep
    for the single prime above sqrt(hi).
    """
    segs = list(iter_factor_segments(lo, hi, segment_size=block_size, odd_only=True))
    per_j_parts: dict[int, list[tuple]] = {j: [] for j in j_list}
    for seg in segs:
        size = seg.n_values.size
        if size == 0:
            continue
        ratio = np.ones(size)
        nu_arr = np.zeros(size, dtype=np.int64)
        h_arrs = {j: np.ones(size) for j in j_list}
        for p, m, idx in seg.events:
            pm = p**m
            sig_m = (p ** (m + 1) - 1) // (p - 1)
            sig_prev = (pm - 1) // (p - 1)
            ratio[idx] *= pm / sig_m
            nu_arr[idx] += 1
            lx = math.log1p(1.0 / (p * sig_prev))
            for j in j_list:
                h_arrs[j][idx] *= math.expm1(j * lx)
        tail = seg.rem > 1
        if tail.any():
            q = seg.rem[tail].astype(np.float64)
            ratio[tail] *= q / (q + 1.0)
            nu_arr[tail] += 1
            lq = np.log1p(1.0 / q)
            for j in j_list:
                h_arrs[j][tail] *= np.expm1(j * lq)
        sign = np.where(nu_arr & 1, -1.0, 1.0)
        inv_n = sign / seg.n_values.astype(np.float64)
        power = np.ones(size)
        last_j = 0
        for j in sorted(j_list):
            power = power * ratio ** (j - last_j)
            last_j = j
            per_j_parts[j].append(block_sum_parts(power * inv_n * h_arrs[j]))
    out = {}
    for j in j_list:
        parts = per_j_parts[j]
        value = math.fsum(p[0] for p in parts)
        abs_sum = math.fsum(p[1] for p in parts)
        n_terms = sum(p[2] for p in parts)
        out[j] = (value, abs_sum, n_terms)
    return out


def odd_signed_sums(
    j_list: list[int],
    N: int,
    *,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
    checkpoint: CheckpointStore | None = None,
    stop_after_blocks: int | None = None,
) -> dict[int, CertifiedValue] | None:
    """sum of beta_j(n) over odd n <= N for every j, deterministically.

    Blocks are aligned to absolute multiples of block_size and merged in
    ascending order, so results are independent of worker count.  With a
    checkpoint store, completed blocks are persisted (flushing roughly
    every 10^7 integers) and validated on resume by recomputing the first
    stored block bit-for-bit.  Returns None when stop_after_blocks ends
    the run early (progress is saved if a checkpoint store was given).
    """
    j_list = sorted(set(j_list))
    check_range(1, N, block_size)
    blocks = []
    start = 1
    while start <= N:
        boundary = ((start // block_size) + 1) * block_size - 1
        end = min(boundary, N)
        blocks.append((start, end))
        start = end + 1

    def compute(lo: int, hi: int) -> dict[int, tuple]:
        return _block_odd_signed(lo, hi, j_list, block_size)

    records: list[BlockRecord] = []
    if checkpoint is not None:
        records = checkpoint.load()
        if records:
            lo0, hi0 = records[0].lo, records[0].hi
            if (lo0, hi0) != blocks[0] or not _records_match(
                records[0], compute(lo0, hi0), j_list
            ):
                records = []
                checkpoint.discard()
    done = len(records)
    todo = blocks[done:]
    if stop_after_blocks is not None:
        todo = todo[: max(0, stop_after_blocks - done)]

    flush_every = max(1, 10**7 // block_size)

    def eval_block(lo: int, hi: int) -> BlockRecord:
        parts = compute(lo, hi)
        index = lo // block_size
        return BlockRecord(
            index=index,
            lo=lo,
            hi=hi,
            parts={str(j): parts[j] for j in j_list},
        )

    pending = map_blocks(todo, eval_block, workers)
    for rec in pending:
        records.append(rec)
        if checkpoint is not None and len(records) % flush_every == 0:
            checkpoint.save(records)
    if checkpoint is not None:
        checkpoint.save(records)
    if len(records) < len(blocks):
        return None

    out = {}
    for j in j_list:
        cvs = [parts_to_certified(*rec.parts[str(j)]) for rec in records]
        out[j] = combine_blocks(cvs)
    return out


def _records_match(stored: BlockRecord, fresh: dict[int, tuple], j_list: list[int]) -> bool:
    for j in j_list:
        key = str(j)
        if key not in stored.parts:
            return False
        if tuple(stored.parts[key]) != tuple(fresh[j]):
            return False
    return True


# ---------------------------------------------------------------------------
# Per-j assembly and the aggregate lower bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BetaJConfig:
    """Parameters for one j-term: odd-sum cutoff N (even), exponent e,
    dyadic truncation depth K2."""

    j: int
    N: int
    e: float
    K2: int = DEFAULT_K2

    def __post_init__(self):
        if self.j < 1:
            raise ParameterError(f"j must be >= 1, got {self.j}")
        if self.N <= 1 or self.N % 2 != 0:
            raise ParameterError(f"N must be even and > 1, got {self.N}")
        if not 0.0 < self.e <= 1.0:
            raise ParameterError(f"e must lie in (0, 1], got {self.e}")
        if self.e == 1.0 and self.j != 1:
            raise ParameterError("e = 1 is only valid for j = 1")
        if self.K2 < 8:
            raise ParameterError(f"K2 must be >= 8, got {self.K2}")


def _scale_down(cv: CertifiedValue, k: int) -> CertifiedValue:
    value = cv.value / k
    return CertifiedValue(value, cv.error_radius / k + EPS * abs(value))


def main_term(
    config: BetaJConfig,
    *,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
    odd_sum: CertifiedValue | None = None,
) -> CertifiedValue:
    """(1/j) * (2 beta_j(2) - 1 truncated) * sum of beta_j(n) over odd n <= N.

    The factorized form: the 2-adic factor multiplies the odd signed sum,
    which covers every even integer whose odd part is at most N (for all
    powers of two at once).  ``odd_sum`` lets callers reuse a shared pass.
    """
    if odd_sum is None:
        sums = odd_signed_sums([config.j], config.N, block_size=block_size, workers=workers)
        odd_sum = sums[config.j]
    z = two_beta2_minus_one(config.j, config.K2)
    return _scale_down(certified_product(z, odd_sum), config.j)


def mixed_region_bound(j: int, e: float, N: int, m_value: float | None = None) -> float:
    """Bound for the even integers a direct sum over n <= N misses
    (odd part at most N but 2^k n_o beyond N): (2/3)^j 2 M / ((1-e) N^e);
    for e = 1 (j = 1) the integral picks up a log factor instead.
    """
    if e == 1.0:
        return (2.0 / 3.0) ** j * 2.0 * (0.5 * math.log(N) + 1.0) / N
    if m_value is None:
        m_value = m_const(j, e)
    return (2.0 / 3.0) ** j * 2.0 * m_value / ((1.0 - e) * N**e)


def main_term_direct(
    config: BetaJConfig,
    *,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
) -> tuple[CertifiedValue, float]:
    """Cross-check form: (1/j) * sum of beta*_j(n) over even n <= N, where
    beta*_j(2^k n_o) = g_j(2^k) beta_j(n_o).

    Returns the certified sum and the mixed-region bound that must be
    added to its uncertainty when used in place of the factorized form.
    """
    j = config.j
    check_range(1, config.N, block_size)

    def eval_block(lo: int, hi: int) -> CertifiedValue:
        parts = []
        for seg in iter_factor_segments(lo, hi, segment_size=block_size, odd_only=False):
            size = seg.n_values.size
            if size == 0:
                continue
            even = seg.n_values % 2 == 0
            ratio = np.ones(size)
            nu_arr = np.zeros(size, dtype=np.int64)
            h_arr = np.ones(size)
            two_part = np.ones(size)
            odd_part = seg.n_values.copy()
            for p, m, idx in seg.events:
                pm = p**m
                if p == 2:
                    two_part[idx] = g_prime_power(j, 2, m)
                    odd_part[idx] //= pm
                    continue
                sig_m = (p ** (m + 1) - 1) // (p - 1)
                sig_prev = (pm - 1) // (p - 1)
                ratio[idx] *= pm / sig_m
                nu_arr[idx] += 1
                h_arr[idx] *= math.expm1(j * math.log1p(1.0 / (p * sig_prev)))
            tail = seg.rem > 1
            if tail.any():
                q = seg.rem[tail].astype(np.float64)
                ratio[tail] *= q / (q + 1.0)
                nu_arr[tail] += 1
                h_arr[tail] *= np.expm1(j * np.log1p(1.0 / q))
            sign = np.where(nu_arr & 1, -1.0, 1.0)
            vals = two_part * sign * (ratio**j) * h_arr / odd_part.astype(np.float64)
            vals = vals[even]
            parts.append(block_sum_parts(vals))
        value = math.fsum(p[0] for p in parts)
        abs_sum = math.fsum(p[1] for p in parts)
        n_terms = sum(p[2] for p in parts)
        return parts_to_certified(value, abs_sum, n_terms)

    blocks = []
    start = 2
    while start <= config.N:
        boundary = ((start // block_size) + 1) * block_size - 1
        end = min(boundary, config.N)
        blocks.append((start, end))
        start = end + 1
    total = combine_blocks(map_blocks(blocks, eval_block, workers))
    bound = mixed_region_bound(j, config.e, config.N)
    return _scale_down(total, j), bound


def s_correction(
    config: BetaJConfig, elements: list[SElement]
) -> CertifiedValue:
    """(1/j) * (2-adic factor) * sum of beta_j(n) over S members above N."""
    terms = [el.signed_value for el in elements if el.n > config.N]
    if not terms:
        return CertifiedValue(0.0, 0.0)
    z = two_beta2_minus_one(config.j, config.K2)
    return _scale_down(certified_product(z, compensated_sum(terms)), config.j)


def s_tail_bound(
    j: int,
    N: int,
    *,
    delta: float = 0.8,
    prime_cutoff: int = 100_000,
) -> float:
    """Certified bound for sum over odd n > N of g_j(n) h_j(n).

    Rankin's device: the sum is at most N^-delta times the full moment

        prod over odd p of (1 + sum over m >= 1 of g_j(p^m) h_j(p^m) p^(m delta)),

    whose factors are evaluated directly for p up to prime_cutoff (power
    tails by the geometric bound h_j(p^m) <= j e^{j/p^m} / p^m) and
    bounded for larger p through the explicit prime-counting inequality
    pi(x) < 1.25506 x / log x.  Covers the skipped exceptional-set
    correction: |sum over S members above N of beta_j| never exceeds it.
    """
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    if prime_cutoff < 1000:
        raise ParameterError("prime_cutoff must be at least 1000")
    power_limit = 10**6
    p = primes_in_range(3, prime_cutoff).astype(np.float64)
    inner = np.zeros(p.size)
    included = np.zeros(p.size)
    m = 1
    count = p.size
    while count > 0:
        pw = p[:count]
        base = pw**m
        sig_m = (pw * base - 1.0) / (pw - 1.0)
        sig_prev = (base - 1.0) / (pw - 1.0)
        gv = (base / sig_m) ** j / base
        hv = np.expm1(j * np.log1p(1.0 / (pw * sig_prev)))
        inner[:count] += gv * hv * base**delta
        included[:count] = m
        m += 1
        count = int(np.searchsorted(p, power_limit ** (1.0 / m), side="right"))
    # Per-prime power tail, starting right after the last included power
    # (every omitted power exceeds power_limit, where h <= j e^{j/limit} x).
    decay = p ** (delta - 2.0)
    coeff = j * math.exp(j / power_limit) / (1.0 - decay.max())
    inner += coeff * p ** ((included + 1.0) * (delta - 2.0))
    log_total = float(np.log1p(inner).sum())
    # Primes above the cutoff.
    s = 2.0 - delta
    coeff_tail = j * math.exp(j / prime_cutoff) / (1.0 - prime_cutoff ** (delta - 2.0))
    prime_tail = (
        coeff_tail
        * 1.25506
        * s
        / (s - 1.0)
        * prime_cutoff ** (1.0 - s)
        / math.log(prime_cutoff)
    )
    return N ** (-delta) * math.exp(log_total + prime_tail) * (1.0 + 1e-6)


@dataclass
class BetaJReport:
    config: BetaJConfig
    main: CertifiedValue
    s_mode: str
    s_set_size: int | None
    s_corr: CertifiedValue
    s_bound: float
    error: float
    contribution_lower: float

    def to_json_dict(self) -> dict:
        return {
            "j": self.config.j,
            "N": self.config.N,
            "e": self.config.e,
            "K2": self.config.K2,
            "main_term": self.main.value,
            "main_term_error_radius": self.main.error_radius,
            "s_mode": self.s_mode,
            "s_set_size": self.s_set_size,
            "s_correction": self.s_corr.value,
            "s_correction_error_radius": self.s_corr.error_radius,
            "s_tail_bound": self.s_bound,
            "error_term": self.error,
            "contribution_lower": self.contribution_lower,
        }


@dataclass
class BetaSummary:
    certified: CertifiedValue
    reports: list[BetaJReport]
    elapsed_seconds: float

    @property
    def lower_bound(self) -> float:
        return self.certified.lower

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "lower_bound": self.lower_bound,
            "value": self.certified.value,
            "error_radius": self.certified.error_radius,
            "elapsed_seconds": self.elapsed_seconds,
            "terms": [r.to_json_dict() for r in self.reports],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def beta_lower(
    configs: list[BetaJConfig],
    *,
    s_mode: str = "auto",
    node_budget: int = DEFAULT_NODE_BUDGET,
    rankin_delta: float = 0.8,
    rankin_prime_cutoff: int = 100_000,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
    checkpoint_dir: str | None = None,
    stop_after_blocks: int | None = None,
) -> BetaSummary | None:
    """Certified lower bound for beta from the given per-j configurations.

    Per j the bound takes main term + exceptional-set correction, minus
    the dropped-tail error term, every piece on its pessimistic side;
    terms with j beyond the configured range are all positive, so
    dropping them keeps the bound valid.

    The exceptional set is handled per ``s_mode``: "enumerate" sums it
    exactly (raising if the node budget is exceeded), "bound" replaces
    the correction by the certified moment bound s_tail_bound, and
    "auto" tries enumeration and falls back to the bound.  Returns None
    if ``stop_after_blocks`` ends the odd-sum pass early (resume later
    with the same configuration and checkpoint_dir).
    """
    if s_mode not in ("auto", "enumerate", "bound"):
        raise ParameterError(f"unknown s_mode {s_mode!r}")
    t0 = time.time()
    js = [c.j for c in configs]
    if len(set(js)) != len(js):
        raise ParameterError("duplicate j in configs")

    by_n: dict[tuple[int, int], list[BetaJConfig]] = {}
    for cfg in configs:
        by_n.setdefault((cfg.N, cfg.K2), []).append(cfg)

    odd_sums: dict[int, CertifiedValue] = {}
    for (N, K2), group in sorted(by_n.items()):
        store = None
        if checkpoint_dir is not None:
            key = {
                "kind": "beta-odd-sum",
                "N": N,
                "block_size": block_size,
                "j_list": sorted(c.j for c in group),
            }
            store = CheckpointStore(checkpoint_dir, "beta-odd", key)
        sums = odd_signed_sums(
            [c.j for c in group],
            N,
            block_size=block_size,
            workers=workers,
            checkpoint=store,
            stop_after_blocks=stop_after_blocks,
        )
        if sums is None:
            return None
        odd_sums.update(sums)

    reports = []
    total_value = 0.0
    total_lower = 0.0
    for cfg in sorted(configs, key=lambda c: c.j):
        main = main_term(cfg, odd_sum=odd_sums[cfg.j])
        err = error_term(cfg.j, cfg.e, cfg.N) * _FLOAT_SLOP
        mode_used = s_mode
        s_size: int | None = None
        s_corr = CertifiedValue(0.0, 0.0)
        s_bound = 0.0
        if cfg.e == 1.0:
            # S is provably empty here; no enumeration, no correction.
            mode_used = "empty"
            s_size = 0
        elif s_mode in ("enumerate", "auto"):
            try:
                elements = s_set(cfg.j, cfg.e, node_budget=node_budget)
                s_size = len(elements)
                s_corr = s_correction(cfg, elements)
                mode_used = "enumerate"
            except SSetBudgetExceeded:
                if s_mode == "enumerate":
                    raise
                mode_used = "bound"
        if mode_used == "bound" or (s_mode == "bound" and cfg.e != 1.0):
            mode_used = "bound"
            z_upper = two_beta2_minus_one(cfg.j, cfg.K2).upper
            s_bound = (
                s_tail_bound(
                    cfg.j, cfg.N, delta=rankin_delta, prime_cutoff=rankin_prime_cutoff
                )
                * z_upper
                / cfg.j
            )
        contribution = main.lower + s_corr.lower - err - s_bound
        # Every j-term of beta is positive (both the 2-adic factor and the
        # odd Euler factors are), so a pessimistic estimate below zero may
        # be replaced by zero without losing validity.
        contribution = max(0.0, contribution)
        reports.append(
            BetaJReport(cfg, main, mode_used, s_size, s_corr, s_bound, err, contribution)
        )
        total_value += main.value + s_corr.value
        total_lower += contribution

    certified = CertifiedValue(total_value, max(0.0, total_value - total_lower))
    return BetaSummary(certified, reports, time.time() - t0)
