"""Quick oracle checks runnable from the command line (alq selftest).

Each check exercises one computation against an independent reference:
divisor enumeration against the multiplicative sigma, sieve counts against
known prime counts, the closed-form h values against their binomial sums,
the exceptional-set fixture, the trajectory fixtures, and worker-count
bit-identity for one block sum of each flavor.
"""

from __future__ import annotations

import math

from .alpha import AlphaParams, alpha_upper_bound
from .arith import factorize, sigma, sigma_oracle
from .beta import beta_signed, h_prime_power, h_prime_power_binomial, odd_signed_sums, s_set
from .means import log_mean
from .primes import primes_in_range
from .trajectory import trace


def _check(name: str, ok: bool, detail: str = "") -> bool:
    status = "pass" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"[{status}] {name}{suffix}")
    return ok


def run_selftest() -> bool:
    results = []

    bad = [n for n in range(1, 2001) if sigma(factorize(n)) != sigma_oracle(n)]
    results.append(_check("sigma vs divisor enumeration, n <= 2000", not bad))

    results.append(
        _check("prime count to 1e6", primes_in_range(2, 10**6).size == 78498)
    )

    h_ok = all(
        abs(h_prime_power(j, p, m) - h_prime_power_binomial(j, p, m))
        <= 1e-15 * max(1.0, h_prime_power(j, p, m))
        for j in (1, 2, 4, 6)
        for p in (3, 5, 13)
        for m in (1, 2, 3)
    )
    results.append(_check("h closed form vs binomial sum", h_ok))

    results.append(_check("exceptional set (j=1, e=1) empty", s_set(1, 1.0) == []))
    members = [el.n for el in s_set(2, 0.5)]
    results.append(_check("exceptional set (j=2, e=0.5)", members == [3, 15, 21, 105],
                          str(members)))

    r12 = trace(12, 50)
    results.append(
        _check(
            "trajectory of 12",
            r12.terms == [12, 16, 15, 9, 4, 3, 1]
            and r12.classification.kind == "terminates_at_1",
        )
    )
    r220 = trace(220, 50)
    results.append(
        _check(
            "trajectory of 220",
            r220.classification.kind == "cycle"
            and r220.classification.cycle_length == 2,
        )
    )

    lm = log_mean("even", 10**4)
    results.append(
        _check(
            "even log mean at 1e4",
            abs(lm.value - (-0.0335201796)) < 1e-8,
            f"{lm.value:.10f}",
        )
    )

    a1 = alpha_upper_bound(AlphaParams(10**4, 15, 15), workers=1)
    a4 = alpha_upper_bound(AlphaParams(10**4, 15, 15), workers=4)
    results.append(
        _check(
            "alpha block sum worker bit-identity",
            (a1.sums.value, a1.upper_bound) == (a4.sums.value, a4.upper_bound),
        )
    )

    b1 = odd_signed_sums([2], 10**5, block_size=1 << 14, workers=1)[2]
    b4 = odd_signed_sums([2], 10**5, block_size=1 << 14, workers=4)[2]
    results.append(
        _check("beta block sum worker bit-identity", b1.value == b4.value)
    )

    sig = beta_signed(1, factorize(15))
    results.append(
        _check("signed series value at 15", math.isclose(sig, 1.0 / 360.0, rel_tol=1e-12))
    )

    ok = all(results)
    print(f"{sum(results)}/{len(results)} checks passed")
    return ok
