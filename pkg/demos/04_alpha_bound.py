# Certified upper bound for alpha, the positive half of the growth constant.
#
# alpha = 2*alpha(2) + sum over odd primes of alpha(p), each alpha(p) a
# fast-converging series.  Everything is finite here: series cut at depth
# L or M, primes cut at N, and every cut covered by an explicit tail
# (2*A(2,L), sum of A(p,M), and 1/N for the missing primes).  The upper
# bound is finite sums + float radius + tails; growing N tightens it.

from aliquot.alpha import AlphaParams, alpha_upper_bound

print("N, finite sums, tail total, certified upper bound (L = M = 15):")
for exponent in (3, 4, 5, 6):
    result = alpha_upper_bound(AlphaParams(10**exponent, 15, 15))
    print(
        f"  10^{exponent}: sums={result.sums.value:.10f}"
        f"  tail={result.tail_total:.3e}"
        f"  upper={result.upper_bound:.10f}"
        f"  ({result.n_primes} odd primes, {result.elapsed_seconds:.2f}s)"
    )

print("\nThe dominant tail is the dropped primes (1/N); the series tails sit")
print("around 1e-9 at depth 15, matching the shrinking gap between rows.")
