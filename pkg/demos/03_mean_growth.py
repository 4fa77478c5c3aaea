# Arithmetic versus geometric mean growth of s(n)/n.
#
# The arithmetic mean of s(2n)/(2n) tends to 5 pi^2/24 - 1 = 1.056..., which
# looks like even aliquot sequences should grow.  But multiplicative
# processes follow the geometric mean, and the average of log(s(2n)/(2n))
# converges to a small *negative* constant: even sequences shrink by about
# 3.3% per step on geometric average.

import math

from aliquot.means import arithmetic_mean, closed_form, log_mean

print("arithmetic means at N = 10^6 against their limits:")
for mean_class in ("all", "even", "odd"):
    value = arithmetic_mean(mean_class, 10**6).value
    print(f"  {mean_class:5s}: {value:.6f}  (limit {closed_form(mean_class):.6f})")

print("\nlog-mean of s(2n)/(2n) over even integers up to N:")
for k in range(2, 7):
    lm = log_mean("even", 10**k)
    print(f"  N = 10^{k}: {lm.value:+.10f}   (radius {lm.error_radius:.1e})")

lm = log_mean("even", 10**6)
print(f"\ngeometric-mean growth factor at N = 10^6: exp({lm.value:.6f}) = "
      f"{math.exp(lm.value):.6f} < 1")

print("\nover all integers the log-mean keeps sliding (no limit):")
for k in range(3, 7):
    print(f"  N = 10^{k}: {log_mean('all', 10**k).value:+.6f}")
