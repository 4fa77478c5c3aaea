# Divisor sums and the aliquot map.
#
# s(n) adds up the divisors of n below n.  Primes collapse to 1, perfect
# numbers stand still, and abundant numbers grow.  Everything downstream
# (trajectories, means, the growth constant) iterates or averages this map.

from aliquot import aliquot_sum, factorize, nu, sigma, sigma_oracle

print("n, factorization, sigma(n), s(n):")
for n in (12, 28, 360, 220, 284, 97):
    f = factorize(n)
    pretty = " * ".join(f"{p}^{m}" if m > 1 else f"{p}" for p, m in f.entries)
    print(f"  {n:4d} = {pretty:12s}  sigma={sigma(f):4d}  s={aliquot_sum(n):4d}  nu={nu(f)}")

# The multiplicative formula agrees with brute-force divisor enumeration.
mismatches = sum(sigma(factorize(n)) != sigma_oracle(n) for n in range(1, 5001))
print(f"\nsigma vs divisor enumeration on 1..5000: {mismatches} mismatches")

# Perfect numbers are exactly the fixed points of s.
fixed = [n for n in range(2, 10**4) if aliquot_sum(n) == n]
print(f"fixed points of s below 10^4: {fixed}")

# Amicable pairs swap under s.
print(f"s(220) = {aliquot_sum(220)}, s(284) = {aliquot_sum(284)}")
