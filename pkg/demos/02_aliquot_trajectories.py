# Aliquot trajectories: iterate s until the orbit resolves.
#
# A sequence can terminate at 1 (after hitting a prime), get caught by a
# perfect number or an amicable/sociable cycle, or outlive the step limit.
# Parity is sticky along the way: the parity of s(n) differs from n only
# when n is a square or twice a square, and the tracer records exactly
# those indices.

from aliquot.trajectory import trace

for start in (12, 6, 220, 25, 30, 95):
    r = trace(start, max_steps=40)
    kind = r.classification.kind
    if r.classification.cycle_length is not None:
        kind += f" (length {r.classification.cycle_length})"
    shown = ", ".join(str(t) for t in r.terms[:12])
    if len(r.terms) > 12:
        shown += ", ..."
    print(f"{start:4d}: {shown}")
    print(f"      -> {kind}; parity-change candidates at indices {r.parity_events}")

# Even starts mostly wander; this one takes a while to find a prime.
r = trace(138, max_steps=200)
print(f"\n138 runs for {len(r.terms)} terms, peak {max(r.terms)}, ends: {r.classification.kind}")

# Records serialize with integers as strings, so huge terms survive JSON.
print("\nJSON form of the 220 orbit:")
print(trace(220, 5).to_json(indent=2))
