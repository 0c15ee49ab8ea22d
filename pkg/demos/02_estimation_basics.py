#!/usr/bin/env python3
"""Drawing samples and recovering parameters by matching moments.

Each law pins (a, b) through its first two moments; solving the two moment
equations gives closed-form estimates.  This script draws reproducible
samples, estimates, and shows the errors melt as n grows.
"""

from momest import (LawSpec, empirical_moments, estimate, sample,
                    theoretical_moments)

LAWS = [
    LawSpec.gamma(2.0, 3.0),
    LawSpec.beta(2.0, 3.0),
    LawSpec.uniform(0.0, 1.0),
    LawSpec.fisher(5.0, 12.0),
]

print("Theoretical moments drive everything:")
for law in LAWS:
    m = theoretical_moments(law)
    print(f"  {law}: m1={m.m1:.6g}  m2={m.m2:.6g}  var={m.variance:.6g}")
print()

print(f"{'law':<16} {'n':>8} {'a_hat':>10} {'b_hat':>10}")
for law in LAWS:
    for n in (100, 10_000, 1_000_000):
        x = sample(law, n, seed=20_26)
        est = estimate(law.kind, empirical_moments(x))
        print(f"{str(law):<16} {n:>8} {est.a_hat:>10.4f} {est.b_hat:>10.4f}")
    print(f"{'':<16} {'truth':>8} {law.p1:>10.4f} {law.p2:>10.4f}")
    print()

# The same seed always returns the same sample, so every number above is
# reproducible bit for bit.
x1 = sample(LAWS[0], 5, seed=7)
x2 = sample(LAWS[0], 5, seed=7)
print("determinism check:", (x1 == x2).all())
