"""The variable-length instrument: outcomes, lengths, and blindness.

The encoder measures a coarse-grained block index: outcome k collects
every block within Euclidean distance n*delta of k, and the division by
the cover count C1 makes the family a complete instrument.  The outcome
tells the decoder which subspace is coming, so the message length is
ln(#outcomes) + ln(dim of the outcome's subspace), a random variable.

Two facts drive everything downstream: the outcome statistics depend on
the source only through its average state, and widening delta trades
message length for gentler measurement.
"""

import math

from qvlcode import CodeParams, build_code, outcome_distribution
from qvlcode.codec import average_error_exact, delta_schedule
from qvlcode.linalg import basis_source, pure_source

n = 20
delta, _ = delta_schedule(n)
code = build_code(CodeParams(n=n, d=2, delta=delta))
print(f"n = {n}, delta = {delta:.3f}: {len(code.outcomes)} outcomes, "
      f"cover count C1 = {code.c1_count}")

print()
print("=== outcome table for an i.i.d. (0.75, 0.25) source ===")
dist = outcome_distribution(code, [0.75, 0.25])
print(f"{'outcome':>10} {'probability':>12} {'length/n (nats)':>16}")
shown = 0
for k, p in dist.items():
    if p > 0.01:
        print(f"{str(k):>10} {p:12.6f} {code.coding_length(k) / n:16.4f}")
        shown += 1
print(f"(+ {len(dist) - shown} outcomes below 1%)  entropy H = "
      f"{-(0.75 * math.log(0.75) + 0.25 * math.log(0.25)):.4f} nats/symbol")

print()
print("=== blindness: only the average state matters ===")
basis = basis_source(2, (0.5, 0.5))
rotated = pure_source(2, [[1, 1], [1, -1]], (0.5, 0.5))
d1 = outcome_distribution(code, basis)
d2 = outcome_distribution(code, rotated)
worst = max(abs(d1[k] - d2[k]) for k in d1)
print("two very different ensembles with the same mixture I/2:")
print(f"  largest probability difference over outcomes: {worst:.2e}")

print()
print("=== the radius trades length against disturbance ===")
src = basis_source(2, (0.75, 0.25))
print(f"{'delta':>8} {'mean length/n':>14} {'average error':>14}")
for delta in (0.05, 0.15, 0.3, 0.6):
    code = build_code(CodeParams(n=n, d=2, delta=delta))
    dist = outcome_distribution(code, [0.75, 0.25])
    mean_len = sum(p * code.coding_length(k) for k, p in dist.items()) / n
    err = average_error_exact(code, src)
    print(f"{delta:8.2f} {mean_len:14.4f} {err:14.6f}")
print("wider windows disturb the state less but ship longer messages")

print()
print("=== restricted codes reject unexpected spectra ===")
n_r = 60
params = CodeParams(n=n_r, d=2, delta=0.3, delta1=0.22,
                    spectrum_set=((0.75, 0.25),))
restricted = build_code(params)
print(f"n = {n_r}: accepted {len(restricted.accepted)} of "
      f"{len(restricted.outcomes)} outcomes (plus the classical reject flag)")
for spec in ((0.75, 0.25), (0.5, 0.5)):
    dist = outcome_distribution(restricted, list(spec))
    print(f"  source spectrum {spec}: reject probability {dist[None]:.4f}")
print("the acceptance radius delta1 must dominate the type spread ~1/sqrt(n)")
