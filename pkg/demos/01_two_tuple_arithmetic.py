"""Two-tuple linguistic arithmetic from the ground up.

Shows the value representation, lossless aggregation, and how scales of
different granularity are made commensurable through the unified level.
"""

from fuzzydelphi.linguistic import (
    DEFAULT_HIERARCHY,
    S3,
    S5,
    S7,
    S13,
    delta_inv,
    delta_of,
    from_label,
    transform,
    unified_level,
    weighted_extended_mean,
)

print("=== Labels and 2-tuples ===")
print("A 7-label scale runs s0..s6; a plain label is a 2-tuple with alpha 0:")
print("  from_label(4, S7) ->", from_label(4, S7))

print("\nComputed values rarely land on a label; the symbolic translation")
print("alpha keeps the exact position. beta = index + alpha:")
t = delta_of(5.893, S7)
print("  delta_of(5.893, S7) ->", t, " beta:", delta_inv(t))

print("\n=== Unified level ===")
print("Deltas 2, 4, 6 have lcm 12, so {3,5,7} unifies on a 13-label scale:")
print("  unified_level({3,5,7}) ->", unified_level({3, 5, 7}))

print("\nEvery label of every member scale lands exactly on a unified label:")
for scale in (S3, S5, S7):
    row = [transform(from_label(i, scale), scale, S13) for i in range(scale.granularity)]
    print(f"  S{scale.granularity}:", [f"s{t.index}" for t in row])

print("\n=== Aggregation ===")
print("Three experts at unified positions 6, 9, 8 with weights .2/.6/.2:")
z = weighted_extended_mean(
    [from_label(6, S13), from_label(9, S13), from_label(8, S13)], [0.2, 0.6, 0.2]
)
print("  collective:", z, " (beta", delta_inv(z), ")")

print("\nRetranslating to the 7-label reporting scale for display:")
print("  ", DEFAULT_HIERARCHY.retranslate(z))
