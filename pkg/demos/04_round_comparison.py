"""Comparing two validation rounds, as the moderator does before stopping.

Uses the bundled published outcome summary of the case study's two rounds
(45 items) to show the per-item deltas and the questionnaire-level shift.
"""

from fuzzydelphi import engine
from fuzzydelphi.report import DEFAULT_SCORE_LABELS, format_two_tuple
from fuzzydelphi.samples import published_round_result

round1 = published_round_result(1)
round2 = published_round_result(2)
cmp = engine.compare_rounds(round1, round2)

print("=== Questionnaire-level shift (beta deltas on the 7-label scale) ===")
print(f"  clarity          {cmp.delta_cc:+.3f}")
print(f"  writing          {cmp.delta_cw:+.3f}")
print(f"  presence         {cmp.delta_cp:+.3f}")
print(f"  answering scale  {cmp.delta_cas:+.3f}")
print(f"  overall score    {cmp.delta_qs:+.3f}")
print(f"  label transition: '{DEFAULT_SCORE_LABELS[round1.qs.index]}' -> "
      f"'{DEFAULT_SCORE_LABELS[round2.qs.index]}'")

flips = [c for c in cmp.items if c.cs_flipped or c.rs_flipped]
print(f"\n=== {len(flips)} items flipped a status between rounds ===")
print("item  dIS      dCI      dRI    CS       RS")
for c in flips:
    print(
        f"{c.ordinal:>4}  {c.delta_score_beta:+.3f}  {c.delta_ci:+.3f}  "
        f"{c.delta_ri:+.2f}  {str(c.cs_a):<5}->{c.cs_b:<5}  {str(c.rs_a):<5}->{c.rs_b}"
    )

print(f"\nitems still failing in round 2: {list(cmp.still_failing) or 'none'}")

i27 = cmp.items[26]
print(
    f"\nItem 27 closeup: consensus index moved {i27.delta_ci:+.3f} "
    f"and both statuses turned positive."
)
