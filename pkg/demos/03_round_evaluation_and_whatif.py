"""Full-round evaluation with moderator steering: trim, epsilon, stopping.

The published case study only includes one item's raw grids, so this runs
on the bundled deterministic synthetic rounds over the same 45-item,
9-judge, 7-dimension layout.
"""

from fuzzydelphi import engine
from fuzzydelphi.linguistic import from_label, S7
from fuzzydelphi.report import DEFAULT_SCORE_LABELS, format_two_tuple
from fuzzydelphi.samples import synthetic_round_input

round1 = engine.evaluate_round(synthetic_round_input(1))

print("=== Round 1 overview ===")
print(f"items: {len(round1.items)}   epsilon: {round1.epsilon}")
print(f"questionnaire score: {format_two_tuple(round1.qs)} "
      f"'{DEFAULT_SCORE_LABELS[round1.qs.index]}'")
print(f"collectives  CC {format_two_tuple(round1.cc)}  CW {format_two_tuple(round1.cw)}"
      f"  CP {format_two_tuple(round1.cp)}  CAS {format_two_tuple(round1.cas)}")
print(f"all consensual: {round1.all_consensual}")

failing = [i.ordinal for i in round1.items if not (i.cs and i.rs)]
print(f"items needing attention: {len(failing)} -> {failing[:12]}{' ...' if len(failing) > 12 else ''}")

print("\n=== Trimming ===")
for level in range(7):
    visible, hidden = engine.trim(round1, from_label(level, S7))
    print(f"  threshold s{level}: {len(visible)} visible, {hidden} trimmed")

print("\n=== Epsilon what-ifs (reliance only; scores and consensus fixed) ===")
for eps in (0.0, 0.25, 0.5, 0.75, 0.9):
    shifted = engine.what_if_epsilon(round1, eps)
    rs_true = sum(1 for i in shifted.items if i.rs)
    print(f"  epsilon {eps:.2f}: {rs_true}/45 items reliable, "
          f"all consensual: {shifted.all_consensual}")

print("\n=== Stop decision across rounds ===")
round2 = engine.evaluate_round(synthetic_round_input(2))
history = [round1]
print("after round 1:", engine.stop_decision(history, max_iterations=10).value)
history.append(round2)
print("after round 2:", engine.stop_decision(history, max_iterations=10).value)
print(f"round-2 questionnaire score: {format_two_tuple(round2.qs)} "
      f"'{DEFAULT_SCORE_LABELS[round2.qs.index]}'")
