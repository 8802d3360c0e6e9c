"""The bundled case-study item, stage by stage, across both rounds.

Item 27 of the 45-item b-learning questionnaire is the one item whose full
9-judge response grid was published for both validation rounds; this
script replays its evaluation and prints every intermediate value the
moderator would inspect.
"""

from fuzzydelphi import engine
from fuzzydelphi.report import DEFAULT_SCORE_LABELS, format_two_tuple
from fuzzydelphi.samples import load_item27_round

for round_number in (1, 2):
    round_input = load_item27_round(round_number)
    item_text = round_input.questionnaire.items[0].description
    print(f"=== Round {round_number}: {item_text}")

    result = engine.evaluate_round(round_input).items[0]

    print("\nUnified assessments (9 judges x 4 criteria, 13-label scale):")
    for name, row in zip(round_input.judge_names, result.unified):
        print(f"  {name}: ", "  ".join(f"s{t.index:<2}" for t in row))

    print("\nPer-criterion collectives (dimension-weighted over judges):")
    for crit, y in zip(("clarity", "writing", "presence", "answ. scale"), result.y):
        print(f"  {crit:<12} {format_two_tuple(y)}  beta {y.beta:.3f}")

    print(f"\nCollective opinion Z: {format_two_tuple(result.z)}")
    print(
        f"Item score (7-label scale): {format_two_tuple(result.score)}"
        f"  '{DEFAULT_SCORE_LABELS[result.score.index]}'"
    )
    print(f"Collective relevance: {result.w_avg:.3f}")

    print("\nPer-judge separation from the collective:")
    print(" ", "  ".join(f"{r:.3f}" for r in result.rho))
    print(
        f"Consensus index {result.ci:.3f} -> consensus {'reached' if result.cs else 'NOT reached'}"
    )
    print(
        f"Reliance index {result.ri:.2f} at epsilon 0.75 -> "
        f"{'reliable' if result.rs else 'NOT reliable'}"
    )
    print()

print("Round 1 flagged the item (writing criterion dragged the collective);")
print("after rewording, round 2 reaches consensus and full reliance.")
