"""The batch workflow: CSV sheets in, JSON/Markdown reports out.

Writes the bundled case-study sheets and a synthetic full round into a
scratch directory, then drives the same code paths the CLI uses.  The
equivalent shell commands are printed next to each step.
"""

import json
import tempfile
from pathlib import Path

from fuzzydelphi import engine
from fuzzydelphi.ingestion import assemble_round
from fuzzydelphi.report import (
    build_report,
    dumps,
    report_to_markdown,
    round_result_from_report,
)
from fuzzydelphi.samples import load_text, synthetic_round_csvs

workdir = Path(tempfile.mkdtemp(prefix="fuzzydelphi-demo-"))
print(f"scratch directory: {workdir}\n")

print("=== 1. Lay out the per-round sheets ===")
for name in (
    "item27_round1_responses.csv",
    "item27_round2_responses.csv",
    "item27_dimensions.csv",
    "item27_round1_description.csv",
    "item27_round2_description.csv",
):
    (workdir / name).write_text(load_text(name))
    print("  wrote", name)
for sheet, text in synthetic_round_csvs(1).items():
    (workdir / f"synthetic_round1_{sheet}.csv").write_text(text)
    print("  wrote", f"synthetic_round1_{sheet}.csv")

print("\n=== 2. Evaluate a round (CLI: fuzzydelphi evaluate ...) ===")
print("  $ fuzzydelphi evaluate --responses item27_round1_responses.csv \\")
print("      --dimensions item27_dimensions.csv --round 1 --out round1.json")
round_input = assemble_round(
    1,
    responses=(workdir / "item27_round1_responses.csv").read_text(),
    dimensions=(workdir / "item27_dimensions.csv").read_text(),
    descriptions=(workdir / "item27_round1_description.csv").read_text(),
)
result = engine.evaluate_round(round_input)
report = build_report(round_input, result)
(workdir / "round1.json").write_text(dumps(report))
item = report["items"][0]
print(f"  item score {item['score']['index']} alpha {item['score']['alpha']:.3f}"
      f" ('{item['score_label']}'), CI {item['ci']:.3f}, consensual: {report['all_consensual']}")

print("\n=== 3. Derived human summary (CLI: --format md) ===")
print("\n".join(report_to_markdown(report).splitlines()[:10]))
print("  ...")

print("\n=== 4. Reports round-trip losslessly for later comparison ===")
rebuilt = round_result_from_report(json.loads((workdir / "round1.json").read_text()))
print("  rebuilt == in-memory result:", rebuilt == result)
print("  (CLI: fuzzydelphi compare --a round1.json --b round2.json)")
print("  (CLI: fuzzydelphi whatif --report round1.json --epsilon-sweep 0.5:0.95:0.05)")
