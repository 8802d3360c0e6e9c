"""Driving the HTTP API the dashboard consumes.

Runs the service in-process (no port needed) and exercises the session
lifecycle: upload rounds, read filtered/sorted/trimmed views, sweep the
reliance threshold, compare rounds.  Against a live server the same calls
go to http://localhost:8080 (start one with `fuzzydelphi-serve`).
"""

from fastapi.testclient import TestClient

from fuzzydelphi.samples import synthetic_round_csvs
from fuzzydelphi.service import create_app

client = TestClient(create_app())

print("=== 1. Create a session ===")
session_id = client.post("/api/sessions").json()["session_id"]
print("  POST /api/sessions ->", session_id)

print("\n=== 2. Upload two rounds (multipart CSV sheets) ===")
for round_number in (1, 2):
    sheets = synthetic_round_csvs(round_number)
    response = client.post(
        f"/api/sessions/{session_id}/rounds/{round_number}",
        files={
            "responses": ("responses.csv", sheets["responses"], "text/csv"),
            "dimensions": ("dimensions.csv", sheets["dimensions"], "text/csv"),
            "descriptions": ("descriptions.csv", sheets["descriptions"], "text/csv"),
        },
    )
    body = response.json()
    print(f"  round {round_number}: {response.status_code}, "
          f"all consensual: {body['all_consensual']}, "
          f"QS label: {body['questionnaire']['questionnaire_score_label']}")

base = f"/api/sessions/{session_id}/rounds/1/results"

print("\n=== 3. Views are computed per request, storage never mutates ===")
view = client.get(base, params={"trim": "s4", "sort": "ci:asc", "filter": "consensus"}).json()
print(f"  trim=s4 sort=ci:asc filter=consensus -> {view['visible']} rows, "
      f"{view['hidden_count']} trimmed")
worst = view["rows"][0]
print(f"  lowest consensus: item {worst['ordinal']} (CI {worst['ci']:.3f})")

search = client.get(base, params={"q": "videos"}).json()
print(f"  q='videos' -> {search['visible']} matching items")

print("\n=== 4. Reliance threshold what-ifs ===")
for eps in (0.75, 0.5, 0.0):
    view = client.get(base, params={"epsilon": eps}).json()
    reliable = sum(1 for row in view["rows"] if row["rs"])
    print(f"  epsilon {eps:.2f}: {reliable}/45 reliable, "
          f"all consensual: {view['all_consensual']}")

print("\n=== 5. Round comparison ===")
cmp = client.get(f"/api/sessions/{session_id}/compare", params={"a": 1, "b": 2}).json()
print(f"  QS delta {cmp['questionnaire']['delta_questionnaire_score']:+.3f}, "
      f"label '{cmp['a_label']}' -> '{cmp['b_label']}', "
      f"still failing: {cmp['still_failing'] or 'none'}")
