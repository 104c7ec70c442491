"""All 13 curves for N = 163 and which one is the curve y^2 = h(x) h^iota(x)."""
import time

from splitcm.report import report_document

t0 = time.perf_counter()
doc = report_document(163)
print(f"{len(doc['curves'])} curves in {len(doc['orbits'])} orbits, {time.perf_counter() - t0:.1f}s")
for c in doc["curves"]:
    places = c.get("obstruction", {}).get("places", [])
    print(f"  {c['form']['text']:>16}  digits={c['digits']}  J2={c['igusa']['J2']:>14}  obstruction={places}")
print("intro curve:", doc["intro_fixture_matches"])
