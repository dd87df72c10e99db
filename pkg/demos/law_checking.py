"""Running the verification suites programmatically.

The same suites back the `cdcat check` command; each returns a Report
whose JSON form is deterministic. Run with: python3 demos/law_checking.py
"""

import json

from cdcat import suites

# The seven differential axioms on polynomial maps, randomized but seeded.
report = suites.cdc_suite("zmod:5", seed=0, samples=50)
print(report.render())
print()

# The comonad / comonoid / bialgebra laws of Q, exhaustively on all
# generators up to the stated degree. Small sizes finish in seconds.
report = suites.modality_suite(2, dim=1, maxdeg=2)
print(report.render())
print()

# Reports serialize deterministically (no timestamps), so two runs of
# `cdcat check ... --json` are byte-identical.
payload = json.dumps(report.to_dict(), sort_keys=True, indent=2)
print(payload.splitlines()[0])
print("checks recorded:", len(report.checks))
