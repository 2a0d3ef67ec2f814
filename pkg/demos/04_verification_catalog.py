"""
The verification catalog
=========================

Run every registered check and summarize the conjecture reports.
"""

from tubex import verify

reports = verify.run_catalog(n_max=4, threads=4)
for r in reports:
    print(f"{r.status:20s} {r.id:40s} assertions={r.assertions}")

wand = next(r for r in reports if r.id == "conjecture:wand")
for row in wand.detail["table"][:10]:
    print(row)

iso = next(r for r in reports if r.id == "isomorphism-search")
print(iso.detail["orbit_counts"], iso.detail["families"])
