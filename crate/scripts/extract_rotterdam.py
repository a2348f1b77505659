"""Export the rotterdam breast-cancer data to `time,status` CSV.

Endpoint: overall survival. time = dtime / 365.25 (years), status = death.
Requires the `rdatasets` package (bundles the R `survival::rotterdam` table).

    python3 scripts/extract_rotterdam.py data/rotterdam.csv
"""
import sys

import rdatasets

df = rdatasets.data("survival", "rotterdam").sort_values("pid")
out = sys.argv[1] if len(sys.argv) > 1 else "rotterdam.csv"
with open(out, "w") as fh:
    fh.write("time,status\n")
    for dtime, death in zip(df["dtime"], df["death"]):
        fh.write(f"{repr(dtime / 365.25)},{int(death)}\n")
print(f"wrote {len(df)} rows, {int(df['death'].sum())} events to {out}", file=sys.stderr)
