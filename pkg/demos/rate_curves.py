"""Rates of uniform, layered and flipped BCH codes of length 255.

Prints the three comparisons as a small text table: the two size bounds,
uniform versus layered BCH, and layered versus flipping. Pass a directory
to also write the CSVs.
"""

import sys
from pathlib import Path

from nonuniform.rates_report import figure_curves

curves = figure_curves(1e-4)
grid = [p for p, _ in curves["fig3"].points["uniform-bound"]]
cols = [("fig3", "uniform-bound"), ("fig3", "nonuniform-bound"), ("fig5", "uniform-bch"),
        ("fig5", "layered-bch-estimate"), ("fig7", "flipping-bch-estimate")]
print("p      " + "  ".join(f"{s[:12]:>12}" for _, s in cols))
for i, p in enumerate(grid):
    if i % 3:
        continue
    print(f"{p:<6g} " + "  ".join(f"{curves[f].rates(s)[i]:12.4f}" for f, s in cols))

if len(sys.argv) > 1:
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    for name, c in curves.items():
        (out / f"{name}.csv").write_text(c.to_csv())
