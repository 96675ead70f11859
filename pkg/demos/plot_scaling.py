"""
=====================
Scaling sweep
=====================

Band width and search effort as the number of planted flips grows.
"""

# %%
# Sweep
# -----

import io

import numpy as np

from rankfpt.bench import sweep, write_csv

rows = sweep("fast", [200], [0, 10, 20, 30, 40, 50], range(3))
buf = io.StringIO()
write_csv(rows, buf)
print(buf.getvalue())

# %%
# Band width against the square root of the seed cost
# ---------------------------------------------------
#
# psi should grow roughly like sqrt(C) for the seed cost C, and the
# number of prefix sets stays far below n * 2**psi.

for k in sorted({r.k for r in rows}):
    sel = [r for r in rows if r.k == k]
    psi = np.mean([r.psi for r in sel])
    root = np.mean([np.sqrt(r.seed_cost) for r in sel])
    states = np.mean([r.dp_states for r in sel])
    print(f"k={k:3d}  psi={psi:6.1f}  sqrt(C)={root:5.2f}  states={states:9.0f}")
