"""High-precision OLS reference for a fixed 20x3 design.

    python3 scripts/ols_reference.py tests/golden

Writes the design and response as exact doubles (ols_design.csv) and the
coefficients, standard errors and residual variance solved from those
doubles in 60-digit arithmetic (ols_reference.csv).
"""
import math
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 60

rows = 20
X = [[1.0, i / 4.0, math.sin(1.3 * i)] for i in range(rows)]
y = [math.cos(0.7 * i) + i / 10.0 for i in range(rows)]

Xm = mp.matrix([[mp.mpf(v) for v in r] for r in X])
ym = mp.matrix([mp.mpf(v) for v in y])
xtx = Xm.T * Xm
beta = mp.lu_solve(xtx, Xm.T * ym)
resid = ym - Xm * beta
s2 = sum(r * r for r in resid) / (rows - 3)
inv = mp.inverse(xtx)

out = Path(sys.argv[1])
with open(out / "ols_design.csv", "w") as f:
    f.write("x0,x1,x2,y\n")
    for r, v in zip(X, y):
        f.write(",".join(repr(c) for c in r + [v]) + "\n")
with open(out / "ols_reference.csv", "w") as f:
    f.write("quantity,index,value\n")
    for k in range(3):
        f.write(f"coefficient,{k},{mp.nstr(beta[k], 25)}\n")
    for k in range(3):
        f.write(f"standard_error,{k},{mp.nstr(mp.sqrt(s2 * inv[k, k]), 25)}\n")
    f.write(f"residual_variance,0,{mp.nstr(s2, 25)}\n")
