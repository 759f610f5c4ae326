"""MacKinnon approximate p-values for the constant-plus-trend ADF
regression on a grid of t-statistics.

    python3 scripts/mackinnon_reference.py > tests/golden/mackinnon_reference.csv
"""
import numpy as np
from statsmodels.tsa.adfvalues import mackinnonp

print("t_stat,p_value")
for t in np.round(np.arange(-17.0, 1.01, 0.25), 2):
    print(f"{float(t)!r},{float(mackinnonp(t, regression='ct', N=1))!r}")
