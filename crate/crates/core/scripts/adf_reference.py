"""Reference ADF statistics for the seeded series written by the
`dump_adf_inputs` example.

    cargo run --example dump_adf_inputs -- /tmp/adf_inputs
    python3 scripts/adf_reference.py /tmp/adf_inputs > tests/golden/adf_reference.csv
"""
import sys
from pathlib import Path

import numpy as np
from statsmodels.tsa.stattools import adfuller


def main(src):
    print("kind,seed,t_stat,p_value")
    paths = sorted(Path(src).glob("*.csv"), key=lambda p: (p.stem.split("_")[0], int(p.stem.split("_")[1])))
    for path in paths:
        kind, seed = path.stem.split("_")
        y = np.loadtxt(path, skiprows=1)
        stat, pvalue, *_ = adfuller(y, maxlag=1, regression="ct", autolag=None)
        print(f"{kind},{seed},{float(stat)!r},{float(pvalue)!r}")


if __name__ == "__main__":
    main(sys.argv[1])
