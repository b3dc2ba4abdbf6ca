"""Regenerate the committed fixture datasets.

Both fixtures replicate a published worked example that drew its data from
the legacy NumPy global RandomState seeded with 101, so they use that
stream on purpose (the library's own synthesizer uses the modern
Generator API). The legacy stream is frozen by NumPy's compatibility
policy, which makes these files reproducible byte-for-byte:

    dataset1: X1, X2 i.i.d. uniform(0,1) draws, standardized
              (population moments); Y = X1 - X2.
    dataset2: same X1; X2 replaced by 0.5*X1 + sqrt(0.75)*X2, giving a
              sample correlation of about 0.496 with X1; Y = X1 - X2.

Run from the repository root:

    python3 tools/make_fixtures.py
"""
from pathlib import Path

import numpy as np

from tdabm.tables import Table

OUT_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    np.random.seed(101)
    n = 1000
    x1 = np.random.uniform(size=n)
    x2 = np.random.uniform(size=n)
    x1 = (x1 - x1.mean()) / x1.std()
    x2 = (x2 - x2.mean()) / x2.std()
    rho = 0.5
    x2a = rho * x1 + np.sqrt(1.0 - rho * rho) * x2

    OUT_DIR.mkdir(exist_ok=True)
    for name, a, b in [("dataset1", x1, x2), ("dataset2", x1, x2a)]:
        y = a - b
        rows = tuple(
            (float(p), float(q), float(r)) for p, q, r in zip(a, b, y)
        )
        path = OUT_DIR / f"{name}.csv"
        Table(("X1", "X2", "Y"), rows).to_csv(path)
        print(f"wrote {path} ({n} rows)")


if __name__ == "__main__":
    main()
