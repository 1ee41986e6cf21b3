#!/usr/bin/env python3
"""Export the UCI Wine dataset (178 samples, 13 attributes, 3 classes) to
data/wineew.csv in the loader's delimited format.

Uses the copy bundled with scikit-learn, which mirrors the UCI original.
"""
import csv
import os
import sys

try:
    from sklearn.datasets import load_wine
except ImportError:
    sys.exit("scikit-learn is required: pip install scikit-learn")

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "wineew.csv")


def main() -> None:
    wine = load_wine()
    header = list(wine.feature_names) + ["class"]
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row, target in zip(wine.data, wine.target):
            writer.writerow([repr(float(v)) for v in row] + [f"class_{target}"])
    print(f"wrote {OUT}: {wine.data.shape[0]} rows, {wine.data.shape[1]} features")


if __name__ == "__main__":
    main()
