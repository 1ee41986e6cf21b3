#!/usr/bin/env python3
"""Fetch the UCI Breast Cancer Wisconsin (Original) dataset (699 samples,
9 attributes, 2 classes) and write data/breastcancer.csv in the loader's
delimited format.

Requires network access to archive.ics.uci.edu. The raw file has 16 missing
values ('?') in the bare_nuclei column; they are replaced with the column
mode (1) so every cell is numeric, and the sample-id column is dropped.
"""
import csv
import io
import os
import sys
import urllib.request
import zipfile

URL = "https://archive.ics.uci.edu/static/public/15/breast+cancer+wisconsin+original.zip"
MEMBER = "breast-cancer-wisconsin.data"
OUT = os.path.join(os.path.dirname(__file__), "..", "data", "breastcancer.csv")

FEATURES = [
    "clump_thickness",
    "cell_size_uniformity",
    "cell_shape_uniformity",
    "marginal_adhesion",
    "single_epithelial_cell_size",
    "bare_nuclei",
    "bland_chromatin",
    "normal_nucleoli",
    "mitoses",
]
CLASS_NAMES = {"2": "benign", "4": "malignant"}


def main() -> None:
    print(f"downloading {URL} ...")
    with urllib.request.urlopen(URL, timeout=60) as resp:
        payload = resp.read()
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        raw = zf.read(MEMBER).decode("ascii")

    rows = []
    for line in raw.splitlines():
        line = line.strip()
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != 11:
            sys.exit(f"unexpected column count in: {line}")
        rows.append(cells[1:])  # drop sample id

    # mode imputation for the 16 '?' cells in bare_nuclei
    counts = {}
    for r in rows:
        for c in r[:-1]:
            if c != "?":
                counts[c] = counts.get(c, 0) + 1
    mode = max(counts, key=lambda k: (counts[k], -int(k)))
    n_imputed = 0
    for r in rows:
        for i, c in enumerate(r[:-1]):
            if c == "?":
                r[i] = mode
                n_imputed += 1

    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(FEATURES + ["class"])
        for r in rows:
            writer.writerow(r[:-1] + [CLASS_NAMES[r[-1]]])
    print(f"wrote {OUT}: {len(rows)} rows, {len(FEATURES)} features "
          f"({n_imputed} missing cells imputed with mode={mode})")


if __name__ == "__main__":
    main()
