#!/usr/bin/env python3
# Copyright 2026 The LHT Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Download UCI datasets and convert them to headed CSV with a `class` column.

Usage: fetch_datasets.py [--force] [--from DIR] [name ...]

Without names, every dataset whose CSV is missing is fetched. Existing files
are left alone unless --force is given. With --from DIR the raw files are read
from DIR (named as in the URL) instead of being downloaded.
"""

import argparse
import csv
import hashlib
import io
import pathlib
import sys
import urllib.request
import zipfile

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases/"
HERE = pathlib.Path(__file__).resolve().parent


def rows_from_text(text, sep=","):
    for line in text.splitlines():
        line = line.strip()
        if line:
            yield line.split(sep) if sep else line.split()


def wine(raw):
    header = ["class", "alcohol", "malic_acid", "ash", "alcalinity_of_ash",
              "magnesium", "total_phenols", "flavanoids",
              "nonflavanoid_phenols", "proanthocyanins", "color_intensity",
              "hue", "od280_od315", "proline"]
    return header, list(rows_from_text(raw))


def wdbc(raw):
    stats = ["radius", "texture", "perimeter", "area", "smoothness",
             "compactness", "concavity", "concave_points", "symmetry",
             "fractal_dimension"]
    header = ["class"] + [f"{p}_{s}" for p in ("mean", "se", "worst")
                          for s in stats]
    return header, [r[1:] for r in rows_from_text(raw)]


def banknote(raw):
    header = ["class", "variance", "skewness", "curtosis", "entropy"]
    return header, [[r[-1]] + r[:-1] for r in rows_from_text(raw)]


def seeds(raw):
    header = ["class", "area", "perimeter", "compactness", "kernel_length",
              "kernel_width", "asymmetry", "groove_length"]
    return header, [[r[-1]] + r[:-1] for r in rows_from_text(raw, sep=None)]


def spambase(raw):
    rows = list(rows_from_text(raw))
    header = [f"f{j}" for j in range(len(rows[0]) - 1)] + ["spam"]
    return header, rows


def rice(raw):
    # ARFF inside a zip archive.
    with zipfile.ZipFile(io.BytesIO(raw)) as z:
        name = next(n for n in z.namelist() if n.lower().endswith(".arff"))
        text = z.read(name).decode("utf-8", "replace")
    attributes, rows, in_data = [], [], False
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        lower = line.lower()
        if lower.startswith("@attribute"):
            attributes.append(line.split()[1].strip("'\""))
        elif lower.startswith("@data"):
            in_data = True
        elif in_data:
            r = [v.strip() for v in line.split(",")]
            rows.append([r[-1]] + r[:-1])
    return ["class"] + attributes[:-1], rows


DATASETS = {
    "wine": (UCI + "wine/wine.data", wine),
    "wdbc": (UCI + "breast-cancer-wisconsin/wdbc.data", wdbc),
    "banknote": (UCI + "00267/data_banknote_authentication.txt", banknote),
    "seeds": (UCI + "00236/seeds_dataset.txt", seeds),
    "spambase": (UCI + "spambase/spambase.data", spambase),
    "rice": ("https://archive.ics.uci.edu/static/public/545/"
             "rice+cammeo+and+osmancik.zip", rice),
}


def fetch(url, source_dir):
    if source_dir:
        return (pathlib.Path(source_dir) / url.rsplit("/", 1)[-1]).read_bytes()
    with urllib.request.urlopen(url, timeout=60) as response:
        return response.read()


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("names", nargs="*", metavar="name",
                        help="any of: " + ", ".join(DATASETS))
    parser.add_argument("--force", action="store_true")
    parser.add_argument("--from", dest="source_dir")
    parser.add_argument("--out", default=str(HERE))
    args = parser.parse_args()
    unknown = set(args.names) - set(DATASETS)
    if unknown:
        parser.error("unknown dataset(s): " + ", ".join(sorted(unknown)))

    failed = False
    for name in args.names or DATASETS:
        target = pathlib.Path(args.out) / f"{name}.csv"
        if target.exists() and not args.force:
            print(f"{name}: {target} exists, skipped")
            continue
        url, convert = DATASETS[name]
        try:
            raw = fetch(url, args.source_dir)
            header, rows = convert(raw if name == "rice" else raw.decode())
        except Exception as e:  # report and continue with the rest
            print(f"{name}: failed: {e}", file=sys.stderr)
            failed = True
            continue
        with open(target, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        digest = hashlib.sha256(target.read_bytes()).hexdigest()
        print(f"{name}: {len(rows)} rows -> {target} (sha256 {digest})")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
