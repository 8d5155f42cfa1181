#!/usr/bin/env python3
"""Download and normalize the four small benchmark datasets into data/.

Each dataset is written as a headered CSV with the decision column last,
which is exactly what `fuzzyrough benchmark` and the acceptance suite expect:

  haberman      306 x 3   survival after surgery (UCI)
  wisconsin     683 x 9   original breast cancer, rows with missing cells
                          dropped and the id column removed (UCI)
  somerville    143 x 6   happiness survey, file is UTF-16 encoded (UCI)
  appendicitis  106 x 7   KEEL classification dataset (.dat with @ header)

Run from the repository root:  python scripts/fetch_datasets.py [--out data]
Without network access the script reports what failed and leaves existing
files untouched.
"""

import argparse
import csv
import io
import os
import sys
import urllib.request
import zipfile

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
SOURCES = {
    "haberman": f"{UCI}/haberman/haberman.data",
    "wisconsin": f"{UCI}/breast-cancer-wisconsin/breast-cancer-wisconsin.data",
    "somerville": f"{UCI}/00479/SomervilleHappinessSurvey2015.csv",
    "appendicitis": "https://sci2s.ugr.es/keel/dataset/data/classification/appendicitis.zip",
}


def fetch(url: str) -> bytes:
    with urllib.request.urlopen(url, timeout=30) as response:
        return response.read()


def write_csv(path: str, header: list, rows: list) -> None:
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def prepare_haberman(raw: bytes, path: str) -> None:
    rows = [line.split(",") for line in raw.decode("ascii").strip().splitlines()]
    write_csv(path, ["age", "year", "nodes", "label"], rows)


def prepare_wisconsin(raw: bytes, path: str) -> None:
    rows = []
    for line in raw.decode("ascii").strip().splitlines():
        cells = line.split(",")
        if "?" in cells:
            continue
        rows.append(cells[1:])  # drop the id column
    header = [f"f{i}" for i in range(9)] + ["label"]
    write_csv(path, header, rows)


def prepare_somerville(raw: bytes, path: str) -> None:
    text = raw.decode("utf-16")
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows = [r for r in reader if r]
    # decision column D comes first in the source; move it last
    d_idx = header.index("D")
    attrs = [h for i, h in enumerate(header) if i != d_idx]
    out = [[c for i, c in enumerate(r) if i != d_idx] + [r[d_idx]] for r in rows]
    write_csv(path, attrs + ["label"], out)


def prepare_appendicitis(raw: bytes, path: str) -> None:
    with zipfile.ZipFile(io.BytesIO(raw)) as zf:
        name = next(n for n in zf.namelist() if n.endswith(".dat"))
        text = zf.read(name).decode("ascii")
    rows = []
    in_data = False
    for line in text.splitlines():
        line = line.strip()
        if line.lower() == "@data":
            in_data = True
            continue
        if not in_data or not line or line.startswith("@"):
            continue
        rows.append([c.strip() for c in line.split(",")])
    header = [f"f{i}" for i in range(len(rows[0]) - 1)] + ["label"]
    write_csv(path, header, rows)


PREPARERS = {
    "haberman": prepare_haberman,
    "wisconsin": prepare_wisconsin,
    "somerville": prepare_somerville,
    "appendicitis": prepare_appendicitis,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="data", help="output directory (default: data)")
    args = parser.parse_args(argv)
    os.makedirs(args.out, exist_ok=True)

    failures = []
    for name, url in SOURCES.items():
        path = os.path.join(args.out, f"{name}.csv")
        if os.path.exists(path):
            print(f"{path} already present, skipping")
            continue
        try:
            PREPARERS[name](fetch(url), path)
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures.append(name)
            print(f"could not fetch {name}: {type(exc).__name__}: {exc}", file=sys.stderr)

    if failures:
        print(f"\nfailed: {failures}. If this machine has no network access, download "
              "the files listed in SOURCES elsewhere, run this script there, and copy "
              f"the CSVs into {args.out}/.", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
