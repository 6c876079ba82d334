#!/usr/bin/env python3
"""Regenerate data/santafe_laser.txt (Santa Fe competition set A, 10093 samples).

The series is taken from the reservoirpy wheel (MIT licensed), which ships it as
reservoirpy/datasets/santafe_laser.npy. Values are integer intensities and are
written one per line.
"""

import argparse
import io
import pathlib
import subprocess
import sys
import tempfile
import zipfile

import numpy as np

MEMBER = "reservoirpy/datasets/santafe_laser.npy"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=pathlib.Path(__file__).resolve().parent.parent / "data" / "santafe_laser.txt",
                    type=pathlib.Path)
    ap.add_argument("--version", default="0.4.2", help="reservoirpy version to download")
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run([sys.executable, "-m", "pip", "download", f"reservoirpy=={args.version}", "--no-deps",
                        "--only-binary", ":all:", "-d", tmp, "-q"], check=True)
        wheel = next(pathlib.Path(tmp).glob("reservoirpy-*.whl"))
        with zipfile.ZipFile(wheel) as zf:
            series = np.load(io.BytesIO(zf.read(MEMBER))).ravel()

    if not np.all(series == np.round(series)):
        raise SystemExit("expected integer intensities")
    args.out.write_text("".join(f"{int(v)}\n" for v in series))
    print(f"wrote {series.size} samples to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
