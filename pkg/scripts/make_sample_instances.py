#!/usr/bin/env python3
"""Write a handful of sample instance documents and verify them.

Creates JSON files under the output directory (default ./sample_instances)
covering the standard families, then runs the verifier on each and prints
the exit code and certificate mode, mirroring what

    python -m sepidem verify <file>

would report.
"""

import argparse
import json
import pathlib

from sepidem.cli import main as cli_main

SAMPLES = {
    "e0_n3.json": {"E": {"kind": "E0", "n": 3}},
    "involutive_diag.json": {
        "E": {"kind": "involutive_twisted", "r": [["7/5", "0"], ["0", "1/5"]]}
    },
    "twisted_normalized.json": {
        "E": {
            "kind": "twisted",
            "r": [["1", "1/2"], ["0", "1"]],
            "s": [["1", "0"], ["1/3", "1"]],
            "normalize": True,
        }
    },
    "nilpotent.json": {
        "E": {"kind": "twisted", "r": [["1", "0"], ["0", "1"]], "s": [["1", "0"], ["0", "-1"]]}
    },
    "nonfull_n2.json": {"E": {"kind": "nonfull", "n": 2}},
    "direct_sum.json": {
        "E": {
            "kind": "direct_sum",
            "components": [
                {"kind": "E0", "n": 1},
                {"kind": "involutive_twisted", "r": [["7/5", "0"], ["0", "1/5"]]},
            ],
        }
    },
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="sample_instances")
    args = ap.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in SAMPLES.items():
        path = out / name
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        code = cli_main(["verify", str(path)])
        print(f"{name}: exit {code}")


if __name__ == "__main__":
    main()
