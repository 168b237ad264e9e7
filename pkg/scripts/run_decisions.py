#!/usr/bin/env python3
"""Decide the three flagship bases and write the artifacts to out/.

The oriented 4-path and the 4-leaf word structure are obstructed (their
automorphism-limit groups carry no invariant measure on the expansion flow);
the binary and ternary planes carry the uniform consistent measure.
"""
from __future__ import annotations

import json
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from amencert import (
    Certificate,
    FiniteDigraph,
    VecSubspace,
    boron_bn,
    decide_base,
    get_plugin,
    verify_certificate,
)
from amencert.serialize import certificate_to_json, measure_to_json

OUT = pathlib.Path(__file__).resolve().parents[1] / "out"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    jobs = [
        ("s3-path4", "s3", FiniteDigraph(4, [(0, 1), (1, 2), (2, 3)])),
        ("boron-b2", "boron", boron_bn(2)),
        ("vec-f2-dim2", "vecspace", VecSubspace.full(2, 2)),
        ("vec-f3-dim2", "vecspace", VecSubspace.full(3, 2)),
    ]
    for name, plugin_name, base in jobs:
        plugin = get_plugin(plugin_name)
        t0 = time.perf_counter()
        outcome = decide_base(base, plugin)
        dt = time.perf_counter() - t0
        if isinstance(outcome, Certificate):
            assert verify_certificate(outcome, plugin)
            doc = certificate_to_json(outcome)
            verdict = f"OBSTRUCTED ({len(outcome.combination)} generator terms)"
        else:
            doc = measure_to_json(outcome)
            verdict = f"consistent measure on {len(outcome.weights)} expansions"
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(f"{name:12s} {verdict:55s} {dt:6.2f}s -> {path}")


if __name__ == "__main__":
    main()
