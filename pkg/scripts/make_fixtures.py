#!/usr/bin/env python3
"""Regenerate the JSON fixtures shipped under tests/fixtures/.

The two certificate fixtures pin the hand-checkable obstruction witnesses on
the oriented 4-path and the 4-leaf word structure; the zeroed variant must
fail verification.
"""
from __future__ import annotations

import json
import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from amencert import (
    BoronStructure,
    Certificate,
    Embedding,
    FiniteDigraph,
    GeneratorSpec,
    boron_bn,
    get_plugin,
    verify_certificate,
)
from amencert.amenability import _realize_combination
from amencert.expansions import Expansion
from amencert.serialize import certificate_to_json, structure_to_json

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def close(triples):
    out = set()
    for a, b, c in triples:
        out.add((a, b, c))
        out.add((b, a, c))
    return frozenset(out)


def dump(name: str, doc: dict) -> None:
    path = OUT / name
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)

    path4 = FiniteDigraph(4, [(0, 1), (1, 2), (2, 3)])
    dump("path4.json", structure_to_json(path4))
    dump("b2.json", structure_to_json(boron_bn(2)))
    dump("f2dim2.json", {"kind": "vecspace", "q": 2, "dim": 2})
    dump("f3dim2.json", {"kind": "vecspace", "q": 3, "dim": 2})

    s3 = get_plugin("s3")
    pair = FiniteDigraph(2, [])
    x = Expansion(pair, (0, 1))
    combo = (
        (
            GeneratorSpec(
                pair, x, Embedding(pair, path4, (0, 2)), Embedding(pair, path4, (0, 3))
            ),
            Fraction(1),
        ),
    )
    cert = Certificate(
        base=path4, plugin_name="s3", combination=combo,
        realized=_realize_combination(path4, s3, combo),
    )
    assert verify_certificate(cert, s3)
    doc = certificate_to_json(cert)
    dump("s3-pinned-cert.json", doc)

    zeroed = dict(doc)
    zeroed["terms"] = [dict(t, coeff="0") for t in doc["terms"]]
    zeroed["realized"] = {}
    dump("s3-zeroed-cert.json", zeroed)

    boron = get_plugin("boron")
    B2 = boron_bn(2)
    w, xx, y, z = (0, 0), (0, 1), (1, 0), (1, 1)
    three = BoronStructure((0, 1, 2), [])
    x3 = Expansion(three, ((0, 1, 2), close([(0, 1, 2)])))
    e2 = Expansion(B2, ((w, xx, z, y), close([(w, xx, z), (w, xx, y), (w, z, y), (xx, z, y)])))
    combo = (
        (
            GeneratorSpec(
                three, x3, Embedding(three, B2, (w, xx, y)), Embedding(three, B2, (w, y, z))
            ),
            Fraction(1),
        ),
        (
            GeneratorSpec(
                B2, e2, Embedding(B2, B2, (w, xx, y, z)), Embedding(B2, B2, (xx, w, z, y))
            ),
            Fraction(-1),
        ),
    )
    cert = Certificate(
        base=B2, plugin_name="boron", combination=combo,
        realized=_realize_combination(B2, boron, combo),
    )
    assert verify_certificate(cert, boron)
    dump("boron-pinned-cert.json", certificate_to_json(cert))


if __name__ == "__main__":
    main()
