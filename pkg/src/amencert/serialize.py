"""JSON forms for structures, expansions, embeddings, certificates and
measures.

Rationals travel as exact "p/q" strings, never floats.  Leaf labels are ints
for hand-built leaf structures and 0/1 strings like "010" for word leaves.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from .amenability import (
    Certificate,
    ConsistentMeasure,
    GeneratorSpec,
    MalformedCertificateError,
    OmegaVector,
)
from .expansions import Expansion, get_plugin
from .structures import (
    BoronStructure,
    Embedding,
    FiniteDigraph,
    Structure,
    VecSubspace,
    boron_bn,
    kind_of,
)


def frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_frac(s: str) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {s!r}") from exc


def leaf_to_json(leaf) -> Any:
    if isinstance(leaf, tuple):
        return "".join(str(b) for b in leaf)
    return int(leaf)


def leaf_from_json(obj) -> Any:
    if isinstance(obj, str):
        if not obj or any(ch not in "01" for ch in obj):
            raise ValueError(f"bad word leaf {obj!r}")
        return tuple(int(ch) for ch in obj)
    return int(obj)


def structure_to_json(s: Structure) -> dict:
    kind = kind_of(s)
    if kind == "digraph":
        return {"kind": "digraph", "n": s.n, "edges": sorted([a, b] for a, b in s.edges)}
    if kind == "boron":
        if s.leaves and isinstance(s.leaves[0], tuple):
            n = len(s.leaves[0])
            if n >= 1 and s == boron_bn(n):
                return {"kind": "boron_bn", "n": n}
            raise ValueError("word-leaf structures other than the full ones have no literal form")
        reps = sorted(
            {(min(a, b), max(a, b)) + (min(c, d), max(c, d)) for a, b, c, d in s.relation
             if (min(a, b), max(a, b)) <= (min(c, d), max(c, d))}
        )
        return {"kind": "boron", "n_leaves": len(s.leaves), "R": [list(t) for t in reps]}
    return {"kind": "vecspace", "q": s.q, "dim": s.dim}


def structure_from_json(obj: dict) -> Structure:
    try:
        kind = obj["kind"]
    except (TypeError, KeyError):
        raise ValueError("structure literal needs a 'kind' field") from None
    if kind == "digraph":
        return FiniteDigraph(int(obj["n"]), [tuple(e) for e in obj.get("edges", [])])
    if kind == "boron":
        n = int(obj["n_leaves"])
        rel = [tuple(int(x) for x in t) for t in obj.get("R", [])]
        return BoronStructure(tuple(range(n)), rel)
    if kind == "boron_bn":
        return boron_bn(int(obj["n"]))
    if kind == "vecspace":
        return VecSubspace.full(int(obj["q"]), int(obj["dim"]))
    raise ValueError(f"unknown structure kind {kind!r}")


def embedding_to_json(emb: Embedding) -> dict:
    if isinstance(emb.source, VecSubspace):
        return {"images": [list(v) for v in emb.images]}
    return {"images": [leaf_to_json(x) for x in emb.images]}


def embedding_from_json(obj: dict, source: Structure, target: Structure) -> Embedding:
    images = obj["images"]
    if isinstance(source, VecSubspace):
        return Embedding(source, target, tuple(tuple(int(a) for a in v) for v in images))
    return Embedding(source, target, tuple(leaf_from_json(x) for x in images))


def expansion_to_json(e: Expansion) -> dict:
    kind = kind_of(e.base)
    if kind == "digraph":
        return {"class": "s3", "parts": list(e.payload)}
    if kind == "boron":
        order, striples = e.payload
        pos = {leaf: i for i, leaf in enumerate(order)}
        normalized = sorted(
            (t for t in striples if pos[t[0]] < pos[t[1]]),
            key=lambda t: (pos[t[0]], pos[t[1]], pos[t[2]]),
        )
        return {
            "class": "boron",
            "order": [leaf_to_json(x) for x in order],
            "S": [[leaf_to_json(x) for x in t] for t in normalized],
        }
    return {"class": "vecspace", "least_basis": [list(v) for v in e.payload]}


def expansion_from_json(obj: dict, base: Structure) -> Expansion:
    cls = obj.get("class")
    kind = kind_of(base)
    if cls == "s3" and kind == "digraph":
        return Expansion(base, tuple(int(p) for p in obj["parts"]))
    if cls == "boron" and kind == "boron":
        order = tuple(leaf_from_json(x) for x in obj["order"])
        striples = set()
        for t in obj.get("S", []):
            a, b, c = (leaf_from_json(x) for x in t)
            striples.add((a, b, c))
            striples.add((b, a, c))
        return Expansion(base, (order, frozenset(striples)))
    if cls == "vecspace" and kind == "vecspace":
        basis = tuple(tuple(int(a) for a in v) for v in obj["least_basis"])
        return Expansion(base, basis)
    raise ValueError(f"expansion class {cls!r} does not fit a {kind} base")


def certificate_to_json(cert: Certificate) -> dict:
    plugin = get_plugin(cert.plugin_name)
    return {
        "class": cert.plugin_name,
        "base": structure_to_json(cert.base),
        "terms": [
            {
                "A": structure_to_json(gen.A),
                "x": expansion_to_json(gen.x),
                "pi1": embedding_to_json(gen.pi1),
                "pi2": embedding_to_json(gen.pi2),
                "coeff": frac_str(coeff),
            }
            for gen, coeff in cert.combination
        ],
        "realized": {
            plugin.exp_key(e): frac_str(c) for e, c in sorted(
                cert.realized.coeffs.items(), key=lambda item: plugin.exp_key(item[0])
            )
        },
    }


def certificate_from_json(obj: dict) -> Certificate:
    try:
        plugin = get_plugin(obj["class"])
        base = structure_from_json(obj["base"])
        terms = []
        for t in obj["terms"]:
            A = structure_from_json(t["A"])
            x = expansion_from_json(t["x"], A)
            pi1 = embedding_from_json(t["pi1"], A, base)
            pi2 = embedding_from_json(t["pi2"], A, base)
            terms.append((GeneratorSpec(A, x, pi1, pi2), parse_frac(t["coeff"])))
        realized_raw = {k: parse_frac(v) for k, v in obj.get("realized", {}).items()}
    except MalformedCertificateError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCertificateError(f"bad certificate JSON: {exc}") from exc
    by_key = {plugin.exp_key(e): e for e in plugin.expansions_of(base)}
    coeffs = {}
    for k, v in realized_raw.items():
        if k not in by_key:
            raise MalformedCertificateError(f"realized entry {k!r} is not an expansion of the base")
        coeffs[by_key[k]] = v
    return Certificate(
        base=base,
        plugin_name=plugin.name,
        combination=tuple(terms),
        realized=OmegaVector(base, coeffs),
    )


def measure_to_json(measure: ConsistentMeasure) -> dict:
    plugin = get_plugin(measure.plugin_name)
    return {
        "class": measure.plugin_name,
        "base": structure_to_json(measure.base),
        "weights": {
            plugin.exp_key(e): frac_str(w)
            for e, w in sorted(measure.weights.items(), key=lambda item: plugin.exp_key(item[0]))
        },
    }


def measure_from_json(obj: dict) -> ConsistentMeasure:
    plugin = get_plugin(obj["class"])
    base = structure_from_json(obj["base"])
    by_key = {plugin.exp_key(e): e for e in plugin.expansions_of(base)}
    weights = {}
    for k, v in obj["weights"].items():
        if k not in by_key:
            raise ValueError(f"weight entry {k!r} is not an expansion of the base")
        weights[by_key[k]] = parse_frac(v)
    return ConsistentMeasure(base=base, plugin_name=plugin.name, weights=weights)
