"""Shared constants and labeled objects used across the test modules.

The 4-path tuple table and the Type A-E labeling of the 40 expansions of the
4-leaf word structure are frozen here so fibers and certificates can be
asserted by name.
"""
from __future__ import annotations

from amencert import BoronStructure, Embedding, FiniteDigraph, boron_bn
from amencert.expansions import Expansion

# the twelve admissible colorings of the oriented 4-path w->x->y->z
S3_PATH4_EXPANSIONS = {
    (0, 1, 1, 2), (0, 1, 2, 2), (1, 1, 2, 2), (1, 1, 2, 0),
    (1, 2, 2, 0), (1, 2, 0, 0), (2, 2, 0, 0), (2, 2, 0, 1),
    (2, 0, 0, 1), (2, 0, 1, 1), (0, 0, 1, 1), (0, 0, 1, 2),
}

PATH4 = FiniteDigraph(4, [(0, 1), (1, 2), (2, 3)])
NO_EDGE_PAIR = FiniteDigraph(2, [])

W, X, Y, Z = (0, 0), (0, 1), (1, 0), (1, 1)

_TUPLES_A = [(W, X, Y, Z), (W, X, Z, Y), (X, W, Y, Z), (X, W, Z, Y),
             (Y, Z, W, X), (Y, Z, X, W), (Z, Y, W, X), (Z, Y, X, W)]
_TUPLES_C = [(W, Y, Z, X), (W, Z, Y, X), (X, Y, Z, W), (X, Z, Y, W),
             (Y, W, X, Z), (Y, X, W, Z), (Z, W, X, Y), (Z, X, W, Y)]


def close_striples(triples):
    out = set()
    for a, b, c in triples:
        out.add((a, b, c))
        out.add((b, a, c))
    return frozenset(out)


def _payload(order, triples):
    return (tuple(order), close_striples(triples))


def b2_labels() -> dict[str, tuple]:
    """label -> expansion payload for all 40 expansions of the 4-leaf word
    structure, five families of eight."""
    labels = {}
    for i, (s, t, u, v) in enumerate(_TUPLES_A, 1):
        labels[f"a{i}"] = _payload((s, t, u, v), [(s, t, u), (s, t, v)])
        labels[f"b{i}"] = _payload((s, t, u, v), [])
        labels[f"e{i}"] = _payload((s, t, u, v), [(s, t, u), (s, t, v), (s, u, v), (t, u, v)])
    for i, (s, t, u, v) in enumerate(_TUPLES_C, 1):
        labels[f"c{i}"] = _payload((s, t, u, v), [(t, u, v)])
        labels[f"d{i}"] = _payload((s, t, u, v), [(s, t, v), (s, u, v), (t, u, v)])
    assert len(labels) == 40
    return labels


THREE_LEAF = BoronStructure((0, 1, 2), [])


def three_leaf_x() -> Expansion:
    """The expansion [0<1<2; (0,1,2)] of the 3-leaf structure."""
    return Expansion(THREE_LEAF, ((0, 1, 2), close_striples([(0, 1, 2)])))


def b2_named_embeddings():
    """The two 3-leaf embeddings and two 4-leaf self-embeddings used by the
    pinned fiber and certificate tests."""
    B2 = boron_bn(2)
    pi1 = Embedding(THREE_LEAF, B2, (W, X, Y))
    pi2 = Embedding(THREE_LEAF, B2, (W, Y, Z))
    phi1 = Embedding(B2, B2, (W, X, Y, Z))
    phi2 = Embedding(B2, B2, (X, W, Z, Y))
    return B2, pi1, pi2, phi1, phi2
