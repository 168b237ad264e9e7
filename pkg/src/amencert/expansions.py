"""Expansion classes: enumeration of admissible enrichments of a finite
structure and their restriction along embeddings.

Three built-in plugins share one interface:

* ``s3`` — part colorings of oriented graphs by thirds of a circle, membership
  decided by an exact forced-precedence criterion;
* ``boron`` — order expansions of boron leaf structures read off embeddings
  into the full binary-word structure;
* ``vecspace`` — natural orderings of F_q spaces, one per ordered basis.

Restriction along an embedding is total on each class (the classes are
hereditary), which makes the fibers of the restriction map well-defined
partitions of the expansion set of the bigger structure.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Sequence

from . import fq
from .structures import (
    BoronStructure,
    Embedding,
    FiniteDigraph,
    Structure,
    VecSubspace,
    boron_bn,
    boron_delta,
    boron_meet,
    enumerate_embeddings,
    kind_of,
    single_leaf,
)
from .vmeasure import OrderedSpace, least_basis_of


@dataclass(frozen=True)
class Expansion:
    """An admissible enrichment of `base`; the payload is class-specific and
    hashable, so expansions of a fixed base compare by value."""

    base: Structure
    payload: tuple


class HereditarityError(AssertionError):
    """A restriction fell outside the expansion class; the classes are
    hereditary, so this indicates a bug or a corrupted input."""


# --- s3: part colorings of oriented graphs ----------------------------------


def _acyclic(n: int, arcs: set[tuple[int, int]]) -> bool:
    succ: dict[int, list[int]] = {v: [] for v in range(n)}
    indeg = [0] * n
    for a, b in arcs:
        succ[a].append(b)
        indeg[b] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == n


def s3_membership(A: FiniteDigraph, parts: Sequence[int]) -> bool:
    """Decide whether a 3-part coloring of an oriented graph is admissible.

    Each vertex gets a free position inside its third of the circle; every
    vertex pair then either forbids the coloring outright or forces a strict
    precedence between the two positions:

    * same part: the pair must carry an edge, and a->b forces a before b;
    * parts (i, i+1 mod 3): an edge against the slices (from the later part
      back to the earlier) is impossible, a->b forces b before a, and no edge
      forces a before b.

    The coloring is admissible iff no pair is forbidden and the forced
    precedences are acyclic.
    """
    parts = tuple(int(p) for p in parts)
    if len(parts) != A.n or any(p not in (0, 1, 2) for p in parts):
        raise ValueError("parts must assign 0, 1 or 2 to every vertex")
    arcs: set[tuple[int, int]] = set()
    for a, b in combinations(range(A.n), 2):
        i, j = parts[a], parts[b]
        ab, ba = (a, b) in A.edges, (b, a) in A.edges
        if i == j:
            if ab:
                arcs.add((a, b))
            elif ba:
                arcs.add((b, a))
            else:
                return False
        else:
            # orient the pair so v's part is one step past u's
            if (j - i) % 3 == 1:
                u, v, uv, vu = a, b, ab, ba
            else:
                u, v, uv, vu = b, a, ba, ab
            if vu:
                return False
            arcs.add((v, u) if uv else (u, v))
    return _acyclic(A.n, arcs)


def s3_expansions(A: FiniteDigraph) -> list[Expansion]:
    """All admissible part colorings, in lexicographic part order.  Empty for
    structures outside the class."""
    return [
        Expansion(A, parts)
        for parts in product((0, 1, 2), repeat=A.n)
        if s3_membership(A, parts)
    ]


# --- boron: order expansions -------------------------------------------------


def boron_order_of(A: BoronStructure, emb: Embedding) -> Expansion:
    """The expansion read off an embedding into a word structure: the pulled
    back lexicographic leaf order plus the triple relation S(a,b,c) holding
    when the join word of the images of a,b precedes the image of c.

    The join characterization and the split-level characterization of S are
    asserted to agree."""
    img = emb.as_map()
    order = tuple(sorted(A.leaves, key=img.__getitem__))
    striples = set()
    for a, b, c in permutations(A.leaves, 3):
        wa, wb, wc = img[a], img[b], img[c]
        by_meet = boron_meet(wa, wb) < wc
        by_delta = wa < wc and wb < wc and boron_delta(wa, wb) > boron_delta(wb, wc)
        assert by_meet == by_delta, "the two triple-relation readings disagree"
        if by_meet:
            striples.add((a, b, c))
    return Expansion(A, (order, frozenset(striples)))


def boron_reduce(A: BoronStructure, emb: Embedding) -> Embedding:
    """Shrink the target word length to |A|-1 without changing the expansion.

    Repeatedly deletes a word position that no leaf pair splits at; such a
    position exists whenever the target is longer than |A|-1, since at most
    |A|-1 split levels occur among |A| leaves."""
    size = len(A.leaves)
    images = list(emb.images)
    n = len(images[0]) if images else 0
    before = boron_order_of(A, emb)
    while n > size - 1:
        used = {boron_delta(u, v) for u, v in combinations(images, 2)}
        free = [k for k in range(n) if k not in used]
        if not free:
            raise AssertionError("no deletable level despite excess word length")
        k = free[0]
        images = [w[:k] + w[k + 1:] for w in images]
        n -= 1
    target = boron_bn(n) if n >= 1 else single_leaf()
    out = Embedding(A, target, tuple(images))
    after = boron_order_of(A, out)
    assert after.payload == before.payload, "level deletion changed the expansion"
    return out


def boron_expansions(A: BoronStructure) -> list[Expansion]:
    """All order expansions of A, enumerated over embeddings into the word
    structure of length |A|-1 and deduplicated."""
    size = len(A.leaves)
    if size == 1:
        return [Expansion(A, ((A.leaves[0],), frozenset()))]
    target = boron_bn(size - 1)
    seen: dict[tuple, Expansion] = {}
    for emb in enumerate_embeddings(A, target):
        e = boron_order_of(A, emb)
        seen.setdefault(e.payload, e)
    return sorted(seen.values(), key=lambda e: (e.payload[0], sorted(e.payload[1])))


# --- vecspace: natural orderings ---------------------------------------------


def vs_orderings(V: VecSubspace) -> list[Expansion]:
    """One expansion per ordered basis of V, in lexicographic basis order."""
    return [
        Expansion(V, basis)
        for basis in fq.ordered_bases(V.vectors(), V.dim, V.q)
    ]


# --- the uniform plugin interface ---------------------------------------------


class ClassPlugin:
    """Uniform access to one expansion class."""

    name: str
    kind: str

    def accepts(self, A: Structure) -> bool:
        return kind_of(A) == self.kind

    def expansions_of(self, A: Structure) -> tuple[Expansion, ...]:
        key = (self.name, A)
        cached = _EXPANSION_CACHE.get(key)
        if cached is None:
            cached = tuple(self._enumerate(A))
            _EXPANSION_CACHE[key] = cached
        return cached

    def expansion_set(self, A: Structure) -> frozenset[tuple]:
        key = (self.name, A)
        cached = _PAYLOAD_CACHE.get(key)
        if cached is None:
            cached = frozenset(e.payload for e in self.expansions_of(A))
            _PAYLOAD_CACHE[key] = cached
        return cached

    def _enumerate(self, A: Structure) -> list[Expansion]:
        raise NotImplementedError

    def restrict(self, e: Expansion, pi: Embedding) -> Expansion:
        raise NotImplementedError

    def exp_key(self, e: Expansion) -> str:
        raise NotImplementedError


_EXPANSION_CACHE: dict[tuple, tuple[Expansion, ...]] = {}
_PAYLOAD_CACHE: dict[tuple, frozenset] = {}


def _leaf_str(leaf) -> str:
    if isinstance(leaf, tuple):
        return "".join(str(b) for b in leaf)
    return str(leaf)


class S3Plugin(ClassPlugin):
    name = "s3"
    kind = "digraph"

    def _enumerate(self, A):
        return s3_expansions(A)

    def restrict(self, e, pi):
        A = pi.source
        parts = tuple(e.payload[pi.images[v]] for v in range(A.n))
        if not s3_membership(A, parts):
            raise HereditarityError("restricted coloring is not admissible")
        return Expansion(A, parts)

    def exp_key(self, e):
        return ",".join(str(p) for p in e.payload)


class BoronPlugin(ClassPlugin):
    name = "boron"
    kind = "boron"

    def _enumerate(self, A):
        return boron_expansions(A)

    def restrict(self, e, pi):
        A = pi.source
        img = pi.as_map()
        order_b, striples_b = e.payload
        pos = {leaf: i for i, leaf in enumerate(order_b)}
        order = tuple(sorted(A.leaves, key=lambda a: pos[img[a]]))
        striples = frozenset(
            (a, b, c)
            for a, b, c in permutations(A.leaves, 3)
            if (img[a], img[b], img[c]) in striples_b
        )
        payload = (order, striples)
        if payload not in self.expansion_set(A):
            raise HereditarityError("restricted order expansion is not admissible")
        return Expansion(A, payload)

    def exp_key(self, e):
        order, striples = e.payload
        pos = {leaf: i for i, leaf in enumerate(order)}
        normalized = sorted(
            (t for t in striples if pos[t[0]] < pos[t[1]]),
            key=lambda t: (pos[t[0]], pos[t[1]], pos[t[2]]),
        )
        head = "<".join(_leaf_str(x) for x in order)
        tail = "".join("(" + ",".join(_leaf_str(x) for x in t) + ")" for t in normalized)
        return f"{head};{tail}"


class VecPlugin(ClassPlugin):
    name = "vecspace"
    kind = "vecspace"

    def _enumerate(self, A):
        return vs_orderings(A)

    def restrict(self, e, pi):
        A = pi.source
        B = e.base
        outer = OrderedSpace(B, e.payload)
        rank = outer.rank_map()
        ordered = sorted(A.vectors(), key=lambda v: rank[pi.apply_vec(v)])
        o = least_basis_of(A, ordered)
        if o is None:
            raise HereditarityError("pulled-back order is not natural")
        return Expansion(A, o.least_basis)

    def exp_key(self, e):
        return "|".join("".join(str(a) for a in v) for v in e.payload)


_PLUGINS: dict[str, ClassPlugin] = {p.name: p for p in (S3Plugin(), BoronPlugin(), VecPlugin())}


def get_plugin(name: str) -> ClassPlugin:
    try:
        return _PLUGINS[name]
    except KeyError:
        raise ValueError(f"unknown expansion class {name!r}; choose from {sorted(_PLUGINS)}") from None


def plugin_names() -> list[str]:
    return sorted(_PLUGINS)


def restrict_expansion(e: Expansion, pi: Embedding) -> Expansion:
    """Pull an expansion of pi's target back to pi's source."""
    return _plugin_for(e.base).restrict(e, pi)


def _plugin_for(s: Structure) -> ClassPlugin:
    kind = kind_of(s)
    for p in _PLUGINS.values():
        if p.kind == kind:
            return p
    raise TypeError(f"no expansion class handles kind {kind}")


def expansion_fiber(x: Expansion, B: Structure, pi: Embedding) -> list[Expansion]:
    """All expansions of B restricting to x along pi."""
    plugin = _plugin_for(B)
    return [e for e in plugin.expansions_of(B) if plugin.restrict(e, pi) == x]


def fiber_partition(plugin: ClassPlugin, B: Structure, pi: Embedding) -> dict[Expansion, list[Expansion]]:
    """Partition the expansions of B by their restriction along pi."""
    out: dict[Expansion, list[Expansion]] = {}
    for e in plugin.expansions_of(B):
        out.setdefault(plugin.restrict(e, pi), []).append(e)
    return out
