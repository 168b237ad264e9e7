"""Finite structures: oriented digraphs, boron leaf structures, F_q subspaces.

All three kinds share one Embedding representation and uniform operations for
embedding tests, exhaustive embedding enumeration and substructure
classification.  Universes are kept sorted so every enumeration is
reproducible byte-for-byte.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Mapping

from . import fq
from .fq import Vec


@dataclass(frozen=True)
class FieldPrime:
    """A prime field, identified by its modulus."""

    q: int

    def __post_init__(self):
        fq.check_prime(self.q)


@dataclass(frozen=True)
class FiniteDigraph:
    """Oriented graph on vertices 0..n-1: irreflexive, no 2-cycles."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges):
        edges = frozenset((int(a), int(b)) for a, b in edges)
        if n < 1:
            raise ValueError("digraph needs at least one vertex")
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop edge ({a},{b}) not allowed")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a},{b}) out of range")
            if (b, a) in edges:
                raise ValueError(f"2-cycle between {a} and {b} not allowed")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)

    @property
    def universe(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    def __len__(self) -> int:
        return self.n


# --- boron leaf structures -------------------------------------------------


def boron_delta(a: tuple, b: tuple) -> int:
    """Length of the longest common prefix of two distinct equal-length words."""
    if a == b:
        raise ValueError("delta is undefined on equal words")
    if len(a) != len(b):
        raise ValueError("words must have equal length")
    k = 0
    while a[k] == b[k]:
        k += 1
    return k


def boron_meet(x: tuple, y: tuple) -> tuple:
    """The word that copies x below the split level of x,y and is 1 above it.

    Symmetric in x and y; dominates both in lexicographic order."""
    d = boron_delta(x, y)
    return x[:d] + (1,) * (len(x) - d)


def _word_path(a: tuple, b: tuple, n: int) -> frozenset:
    d = boron_delta(a, b)
    return frozenset(a[:k] for k in range(d, n + 1)) | frozenset(b[:k] for k in range(d, n + 1))


_PAIRINGS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))


def _close_tuple(t: tuple) -> list[tuple]:
    a, b, c, d = t
    out = []
    for p, r in (((a, b), (c, d)), ((c, d), (a, b))):
        for x, y in (p, p[::-1]):
            for u, v in (r, r[::-1]):
                out.append((x, y, u, v))
    return out


@dataclass(frozen=True)
class BoronStructure:
    """Leaves of a tree with all inner degrees 3, carrying the 4-ary
    disjoint-paths relation.  The relation is closed under swapping within
    and between its two leaf pairs."""

    leaves: tuple
    relation: frozenset  # 4-tuples of distinct leaves, symmetry-closed

    def __init__(self, leaves, relation, check: bool = True):
        leaves = tuple(sorted(leaves))
        if len(set(leaves)) != len(leaves):
            raise ValueError("duplicate leaves")
        if not leaves:
            raise ValueError("need at least one leaf")
        closed = set()
        for t in relation:
            t = tuple(t)
            if len(t) != 4 or len(set(t)) != 4:
                raise ValueError(f"relation tuple {t} must have 4 distinct entries")
            if any(x not in leaves for x in t):
                raise ValueError(f"relation tuple {t} mentions unknown leaves")
            closed.update(_close_tuple(t))
        object.__setattr__(self, "leaves", leaves)
        object.__setattr__(self, "relation", frozenset(closed))
        if check:
            self._check_realizable()

    @property
    def universe(self) -> tuple:
        return self.leaves

    def __len__(self) -> int:
        return len(self.leaves)

    def _check_realizable(self) -> None:
        k = len(self.leaves)
        if k <= 3:
            return  # relation is necessarily empty and any leaf placement works
        target = boron_bn(k - 1)
        if not enumerate_embeddings(self, target, first_only=True):
            raise ValueError("structure is not realizable as leaves of a degree-1/3 tree")


def boron_bn(n: int) -> BoronStructure:
    """The full structure on all 2^n binary words of length n."""
    if n < 1:
        raise ValueError("n must be >= 1 (the single-leaf structure is degenerate)")
    leaves = fq.all_vectors(2, n)
    rel = set()
    paths = {}
    for a, b in combinations(leaves, 2):
        paths[(a, b)] = paths[(b, a)] = _word_path(a, b, n)
    for quad in combinations(leaves, 4):
        for i, j, k, l in _PAIRINGS:
            a, b, c, d = quad[i], quad[j], quad[k], quad[l]
            if paths[(a, b)].isdisjoint(paths[(c, d)]):
                rel.update(_close_tuple((a, b, c, d)))
    return BoronStructure(leaves, rel, check=False)


def single_leaf() -> BoronStructure:
    """Degenerate one-leaf structure (the empty word)."""
    return BoronStructure(((),), frozenset(), check=False)


# --- vector spaces ----------------------------------------------------------


@dataclass(frozen=True)
class VecSubspace:
    """A subspace of F_q^ambient, canonicalized by its reduced echelon basis."""

    field: FieldPrime
    ambient: int
    basis: tuple[Vec, ...]

    def __init__(self, field, ambient: int, basis):
        if isinstance(field, int):
            field = FieldPrime(field)
        basis = tuple(tuple(int(a) % field.q for a in v) for v in basis)
        for v in basis:
            if len(v) != ambient:
                raise ValueError("basis vector has wrong ambient dimension")
        reduced = tuple(fq.row_reduce(basis, field.q))
        if len(reduced) != len(basis):
            raise ValueError("basis vectors are not linearly independent")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", reduced)

    @classmethod
    def full(cls, q: int, dim: int) -> "VecSubspace":
        return cls(FieldPrime(q), dim, [fq.unit(dim, i) for i in range(dim)])

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[Vec]:
        return fq.span_sorted(self.basis, self.q, self.ambient)

    def contains(self, v: Vec) -> bool:
        return fq.solve_coords(self.basis, [v], self.q) is not None

    def __len__(self) -> int:
        return self.dim


Structure = FiniteDigraph | BoronStructure | VecSubspace


def kind_of(s: Structure) -> str:
    if isinstance(s, FiniteDigraph):
        return "digraph"
    if isinstance(s, BoronStructure):
        return "boron"
    if isinstance(s, VecSubspace):
        return "vecspace"
    raise TypeError(f"not a finite structure: {s!r}")


# --- embeddings -------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """An injective structure map A -> B.

    For relational kinds, `images` lists the image of each universe element of
    A in A's sorted universe order; for vector spaces it lists the images of
    A's echelon basis vectors (ambient coordinates of B).
    """

    source: Structure
    target: Structure
    images: tuple

    def __init__(self, source, target, images):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", tuple(images))

    def apply(self, element):
        """Image of a universe element (relational kinds only)."""
        return self.images[self.source.universe.index(element)]

    def as_map(self) -> dict:
        return dict(zip(self.source.universe, self.images))

    def apply_vec(self, v: Vec) -> Vec:
        src = self.source
        coords = fq.solve_coords(src.basis, [v], src.q)
        if coords is None:
            raise ValueError("vector outside the source space")
        return fq.combine(coords[0], self.images, src.q)

    def compose(self, inner: "Embedding") -> "Embedding":
        """self o inner, where inner: A -> B and self: B -> C."""
        if isinstance(self.source, VecSubspace):
            imgs = tuple(self.apply_vec(v) for v in inner.images)
        else:
            imgs = tuple(self.apply(x) for x in inner.images)
        return Embedding(inner.source, self.target, imgs)


def _normalize_map(f, A: Structure):
    if isinstance(f, Embedding):
        return f.images
    if isinstance(f, Mapping):
        return tuple(f[x] for x in A.universe)
    return tuple(f)


def is_embedding(f, A: Structure, B: Structure) -> bool:
    """True iff f is injective and preserves and reflects all structure.

    f may be an Embedding, a mapping on A's universe, or an image sequence in
    A's sorted universe order (for vector spaces: images of the basis).
    """
    ka, kb = kind_of(A), kind_of(B)
    if ka != kb:
        raise TypeError(f"kind mismatch: {ka} vs {kb}")

    if ka == "vecspace":
        if A.q != B.q:
            raise TypeError("field mismatch")
        images = _normalize_map(f, A) if not isinstance(f, Embedding) else f.images
        if len(images) != A.dim or any(len(v) != B.ambient for v in images):
            return False
        if any(not B.contains(v) for v in images):
            return False
        return fq.is_independent(images, A.q)

    images = _normalize_map(f, A)
    if len(images) != len(A.universe) or len(set(images)) != len(images):
        return False
    if any(y not in B.universe for y in images):
        return False
    m = dict(zip(A.universe, images))
    if ka == "digraph":
        for a, b in permutations(A.universe, 2):
            if ((a, b) in A.edges) != ((m[a], m[b]) in B.edges):
                return False
        return True
    # boron: compare the disjoint-paths relation on every 4-set, one
    # representative per pairing (the relation is symmetry-closed)
    for quad in combinations(A.universe, 4):
        for i, j, k, l in _PAIRINGS:
            t = (quad[i], quad[j], quad[k], quad[l])
            if (t in A.relation) != (tuple(m[x] for x in t) in B.relation):
                return False
    return True


def enumerate_embeddings(A: Structure, B: Structure, first_only: bool = False) -> list[Embedding]:
    """Exhaustive, duplicate-free list of embeddings A -> B, lexicographic on
    the image tuple."""
    ka, kb = kind_of(A), kind_of(B)
    if ka != kb:
        raise TypeError(f"kind mismatch: {ka} vs {kb}")
    if ka == "digraph":
        found = _digraph_embeddings(A, B, first_only)
    elif ka == "boron":
        found = _boron_embeddings(A, B, first_only)
    else:
        if A.q != B.q:
            raise TypeError("field mismatch")
        found = _vec_embeddings(A, B, first_only)
    return [Embedding(A, B, imgs) for imgs in found]


def _digraph_embeddings(A: FiniteDigraph, B: FiniteDigraph, first_only: bool) -> list[tuple]:
    out: list[tuple] = []
    images: list[int] = []
    used = [False] * B.n

    def place(v: int) -> bool:
        if v == A.n:
            out.append(tuple(images))
            return first_only
        for w in range(B.n):
            if used[w]:
                continue
            ok = True
            for u in range(v):
                fu = images[u]
                if ((u, v) in A.edges) != ((fu, w) in B.edges) or ((v, u) in A.edges) != ((w, fu) in B.edges):
                    ok = False
                    break
            if ok:
                used[w] = True
                images.append(w)
                if place(v + 1):
                    return True
                images.pop()
                used[w] = False
        return False

    place(0)
    return out


def _boron_embeddings(A: BoronStructure, B: BoronStructure, first_only: bool) -> list[tuple]:
    out: list[tuple] = []
    la = A.leaves
    lb = B.leaves
    images: list = []
    used: set = set()

    def consistent(v: int) -> bool:
        if v < 3:
            return True
        new = la[v]
        for trio in combinations(range(v), 3):
            quad = (la[trio[0]], la[trio[1]], la[trio[2]], new)
            iquad = (images[trio[0]], images[trio[1]], images[trio[2]], images[v])
            for i, j, k, l in _PAIRINGS:
                t = (quad[i], quad[j], quad[k], quad[l])
                it = (iquad[i], iquad[j], iquad[k], iquad[l])
                if (t in A.relation) != (it in B.relation):
                    return False
        return True

    def place(v: int) -> bool:
        if v == len(la):
            out.append(tuple(images))
            return first_only
        for w in lb:
            if w in used:
                continue
            used.add(w)
            images.append(w)
            if consistent(v) and place(v + 1):
                return True
            images.pop()
            used.discard(w)
        return False

    place(0)
    return out


def _vec_embeddings(A: VecSubspace, B: VecSubspace, first_only: bool) -> list[tuple]:
    pool = [v for v in B.vectors() if any(v)]
    out: list[tuple] = []
    chosen: list[Vec] = []

    def place(span: frozenset) -> bool:
        if len(chosen) == A.dim:
            out.append(tuple(chosen))
            return first_only
        for v in pool:
            if v in span:
                continue
            new_span = frozenset(fq.vadd(s, fq.vscale(c, v, A.q), A.q) for s in span for c in range(A.q))
            chosen.append(v)
            if place(new_span):
                return True
            chosen.pop()
        return False

    place(frozenset({fq.vzero(B.ambient)}))
    return out


# --- substructure classification --------------------------------------------


@dataclass(frozen=True)
class SubstructureRep:
    """One isomorphism representative of a substructure, with a witness
    embedding into the enclosing structure."""

    structure: Structure
    witness: Embedding


def _induced_digraph(B: FiniteDigraph, subset: tuple[int, ...]) -> FiniteDigraph:
    pos = {v: i for i, v in enumerate(subset)}
    edges = [(pos[a], pos[b]) for a, b in B.edges if a in pos and b in pos]
    return FiniteDigraph(len(subset), edges)


def _induced_boron(B: BoronStructure, subset: tuple) -> BoronStructure:
    pos = {v: i for i, v in enumerate(subset)}
    rel = [tuple(pos[x] for x in t) for t in B.relation if all(x in pos for x in t)]
    return BoronStructure(tuple(range(len(subset))), rel, check=False)


def are_isomorphic(A: Structure, B: Structure) -> bool:
    """Brute-force isomorphism test (inputs are tiny)."""
    ka = kind_of(A)
    if ka != kind_of(B):
        return False
    if ka == "vecspace":
        return A.q == B.q and A.dim == B.dim
    if len(A.universe) != len(B.universe):
        return False
    ua, ub = A.universe, B.universe
    for perm in permutations(ub):
        if is_embedding(dict(zip(ua, perm)), A, B):
            return True
    return False


def substructure_reps(B: Structure) -> list[SubstructureRep]:
    """One representative per isomorphism class of substructure of B, each
    with a witness embedding, ordered by size then first occurrence."""
    kb = kind_of(B)
    if kb == "vecspace":
        reps = []
        for d in range(1, B.dim + 1):
            rep = VecSubspace.full(B.q, d)
            witness = Embedding(rep, B, B.basis[:d])
            reps.append(SubstructureRep(rep, witness))
        return reps

    universe = B.universe
    reps: list[SubstructureRep] = []
    by_size: dict[int, list[Structure]] = {}
    for size in range(1, len(universe) + 1):
        by_size[size] = []
        for subset in combinations(universe, size):
            sub = _induced_digraph(B, subset) if kb == "digraph" else _induced_boron(B, subset)
            if any(are_isomorphic(sub, seen) for seen in by_size[size]):
                continue
            by_size[size].append(sub)
            reps.append(SubstructureRep(sub, Embedding(sub, B, subset)))
    return reps
