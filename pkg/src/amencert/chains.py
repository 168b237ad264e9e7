"""Matrices of ordered inclusion along chains of ordered spaces, the product
measure on matrix sequences, a seeded uniform sampler for natural orderings,
and class-wise coordinates with Monte-Carlo cylinder estimates.

A chain is the flag of coordinate subspaces span(e_0) c span(e_0,e_1) c ...
inside a fixed ambient F_q^m.  Writing the inner ordered basis in the outer
ordered basis yields a matrix that is the transpose of a reduced row echelon
form of full column rank; conversely every such matrix arises, and the number
of one-step extensions realizing a given matrix never depends on the matrix.
That equidistribution is what makes the stepwise sampler uniform and the
pushforward of the uniform ordering measure the product-uniform measure on
matrix sequences.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import fq
from .fq import Vec
from .structures import VecSubspace
from .vmeasure import OrderedSpace, natural_orderings, restrict_ordered


@dataclass(frozen=True)
class ValidMatrix:
    """A matrix of ordered inclusion: columns are the inner least-basis
    vectors written in the outer least basis.

    Valid means: the least nonzero row index of each column (its pivot)
    strictly increases with the column, every pivot entry is 1, and a pivot
    row is zero outside its own column; equivalently the transpose is in
    reduced row echelon form with full column rank.
    """

    q: int
    entries: tuple[tuple[int, ...], ...]

    def __init__(self, q: int, entries):
        fq.check_prime(q)
        entries = tuple(tuple(int(a) % q for a in row) for row in entries)
        if not is_valid_matrix(entries, q):
            raise ValueError("entries do not satisfy the ordered-inclusion conditions")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "entries", entries)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    def column_pivots(self) -> tuple[int, ...]:
        return tuple(
            next(i for i in range(self.nrows) if self.entries[i][j])
            for j in range(self.ncols)
        )


def is_valid_matrix(entries, q: int) -> bool:
    """Check the three pivot conditions on an m x n candidate (m >= n >= 1;
    the square case degenerates to the identity).

    Malformed shapes (ragged, empty, or wider than tall) are rejected with an
    error; failing the pivot conditions returns False."""
    rows = [tuple(int(a) % q for a in row) for row in entries]
    if not rows or not rows[0]:
        raise ValueError("matrix must be nonempty")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError("ragged matrix")
    m = len(rows)
    if m < n:
        raise ValueError(f"need at least as many rows as columns, got {m}x{n}")
    pivots = []
    for j in range(n):
        p = next((i for i in range(m) if rows[i][j]), None)
        if p is None:
            return False  # zero column: rank deficit
        pivots.append(p)
    if any(pivots[k] >= pivots[k + 1] for k in range(n - 1)):
        return False
    for k, p in enumerate(pivots):
        if rows[p][k] != 1:
            return False
        if any(rows[p][l] for l in range(n) if l != k):
            return False
    return True


def matrix_type(M: ValidMatrix) -> int:
    """The single row index not used as a pivot (square-plus-one shape)."""
    if M.nrows != M.ncols + 1:
        raise ValueError("type is defined for (n+1) x n matrices")
    missing = set(range(M.nrows)) - set(M.column_pivots())
    (k,) = missing
    return k


def enumerate_valid(n: int, q: int) -> list[ValidMatrix]:
    """All valid (n+1) x n matrices, grouped by type ascending; there are q^k
    matrices of type k (free entries sit in the spare row, left of the gap)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    fq.check_prime(q)
    out = []
    for k in range(n + 1):
        pivots = [j if j < k else j + 1 for j in range(n)]
        for free in fq.all_vectors(q, k):
            rows = [[0] * n for _ in range(n + 1)]
            for j, p in enumerate(pivots):
                rows[p][j] = 1
            for j in range(k):
                rows[k][j] = free[j]
            out.append(ValidMatrix(q, rows))
    return out


def inclusion_matrix(inner: OrderedSpace, outer: OrderedSpace) -> ValidMatrix:
    """Coordinates of the inner least basis in the outer least basis.

    The outer order restricted to the inner space must reproduce the inner
    order; otherwise the inclusion is not order-compatible and is rejected."""
    if inner.q != outer.q or inner.space.ambient != outer.space.ambient:
        raise ValueError("spaces live over different ambients")
    if restrict_ordered(outer, inner.space).least_basis != inner.least_basis:
        raise ValueError("not an ordered inclusion: the outer order does not restrict to the inner one")
    coords = fq.solve_coords(outer.least_basis, inner.least_basis, inner.q)
    assert coords is not None
    entries = tuple(
        tuple(coords[j][i] for j in range(inner.dim)) for i in range(outer.dim)
    )
    return ValidMatrix(inner.q, entries)


def enumerate_extensions(inner: OrderedSpace, M: ValidMatrix) -> list[OrderedSpace]:
    """All orderings of the full ambient space extending `inner` with the
    given inclusion matrix.

    Construction: choose the new basis vector for the spare row anywhere
    outside the inner space (q^(n+1) - q^n choices); the pivot rows then solve
    uniquely.  Distinct choices give distinct orderings and every extension
    arises this way."""
    q = inner.q
    n = inner.dim
    ambient = inner.space.ambient
    if ambient != n + 1:
        raise ValueError("the inner space must have codimension 1 in its ambient")
    if M.q != q or (M.nrows, M.ncols) != (n + 1, n):
        raise ValueError("matrix shape does not match the extension step")
    full = VecSubspace.full(q, ambient)
    k = matrix_type(M)
    pivots = M.column_pivots()
    out = []
    for w in full.vectors():
        if inner.space.contains(w):
            continue
        basis: list[Vec | None] = [None] * (n + 1)
        basis[k] = w
        for j in range(n):
            basis[pivots[j]] = fq.vsub(
                inner.least_basis[j], fq.vscale(M.entries[k][j], w, q), q
            )
        out.append(OrderedSpace(full, tuple(basis)))
    return out


@dataclass(frozen=True)
class ChainState:
    """An ordering built stepwise along the coordinate flag, with the matrix
    of each inclusion step recorded; the matrix of the whole inclusion is the
    product of the step matrices."""

    q: int
    depth: int
    ordered: OrderedSpace
    history: tuple[ValidMatrix, ...]


def _flag_subspace(q: int, ambient: int, d: int) -> VecSubspace:
    return VecSubspace(q, ambient, [fq.unit(ambient, i) for i in range(d)])


def sample_chain(q: int, m: int, rng: random.Random) -> ChainState:
    ambient = m
    c0 = rng.randrange(1, q)
    basis: tuple[Vec, ...] = (fq.vscale(c0, fq.unit(ambient, 0), q),)
    history: list[ValidMatrix] = []
    for n in range(1, m):
        M = _sample_valid(n, q, rng)
        # new basis vector with a nonzero coordinate at position n
        w = tuple(
            rng.randrange(q) if i < n else (rng.randrange(1, q) if i == n else 0)
            for i in range(ambient)
        )
        k = matrix_type(M)
        pivots = M.column_pivots()
        nxt: list[Vec | None] = [None] * (n + 1)
        nxt[k] = w
        for j in range(n):
            nxt[pivots[j]] = fq.vsub(basis[j], fq.vscale(M.entries[k][j], w, q), q)
        basis = tuple(nxt)
        history.append(M)
    ordered = OrderedSpace(_flag_subspace(q, ambient, m), basis)
    return ChainState(q=q, depth=m, ordered=ordered, history=tuple(history))


def _sample_valid(n: int, q: int, rng: random.Random) -> ValidMatrix:
    """Uniform over the valid (n+1) x n matrices: type k with weight q^k,
    then uniform free entries."""
    weights = [q**k for k in range(n + 1)]
    total = sum(weights)
    r = rng.randrange(total)
    k = 0
    while r >= weights[k]:
        r -= weights[k]
        k += 1
    pivots = [j if j < k else j + 1 for j in range(n)]
    rows = [[0] * n for _ in range(n + 1)]
    for j, p in enumerate(pivots):
        rows[p][j] = 1
    for j in range(k):
        rows[k][j] = rng.randrange(q)
    return ValidMatrix(q, rows)


def sample_uniform_ordering(q: int, m: int, seed: int) -> OrderedSpace:
    """Deterministic seeded draw, uniform over the natural orderings of
    F_q^m: each step picks an inclusion matrix uniformly among the valid ones
    and an extension uniformly among those realizing it, and the per-matrix
    extension counts are all equal."""
    if m < 1:
        raise ValueError("m must be >= 1")
    fq.check_prime(q)
    return sample_chain(q, m, random.Random(seed)).ordered


@dataclass(frozen=True)
class PushforwardReport:
    """Exhaustive check that mapping orderings to their step-matrix sequences
    sends the uniform measure to the product-uniform one."""

    q: int
    m: int
    n_orderings: int
    n_sequences: int
    fiber_sizes: tuple[int, ...]
    uniform: bool


def pushforward_check(q: int, m: int) -> PushforwardReport:
    """Enumerate every ordering of F_q^m, map each to its matrix sequence
    along the coordinate flag, and check all fibers have equal size."""
    full = VecSubspace.full(q, m)
    counts: dict[tuple, int] = {}
    for o in natural_orderings(full):
        steps = []
        prev = restrict_ordered(o, _flag_subspace(q, m, 1))
        for d in range(2, m + 1):
            cur = restrict_ordered(o, _flag_subspace(q, m, d)) if d < m else o
            steps.append(inclusion_matrix(prev, cur).entries)
            prev = cur
        key = tuple(steps)
        counts[key] = counts.get(key, 0) + 1
    expected_sequences = 1
    for n in range(1, m):
        expected_sequences *= sum(q**k for k in range(n + 1))
    sizes = tuple(sorted(counts.values()))
    uniform = len(counts) == expected_sequences and len(set(sizes)) == 1
    return PushforwardReport(
        q=q,
        m=m,
        n_orderings=sum(counts.values()),
        n_sequences=len(counts),
        fiber_sizes=sizes,
        uniform=uniform,
    )


# --- class-wise coordinates ---------------------------------------------------


def coord(o: OrderedSpace, v: Vec, l: int) -> int:
    """The coordinate of v against the l-th incomparability class: the unique
    scalar c making v - c*w least, for w the canonical line-minimal
    representative of the class (the l-th least-basis vector).  The value does
    not depend on the representative, and 0 gets coordinate 0."""
    if not (0 <= l < o.dim):
        raise ValueError("class index out of range")
    w = o.least_basis[l]
    rank = o.rank_map()
    best_c, best_rank = 0, rank[tuple(a % o.q for a in v)]
    for c in range(1, o.q):
        r = rank[fq.vsub(v, fq.vscale(c, w, o.q), o.q)]
        if r < best_rank:
            best_c, best_rank = c, r
    return best_c


@dataclass(frozen=True)
class CoordLinearityReport:
    q: int
    dim: int
    checked: int


def coord_linearity_check(o: OrderedSpace) -> CoordLinearityReport:
    """Exhaustively assert additivity and homogeneity of the class-wise
    coordinates over the whole space."""
    vecs = o.sorted_vectors()
    checked = 0
    for l in range(o.dim):
        co = {v: coord(o, v, l) for v in vecs}
        for u in vecs:
            for v in vecs:
                s = fq.vadd(u, v, o.q)
                assert (co[u] + co[v]) % o.q == co[s], "additivity failed"
                checked += 1
        for d in range(1, o.q):
            for u in vecs:
                assert (d * co[u]) % o.q == co[fq.vscale(d, u, o.q)], "homogeneity failed"
                checked += 1
    return CoordLinearityReport(q=o.q, dim=o.dim, checked=checked)


@dataclass(frozen=True)
class CoordinatePrefix:
    """The first k class-wise coordinates of one vector under one ordering."""

    owner: OrderedSpace
    vector: Vec
    k: int
    prefix: tuple[int, ...]


def phi_prefix(o: OrderedSpace, vectors: list[Vec], k: int) -> list[CoordinatePrefix]:
    """Coordinates of each vector against the top k classes (indices 0..k-1)."""
    if not (0 <= k <= o.dim):
        raise ValueError("k must lie between 0 and the dimension")
    out = []
    for v in vectors:
        prefix = tuple(coord(o, v, l) for l in range(k))
        out.append(CoordinatePrefix(owner=o, vector=v, k=k, prefix=prefix))
    return out


@dataclass(frozen=True)
class CoordinateCylinder:
    """Event: each vector v_i opens with the prescribed length-k coordinate
    string s_i.  The vectors must be linearly independent."""

    q: int
    k: int
    vectors: tuple[Vec, ...]
    prefixes: tuple[tuple[int, ...], ...]

    def __init__(self, q, k, vectors, prefixes):
        fq.check_prime(q)
        vectors = tuple(tuple(int(a) % q for a in v) for v in vectors)
        prefixes = tuple(tuple(int(a) % q for a in s) for s in prefixes)
        if len(vectors) != len(prefixes):
            raise ValueError("need one prefix per vector")
        if any(len(s) != k for s in prefixes):
            raise ValueError("every prefix must have length k")
        if not fq.is_independent(vectors, q):
            raise ValueError("cylinder vectors must be linearly independent")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "prefixes", prefixes)


@dataclass(frozen=True)
class CylinderEstimate:
    hits: int
    samples: int
    estimate: float
    stderr: float
    depth: int
    seed: int

    def within(self, target: float, n_sigma: float = 3.0) -> bool:
        return abs(self.estimate - target) <= n_sigma * self.stderr


def cylinder_estimate(cyl: CoordinateCylinder, depth: int, samples: int, seed: int) -> CylinderEstimate:
    """Monte-Carlo frequency of the cylinder event over seeded uniform
    orderings of F_q^depth, with the binomial standard error.

    The event is evaluated at finite depth; its frequency converges to the
    limiting cylinder measure q^(-k*n) as the depth grows, and the chain
    construction bounds the escaping mass at depth d through the tail product
    (1 - q^(k-1-d))^k, so depth around 10 already makes the truncation bias
    negligible next to the sampling error at these sample sizes."""
    n = len(cyl.vectors)
    q, k = cyl.q, cyl.k
    if depth < n + k:
        raise ValueError("depth must be at least n + k")
    if any(len(v) != depth for v in cyl.vectors):
        raise ValueError("cylinder vectors must live in F_q^depth")
    rng = random.Random(seed)
    hits = 0
    targets = list(cyl.vectors)
    for _ in range(samples):
        state = sample_chain(q, depth, rng)
        coords = fq.solve_coords(state.ordered.least_basis, targets, q)
        assert coords is not None
        if all(coords[i][:k] == cyl.prefixes[i] for i in range(n)):
            hits += 1
    p = hits / samples
    stderr = math.sqrt(p * (1 - p) / samples)
    return CylinderEstimate(
        hits=hits, samples=samples, estimate=p, stderr=stderr, depth=depth, seed=seed
    )
