"""Naturally ordered F_q vector spaces and exact measures of ordering events.

A natural ordering of a finite space is the antilexicographic order induced by
an ordered basis b_0 > ... > b_{m-1} (with 0 < 1 < ... < q-1 on scalars);
ordered bases and natural orderings are in bijection.  This module provides
the order itself, the scale-robust comparison `<<` with its incomparability
classes, recognition of natural orders among arbitrary total orders, and
exact class-count measures computed by exhaustion.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import fq
from .fq import Vec
from .structures import VecSubspace

LL = "<<"   # strictly below under every nonzero scaling of both sides
GG = ">>"
SIM = "~"   # incomparable up to scaling

DEFAULT_ENUM_CAP = 20_000  # largest ordered-basis count enumerated exhaustively


@dataclass(frozen=True)
class OrderedSpace:
    """A subspace together with the ordered basis inducing its order.

    Vectors compare antilexicographically on their coordinates in
    `least_basis`: the least index where the coordinates differ decides.
    """

    space: VecSubspace
    least_basis: tuple[Vec, ...]

    def __init__(self, space: VecSubspace, least_basis):
        least_basis = tuple(tuple(int(a) % space.q for a in v) for v in least_basis)
        if len(least_basis) != space.dim:
            raise ValueError("basis size must equal the space dimension")
        if fq.solve_coords(space.basis, least_basis, space.q) is None:
            raise ValueError("basis vectors must lie in the space")
        if not fq.is_independent(least_basis, space.q):
            raise ValueError("basis vectors must be linearly independent")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "least_basis", least_basis)

    @property
    def q(self) -> int:
        return self.space.q

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def _coord_map(self) -> dict[Vec, Vec]:
        out = {}
        for coords in fq.all_vectors(self.q, self.dim):
            out[fq.combine(coords, self.least_basis, self.q)] = coords
        return out

    def coords(self, v: Vec) -> Vec:
        try:
            return self._coord_map[tuple(a % self.q for a in v)]
        except KeyError:
            raise ValueError(f"vector {v} is outside the space") from None

    def compare(self, u: Vec, v: Vec) -> int:
        """-1, 0 or 1; antilexicographic on least-basis coordinates."""
        cu, cv = self.coords(u), self.coords(v)
        if cu == cv:
            return 0
        return -1 if cu < cv else 1

    def sorted_vectors(self) -> list[Vec]:
        return sorted(self._coord_map, key=self._coord_map.__getitem__)

    def rank_map(self) -> dict[Vec, Vec]:
        """Vector -> coordinate tuple; tuples compare exactly like the order."""
        return self._coord_map

    def class_index(self, v: Vec) -> int:
        """Index of the least nonzero least-basis coordinate of v != 0."""
        c = self.coords(v)
        for l, a in enumerate(c):
            if a:
                return l
        raise ValueError("zero vector has no class")


def order_compare(o: OrderedSpace, u: Vec, v: Vec) -> int:
    return o.compare(u, v)


def _ll_by_ranks(u: Vec, v: Vec, rank: dict[Vec, Vec], q: int) -> bool:
    """u << v evaluated against an arbitrary rank map (q >= 3 rule)."""
    ru = [rank[fq.vscale(c, u, q)] for c in range(1, q)]
    rv = [rank[fq.vscale(d, v, q)] for d in range(1, q)]
    return max(ru) < min(rv)


def _sim_by_order(u: Vec, v: Vec, rank: dict[Vec, Vec], q: int) -> bool:
    if q == 2:
        s = fq.vadd(u, v, q)
        return rank[s] < min(rank[u], rank[v])
    return not _ll_by_ranks(u, v, rank, q) and not _ll_by_ranks(v, u, rank, q)


def ll_and_sim(o: OrderedSpace, u: Vec, v: Vec) -> str:
    """Relate two nonzero vectors: LL, GG or SIM.

    For q >= 3 the scaled comparison cu < dv is evaluated over all nonzero
    scalars; for q = 2 equivalence means u+v < min(u, v)."""
    q = o.q
    u = tuple(a % q for a in u)
    v = tuple(a % q for a in v)
    if not any(o.coords(u)) or not any(o.coords(v)):
        raise ValueError("vectors must be nonzero")
    rank = o.rank_map()
    if _sim_by_order(u, v, rank, q):
        return SIM
    if q == 2:
        return LL if rank[u] < rank[v] else GG
    return LL if _ll_by_ranks(u, v, rank, q) else GG


@dataclass(frozen=True)
class SimClass:
    """One equivalence class of ~: all vectors whose least nonzero coordinate
    sits at `index`.  Classes descend in the order as `index` grows."""

    owner: OrderedSpace
    index: int
    members: tuple[Vec, ...]


def sim_classes(o: OrderedSpace) -> list[SimClass]:
    """The dim-many ~-classes, listed from index 0 (largest) down."""
    buckets: dict[int, list[Vec]] = {l: [] for l in range(o.dim)}
    rank = o.rank_map()
    for v in o.sorted_vectors():
        if any(rank[v]):
            buckets[o.class_index(v)].append(v)
    classes = [SimClass(o, l, tuple(buckets[l])) for l in range(o.dim)]
    for c in classes:
        assert len(c.members) == (o.q - 1) * o.q ** (o.dim - 1 - c.index)
    return classes


def least_basis_of(space: VecSubspace, ordered: list[Vec]) -> OrderedSpace | None:
    """Recognize a natural order.

    `ordered` must list every vector of the space exactly once, ascending.
    Returns the inducing OrderedSpace, or None when the order is not natural
    (in particular whenever 0 is not first)."""
    q = space.q
    vectors = space.vectors()
    normalized = [tuple(a % q for a in v) for v in ordered]
    if sorted(normalized) != vectors or len(normalized) != len(vectors):
        raise ValueError("input must be a total order on all vectors of the space")
    zero = fq.vzero(space.ambient)
    if normalized[0] != zero:
        return None
    # greedy candidate: repeatedly take the least vector outside the span so far
    candidate: list[Vec] = []
    span = {zero}
    for v in normalized[1:]:
        if v not in span:
            candidate.append(v)
            span = {fq.vadd(s, fq.vscale(c, v, q), q) for s in span for c in range(q)}
    candidate.reverse()  # collected smallest-first; the least basis descends
    if len(candidate) != space.dim:
        return None
    o = OrderedSpace(space, tuple(candidate))
    return o if o.sorted_vectors() == normalized else None


def restrict_ordered(o: OrderedSpace, sub: VecSubspace) -> OrderedSpace:
    """The induced natural order on a subspace of an ordered space."""
    if sub.q != o.q or sub.ambient != o.space.ambient:
        raise ValueError("subspace lives in a different ambient space")
    rank = o.rank_map()
    ordered = sorted(sub.vectors(), key=lambda v: rank[v])
    out = least_basis_of(sub, ordered)
    assert out is not None, "restriction of a natural order must be natural"
    return out


def natural_orderings(space: VecSubspace) -> list[OrderedSpace]:
    """Every natural ordering of the space, one per ordered basis, in
    lexicographic basis order."""
    return [
        OrderedSpace(space, basis)
        for basis in fq.ordered_bases(space.vectors(), space.dim, space.q)
    ]


# --- exact measures by exhaustion -------------------------------------------


@dataclass(frozen=True)
class ClassCountEvent:
    """Event: at most k ~-classes lie above the class of the line through
    `line` (default: the first standard basis vector) in F_q^m."""

    q: int
    m: int
    k: int
    line: Vec | None = None

    def __post_init__(self):
        fq.check_prime(self.q)
        if not (0 <= self.k <= self.m - 1):
            raise ValueError("k must satisfy 0 <= k <= m-1")
        if self.line is not None and not any(self.line):
            raise ValueError("line vector must be nonzero")

    @property
    def vector(self) -> Vec:
        return self.line if self.line is not None else fq.unit(self.m, 0)


@dataclass(frozen=True)
class NwkResult:
    value: Fraction
    enumerated: bool
    q: int
    m: int
    k: int


def _nwk_closed_form(q: int, m: int, k: int) -> Fraction:
    return Fraction(q**m - q**(m - k - 1), q**m - 1)


_CLASS_HISTOGRAMS: dict[tuple[int, int, Vec], list[int]] = {}


def _class_index_histogram(q: int, m: int, v: Vec) -> list[int]:
    """counts[l] = number of ordered bases of F_q^m putting v in class l."""
    key = (q, m, v)
    if key not in _CLASS_HISTOGRAMS:
        counts = [0] * m
        space = VecSubspace.full(q, m)
        for basis in fq.ordered_bases(space.vectors(), m, q):
            coords = fq.solve_coords(basis, [v], q)[0]
            counts[next(l for l, a in enumerate(coords) if a)] += 1
        _CLASS_HISTOGRAMS[key] = counts
    return _CLASS_HISTOGRAMS[key]


def measure_nwk(event: ClassCountEvent, cap: int = DEFAULT_ENUM_CAP) -> NwkResult:
    """Fraction of natural orderings of F_q^m in which at most k classes beat
    the class of the given line.

    Enumerates all ordered bases whenever their count is within `cap` and
    cross-checks the closed form (q^m - q^(m-k-1))/(q^m - 1); beyond the cap
    the closed form is returned and flagged as non-enumerated."""
    q, m, k = event.q, event.m, event.k
    closed = _nwk_closed_form(q, m, k)
    total = fq.count_gl(q, m)
    if total > cap:
        return NwkResult(closed, False, q, m, k)
    counts = _class_index_histogram(q, m, event.vector)
    value = Fraction(sum(counts[: k + 1]), total)
    if value != closed:
        raise RuntimeError(
            f"enumerated class-count measure {value} contradicts the closed form {closed} "
            f"at q={q}, m={m}, k={k}"
        )
    return NwkResult(value, True, q, m, k)


def _bases_with_coords_closed_form(q: int, m: int) -> int:
    out = 1
    for i in range(1, m):
        out *= q**m - q**i
    return out


_COORD_HISTOGRAMS: dict[tuple[int, int, Vec], dict[Vec, int]] = {}


def count_bases_with_coords(q: int, m: int, coords: Vec, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Number of ordered bases expressing a fixed nonzero vector with exactly
    the given coordinate tuple; independent of the tuple.

    Exhaustive (with closed-form cross-check) while the basis count is within
    `cap`, closed form (q^m-q)(q^m-q^2)...(q^m-q^(m-1)) beyond."""
    fq.check_prime(q)
    coords = tuple(int(a) % q for a in coords)
    if len(coords) != m:
        raise ValueError("coordinate tuple has wrong length")
    if not any(coords):
        raise ValueError("coordinate tuple must be nonzero")
    closed = _bases_with_coords_closed_form(q, m)
    if fq.count_gl(q, m) > cap:
        return closed
    v = fq.unit(m, 0)
    key = (q, m, v)
    if key not in _COORD_HISTOGRAMS:
        hist: dict[Vec, int] = {}
        space = VecSubspace.full(q, m)
        for basis in fq.ordered_bases(space.vectors(), m, q):
            c = fq.solve_coords(basis, [v], q)[0]
            hist[c] = hist.get(c, 0) + 1
        _COORD_HISTOGRAMS[key] = hist
    hist = _COORD_HISTOGRAMS[key]
    count = hist[coords]
    if count != closed or any(n != closed for n in hist.values()):
        raise RuntimeError(
            f"enumerated base count contradicts the closed form {closed} at q={q}, m={m}"
        )
    return count
