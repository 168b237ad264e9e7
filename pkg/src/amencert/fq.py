"""Exact vector arithmetic over prime fields F_q.

Vectors are plain int tuples with entries reduced mod q; everything here is
deterministic and allocation-light so enumeration loops stay fast.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

Vec = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(q: int) -> int:
    if not is_prime(q):
        raise ValueError(f"modulus must be prime, got {q}")
    return q


def vzero(dim: int) -> Vec:
    return (0,) * dim


def vadd(u: Vec, v: Vec, q: int) -> Vec:
    return tuple((a + b) % q for a, b in zip(u, v))


def vsub(u: Vec, v: Vec, q: int) -> Vec:
    return tuple((a - b) % q for a, b in zip(u, v))


def vscale(c: int, v: Vec, q: int) -> Vec:
    return tuple((c * a) % q for a in v)


def unit(dim: int, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(dim))


def all_vectors(q: int, dim: int) -> list[Vec]:
    """Every vector of F_q^dim in lexicographic order."""
    return [tuple(t) for t in product(range(q), repeat=dim)]


def combine(coeffs: Sequence[int], vectors: Sequence[Vec], q: int) -> Vec:
    dim = len(vectors[0]) if vectors else 0
    out = [0] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                out[i] = (out[i] + c * a) % q
    return tuple(out)


def span_sorted(basis: Sequence[Vec], q: int, dim: int) -> list[Vec]:
    """All linear combinations of `basis`, sorted lexicographically."""
    if not basis:
        return [vzero(dim)]
    vecs = {vzero(dim)}
    for b in basis:
        vecs = {vadd(v, vscale(c, b, q), q) for v in vecs for c in range(q)}
    return sorted(vecs)


def row_reduce(rows: Iterable[Vec], q: int) -> list[Vec]:
    """Reduced row echelon form over F_q; zero rows dropped."""
    mat = [list(r) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c] % q != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], -1, q)
        mat[r] = [(inv * a) % q for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % q != 0:
                f = mat[i][c]
                mat[i] = [(a - f * b) % q for a, b in zip(mat[i], mat[r])]
        pivots.append((r, c))
        r += 1
        if r == len(mat):
            break
    return [tuple(mat[i]) for i, _ in pivots]


def rank(rows: Iterable[Vec], q: int) -> int:
    return len(row_reduce(rows, q))


def is_independent(rows: Sequence[Vec], q: int) -> bool:
    return rank(rows, q) == len(rows)


def solve_coords(basis: Sequence[Vec], targets: Sequence[Vec], q: int) -> list[Vec] | None:
    """Coordinates of each target in an independent `basis`, or None if some
    target lies outside the span.  One elimination pass for all targets."""
    k = len(basis)
    if k == 0:
        return [() for _ in targets] if all(all(a % q == 0 for a in t) for t in targets) else None
    dim = len(basis[0])
    nt = len(targets)
    # augmented columns: basis vectors, then targets
    mat = [[basis[j][i] % q for j in range(k)] + [t[i] % q for t in targets] for i in range(dim)]
    piv_rows: list[int] = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, dim) if mat[i][c]), None)
        if pr is None:
            return None  # basis not independent
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], -1, q)
        mat[r] = [(inv * a) % q for a in mat[r]]
        for i in range(dim):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(a - f * b) % q for a, b in zip(mat[i], mat[r])]
        piv_rows.append(r)
        r += 1
    # rows beyond the pivots must have zero target entries (consistency)
    for i in range(r, dim):
        if any(mat[i][k + t] for t in range(nt)):
            return None
    return [tuple(mat[j][k + t] for j in range(k)) for t in range(nt)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], q: int) -> tuple[Vec, ...]:
    rows, inner, cols = len(a), len(b), len(b[0])
    assert all(len(r) == inner for r in a)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(inner)) % q for j in range(cols))
        for i in range(rows)
    )


def ordered_bases(space_vectors: Sequence[Vec], dim: int, q: int) -> Iterator[tuple[Vec, ...]]:
    """All ordered bases of the space whose point set is `space_vectors`,
    in lexicographic order on the basis tuple."""
    ambient = len(space_vectors[0]) if space_vectors else 0
    zero = vzero(ambient)
    nonzero = [v for v in space_vectors if v != zero]

    def extend(chosen: list[Vec], span: frozenset[Vec]) -> Iterator[tuple[Vec, ...]]:
        if len(chosen) == dim:
            yield tuple(chosen)
            return
        for v in nonzero:
            if v in span:
                continue
            new_span = frozenset(vadd(s, vscale(c, v, q), q) for s in span for c in range(q))
            chosen.append(v)
            yield from extend(chosen, new_span)
            chosen.pop()

    yield from extend([], frozenset({zero}))


def count_gl(q: int, m: int) -> int:
    """Number of ordered bases of F_q^m."""
    total = 1
    for i in range(m):
        total *= q**m - q**i
    return total
