"""Exact rational alternative: positive kernel vector or nonnegative row
combination.

For a rational matrix M, exactly one of the following has a rational
solution, and this module returns it with exact arithmetic end-to-end:

* ``Primal(x)``: M x = 0 with every entry of x strictly positive;
* ``Dual(y)``: yᵀM entrywise nonnegative and not identically zero.

The positive cone is scale-invariant, so the primal is equivalent to the
linear feasibility problem ``Mx = 0, x >= 1``; that is decided by a phase-one
simplex on the shifted system with Bland's rule for termination, and on
infeasibility the dual multipliers of the phase-one optimum convert into the
row-combination witness.  Both outcomes are re-verified by multiplication
before being returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Primal:
    x: tuple[Fraction, ...]


@dataclass(frozen=True)
class Dual:
    y: tuple[Fraction, ...]


StiemkeOutcome = Primal | Dual


def primal_holds(rows: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> bool:
    if any(v <= 0 for v in x):
        return False
    return all(sum(r * v for r, v in zip(row, x)) == 0 for row in rows)


def dual_holds(rows: Sequence[Sequence[Fraction]], y: Sequence[Fraction], ncols: int) -> bool:
    if len(y) != len(rows):
        return False
    combo = [Fraction(0)] * ncols
    for yi, row in zip(y, rows):
        if yi:
            for j, v in enumerate(row):
                combo[j] += yi * v
    return all(v >= 0 for v in combo) and any(v > 0 for v in combo)


def stiemke_solve(rows: Sequence[Sequence], ncols: int | None = None) -> StiemkeOutcome:
    """Decide the alternative for the matrix given as a list of rows.

    `ncols` is required when `rows` is empty (the primal then holds with the
    all-ones vector).  Total on rational inputs.
    """
    mat = [tuple(Fraction(v) for v in row) for row in rows]
    if ncols is None:
        if not mat:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(mat[0])
    if any(len(row) != ncols for row in mat):
        raise ValueError("ragged matrix")
    nrows = len(mat)
    if nrows == 0 or ncols == 0:
        return Primal(tuple(Fraction(1) for _ in range(ncols)))

    # substitute x = 1 + u, u >= 0: solve  M u = -M 1,  u >= 0
    b = [-sum(row) for row in mat]
    sign = [-1 if bi < 0 else 1 for bi in b]
    width = ncols + nrows + 1  # structural, artificial, rhs
    tab: list[list[Fraction]] = []
    for i, row in enumerate(mat):
        r = [sign[i] * v for v in row]
        r += [Fraction(1) if j == i else Fraction(0) for j in range(nrows)]
        r.append(sign[i] * b[i])
        tab.append(r)
    basis = [ncols + i for i in range(nrows)]
    # phase-one objective: minimize the artificial sum; reduced-cost row
    cost = [Fraction(0)] * ncols + [Fraction(1)] * nrows + [Fraction(0)]
    obj = [cost[j] - sum(tab[i][j] for i in range(nrows)) for j in range(width)]
    # obj[-1] holds minus the current objective value

    while -obj[-1] != 0:
        enter = next((j for j in range(width - 1) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(nrows):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise RuntimeError("phase-one objective unbounded; this cannot happen")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        if obj[enter]:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, tab[leave])]
        basis[leave] = enter

    optimum = -obj[-1]
    if optimum == 0:
        u = [Fraction(0)] * ncols
        for i, var in enumerate(basis):
            if var < ncols:
                u[var] = tab[i][-1]
        x = tuple(Fraction(1) + v for v in u)
        if not primal_holds(mat, x):
            raise RuntimeError("primal candidate failed exact re-verification")
        return Primal(x)

    # infeasible: multipliers from the artificial reduced costs, sign-unscaled
    y = tuple(-sign[i] * (Fraction(1) - obj[ncols + i]) for i in range(nrows))
    if not dual_holds(mat, y, ncols):
        raise RuntimeError("dual candidate failed exact re-verification")
    return Dual(y)
