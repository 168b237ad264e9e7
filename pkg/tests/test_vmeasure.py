from fractions import Fraction
from itertools import permutations

import pytest

from amencert import (
    ClassCountEvent,
    OrderedSpace,
    VecSubspace,
    count_bases_with_coords,
    least_basis_of,
    ll_and_sim,
    measure_nwk,
    natural_orderings,
    order_compare,
    sim_classes,
)
from amencert.fq import count_gl, vadd, vscale
from amencert.vmeasure import GG, LL, SIM, _nwk_closed_form


def std(q, m):
    V = VecSubspace.full(q, m)
    return OrderedSpace(V, V.basis)


# --- comparisons ---------------------------------------------------------------


def test_order_compare_examples():
    o = std(2, 2)
    b0, b1 = o.least_basis
    assert order_compare(o, b1, b0) == -1
    assert order_compare(o, b0, vadd(b0, b1, 2)) == -1
    assert order_compare(o, b0, b0) == 0
    with pytest.raises(ValueError):
        order_compare(o, (1, 0, 0), b0)


def test_zero_is_least():
    for q, m in [(2, 2), (3, 2)]:
        o = std(q, m)
        zero = (0,) * m
        for v in o.sorted_vectors():
            if v != zero:
                assert order_compare(o, zero, v) == -1


def test_ll_and_sim_examples():
    o = std(2, 2)
    b0, b1 = o.least_basis
    assert ll_and_sim(o, b0, vadd(b0, b1, 2)) == SIM
    assert ll_and_sim(o, b1, b0) == LL
    assert ll_and_sim(o, b0, b1) == GG
    with pytest.raises(ValueError):
        ll_and_sim(o, (0, 0), b0)


def test_vector_is_similar_to_its_multiples():
    o = std(3, 2)
    for v in o.sorted_vectors():
        if not any(v):
            continue
        for c in range(1, 3):
            assert ll_and_sim(o, v, vscale(c, v, 3)) == SIM


def test_scalar_stability_of_sim():
    o = std(3, 2)
    vecs = [v for v in o.sorted_vectors() if any(v)]
    for u in vecs:
        for v in vecs:
            if ll_and_sim(o, u, v) != SIM:
                continue
            for c in range(1, 3):
                for d in range(1, 3):
                    assert ll_and_sim(o, vscale(c, u, 3), vscale(d, v, 3)) == SIM


# --- classes ---------------------------------------------------------------------


def test_sim_classes_f2_dim2():
    o = std(2, 2)
    b0, b1 = o.least_basis
    classes = sim_classes(o)
    assert [c.index for c in classes] == [0, 1]
    assert set(classes[0].members) == {b0, vadd(b0, b1, 2)}
    assert classes[1].members == (b1,)


def test_sim_classes_f2_dim1():
    o = std(2, 1)
    (cls,) = sim_classes(o)
    assert cls.members == ((1,),)


def test_sim_class_sizes_f3_dim2():
    classes = sim_classes(std(3, 2))
    assert [len(c.members) for c in classes] == [6, 2]


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_sim_partition_matches_pairwise_relation_everywhere(q, m):
    # the pairwise relation must be symmetric, transitive and identical to
    # the leading-coordinate partition on every ordering of the space
    V = VecSubspace.full(q, m)
    for o in natural_orderings(V):
        rank = o.rank_map()
        vecs = [v for v in o.sorted_vectors() if any(rank[v])]
        scaled = {v: [tuple((c * x) % q for x in rank[v]) for c in range(1, q)] for v in vecs}
        lead = {v: next(l for l, a in enumerate(rank[v]) if a) for v in vecs}
        for u in vecs:
            ru = scaled[u]
            for v in vecs:
                rv = scaled[v]
                if q == 2:
                    s = vadd(u, v, q)
                    sim = rank[s] < min(ru[0], rv[0])
                else:
                    sim = not (max(ru) < min(rv)) and not (max(rv) < min(ru))
                assert sim == (lead[u] == lead[v])


# --- recognizing natural orders -----------------------------------------------


def test_round_trip_all_orderings_of_f2_dim3():
    V = VecSubspace.full(2, 3)
    count = 0
    for o in natural_orderings(V):
        rec = least_basis_of(V, o.sorted_vectors())
        assert rec is not None and rec.least_basis == o.least_basis
        count += 1
    assert count == 168


def test_non_natural_transposition_rejected():
    V = VecSubspace.full(2, 2)
    o = std(2, 2)
    ordered = o.sorted_vectors()
    swapped = [ordered[1], ordered[0]] + ordered[2:]  # zero no longer first
    assert least_basis_of(V, swapped) is None


def test_only_zero_first_orders_of_f2_dim2_are_natural():
    V = VecSubspace.full(2, 2)
    vectors = V.vectors()
    natural = 0
    for perm in permutations(vectors):
        if least_basis_of(V, list(perm)) is not None:
            natural += 1
    # 6 of the 24 total orders: exactly those with zero least, and every
    # zero-first order of the 2-dim binary space is induced by a basis
    assert natural == 6


def test_f2_dim3_has_some_zero_first_non_natural_order():
    V = VecSubspace.full(2, 3)
    ordered = std(2, 3).sorted_vectors()
    swapped = ordered[:3] + [ordered[4], ordered[3]] + ordered[5:]
    assert least_basis_of(V, swapped) is None


def test_malformed_orders_rejected():
    V = VecSubspace.full(2, 2)
    with pytest.raises(ValueError):
        least_basis_of(V, [(0, 0), (1, 0)])  # not all vectors
    with pytest.raises(ValueError):
        least_basis_of(V, [(0, 0), (1, 0), (1, 0), (0, 1)])  # repeats


def test_flp_on_f2_dim2_orders():
    # natural iff every line restriction is natural (trivially two-sided here:
    # a zero-first order restricts to the unique line order, and a natural
    # order is zero-first)
    V = VecSubspace.full(2, 2)
    vectors = V.vectors()
    for perm in permutations(vectors):
        whole = least_basis_of(V, list(perm)) is not None
        rank = {v: i for i, v in enumerate(perm)}
        lines_ok = True
        for v in vectors:
            if not any(v):
                continue
            line = VecSubspace(2, 2, [v])
            restricted = sorted(line.vectors(), key=rank.__getitem__)
            if least_basis_of(line, restricted) is None:
                lines_ok = False
        assert whole == lines_ok


def _proper_subspaces(q, m):
    from itertools import combinations

    from amencert.fq import is_independent

    V = VecSubspace.full(q, m)
    nonzero = [v for v in V.vectors() if any(v)]
    seen = {}
    for d in range(1, m):
        for basis in combinations(nonzero, d):
            if not is_independent(list(basis), q):
                continue
            sub = VecSubspace(q, m, basis)
            seen[sub.basis] = sub
    return list(seen.values())


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2)])
def test_restriction_stability_of_ll_and_sim(q, m):
    # comparing inside a subspace agrees with comparing in the whole space,
    # for every ordering and every proper nonzero subspace
    from amencert.vmeasure import restrict_ordered

    V = VecSubspace.full(q, m)
    subspaces = _proper_subspaces(q, m)
    for o in natural_orderings(V):
        for sub in subspaces:
            ro = restrict_ordered(o, sub)
            members = [v for v in sub.vectors() if any(v)]
            for u in members:
                for v in members:
                    assert ll_and_sim(ro, u, v) == ll_and_sim(o, u, v)


# --- exact measures ---------------------------------------------------------------


def test_nwk_example_4_sevenths():
    res = measure_nwk(ClassCountEvent(q=2, m=3, k=0))
    assert res.value == Fraction(4, 7)
    assert res.enumerated


def test_nwk_saturates_at_full_class_count():
    res = measure_nwk(ClassCountEvent(q=2, m=3, k=2))
    assert res.value == 1


def test_nwk_monotone_in_k():
    for q, m in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        values = [measure_nwk(ClassCountEvent(q=q, m=m, k=k)).value for k in range(m)]
        assert values == sorted(values)
        assert values[-1] == 1


@pytest.mark.parametrize("q", [2, 3])
def test_nwk_closed_form_matches_enumeration(q):
    for m in range(1, 4):
        for k in range(m):
            res = measure_nwk(ClassCountEvent(q=q, m=m, k=k))
            assert res.enumerated
            assert res.value == Fraction(q**m - q ** (m - k - 1), q**m - 1)


def test_nwk_is_independent_of_the_line():
    for v in [(1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 1, 1)]:
        res = measure_nwk(ClassCountEvent(q=2, m=3, k=1, line=v))
        assert res.value == Fraction(6, 7)


def test_nwk_beyond_the_cap_uses_the_closed_form():
    assert count_gl(2, 4) == 20160  # just over the default cap
    res = measure_nwk(ClassCountEvent(q=2, m=4, k=0))
    assert not res.enumerated
    assert res.value == _nwk_closed_form(2, 4, 0)


def test_nwk_limit_in_m():
    # at fixed k the value climbs to 1 - q^-(k+1) as m grows
    target = Fraction(1, 2)
    prev_gap = None
    for m in (5, 10, 20):
        val = _nwk_closed_form(2, m, 0)
        gap = abs(val - target)
        if prev_gap is not None:
            assert gap < prev_gap
        prev_gap = gap
    assert abs(_nwk_closed_form(2, 20, 0) - target) < Fraction(1, 10**5)


def test_basis_count_examples():
    assert count_bases_with_coords(2, 2, (1, 0)) == 2
    assert count_bases_with_coords(2, 2, (0, 1)) == 2
    assert count_bases_with_coords(2, 3, (1, 1, 0)) == 24
    assert count_bases_with_coords(2, 1, (1,)) == 1


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_basis_count_is_tuple_independent(q, m):
    want = 1
    for i in range(1, m):
        want *= q**m - q**i
    from amencert.fq import all_vectors

    for coords in all_vectors(q, m):
        if not any(coords):
            continue
        assert count_bases_with_coords(q, m, coords) == want


def test_basis_count_rejects_zero_tuple():
    with pytest.raises(ValueError):
        count_bases_with_coords(2, 2, (0, 0))


def test_event_validation():
    with pytest.raises(ValueError):
        ClassCountEvent(q=2, m=3, k=3)
    with pytest.raises(ValueError):
        ClassCountEvent(q=4, m=2, k=0)
