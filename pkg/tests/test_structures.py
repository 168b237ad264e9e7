from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from amencert import (
    BoronStructure,
    FiniteDigraph,
    VecSubspace,
    boron_bn,
    boron_delta,
    boron_meet,
    enumerate_embeddings,
    is_embedding,
    substructure_reps,
)
from amencert.structures import are_isomorphic, single_leaf

from helpers import PATH4, NO_EDGE_PAIR


# --- constructors -------------------------------------------------------------


def test_digraph_rejects_two_cycles_and_loops():
    with pytest.raises(ValueError):
        FiniteDigraph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        FiniteDigraph(2, [(0, 0)])


def test_boron_relation_closure_and_validation():
    b = BoronStructure((0, 1, 2, 3), [(0, 1, 2, 3)])
    # one tuple closes to its full 8-element orbit
    assert len(b.relation) == 8
    assert (1, 0, 3, 2) in b.relation and (2, 3, 0, 1) in b.relation
    with pytest.raises(ValueError):
        BoronStructure((0, 1, 2), [(0, 1, 2, 2)])


def test_boron_empty_relation_on_four_leaves_is_unrealizable():
    # any four leaves of a degree-1/3 tree split into exactly one disjoint pair
    with pytest.raises(ValueError):
        BoronStructure((0, 1, 2, 3), [])


def test_vecsubspace_canonical_basis():
    v = VecSubspace(2, 2, [(1, 1), (1, 0)])
    assert v.basis == ((1, 0), (0, 1))
    with pytest.raises(ValueError):
        VecSubspace(2, 2, [(1, 1), (1, 1)])
    with pytest.raises(ValueError):
        VecSubspace(4, 2, [(1, 0)])  # 4 is not prime


# --- is_embedding -------------------------------------------------------------


def test_identity_on_path_is_embedding():
    assert is_embedding((0, 1, 2, 3), PATH4, PATH4)


def test_constant_map_is_not_injective():
    assert not is_embedding((0, 0), NO_EDGE_PAIR, NO_EDGE_PAIR)


def test_kind_mismatch_rejected():
    with pytest.raises(TypeError):
        is_embedding((0, 1), NO_EDGE_PAIR, boron_bn(1))


def test_boron_three_leaf_embedding_into_b3():
    A = BoronStructure((0, 1, 2), [])
    B3 = boron_bn(3)
    f = {0: (0, 0, 0), 1: (0, 1, 0), 2: (1, 0, 0)}
    assert is_embedding(f, A, B3)


# --- enumerate_embeddings -----------------------------------------------------


def test_no_edge_pair_into_path_has_six_embeddings():
    embs = enumerate_embeddings(NO_EDGE_PAIR, PATH4)
    images = {e.images for e in embs}
    assert images == {(0, 2), (2, 0), (0, 3), (3, 0), (1, 3), (3, 1)}


def test_single_vertex_self_embedding():
    one = FiniteDigraph(1, [])
    assert len(enumerate_embeddings(one, one)) == 1


def test_vec_line_into_plane_has_three_embeddings():
    A = VecSubspace.full(2, 1)
    B = VecSubspace.full(2, 2)
    embs = enumerate_embeddings(A, B)
    assert [e.images for e in embs] == [((0, 1),), ((1, 0),), ((1, 1),)]


@pytest.mark.parametrize(
    "A,B",
    [
        (NO_EDGE_PAIR, PATH4),
        (FiniteDigraph(2, [(0, 1)]), PATH4),
        (FiniteDigraph(3, [(0, 1), (1, 2)]), PATH4),
    ],
)
def test_enumeration_matches_brute_force(A, B):
    found = {e.images for e in enumerate_embeddings(A, B)}
    brute = {
        images
        for images in permutations(range(B.n), A.n)
        if is_embedding(images, A, B)
    }
    assert found == brute


def test_boron_enumeration_matches_brute_force():
    A = BoronStructure((0, 1, 2), [])
    B = boron_bn(2)
    found = {e.images for e in enumerate_embeddings(A, B)}
    brute = {
        images for images in permutations(B.leaves, 3) if is_embedding(images, A, B)
    }
    assert found == brute and len(found) == 24


def test_vec_enumeration_matches_brute_force():
    from itertools import permutations as perms

    A = VecSubspace.full(2, 2)
    B = VecSubspace.full(2, 3)
    pool = [v for v in B.vectors() if any(v)]
    found = {e.images for e in enumerate_embeddings(A, B)}
    brute = {t for t in perms(pool, 2) if is_embedding(t, A, B)}
    assert found == brute and len(found) == (8 - 1) * (8 - 2)


def test_embedding_composition_digraph():
    A = FiniteDigraph(2, [(0, 1)])
    B = FiniteDigraph(3, [(0, 1), (1, 2)])
    for f in enumerate_embeddings(A, B):
        for g in enumerate_embeddings(B, PATH4):
            assert is_embedding(g.compose(f), A, PATH4)


def test_embedding_composition_vecspace():
    A = VecSubspace.full(2, 1)
    B = VecSubspace.full(2, 2)
    C = VecSubspace.full(2, 3)
    for f in enumerate_embeddings(A, B):
        for g in enumerate_embeddings(B, C):
            assert is_embedding(g.compose(f), A, C)


@given(st.integers(1, 3), st.data())
def test_embedding_composition_random_digraphs(n, data):
    edges = []
    for a, b in combinations(range(n), 2):
        choice = data.draw(st.sampled_from(["ab", "ba", "none"]))
        if choice == "ab":
            edges.append((a, b))
        elif choice == "ba":
            edges.append((b, a))
    A = FiniteDigraph(n, edges)
    for f in enumerate_embeddings(A, PATH4):
        for g in enumerate_embeddings(PATH4, PATH4):
            assert is_embedding(g.compose(f), A, PATH4)


# --- substructure classification ------------------------------------------------


def test_path_reps_sizes_and_pair_classes():
    reps = substructure_reps(PATH4)
    sizes = [len(r.structure.universe) for r in reps]
    assert sorted(set(sizes)) == [1, 2, 3, 4]
    pair_reps = [r.structure for r in reps if r.structure.n == 2]
    assert len(pair_reps) == 2  # one edge class, one non-edge class
    assert {bool(r.edges) for r in pair_reps} == {True, False}
    for r in reps:
        assert is_embedding(r.witness, r.structure, PATH4)


def test_vecspace_reps_by_dimension():
    reps = substructure_reps(VecSubspace.full(2, 2))
    assert [r.structure.dim for r in reps] == [1, 2]
    for r in reps:
        assert is_embedding(r.witness, r.structure, VecSubspace.full(2, 2))


def test_b2_reps_one_class_per_size():
    reps = substructure_reps(boron_bn(2))
    sizes = [len(r.structure.leaves) for r in reps]
    assert sizes == [1, 2, 3, 4]
    for r in reps:
        assert is_embedding(r.witness, r.structure, boron_bn(2))


# --- word structure -------------------------------------------------------------


def test_bn_basics():
    b1 = boron_bn(1)
    assert len(b1.leaves) == 2 and not b1.relation
    b2 = boron_bn(2)
    assert ((0, 0), (0, 1), (1, 0), (1, 1)) in b2.relation
    assert ((0, 0), (1, 0), (0, 1), (1, 1)) not in b2.relation
    with pytest.raises(ValueError):
        boron_bn(0)


def test_delta_examples():
    assert boron_delta((0, 0, 0), (0, 1, 0)) == 1
    assert boron_delta((0, 0, 0), (1, 1, 1)) == 0
    assert boron_delta((1, 1, 0), (1, 1, 1)) == 2
    with pytest.raises(ValueError):
        boron_delta((1, 0), (1, 0))


def test_meet_examples_and_symmetry():
    assert boron_meet((0, 0, 0), (0, 1, 0)) == (0, 1, 1)
    assert boron_meet((1, 0), (1, 1)) == (1, 1)
    assert boron_meet((0, 1), (1, 0)) == (1, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_meet_dominates_both_arguments(n):
    leaves = boron_bn(n).leaves
    for x, y in combinations(leaves, 2):
        m = boron_meet(x, y)
        assert m == boron_meet(y, x)
        assert m >= x and m >= y


@pytest.mark.parametrize("n", [2, 3])
def test_every_three_subset_induces_the_three_leaf_structure(n):
    B = boron_bn(n)
    three = BoronStructure((0, 1, 2), [])
    for trio in combinations(B.leaves, 3):
        induced = BoronStructure(
            trio,
            [t for t in B.relation if all(x in trio for x in t)],
            check=False,
        )
        assert are_isomorphic(induced, three)


def test_single_leaf_structure():
    s = single_leaf()
    assert len(s.leaves) == 1 and not s.relation
