import itertools
import random
from fractions import Fraction

import pytest

from chordbasis.basis import REFERENCE_C_DIMS, connected_basis, express
from chordbasis.diagrams import StringRep, canonicalize, diagram
from chordbasis.errors import ChordBasisError, DiagramError
from chordbasis.symmetry import (
    GeneralizedBasisVector,
    LabeledTree,
    all_labeled_trees,
    apply_permutation,
    class_coords,
    diagram_from_multigraph,
    equivariant_to_text,
    equivariantize_greedy,
    equivariantize_m2,
    graph_form_basis,
    orbit_report,
    orbit_report_to_text,
    tree_basis,
    tree_reduce,
    underlying_multigraph,
    vector_of,
    verify_equivariant,
)


# -- orbit reports ------------------------------------------------------

def test_single_circle_orbits_all_complete():
    report = orbit_report(connected_basis(1, 3))
    assert all(o.complete and o.size == 1 for o in report.orbits)
    assert report.incomplete_count == 0


def test_two_circle_three_chord_basis_has_incomplete_orbit():
    b = connected_basis(2, 3)
    report = orbit_report(b)
    assert report.incomplete_count >= 1
    # exactly one of the published example pair sits in the basis
    pair = {diagram("01|0122"), diagram("0012|12")}
    assert len(pair & set(b.basis)) == 1
    for o in report.orbits:
        if not o.complete:
            assert o.types, "incomplete orbits carry a type classification"
            assert o.types <= {"I", "II"}


def test_orbit_sizes_divide_group_order():
    from math import factorial

    for m, n in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        report = orbit_report(connected_basis(m, n))
        for o in report.orbits:
            assert factorial(m) % o.size == 0


def test_orbit_report_partitions_basis():
    b = connected_basis(2, 3)
    report = orbit_report(b)
    counted = sum(len(o.basis_members) for o in report.orbits)
    assert counted == len(b.basis)


def test_orbit_report_text_format():
    text = orbit_report_to_text(orbit_report(connected_basis(2, 2)))
    assert text.startswith("orbit-report m=2 n=2 orbits=")
    assert "digest=sha256:" in text.splitlines()[0]


# -- trees --------------------------------------------------------------

def test_tree_counts_match_cayley():
    for n in range(0, 5):
        assert len(tree_basis(n)) == (n + 1) ** max(n - 1, 0)


def test_tree_basis_one_chord():
    assert [str(d) for d in tree_basis(1)] == ["0|0"]


def test_tree_reduce_examples():
    assert tree_reduce(diagram("0|0")).edges == ((0, 1),)
    assert tree_reduce(diagram("01|0|1")).edges == ((0, 1), (0, 2))


def test_tree_reduce_rejects_non_tree_inputs():
    with pytest.raises(DiagramError):
        tree_reduce(diagram("0011"))  # m != n + 1
    with pytest.raises(DiagramError):
        tree_reduce(canonicalize(StringRep((0, 0), (0, 2, 2))))  # disconnected


def test_tree_roundtrip():
    for tree in all_labeled_trees(4):
        d = diagram_from_multigraph(tree.edges, 4)
        assert tree_reduce(d) == tree


def test_prufer_decode_known_tree():
    # sequence (0, 0) is the star at vertex 0 on four vertices
    t = LabeledTree.from_prufer((0, 0), 4)
    assert t.edges == ((0, 1), (0, 2), (0, 3))


def test_foot_permutation_invariance_for_tree_diagrams():
    # permuting the feet on one circle of a tree-type diagram does not
    # change its class
    rng = random.Random(5)
    for n in (2, 3):
        b = connected_basis(n + 1, n)
        for d in tree_basis(n)[:6]:
            rep = d.rep
            blocks = list(rep.blocks())
            sizes = [len(bl) for bl in blocks]
            candidates = [i for i, s in enumerate(sizes) if s >= 2]
            if not candidates:
                continue
            i = rng.choice(candidates)
            perm = list(blocks[i])
            rng.shuffle(perm)
            blocks[i] = tuple(perm)
            feet = tuple(c for bl in blocks for c in bl)
            permuted = canonicalize(StringRep(feet, rep.starts))
            assert express(permuted, b) == express(d, b)


def test_tree_basis_is_equivariant():
    for n in (1, 2, 3):
        b = connected_basis(n + 1, n)
        vectors = [vector_of(d) for d in tree_basis(n)]
        assert verify_equivariant(vectors, b)


# -- generalized vectors ------------------------------------------------

def test_generalized_vector_rejects_zero():
    with pytest.raises(ChordBasisError):
        GeneralizedBasisVector(())


def test_apply_permutation_to_combination():
    v = GeneralizedBasisVector(((diagram("00|"), Fraction(2)), (diagram("0|0"), Fraction(1))))
    image = apply_permutation(v, (1, 0))
    assert dict(image.terms) == {diagram("|00"): Fraction(2), diagram("0|0"): Fraction(1)}


def test_class_coords_of_basis_member_is_unit():
    b = connected_basis(2, 2)
    coords = class_coords(vector_of(b.basis[1]), b)
    assert coords == ((1, Fraction(1)),)


# -- equivariantization -------------------------------------------------

def test_equivariantize_one_chord_already_fixed():
    b = connected_basis(2, 1)
    vectors, history = equivariantize_m2(b)
    assert [str(v) for v in vectors] == ["1*0|0"]
    assert history == [0]


@pytest.mark.parametrize("n", [2, 3])
def test_equivariantize_small(n):
    b = connected_basis(2, n)
    vectors, history = equivariantize_m2(b)
    assert len(vectors) == REFERENCE_C_DIMS[(2, n)]
    assert history[-1] == 0
    assert all(later < earlier for earlier, later in zip(history, history[1:]))
    assert verify_equivariant(vectors, b)


def test_equivariantize_rejects_other_circle_counts():
    with pytest.raises(ChordBasisError):
        equivariantize_m2(connected_basis(3, 2))


def test_raw_two_circle_three_chord_basis_is_not_equivariant():
    b = connected_basis(2, 3)
    assert not verify_equivariant([vector_of(d) for d in b.basis], b)


def test_verify_equivariant_checks_cardinality():
    b = connected_basis(2, 2)
    assert not verify_equivariant([vector_of(b.basis[0])], b)


def test_equivariantize_greedy_contract():
    b = connected_basis(3, 3)
    vectors, finished, history = equivariantize_greedy(b)
    assert len(vectors) == 16
    assert isinstance(finished, bool)
    if finished:
        assert verify_equivariant(vectors, b)
        assert history[-1] == 0


# -- per-graph bases ----------------------------------------------------

def test_underlying_multigraph():
    assert underlying_multigraph(diagram("0102|12")) == ((0, 0), (0, 1), (0, 1))


def test_graph_form_basis_three_three():
    b = connected_basis(3, 3)
    reps = graph_form_basis(b)
    assert len(reps) == 16
    assert len({underlying_multigraph(d) for d in reps}) == 16
    assert verify_equivariant([vector_of(d) for d in reps], b)


def test_graph_form_basis_orbit_structure():
    b = connected_basis(3, 3)
    report = orbit_report(b, [vector_of(d) for d in graph_form_basis(b)])
    assert report.orbit_sizes() == [6, 6, 3, 1]
    assert report.incomplete_count == 0


def test_graph_form_basis_rejects_degenerate_spaces():
    with pytest.raises(ChordBasisError):
        graph_form_basis(connected_basis(2, 3))  # 13 graphs != dimension 9


def test_graph_form_matches_tree_basis_on_tree_case():
    b = connected_basis(3, 2)
    assert graph_form_basis(b) == tree_basis(2)


def test_equivariant_file_format():
    b = connected_basis(2, 2)
    vectors, history = equivariantize_m2(b)
    text = equivariant_to_text(vectors, 2, 2, history)
    assert text.startswith("equivariant-basis m=2 n=2 vectors=3")
    assert len(text.strip().splitlines()) == 4


@pytest.mark.parametrize("m,n", [(2, 4), (3, 4)])
def test_orbit_dichotomy_holds_on_larger_bases(m, n):
    # orbit_report raises internally if an incomplete orbit fails the
    # type I / type II expansion dichotomy
    report = orbit_report(connected_basis(m, n))
    assert report.incomplete_count >= 1
    for o in report.orbits:
        assert o.complete or o.types
