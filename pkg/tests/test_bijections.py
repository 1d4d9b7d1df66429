import os
import sys
from collections import Counter

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from bijections import (ColoredDyckPath, DegenerateSubsequence, InvalidPartition,
                        InvalidTreeLiteral, NotAvoiding011, NotAvoiding021, NotAvoiding201,
                        NotAvoiding210, NotInDomainClass, cap_map, cap_map_inverse, contains_010,
                        corteel_phi, corteel_phi_inverse, cyclic_exchange, eta, eta_inverse,
                        first_occurrence_inverse, first_occurrence_map, format_tree, in_class_a,
                        in_class_b, is_dyck_path, is_indecomposable, iter_dyck_paths,
                        iter_set_partitions, iter_trees, max_block_rank, outline, outline_inverse,
                        parse_tree, path_capacity, path_type, phi_stat, phi_stat_inverse, psi, rho,
                        rho_inv, tree_capacity, tree_edges, tree_to_dyck, tree_type,
                        validate_partition, weighted_path_total, zero_propagate,
                        zero_propagate_inverse)
from closed_forms import bell, catalan, triangle_T
from enumeration import PatternSet, iter_avoiders
from inversion_sequences import OutOfRange, stats

FIG_TWO_TREE = '(()((()()))(()))'


def avoiders(n, *patterns):
    return list(iter_avoiders(n, PatternSet.of(*patterns)))


def zero_based(positions):
    return [p - 1 for p in positions]


def test_outline_examples():
    path = outline((0, 1, 0, 0, 2, 0, 4))
    assert path.heights == (0, 1, 1, 1, 2, 2, 4)
    assert [i + 1 for i, red in enumerate(path.red) if red] == [1, 3, 4, 6]
    assert outline((0, 1, 2)).colors() == ('red', 'black', 'black')
    assert outline((0, 0, 0)).red == (True, True, True)
    with pytest.raises(NotAvoiding021):
        outline((0, 0, 2, 1))


def test_outline_is_a_bijection_onto_class_a():
    for n in range(1, 8):
        for e in avoiders(n, '021'):
            path = outline(e)
            assert in_class_a(path)
            assert outline_inverse(path) == e
        for e in avoiders(n, '021', '120'):
            assert in_class_b(outline(e))


def test_class_predicates_reject_bad_colorings():
    assert not in_class_a(ColoredDyckPath((0, 1), (False, False)))
    assert not in_class_a(ColoredDyckPath((0, 1), (True, True)))
    assert not in_class_a(ColoredDyckPath((0, 2), (True, False)))
    # red step at height 2 while height 1 is the lowest positive height
    path = ColoredDyckPath((0, 1, 2, 2), (True, False, False, True))
    assert in_class_a(path)
    assert not in_class_b(path)


def test_eta_example():
    assert eta((0, 0, 2, 1, 0, 4)) == ((1, 4, 6), (2, 3), (5,))
    assert eta((0, 0, 0)) == ((1,), (2,), (3,))
    assert eta((0, 1, 2, 3)) == ((1, 2, 3, 4),)
    assert eta_inverse([[5], [2, 3], [6, 4, 1]]) == (0, 0, 2, 1, 0, 4)
    with pytest.raises(NotAvoiding011):
        eta((0, 1, 1))


def test_eta_reaches_every_partition():
    for n in range(1, 8):
        images = Counter()
        for e in avoiders(n, '011'):
            blocks = eta(e)
            assert len(blocks) == stats(e).zero
            assert eta_inverse(blocks) == e
            images[blocks] += 1
        assert set(images) == set(iter_set_partitions(n))
        assert len(images) == bell(n)


def test_phi_stat_example_and_inverse():
    e = (0, 0, 0, 0, 4, 3, 2, 2, 2, 5, 1, 1)
    f = (0, 0, 0, 0, 4, 3, 2, 4, 4, 5, 1, 5)
    assert phi_stat(e) == f
    assert phi_stat_inverse(f) == e
    assert phi_stat((0, 1, 1)) == (0, 1, 1)
    assert phi_stat((0, 0, 0)) == (0, 0, 0)
    with pytest.raises(NotInDomainClass):
        phi_stat((0, 1, 0))


def test_phi_stat_preserves_statistics():
    for n in range(1, 8):
        source = avoiders(n, '010', '101')
        images = [phi_stat(e) for e in source]
        assert sorted(images) == avoiders(n, '010', '100')
        for e, f in zip(source, images):
            assert (stats(e).dist, stats(e).satu, stats(e).zero) == (stats(f).dist, stats(f).satu, stats(f).zero)
            assert phi_stat_inverse(f) == e


def test_zero_propagate():
    assert zero_propagate((0, 0, 0, 3, 0, 2, 0, 0, 1)) == (0, 0, 0, 3, 3, 2, 2, 2, 1)
    assert zero_propagate((0, 0, 2, 0)) == (0, 0, 2, 2)
    assert zero_propagate_inverse((0, 0, 0, 3, 3, 2, 2, 2, 1)) == (0, 0, 0, 3, 0, 2, 0, 0, 1)
    for n in range(1, 8):
        source = avoiders(n, '011', '012')
        images = [zero_propagate(e) for e in source]
        assert sorted(images) == avoiders(n, '010', '012')
        assert [zero_propagate_inverse(f) for f in images] == source


def test_first_occurrence_map():
    assert first_occurrence_map((0, 1, 1, 3, 3)) == (0, 1, 0, 3, 0)
    assert first_occurrence_map((0, 0, 2, 2)) == (0, 0, 2, 0)
    assert first_occurrence_inverse((0, 1, 0, 3, 0)) == (0, 1, 1, 3, 3)
    for n in range(1, 8):
        source = avoiders(n, '010', '021')
        images = [first_occurrence_map(e) for e in source]
        assert sorted(images) == avoiders(n, '011', '021')
        assert [first_occurrence_inverse(f) for f in images] == source


def test_rho_examples():
    assert rho((0, 0, 0, 3)) == (0, 0, 2)
    assert rho((0, 0, 2, 0)) == (0, 1, 0)
    assert rho((0, 1, 0, 0)) == (0, 0, 0)
    assert rho((0, 0, 1, 3)) == (0, 1, 2)
    assert rho_inv((0, 0, 2)) == (0, 0, 0, 3)
    assert rho_inv((0, 0, 0)) == (0, 1, 0, 0)
    with pytest.raises(NotInDomainClass):
        rho((0, 0, 0))


def test_rho_is_a_bijection():
    for n in range(2, 9):
        source = [e for e in avoiders(n, '011', '102') if stats(e).satu == 2]
        target = avoiders(n - 1, '011', '102')
        assert sorted(rho(e) for e in source) == target
        assert all(rho_inv(rho(e)) == e for e in source)
        assert all(rho(rho_inv(f)) == f for f in target)


def test_corteel_phi_example():
    assert corteel_phi((0, 0, 0, 3, 1, 4, 2, 2)) == (0, 0, 0, 3, 2, 4, 2, 1)
    assert corteel_phi_inverse((0, 0, 0, 3, 2, 4, 2, 1)) == (0, 0, 0, 3, 1, 4, 2, 2)
    assert corteel_phi((0, 1, 0)) == (0, 1, 0)
    assert corteel_phi((0, 1, 1, 3)) == (0, 1, 1, 3)
    with pytest.raises(NotAvoiding210):
        corteel_phi((0, 1, 2, 1, 0))


def test_corteel_phi_bijection_and_restrictions():
    for n in range(1, 8):
        source = avoiders(n, '210')
        images = [corteel_phi(e) for e in source]
        assert sorted(images) == avoiders(n, '201')
        for e, f in zip(source, images):
            assert sorted(e) == sorted(f)
            assert corteel_phi_inverse(f) == e
        assert sorted(corteel_phi(e) for e in avoiders(n, '011', '210')) == avoiders(n, '011', '201')
        assert sorted(corteel_phi(e) for e in avoiders(n, '000', '210')) == avoiders(n, '000', '201')


def test_cyclic_exchange_examples():
    positions = zero_based([5, 6, 8, 10, 11, 12])
    assert (cyclic_exchange((0, 0, 0, 3, 2, 2, 4, 1, 3, 0, 1, 1), positions)
            == (0, 0, 0, 3, 0, 1, 4, 1, 3, 1, 2, 2))
    positions = zero_based([5, 7, 8, 10, 11, 12])
    assert (cyclic_exchange((0, 0, 0, 3, 1, 4, 3, 1, 3, 1, 2, 2), positions)
            == (0, 0, 0, 3, 2, 4, 1, 2, 3, 2, 3, 3))
    with pytest.raises(DegenerateSubsequence):
        cyclic_exchange((0, 1, 1, 1), [1, 2, 3])


def test_psi_worked_example():
    e = (0, 0, 1, 2, 3, 2, 2, 4, 3, 4, 8, 7, 5, 4, 3, 0)
    f = psi(e)
    assert f == (0, 0, 1, 2, 3, 0, 2, 4, 2, 4, 8, 2, 3, 4, 5, 7)
    assert (stats(e).zero, stats(e).dist, stats(e).satu) == (stats(f).zero, stats(f).dist, stats(f).satu)
    with pytest.raises(NotAvoiding201):
        psi((0, 1, 2, 0, 1))


def test_psi_is_identity_on_small_and_doubly_avoiding_inputs():
    for n in range(1, 4):
        for e in avoiders(n, '201'):
            assert psi(e) == e
    for e in avoiders(6, '201', '210'):
        assert psi(e) == e


def test_psi_bijection_and_preserved_statistics():
    for n in range(1, 8):
        source = avoiders(n, '201')
        images = [psi(e) for e in source]
        assert sorted(images) == avoiders(n, '210')
        for e, f in zip(source, images):
            assert (stats(e).zero, stats(e).dist, stats(e).satu) == (stats(f).zero, stats(f).dist, stats(f).satu)
            assert contains_010(e) == contains_010(f)


def test_cap_map():
    assert cap_map((0, 0, 1, 1, 2, 2, 2, 0, 3, 3, 5)) == (0, 0, 1, 0, 2, 0, 0, 0, 3, 3, 5)
    assert cap_map((0, 1, 1, 0)) == (0, 1, 0, 0)
    assert cap_map((0, 1, 1, 3)) == (0, 1, 1, 3)
    assert cap_map_inverse((0, 0, 1, 0, 2, 0, 0, 0, 3, 3, 5)) == (0, 0, 1, 1, 2, 2, 2, 0, 3, 3, 5)
    for n in range(1, 8):
        source = avoiders(n, '100', '021')
        images = [cap_map(e) for e in source]
        assert sorted(images) == avoiders(n, '110', '021')
        assert [cap_map_inverse(f) for f in images] == source


def test_maps_validate_their_input():
    with pytest.raises(OutOfRange):
        eta((0, 2))
    with pytest.raises(NotInDomainClass):
        cap_map((0, 1, 0, 0))


def test_tree_literals():
    tree = parse_tree(FIG_TWO_TREE)
    assert format_tree(tree) == FIG_TWO_TREE
    assert tree_edges(tree) == 7
    assert parse_tree(' ( ( ) ) ') == ((),)
    for bad in ('', '(()', '())', '()()', '(x)'):
        with pytest.raises(InvalidTreeLiteral):
            parse_tree(bad)


def test_tree_to_dyck_example():
    tree = parse_tree(FIG_TWO_TREE)
    assert tree_type(tree) == (3, 1, 2, 1)
    heights = tree_to_dyck(tree)
    assert heights == (0, 0, 0, 2, 3, 3, 6)
    assert path_type(heights) == (3, 1, 2, 1)
    assert tree_capacity(tree) == path_capacity(heights) == 1


def test_tree_to_dyck_star_and_path():
    assert tree_to_dyck(((),) * 5) == (0, 0, 0, 0, 0)
    chain = ()
    for _ in range(5):
        chain = (chain,)
    heights = tree_to_dyck(chain)
    assert is_dyck_path(heights)
    assert path_type(heights) == tree_type(chain) == (1, 1, 1, 1, 1)
    assert path_capacity(heights) == tree_capacity(chain)


def test_tree_to_dyck_is_a_type_and_capacity_preserving_bijection():
    for n in range(0, 8):
        trees = list(iter_trees(n))
        assert len(trees) == catalan(n)
        paths = [tree_to_dyck(tree) for tree in trees]
        assert set(paths) == set(iter_dyck_paths(n))
        assert len(set(paths)) == len(trees)
        for tree, heights in zip(trees, paths):
            assert tree_type(tree) == path_type(heights)
            assert tree_capacity(tree) == path_capacity(heights)


def test_dyck_paths():
    assert list(iter_dyck_paths(3)) == [(0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 1), (0, 1, 2)]
    assert not is_dyck_path((0, 2))
    assert not is_dyck_path((0, 1, 0))
    assert path_type((0, 0, 2, 2, 3)) == (2, 2, 1)


def test_weighted_path_total():
    assert [weighted_path_total(n) for n in range(1, 9)] == [1, 2, 6, 21, 80, 322, 1347, 5798]


def test_set_partitions():
    assert list(iter_set_partitions(3)) == [
        ((1, 2, 3),), ((1, 2), (3,)), ((1, 3), (2,)), ((1,), (2, 3)), ((1,), (2,), (3,)),
    ]
    assert list(iter_set_partitions(0)) == [()]
    assert validate_partition([[3], [2, 1]]) == ((1, 2), (3,))
    for bad in ([[1, 2], [2]], [[1], [3]], [[1], []]):
        with pytest.raises(InvalidPartition):
            validate_partition(bad)


def test_indecomposable_partitions_by_max_block_rank():
    assert is_indecomposable(((1, 3), (2,)))
    assert not is_indecomposable(((1,), (2, 3)))
    assert max_block_rank(((1, 3), (2,))) == 2
    t = triangle_T(7)
    for n in range(1, 7):
        ranks = Counter(max_block_rank(p) for p in iter_set_partitions(n + 1) if is_indecomposable(p))
        assert dict(ranks) == {k: t[(n, k)] for k in range(1, n + 1) if t[(n, k)]}
    assert t[(3, 2)] == 3
