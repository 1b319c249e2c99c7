"""
Tests for the automorphism lab
Aut and Out orders, holomorphs, the map R and the centre bound
"""
import itertools

import pytest

from aut_lab import (automorphisms, brute_normalizer, centre_bound_report,
                     holomorph, inner_automorphisms, normalizer_report, r_map,
                     regular_representation)
from catalog import (alternating, build_catalog, cyclic, dihedral, direct,
                     quaternion, symmetric, wreath)
from exceptions import NotNormalizing, SizeLimit
from group_kernel import Permutation


def klein():
    return direct([cyclic(2), cyclic(2)]).to_table()


@pytest.mark.parametrize("group, aut_order, out_order", [
    (cyclic(3).to_table(), 2, 2),
    (cyclic(8).to_table(), 4, 4),
    (klein(), 6, 6),
    (symmetric(3).to_table(), 6, 1),
    (dihedral(4).to_table(), 8, 2),
    (quaternion().to_table(), 24, 6),
    (alternating(4).to_table(), 24, 2),
])
def test_automorphism_orders(group, aut_order, out_order):
    aut = automorphisms(group)
    assert aut.order == aut_order
    assert aut.out_order == out_order


def test_automorphisms_fix_identity_and_respect_products():
    group = dihedral(4).to_table()
    for phi in automorphisms(group).automorphisms:
        assert phi(group.identity) == group.identity
        for a, b in itertools.product(range(group.order), repeat=2):
            assert phi(group.mul(a, b)) == group.mul(phi(a), phi(b))


def test_inner_automorphisms_of_abelian_group():
    assert len(inner_automorphisms(cyclic(5).to_table())) == 1


def test_automorphism_size_limit():
    with pytest.raises(SizeLimit):
        automorphisms(symmetric(5).to_table())


def test_regular_representation_is_homomorphism():
    group = symmetric(3).to_table()
    regular = regular_representation(group)
    assert regular.image.order == group.order
    for g, h in itertools.product(range(group.order), repeat=2):
        assert regular.tau(g) * regular.tau(h) == regular.tau(group.mul(g, h))


@pytest.mark.parametrize("group, order", [
    (cyclic(3).to_table(), 6),
    (cyclic(4).to_table(), 8),
    (klein(), 24),
    (symmetric(3).to_table(), 36),
])
def test_holomorph_order(group, order):
    assert holomorph(group).order == order


def test_r_map_is_surjective_homomorphism():
    group = dihedral(4).to_table()
    aut = automorphisms(group)
    hol = holomorph(group, aut)
    images = {}
    for phi in hol.elements:
        images[phi] = r_map(phi, group)
    assert set(images.values()) == set(aut.automorphisms)
    sample = hol.elements[::5]
    for phi, psi in itertools.product(sample, repeat=2):
        assert images[phi * psi] == images[phi] * images[psi]


def test_r_map_kernel_has_group_order():
    group = symmetric(3).to_table()
    hol = holomorph(group)
    identity = Permutation.identity(group.order)
    kernel = [phi for phi in hol.elements if r_map(phi, group) == identity]
    assert len(kernel) == group.order


def test_r_map_rejects_non_normalizing_permutation():
    group = symmetric(3).to_table()
    hol = holomorph(group)
    outside = next(Permutation(images) for images in itertools.permutations(range(6))
                   if Permutation(images) not in hol)
    with pytest.raises(NotNormalizing):
        r_map(outside, group)


def test_r_map_rejects_wrong_degree():
    with pytest.raises(NotNormalizing):
        r_map(Permutation.identity(3), cyclic(4).to_table())


SMALL_ENTRIES = [entry for entry in build_catalog() if entry.order <= 8]


@pytest.mark.parametrize("entry", SMALL_ENTRIES, ids=lambda entry: entry.name)
def test_brute_normaliser_equals_holomorph(entry):
    report = normalizer_report(entry.table, brute=True)
    assert report.agree
    assert report.brute_order == report.holomorph_order == entry.order * report.aut_order


def test_normaliser_sweep_covers_every_small_catalog_group():
    names = {entry.name for entry in SMALL_ENTRIES}
    assert {"C5", "C7", "C8", "C2xC4", "C2xC2xC2", "C2wrS2", "Q8", "D4"} <= names


def test_brute_normaliser_size_limit():
    with pytest.raises(SizeLimit):
        brute_normalizer(cyclic(9))


def test_centre_bound_equality_for_regular_cyclic_group():
    report = centre_bound_report(cyclic(4))
    assert report.centre_order == 4
    assert report.orbit_reps == [0]
    assert report.k2_values == [4]
    assert report.holds


def test_centre_bound_for_wreath_product():
    report = centre_bound_report(wreath(3))
    assert report.centre_order == 2
    assert report.k2_values == [3]
    assert report.holds


def test_centre_bound_intransitive_group():
    group = direct([cyclic(2), cyclic(3)])
    report = centre_bound_report(group)
    assert report.orbit_reps == [0, 2]
    # 2-orbits through 0: two inside {0, 1}, one across; through 2: three inside, one across
    assert report.k2_values == [3, 4]
    assert report.bound == 12
    assert report.centre_order == 6
    assert report.holds


@pytest.mark.parametrize("entry", [entry for entry in build_catalog() if entry.perm_group is not None
                                   and entry.perm_group.degree <= 12], ids=lambda entry: entry.name)
def test_centre_bound_holds_across_catalog(entry):
    report = centre_bound_report(entry.perm_group)
    assert report.holds
    assert report.centre_order <= report.bound
    assert len(report.orbit_reps) == len(report.k2_values)


@pytest.mark.stretch
def test_outer_automorphisms_of_s6():
    aut = automorphisms(symmetric(6).to_table(), allow_large=True)
    assert aut.order == 1440
    assert aut.out_order == 2


def test_regular_representation_of_small_cyclic_groups():
    two = regular_representation(cyclic(2).to_table())
    assert two.image.order == 2
    assert two.tau(1) == Permutation.from_cycles([(0, 1)], 2)
    four = regular_representation(cyclic(4).to_table())
    assert four.image.order == 4
    assert all(four.tau(g).order() == cyclic(4).to_table().element_orders()[g] for g in range(4))


def test_trivial_group():
    trivial = cyclic(1).to_table()
    assert automorphisms(trivial).order == 1
    assert holomorph(trivial).order == 1
    report = centre_bound_report(cyclic(1))
    assert report.bound == 1
    assert report.centre_order == 1


def test_r_map_of_identity_is_identity():
    group = symmetric(3).to_table()
    assert r_map(Permutation.identity(6), group).is_identity()


def test_r_map_of_regular_element_is_inner():
    group = dihedral(4).to_table()
    regular = regular_representation(group)
    inner = set(inner_automorphisms(group))
    for u in range(group.order):
        alpha = r_map(regular.tau(u), group)
        expected = tuple(group.mul(group.mul(u, x), group.inverses[u]) for x in range(group.order))
        assert alpha.images == expected
        assert alpha in inner


def test_r_map_fixes_automorphisms():
    group = quaternion().to_table()
    for alpha in automorphisms(group).automorphisms:
        assert r_map(alpha, group) == alpha


@pytest.mark.parametrize("n", [3, 4])
def test_brute_normaliser_of_full_symmetric_group(n):
    assert brute_normalizer(symmetric(n)).order == symmetric(n).order


@pytest.mark.parametrize("n, order", [(3, 6), (8, 32)])
def test_brute_normaliser_of_regular_cyclic_group(n, order):
    normaliser = brute_normalizer(cyclic(n))
    assert normaliser.order == order
    assert normaliser.order == n * automorphisms(cyclic(n).to_table()).order
