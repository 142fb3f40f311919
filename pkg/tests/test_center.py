"""The center of the arc ring and its admissible-monomial coordinates.

Rank values are frozen against the central binomial coefficients; the
isomorphism and symmetric-action reports must pass wholesale, and a few
of their ingredients are re-checked directly here at small n.
"""

import itertools
import math

import pytest

from arcring.arc_ring import BasisVector, RingElement, degree, get_ring, unit
from arcring.center import (
    CenterPresentation,
    center_basis,
    central_X,
    diagonal_coordinates,
    diagonal_vector,
    is_central,
    presentation_map,
    symmetric_action,
    total_order_independence,
    verify_presentation_iso,
    verify_symmetric_action,
)
from arcring.combinatorics import catalan, enumerate_matchings
from arcring.integer_linalg import invariant_factors, rank as matrix_rank
from arcring.presentations import SquareFreePoly, admissible_coordinates


def test_center_ranks():
    assert center_basis(1).rank == 2
    assert center_basis(2).rank == 6
    assert center_basis(3).rank == 20


def test_center_graded_ranks():
    assert center_basis(1).graded_ranks == {0: 1, 2: 1}
    assert center_basis(2).graded_ranks == {0: 1, 2: 3, 4: 2}
    assert center_basis(3).graded_ranks == {0: 1, 2: 5, 4: 9, 6: 5}


def test_center_rank_is_central_binomial():
    for n in (1, 2, 3):
        assert center_basis(n).rank == math.comb(2 * n, n)


def test_center_elements_are_central_and_homogeneous():
    for n in (1, 2):
        ring = get_ring(n)
        basis = center_basis(n, ring)
        for z in basis.elements:
            assert is_central(z, ring)
            degs = {degree(v) for v in z.terms}
            assert len(degs) == 1
            for v in z.terms:
                assert v.row == v.col


def test_center_lattice_matrix():
    for n in (1, 2):
        basis = center_basis(n)
        m = basis.lattice_matrix()
        assert m.shape == (catalan(n) * 2 ** n, basis.rank)
        assert matrix_rank(m) == basis.rank  # linearly independent columns


def test_unit_is_central():
    for n in (1, 2):
        assert is_central(unit(n))


def test_idempotent_not_central():
    from arcring.arc_ring import idempotent

    for n in (2, 3):
        a = enumerate_matchings(n)[0]
        assert not is_central(idempotent(a))


def test_central_X_n1():
    (a,) = enumerate_matchings(1)
    assert central_X(1, 1) == RingElement(1, {BasisVector(a, a, "X"): -1})
    assert central_X(2, 1) == RingElement(1, {BasisVector(a, a, "X"): 1})
    assert (central_X(1, 1) + central_X(2, 1)).is_zero()


def test_central_X_sign_alternates():
    # the coefficient of every term is (-1)^i
    for n in (1, 2, 3):
        for i in range(1, 2 * n + 1):
            z = central_X(i, n, verify=False)
            assert set(z.terms.values()) == {(-1) ** i}
            assert len(z.terms) == catalan(n)


def test_central_X_is_central():
    for n in (1, 2, 3):
        ring = get_ring(n)
        for i in range(1, 2 * n + 1):
            assert is_central(central_X(i, n, verify=False), ring)


def test_central_X_squares_vanish():
    for n in (1, 2):
        ring = get_ring(n)
        for i in range(1, 2 * n + 1):
            z = central_X(i, n)
            assert ring.multiply(z, z).is_zero()


def test_central_X_elementary_sums_vanish():
    # images of the elementary symmetric generators are zero in the ring
    for n in (1, 2):
        ring = get_ring(n)
        xs = [central_X(i, n) for i in range(1, 2 * n + 1)]
        for k in range(1, 2 * n + 1):
            total = RingElement(n)
            for subset in itertools.combinations(xs, k):
                acc = ring.unit()
                for z in subset:
                    acc = ring.multiply(acc, z)
                total = total + acc
            assert total.is_zero()


def test_central_X_range_check():
    with pytest.raises(ValueError):
        central_X(0, 1)
    with pytest.raises(ValueError):
        central_X(3, 1)


def test_diagonal_vector():
    (a,) = enumerate_matchings(1)
    z = RingElement(1, {BasisVector(a, a, "X"): 5})
    assert diagonal_coordinates(1) == [(a, "1"), (a, "X")]
    assert diagonal_vector(z) == [0, 5]
    b1, b2 = enumerate_matchings(2)
    off = RingElement(2, {BasisVector(b1, b2, "1"): 1})
    with pytest.raises(ValueError):
        diagonal_vector(off)


def test_verify_presentation_iso():
    for n in (1, 2, 3):
        report = verify_presentation_iso(n)
        assert report["passed"], report
        assert report["generators_central"]
        assert report["squares_vanish"]
        assert report["elementary_symmetric_images_vanish"]
        assert report["graded_ranks_match"]
        assert report["matrix_square"]
        assert report["matrix_invariant_factors_all_one"]
        assert report["products_homogeneous"]
        assert report["multiplicative_on_products"]
        assert report["center_rank"] == math.comb(2 * n, n)


def test_presentation_matrix_unimodular():
    for n in (1, 2):
        pres = presentation_map(n)
        assert pres.matrix.rows == pres.matrix.cols == pres.center.rank
        assert all(f == 1 for f in invariant_factors(pres.matrix))


def test_presentation_roundtrip():
    for n in (1, 2):
        pres = presentation_map(n)
        for z in pres.center.elements:
            coords = pres.to_admissible(z)
            assert pres.from_admissible(coords) == z
        for j, s in enumerate(pres.admissible):
            assert pres.to_admissible(pres.products[j]) == {tuple(s): 1}


def test_presentation_multiplicative_spot():
    # ring product of two monomial images equals the image of the
    # reduced polynomial product
    pres = presentation_map(2)
    ring = pres.ring
    for sa, sb in itertools.product(pres.admissible, repeat=2):
        ia = pres.admissible.index(sa)
        ib = pres.admissible.index(sb)
        direct = ring.multiply(pres.products[ia], pres.products[ib])
        poly = SquareFreePoly.monomial(2, sa) * SquareFreePoly.monomial(2, sb)
        assert direct == pres.from_admissible(admissible_coordinates(poly))


def test_symmetric_action_identity():
    for n in (1, 2):
        pres = presentation_map(n)
        identity = {j: j for j in range(1, 2 * n + 1)}
        for z in pres.center.elements:
            assert symmetric_action(identity, z, pres) == z


def test_symmetric_action_n1_swap():
    pres = presentation_map(1)
    z1, z2 = central_X(1, 1), central_X(2, 1)
    swapped = symmetric_action({1: 2, 2: 1}, z1, pres)
    assert swapped == z2 == -z1
    # sequence input means the same permutation
    assert symmetric_action([2, 1], z1, pres) == z2


def test_symmetric_action_permutes_generators():
    for n in (1, 2):
        pres = presentation_map(n)
        xs = [central_X(i, n) for i in range(1, 2 * n + 1)]
        for i in range(1, 2 * n):
            sigma = {j: j for j in range(1, 2 * n + 1)}
            sigma[i], sigma[i + 1] = i + 1, i
            for j in range(1, 2 * n + 1):
                want = xs[sigma[j] - 1]
                assert symmetric_action(sigma, xs[j - 1], pres) == want


def test_symmetric_action_group_property():
    pres = presentation_map(1)
    swap = {1: 2, 2: 1}
    for z in pres.center.elements:
        twice = symmetric_action(swap, symmetric_action(swap, z, pres), pres)
        assert twice == z


def test_verify_symmetric_action():
    for n in (1, 2):
        report = verify_symmetric_action(n)
        assert report["passed"], report
        assert report["r1_generators_fixed"]
        assert report["ideal_stable_under_transpositions"]
        assert report["identity_acts_trivially"]
        assert report["action_property"]
        assert report["braid_relations"]


def test_total_order_independence():
    for n in (1, 2, 3):
        report = total_order_independence(n)
        assert report["passed"], report
        assert report["lattices_equal"]
    # only so many distinct orders exist at small n
    assert total_order_independence(1)["orders_checked"] == 1
    assert total_order_independence(2)["orders_checked"] == 2
    assert total_order_independence(3)["orders_checked"] == 5
    assert total_order_independence(3)["linear_extensions"] == 2
