"""The arc ring: basis, grading, multiplication, structural checks.

Dimensions and sample products are frozen from independent counts (the
dimension formula sums block sizes 2^circles, cross-checked against the
distance formula 2^(n - d)).
"""

import itertools
import random

import pytest

from arcring.arc_ring import (
    MAX_RING_N,
    ArcRing,
    BasisVector,
    RingElement,
    build_ring,
    commutator_quotient_rank,
    degree,
    element_degrees,
    get_ring,
    idempotent,
    label_words,
    multiply,
    unit,
    verify_ring_integrity,
)
from arcring.combinatorics import Matching, distance, enumerate_matchings, glue
from arcring.errors import CapacityError, SizeMismatchError
from arcring.frobenius import label_degree


def test_label_words():
    assert label_words(0) == ("",)
    assert label_words(1) == ("1", "X")
    assert label_words(2) == ("11", "1X", "X1", "XX")
    assert len(label_words(4)) == 16


def test_dimensions():
    assert get_ring(1).dimension == 2
    assert get_ring(2).dimension == 12
    assert get_ring(3).dimension == 104


def test_dimension_formulas():
    for n in (1, 2, 3):
        ring = get_ring(n)
        ms = enumerate_matchings(n)
        by_blocks = sum(
            2 ** len(glue(b, a).circles) for b in ms for a in ms
        )
        by_distance = sum(
            2 ** (n - distance(b, a)) for b in ms for a in ms
        )
        assert ring.dimension == by_blocks == by_distance
        assert sum(ring.block_dims.values()) == ring.dimension


def test_capacity_limits():
    with pytest.raises(CapacityError):
        ArcRing(0)
    with pytest.raises(CapacityError):
        ArcRing(MAX_RING_N + 1)


def test_degree_examples():
    ring = get_ring(2)
    a, b = enumerate_matchings(2)
    assert degree(BasisVector(a, a, "11")) == 0
    assert degree(BasisVector(a, a, "1X")) == 2
    assert degree(BasisVector(a, a, "XX")) == 4
    assert degree(BasisVector(a, b, "1")) == 1
    assert degree(BasisVector(a, b, "X")) == 3
    degs = sorted({degree(v) for v in ring.basis})
    assert degs == [0, 1, 2, 3, 4]
    for n in (1, 2, 3):
        top = max(degree(v) for v in get_ring(n).basis)
        assert top == 2 * n


def test_degree_formula():
    for n in (1, 2, 3):
        for v in get_ring(n).basis:
            circles = len(glue(v.row, v.col).circles)
            assert degree(v) == label_degree(v.labels) + (n - circles)


def test_n1_multiplication_table():
    ring = get_ring(1)
    (a,) = enumerate_matchings(1)
    one = BasisVector(a, a, "1")
    x = BasisVector(a, a, "X")
    assert ring.multiply_basis(one, one) == ((one, 1),)
    assert ring.multiply_basis(one, x) == ((x, 1),)
    assert ring.multiply_basis(x, one) == ((x, 1),)
    assert ring.multiply_basis(x, x) == ()


def test_split_product_example():
    # the two off-diagonal generators multiply to a comultiplied diagonal
    ring = get_ring(2)
    a, b = enumerate_matchings(2)
    x = BasisVector(a, b, "1")
    y = BasisVector(b, a, "1")
    assert ring.multiply_basis(x, y) == (
        (BasisVector(a, a, "1X"), 1),
        (BasisVector(a, a, "X1"), 1),
    )
    assert ring.multiply_basis(y, x) == (
        (BasisVector(b, b, "1X"), 1),
        (BasisVector(b, b, "X1"), 1),
    )


def test_block_law():
    # products vanish unless the inner matchings agree
    ring = get_ring(2)
    for x in ring.basis:
        for y in ring.basis:
            if x.col != y.row:
                assert ring.multiply_basis(x, y) == ()
            else:
                for z, _ in ring.multiply_basis(x, y):
                    assert z.row == x.row and z.col == y.col


def test_idempotents():
    for n in (1, 2, 3):
        ring = get_ring(n)
        for a in ring.order:
            e = idempotent(a)
            assert ring.multiply(e, e) == e
            assert element_degrees(e) == {0}
        for a, b in itertools.permutations(ring.order, 2):
            assert ring.multiply(idempotent(a), idempotent(b)).is_zero()


def test_unit_law():
    for n in (1, 2):
        ring = get_ring(n)
        one = unit(n)
        assert sorted(element_degrees(one)) == [0]
        for v in ring.basis:
            e = RingElement(n, {v: 1})
            assert ring.multiply(one, e) == e
            assert ring.multiply(e, one) == e


def test_unit_truncates_idempotent_sum():
    ring = get_ring(2)
    one = unit(2)
    assert len(one.terms) == len(ring.order)
    for v in one.terms:
        assert v.row == v.col
        assert set(v.labels) <= {"1"}


def test_grading_multiplicative():
    for n in (1, 2):
        ring = get_ring(n)
        for x in ring.basis:
            for y in ring.basis:
                if x.col != y.row:
                    continue
                for z, c in ring.multiply_basis(x, y):
                    assert c != 0
                    assert degree(z) == degree(x) + degree(y)


def test_associativity_exhaustive_n2():
    ring = get_ring(2)
    by_row = {}
    for v in ring.basis:
        by_row.setdefault(v.row, []).append(v)
    for x in ring.basis:
        for y in by_row[x.col]:
            for z in by_row[y.col]:
                ex, ey, ez = (RingElement(2, {v: 1}) for v in (x, y, z))
                assert ring.multiply(ring.multiply(ex, ey), ez) == ring.multiply(
                    ex, ring.multiply(ey, ez)
                )


def test_surgery_order_independence():
    rng = random.Random(11)
    for n in (2, 3):
        ring = get_ring(n)
        pairs = [
            (x, y)
            for x in ring.basis
            for y in ring.basis
            if x.col == y.row and len(x.col.pairs) > 1
        ]
        if len(pairs) > 200:
            pairs = rng.sample(pairs, 200)
        for x, y in pairs:
            base = ring.multiply_basis(x, y)
            arcs = list(x.col.pairs)
            for _ in range(3):
                rng.shuffle(arcs)
                assert ring.multiply_basis(x, y, arc_order=tuple(arcs)) == base


def test_verify_ring_integrity():
    for n in (1, 2, 3):
        report = verify_ring_integrity(n, samples=2000)
        assert report["passed"], report
        assert report["unit_law"]
        assert report["associative"]
        assert report["grading_multiplicative"]
        assert report["surgery_order_independent"]
        assert report["dimension"] == get_ring(n).dimension
    assert verify_ring_integrity(2)["associativity_mode"] == "exhaustive"
    assert verify_ring_integrity(3, samples=500)["associativity_mode"] == "sampled"


def test_ring_element_arithmetic():
    ring = get_ring(1)
    (a,) = enumerate_matchings(1)
    one = RingElement(1, {BasisVector(a, a, "1"): 1})
    x = RingElement(1, {BasisVector(a, a, "X"): 1})
    assert (one + x) - one == x
    assert -x == (-1) * x
    assert (0 * x).is_zero()
    assert multiply(x, x).is_zero()
    assert x * x == multiply(x, x)
    with pytest.raises(SizeMismatchError):
        one + unit(2)
    with pytest.raises(SizeMismatchError):
        get_ring(2).multiply(one, one)


def test_element_to_json():
    ring = get_ring(1)
    (a,) = enumerate_matchings(1)
    elt = RingElement(1, {BasisVector(a, a, "X"): 2})
    assert elt.to_json() == [
        {"row": [[1, 2]], "col": [[1, 2]], "labels": "X", "coeff": 2}
    ]


def test_custom_order_same_products():
    # the same basis vectors multiply identically whatever the order
    base = get_ring(2)
    reversed_ring = build_ring(2, list(reversed(base.order)))
    assert set(reversed_ring.basis) == set(base.basis)
    for x in base.basis:
        for y in base.basis:
            assert base.multiply_basis(x, y) == reversed_ring.multiply_basis(x, y)
    with pytest.raises(ValueError):
        build_ring(2, [base.order[0], base.order[0]])


def test_commutator_quotient_ranks():
    assert commutator_quotient_rank(1) == 2
    assert commutator_quotient_rank(2) == 6
    assert commutator_quotient_rank(3) == 20
