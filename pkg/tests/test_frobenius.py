"""The rank-two Frobenius algebra: multiplication, comultiplication, trace.

Everything here is exhaustive; the algebra has two basis labels, so all
axioms can be checked on every input combination.
"""

import doctest
import itertools

import pytest

import arcring.frobenius
from arcring.frobenius import (
    LABELS,
    ONE,
    X,
    TensorElement,
    label_degree,
    merge,
    split,
    trace,
)


def test_doctests():
    failures, _ = doctest.testmod(arcring.frobenius)
    assert failures == 0


def test_merge_table():
    assert merge(ONE, ONE) == TensorElement(1, {ONE: 1})
    assert merge(ONE, X) == TensorElement(1, {X: 1})
    assert merge(X, ONE) == TensorElement(1, {X: 1})
    assert merge(X, X).is_zero()


def test_split_table():
    assert split(ONE) == TensorElement(2, {ONE + X: 1, X + ONE: 1})
    assert split(X) == TensorElement(2, {X + X: 1})


def test_trace_table():
    assert trace(ONE) == 0
    assert trace(X) == 1


def test_merge_commutative():
    for x, y in itertools.product(LABELS, repeat=2):
        assert merge(x, y) == merge(y, x)


def test_merge_associative():
    # evaluate both bracketings label by label through the linear extension
    def merge_elt(elt, z):
        out = TensorElement(1)
        for w, c in elt.terms.items():
            out = out + c * merge(w, z)
        return out

    for x, y, z in itertools.product(LABELS, repeat=3):
        left = merge_elt(merge(x, y), z)
        right = merge_elt(merge(y, z), x)
        assert left == right


def test_unit_label():
    for x in LABELS:
        assert merge(ONE, x) == TensorElement(1, {x: 1})


def test_split_cocommutative():
    for x in LABELS:
        flipped = TensorElement(2, {w[::-1]: c for w, c in split(x).terms.items()})
        assert split(x) == flipped


def test_split_coassociative():
    # (split x id) after split equals (id x split) after split
    def split_left(elt):
        out = {}
        for w, c in elt.terms.items():
            for u, d in split(w[0]).terms.items():
                out[u + w[1]] = out.get(u + w[1], 0) + c * d
        return TensorElement(3, out)

    def split_right(elt):
        out = {}
        for w, c in elt.terms.items():
            for u, d in split(w[1]).terms.items():
                out[w[0] + u] = out.get(w[0] + u, 0) + c * d
        return TensorElement(3, out)

    for x in LABELS:
        assert split_left(split(x)) == split_right(split(x))


def test_counit_identity():
    # (trace x id) after split returns the original label, both sides
    for x in LABELS:
        left = {}
        right = {}
        for w, c in split(x).terms.items():
            left[w[1]] = left.get(w[1], 0) + c * trace(w[0])
            right[w[0]] = right.get(w[0], 0) + c * trace(w[1])
        assert TensorElement(1, left) == TensorElement(1, {x: 1})
        assert TensorElement(1, right) == TensorElement(1, {x: 1})


def test_frobenius_compatibility():
    # split after merge equals (id x merge) after (split x id)
    for x, y in itertools.product(LABELS, repeat=2):
        left = {}
        for w, c in merge(x, y).terms.items():
            for u, d in split(w).terms.items():
                left[u] = left.get(u, 0) + c * d
        right = {}
        for u, d in split(x).terms.items():
            for w, c in merge(u[1], y).terms.items():
                key = u[0] + w
                right[key] = right.get(key, 0) + c * d
        assert TensorElement(2, left) == TensorElement(2, right)


def test_trace_pairing_nondegenerate():
    # the pairing (x, y) -> trace(xy) has matrix [[0,1],[1,0]]
    gram = [
        [sum(c * trace(w) for w, c in merge(x, y).terms.items()) for y in LABELS]
        for x in LABELS
    ]
    assert gram == [[0, 1], [1, 0]]


def test_handle_element_vanishes():
    # merge after split multiplies by 2X, and X * 2X = 0
    for x in LABELS:
        out = {}
        for w, c in split(x).terms.items():
            for u, d in merge(w[0], w[1]).terms.items():
                out[u] = out.get(u, 0) + c * d
        handle = TensorElement(1, out)
        if x == ONE:
            assert handle == TensorElement(1, {X: 2})
        else:
            assert handle.is_zero()


def test_degrees():
    assert label_degree(ONE) == 0
    assert label_degree(X) == 2
    assert label_degree("1X1X") == 4
    assert label_degree("") == 0


def test_merge_degree_additive():
    for x, y in itertools.product(LABELS, repeat=2):
        want = label_degree(x) + label_degree(y)
        for w, c in merge(x, y).terms.items():
            assert label_degree(w) == want


def test_split_degree_shift():
    # comultiplication raises total degree by 2, matching the saddle shift
    for x in LABELS:
        for w, c in split(x).terms.items():
            assert label_degree(w) == label_degree(x) + 2


def test_trace_linearity():
    elt = TensorElement(1, {X: 2, ONE: 3})
    assert sum(c * trace(w) for w, c in elt.terms.items()) == 2


def test_tensor_element_arithmetic():
    a = TensorElement(1, {ONE: 1, X: 2})
    b = TensorElement(1, {X: -2})
    assert (a + b) == TensorElement(1, {ONE: 1})
    assert 0 * a == TensorElement(1)
    assert (0 * a).is_zero()
    with pytest.raises(ValueError):
        a + TensorElement(2, {ONE + ONE: 1})


def test_tensor_element_validation():
    with pytest.raises(ValueError):
        TensorElement(1, {"Y": 1})
    with pytest.raises(ValueError):
        TensorElement(2, {X: 1})
    empty = TensorElement(0, {"": 5})
    assert empty.terms == {"": 5}
