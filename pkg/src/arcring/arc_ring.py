"""The convolution ring on crossingless matchings.

The ring H_n is the direct sum over ordered pairs (b, a) of matchings of
free Z-modules with one generator per labeling of the circles of
glue(b, a) by {1, X}.  A basis vector is therefore (row b, column a,
label word).  Multiplication contracts the middle matching of two
compatible diagrams by one saddle move per arc, merging or splitting
circles and rewriting labels through the Frobenius algebra.

The same saddle engine (SurgeryState) also powers the cup-cap bimodules
in braid_homotopy, which stack an extra flat tangle into the diagrams.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

from .combinatorics import Matching, glue, total_order, enumerate_matchings
from .errors import CapacityError, InvariantError, SizeMismatchError
from .frobenius import MERGE, SPLIT, X

MAX_RING_N = 6


@lru_cache(maxsize=None)
def label_words(k: int) -> tuple[str, ...]:
    """All {1, X} words of length k in lexicographic order ("1" < "X")."""
    return tuple("".join(t) for t in itertools.product("1X", repeat=k))


class BasisVector(NamedTuple):
    """One diagram basis vector: target matching, source matching, labels.

    The label word is aligned with the circles of glue(row, col) in
    their canonical order (increasing smallest endpoint).
    """

    row: Matching
    col: Matching
    labels: str


def degree(v: BasisVector) -> int:
    """2 per X label, plus n minus the number of circles.

    The shift makes multiplication degree-additive: each saddle either
    merges (one circle fewer) or splits while adding one X worth of
    label degree on balance.
    """
    return 2 * v.labels.count(X) + (v.row.n - len(v.labels))


class RingElement:
    """An integer combination of basis vectors of one ring H_n."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[BasisVector, int] | None = None):
        self.n = n
        self.terms = {v: c for v, c in (terms or {}).items() if c != 0}

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        out = dict(self.terms)
        for v, c in other.terms.items():
            out[v] = out.get(v, 0) + c
        return RingElement(self.n, out)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-1) * other

    def __neg__(self) -> "RingElement":
        return (-1) * self

    def __rmul__(self, k: int) -> "RingElement":
        if not isinstance(k, int):
            return NotImplemented
        return RingElement(self.n, {v: k * c for v, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return get_ring(self.n).multiply(self, other)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "RingElement") -> None:
        if self.n != other.n:
            raise SizeMismatchError(f"elements of H_{self.n} and H_{other.n}")

    def __repr__(self):
        if not self.terms:
            return f"RingElement(n={self.n}, 0)"
        bits = [
            f"{c}*({v.row.pairs}<-{v.col.pairs}:{v.labels})"
            for v, c in sorted(self.terms.items())
        ]
        return "RingElement(" + " + ".join(bits) + ")"

    def to_json(self) -> list[dict]:
        return [
            {
                "row": v.row.to_json(),
                "col": v.col.to_json(),
                "labels": v.labels,
                "coeff": c,
            }
            for v, c in sorted(self.terms.items())
        ]


class SurgeryState:
    """A labeled 1-manifold presented as a multigraph, under saddle moves.

    Vertices are layer-encoded points, edges are keyed strands, and the
    connected components (always disjoint cycles) are the circles.  A
    term dictionary maps label words, aligned with the current component
    list, to integer coefficients.  Each surgery removes two parallel
    strands and reconnects crosswise, either merging two circles or
    splitting one; labels follow the Frobenius tables.
    """

    def __init__(self, edges: dict, components: list[frozenset], terms: dict[str, int]):
        self.edges = dict(edges)
        self.comps = list(components)
        self.terms = dict(terms)
        self.adj: dict = {}
        for key, (p, q) in self.edges.items():
            self.adj.setdefault(p, {})[key] = q
            self.adj.setdefault(q, {})[key] = p

    def _comp_index(self, point) -> int:
        for i, comp in enumerate(self.comps):
            if point in comp:
                return i
        raise InvariantError(f"point {point} not on any circle")

    def _reach(self, start) -> frozenset:
        seen = {start}
        stack = [start]
        while stack:
            p = stack.pop()
            for q in self.adj.get(p, {}).values():
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def surgery(self, remove_a, remove_b, add_a, add_b) -> None:
        """Replace strands remove_a, remove_b by add_a, add_b.

        add_a must join one endpoint of each removed strand, add_b the
        two remaining endpoints; the caller encodes the saddle that way.
        """
        pa, qa = self.edges.pop(remove_a)
        pb, qb = self.edges.pop(remove_b)
        del self.adj[pa][remove_a], self.adj[qa][remove_a]
        del self.adj[pb][remove_b], self.adj[qb][remove_b]
        for key, (p, q) in (add_a, add_b):
            self.edges[key] = (p, q)
            self.adj.setdefault(p, {})[key] = q
            self.adj.setdefault(q, {})[key] = p

        ia, ib = self._comp_index(pa), self._comp_index(pb)
        if ia != ib:
            lo, hi = min(ia, ib), max(ia, ib)
            merged = self.comps[ia] | self.comps[ib]
            self.comps[lo] = merged
            del self.comps[hi]
            new_terms: dict[str, int] = {}
            for word, coeff in self.terms.items():
                for lab, c in MERGE[(word[ia], word[ib])]:
                    w = word[:lo] + lab + word[lo + 1 : hi] + word[hi + 1 :]
                    new_terms[w] = new_terms.get(w, 0) + c * coeff
            self.terms = {w: c for w, c in new_terms.items() if c != 0}
        else:
            half = self._reach(pa)
            if qa in half:
                # a genuine planar diagram always splits here
                raise InvariantError("saddle on one circle failed to split it")
            other = self._reach(qa)
            if half & other or half | other != self.comps[ia]:
                raise InvariantError("split did not partition the circle in two")
            self.comps[ia : ia + 1] = [half, other]
            new_terms = {}
            for word, coeff in self.terms.items():
                for (la, lb), c in SPLIT[word[ia]]:
                    w = word[:ia] + la + lb + word[ia + 1 :]
                    new_terms[w] = new_terms.get(w, 0) + c * coeff
            self.terms = {w: c for w, c in new_terms.items() if c != 0}

    def finalize(self, position_of) -> dict[str, int]:
        """Map the surviving circles through position_of and reorder words.

        position_of takes a component (frozenset of points) and returns
        its index among the output diagram's circles; it must be a
        bijection onto range(len(comps)).
        """
        places = [position_of(comp) for comp in self.comps]
        if sorted(places) != list(range(len(self.comps))):
            raise InvariantError("surviving circles do not match the output diagram")
        out: dict[str, int] = {}
        for word, coeff in self.terms.items():
            chars = [""] * len(word)
            for i, pos in enumerate(places):
                chars[pos] = word[i]
            w = "".join(chars)
            out[w] = out.get(w, 0) + coeff
        return {w: c for w, c in out.items() if c != 0}


def _matching_edges(tag: str, m: Matching, offset: int) -> dict:
    return {(tag, i, j): (offset + i, offset + j) for i, j in m.pairs}


def _offset_circles(diagram, offset: int) -> list[frozenset]:
    return [frozenset(offset + p for p in c) for c in diagram.circles]


class ArcRing:
    """H_n with a fixed basis enumeration.

    The basis runs over ordered pairs (row, col) of matchings in the
    given order (default: the canonical linear extension of the arrow
    order) and, inside a block, over label words lexicographically.
    The products of basis vectors are memoized; they do not depend on
    the enumeration order.
    """

    def __init__(self, n: int, order: list[Matching] | None = None):
        if n < 1:
            raise CapacityError("the ring needs n >= 1")
        if n > MAX_RING_N:
            raise CapacityError(f"n = {n} exceeds the supported limit {MAX_RING_N}")
        self.n = n
        if order is None:
            order = total_order(n)
        expected = set(enumerate_matchings(n))
        if set(order) != expected or len(order) != len(expected):
            raise ValueError("order must enumerate every matching exactly once")
        self.order = list(order)
        self.basis: list[BasisVector] = []
        self.block_dims: dict[tuple[Matching, Matching], int] = {}
        for b in self.order:
            for a in self.order:
                k = len(glue(b, a).circles)
                self.block_dims[(b, a)] = 2**k
                for w in label_words(k):
                    self.basis.append(BasisVector(b, a, w))
        self.index = {v: i for i, v in enumerate(self.basis)}
        self.dimension = len(self.basis)
        self._products: dict[tuple[BasisVector, BasisVector], tuple] = {}

    # -- multiplication ------------------------------------------------

    def multiply_basis(
        self, x: BasisVector, y: BasisVector, arc_order=None
    ) -> tuple[tuple[BasisVector, int], ...]:
        """Product of two basis vectors as ((vector, coeff), ...).

        Zero unless x's source matching equals y's target matching.  The
        optional arc_order overrides the order in which the middle arcs
        are contracted (the result never depends on it; tests rely on
        being able to permute it).
        """
        if x.col != y.row:
            return ()
        key = (x, y)
        if arc_order is None and key in self._products:
            return self._products[key]
        n = self.n
        c, b, a = x.row, x.col, y.col
        off = 2 * n
        edges = {}
        edges.update(_matching_edges("top", c, 0))
        edges.update(_matching_edges("mid_top", b, 0))
        edges.update(_matching_edges("mid_bot", b, off))
        edges.update(_matching_edges("bot", a, off))
        comps = _offset_circles(glue(c, b), 0) + _offset_circles(glue(b, a), off)
        state = SurgeryState(edges, comps, {x.labels + y.labels: 1})
        for i, j in arc_order if arc_order is not None else b.pairs:
            state.surgery(
                ("mid_top", i, j),
                ("mid_bot", i, j),
                (("vert", i), (i, off + i)),
                (("vert", j), (j, off + j)),
            )
        out_circles = {
            frozenset(circ): pos for pos, circ in enumerate(glue(c, a).circle_sets)
        }

        def position_of(comp: frozenset) -> int:
            endpoints = frozenset(p if p <= 2 * n else p - off for p in comp)
            return out_circles[endpoints]

        result = tuple(
            (BasisVector(c, a, w), coeff)
            for w, coeff in sorted(state.finalize(position_of).items())
        )
        if arc_order is None:
            self._products[key] = result
        return result

    def multiply(self, x: RingElement, y: RingElement) -> RingElement:
        if x.n != self.n or y.n != self.n:
            raise SizeMismatchError("element size does not match the ring")
        acc: dict[BasisVector, int] = {}
        for vx, cx in x.terms.items():
            for vy, cy in y.terms.items():
                if vx.col != vy.row:
                    continue
                for vz, cz in self.multiply_basis(vx, vy):
                    acc[vz] = acc.get(vz, 0) + cx * cy * cz
        return RingElement(self.n, acc)

    # -- distinguished elements ----------------------------------------

    def idempotent(self, a: Matching) -> RingElement:
        """The diagonal all-ones labeling 1_a of glue(a, a)."""
        k = len(glue(a, a).circles)
        return RingElement(self.n, {BasisVector(a, a, "1" * k): 1})

    def unit(self) -> RingElement:
        """Sum of the idempotents 1_a over all matchings."""
        out = RingElement(self.n)
        for a in self.order:
            out = out + self.idempotent(a)
        return out

    def coords(self, elt: RingElement) -> list[int]:
        v = [0] * self.dimension
        for bv, c in elt.terms.items():
            v[self.index[bv]] = c
        return v

    def element(self, terms: dict[BasisVector, int]) -> RingElement:
        return RingElement(self.n, terms)


@lru_cache(maxsize=None)
def get_ring(n: int) -> ArcRing:
    """The ring H_n with the canonical basis order, built once."""
    return ArcRing(n)


def build_ring(n: int, order: list[Matching] | None = None) -> ArcRing:
    if order is None:
        return get_ring(n)
    return ArcRing(n, order)


def multiply(x: RingElement, y: RingElement) -> RingElement:
    return get_ring(x.n).multiply(x, y)


def idempotent(a: Matching) -> RingElement:
    return get_ring(a.n).idempotent(a)


def unit(n: int) -> RingElement:
    return get_ring(n).unit()


def element_degrees(elt: RingElement) -> set[int]:
    return {degree(v) for v in elt.terms}


def verify_ring_integrity(
    n: int, seed: int = 0, samples: int = 10000, order_shuffles: int = 3
) -> dict:
    """Associativity, unit law, grading, surgery-order independence.

    Associativity is exhaustive over composable basis triples for
    n <= 2 and runs on `samples` seeded random triples otherwise.
    Grading is checked on every composable basis pair.  Every check
    reports into a JSON-ready dictionary with an overall "passed" flag.
    """
    import random

    ring = get_ring(n)
    rng = random.Random(seed)
    by_row: dict[Matching, list[BasisVector]] = {}
    for v in ring.basis:
        by_row.setdefault(v.row, []).append(v)
    report: dict = {"n": n, "dimension": ring.dimension}

    one = ring.unit()
    unit_ok = True
    for v in ring.basis:
        e = RingElement(n, {v: 1})
        if ring.multiply(one, e) != e or ring.multiply(e, one) != e:
            unit_ok = False
            report["unit_counterexample"] = repr(v)
            break
    report["unit_law"] = unit_ok

    if n <= 2:
        triples = [
            (x, y, z)
            for x in ring.basis
            for y in by_row[x.col]
            for z in by_row[y.col]
        ]
        report["associativity_mode"] = "exhaustive"
    else:
        triples = []
        for _ in range(samples):
            x = rng.choice(ring.basis)
            y = rng.choice(by_row[x.col])
            z = rng.choice(by_row[y.col])
            triples.append((x, y, z))
        report["associativity_mode"] = "sampled"
    assoc_ok = True
    for x, y, z in triples:
        ex, ey, ez = (RingElement(n, {v: 1}) for v in (x, y, z))
        if ring.multiply(ring.multiply(ex, ey), ez) != ring.multiply(
            ex, ring.multiply(ey, ez)
        ):
            assoc_ok = False
            report["associativity_counterexample"] = [repr(x), repr(y), repr(z)]
            break
    report["associativity_triples"] = len(triples)
    report["associative"] = assoc_ok

    grading_ok = True
    for x in ring.basis:
        for y in by_row[x.col]:
            want = degree(x) + degree(y)
            if any(degree(z) != want for z, _ in ring.multiply_basis(x, y)):
                grading_ok = False
                report["grading_counterexample"] = [repr(x), repr(y)]
                break
        if not grading_ok:
            break
    report["grading_multiplicative"] = grading_ok

    order_ok = True
    pairs = [(x, y) for x in ring.basis for y in by_row[x.col] if len(x.col.pairs) > 1]
    if n > 2 and len(pairs) > 400:
        pairs = rng.sample(pairs, 400)
    for x, y in pairs:
        base = ring.multiply_basis(x, y)
        arcs = list(x.col.pairs)
        for _ in range(order_shuffles):
            rng.shuffle(arcs)
            if ring.multiply_basis(x, y, arc_order=tuple(arcs)) != base:
                order_ok = False
                report["order_counterexample"] = [repr(x), repr(y), list(arcs)]
                break
        if not order_ok:
            break
    report["surgery_order_independent"] = order_ok

    report["passed"] = unit_ok and assoc_ok and grading_ok and order_ok
    return report


def commutator_quotient_rank(n: int) -> int:
    """Rank of H_n modulo the subgroup spanned by all xy - yx.

    Computed over the full basis: one generator per composable ordered
    pair of basis vectors, reduced by integer rank.
    """
    from .integer_linalg import IntMatrix, rank

    ring = get_ring(n)
    rows = []
    for vx in ring.basis:
        for vy in ring.basis:
            fwd = ring.multiply_basis(vx, vy) if vx.col == vy.row else ()
            bwd = ring.multiply_basis(vy, vx) if vy.col == vx.row else ()
            if not fwd and not bwd:
                continue
            vec = [0] * ring.dimension
            for bv, c in fwd:
                vec[ring.index[bv]] += c
            for bv, c in bwd:
                vec[ring.index[bv]] -= c
            if any(vec):
                rows.append(vec)
    if not rows:
        return ring.dimension
    return ring.dimension - rank(IntMatrix(rows, cols=ring.dimension))
