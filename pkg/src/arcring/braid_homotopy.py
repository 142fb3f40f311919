"""Cup-cap bimodules over the arc ring and the saddle null-homotopy.

U_i is the flat tangle with a cap joining the bottom points i, i+1, a
cup joining the top points i, i+1, and vertical strands elsewhere.  Its
bimodule F(U_i) has one generator per labeling of the circles of the
closed diagram W(b) U_i a for each block (b, a); the ring acts on both
sides by the same saddle contraction that defines ring multiplication.

Collapsing the cup-cap pair of U_i to two vertical strands is a single
saddle.  It induces maps alpha: F(U_i) -> H and beta: H -> F(U_i), and
the point verified here is that left multiplication by the central X at
one of the endpoints i, i+1 minus right multiplication by the central X
at the other is the composite of alpha and beta up to one global sign:
the difference is null-homotopic in the two-term complex built on
alpha, with homotopy a signed beta.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import NamedTuple

from .arc_ring import (
    ArcRing,
    BasisVector,
    RingElement,
    SurgeryState,
    _matching_edges,
    _offset_circles,
    degree,
    get_ring,
    label_words,
)
from .combinatorics import Matching, glue
from .errors import InvariantError, SizeMismatchError
from .frobenius import ONE


class FlatComposite(NamedTuple):
    """The composite tangle U_i a: a matching plus 0 or 1 closed circles."""

    matching: Matching
    circles: int


def compose_ui(i: int, a: Matching) -> FlatComposite:
    """Compose the cup-cap tangle U_i with the matching a.

    If a already joins i and i+1 that arc closes against the cap into a
    free circle and the cup restores the same matching; otherwise the
    partners of i and i+1 get joined to each other and a new (i, i+1)
    arc appears, with no circle.

    >>> from .combinatorics import Matching
    >>> compose_ui(1, Matching([(1, 4), (2, 3)]))
    FlatComposite(matching=Matching([(1, 2), (3, 4)]), circles=0)
    >>> compose_ui(2, Matching([(1, 4), (2, 3)]))
    FlatComposite(matching=Matching([(1, 4), (2, 3)]), circles=1)
    """
    n = a.n
    if not 1 <= i <= 2 * n - 1:
        raise ValueError(f"tangle index {i} out of range 1..{2*n-1}")
    if a.partner[i] == i + 1:
        return FlatComposite(a, 1)
    p, q = a.partner[i], a.partner[i + 1]
    pairs = [arc for arc in a.pairs if i not in arc and i + 1 not in arc]
    pairs += [(min(p, q), max(p, q)), (i, i + 1)]
    return FlatComposite(Matching(pairs), 0)


class BimoduleElement:
    """An integer combination of generators of one bimodule F(U_i).

    Generators reuse BasisVector; the label word runs over the circles
    of glue(row, compose_ui(i, col).matching) in canonical order, then
    the free circle of U_i col last when there is one.
    """

    __slots__ = ("n", "i", "terms")

    def __init__(self, n: int, i: int, terms: dict[BasisVector, int] | None = None):
        self.n = n
        self.i = i
        self.terms = {v: c for v, c in (terms or {}).items() if c != 0}

    def _check(self, other: "BimoduleElement") -> None:
        if self.n != other.n or self.i != other.i:
            raise SizeMismatchError("elements of different bimodules")

    def __add__(self, other: "BimoduleElement") -> "BimoduleElement":
        self._check(other)
        out = dict(self.terms)
        for v, c in other.terms.items():
            out[v] = out.get(v, 0) + c
        return BimoduleElement(self.n, self.i, out)

    def __sub__(self, other: "BimoduleElement") -> "BimoduleElement":
        return self + (-1) * other

    def __neg__(self) -> "BimoduleElement":
        return (-1) * self

    def __rmul__(self, k: int) -> "BimoduleElement":
        if not isinstance(k, int):
            return NotImplemented
        return BimoduleElement(self.n, self.i, {v: k * c for v, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, BimoduleElement)
            and (self.n, self.i) == (other.n, other.i)
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return f"BimoduleElement(n={self.n}, i={self.i}, 0)"
        bits = [
            f"{c}*({v.row.pairs}<-U{self.i}<-{v.col.pairs}:{v.labels})"
            for v, c in sorted(self.terms.items())
        ]
        return "BimoduleElement(" + " + ".join(bits) + ")"


class UiBimodule:
    """F(U_i) as a bimodule over H_n, with the two saddle maps.

    All block diagrams put the W(row) side on the upper of two point
    lines.  Every circle of W(b) U_i a other than the free one meets
    the upper line, and projecting its upper-line points recovers its
    endpoint set in glue(b, compose_ui(i, a).matching); that is how
    components are matched to canonical label positions.
    """

    def __init__(self, n: int, i: int, ring: ArcRing | None = None):
        if not 1 <= i <= 2 * n - 1:
            raise ValueError(f"tangle index {i} out of range 1..{2*n-1}")
        self.n = n
        self.i = i
        self.ring = ring or get_ring(n)
        self.composite = {a: compose_ui(i, a) for a in self.ring.order}
        self.basis: list[BasisVector] = []
        self.block_circles: dict[tuple[Matching, Matching], int] = {}
        for b in self.ring.order:
            for a in self.ring.order:
                comp = self.composite[a]
                k = len(glue(b, comp.matching).circles) + comp.circles
                self.block_circles[(b, a)] = k
                for w in label_words(k):
                    self.basis.append(BasisVector(b, a, w))
        self.index = {v: j for j, v in enumerate(self.basis)}
        self.dimension = len(self.basis)
        self._left: dict = {}
        self._right: dict = {}
        self._alpha: dict = {}
        self._beta: dict = {}

    def element(self, terms: dict[BasisVector, int]) -> BimoduleElement:
        return BimoduleElement(self.n, self.i, terms)

    # -- diagram plumbing ------------------------------------------------

    def _tangle_edges(self, b: Matching, a: Matching, top: int, bot: int) -> dict:
        """Edges of the closed diagram W(b) U_i a on two point lines."""
        i, n = self.i, self.n
        edges = {}
        edges.update(_matching_edges("bim_cap", b, top))
        edges["bim_cup"] = (top + i, top + i + 1)
        edges["bim_capmid"] = (bot + i, bot + i + 1)
        for j in range(1, 2 * n + 1):
            if j != i and j != i + 1:
                edges[("bim_strand", j)] = (top + j, bot + j)
        edges.update(_matching_edges("bim_cup_a", a, bot))
        return edges

    def _components(self, edges: dict) -> list[frozenset]:
        adj: dict = {}
        for p, q in edges.values():
            adj.setdefault(p, []).append(q)
            adj.setdefault(q, []).append(p)
        seen: set = set()
        comps = []
        for start in sorted(adj):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                p = stack.pop()
                for q in adj[p]:
                    if q not in comp:
                        comp.add(q)
                        stack.append(q)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def _block_components(self, b: Matching, a: Matching, top: int, bot: int) -> tuple[dict, list[frozenset]]:
        """Edges and canonically ordered circles of W(b) U_i a."""
        comp = self.composite[a]
        edges = self._tangle_edges(b, a, top, bot)
        found = self._components(edges)
        ordered: list[frozenset] = []
        for circle in glue(b, comp.matching).circle_sets:
            anchor = top + min(circle)
            ordered.append(next(c for c in found if anchor in c))
        if comp.circles:
            free = [c for c in found if c not in ordered]
            if len(free) != 1:
                raise InvariantError("expected exactly one free circle in U_i a")
            ordered.append(free[0])
        if len(ordered) != len(found):
            raise InvariantError("circle count mismatch in a bimodule block")
        return edges, ordered

    def _block_position_of(self, b: Matching, a: Matching, top: int):
        """Map surviving components to circle positions of block (b, a)."""
        comp = self.composite[a]
        out_circles = {
            frozenset(c): pos for pos, c in enumerate(glue(b, comp.matching).circle_sets)
        }
        free_pos = len(out_circles) if comp.circles else None

        def position_of(component: frozenset) -> int:
            tops = frozenset(p - top for p in component if top < p <= top + 2 * self.n)
            if not tops:
                if free_pos is None:
                    raise InvariantError("free circle appeared in a block without one")
                return free_pos
            return out_circles[tops]

        return position_of

    # -- module structure -------------------------------------------------

    def right_mul_basis(self, x: BasisVector, y: BasisVector) -> tuple:
        """x in block (b, a) times y in block (a, a') lands in (b, a')."""
        if x.col != y.row:
            return ()
        key = (x, y)
        if key in self._right:
            return self._right[key]
        n = self.n
        b, a, a2 = x.row, x.col, y.col
        edges, comps = self._block_components(b, a, 0, 2 * n)
        edges.update(_matching_edges("ring_cap_a", a, 4 * n))
        edges.update(_matching_edges("ring_cup", a2, 4 * n))
        comps = comps + _offset_circles(glue(a, a2), 4 * n)
        state = SurgeryState(edges, comps, {x.labels + y.labels: 1})
        for r, s in a.pairs:
            state.surgery(
                ("bim_cup_a", r, s),
                ("ring_cap_a", r, s),
                (("vert", r), (2 * n + r, 4 * n + r)),
                (("vert", s), (2 * n + s, 4 * n + s)),
            )
        position_of = self._block_position_of(b, a2, 0)
        result = tuple(
            (BasisVector(b, a2, w), c)
            for w, c in sorted(state.finalize(position_of).items())
        )
        self._right[key] = result
        return result

    def left_mul_basis(self, y: BasisVector, x: BasisVector) -> tuple:
        """y in block (b', b) times x in block (b, a) lands in (b', a)."""
        if y.col != x.row:
            return ()
        key = (y, x)
        if key in self._left:
            return self._left[key]
        n = self.n
        b2, b, a = y.row, y.col, x.col
        edges = {}
        edges.update(_matching_edges("ring_cap", b2, 0))
        edges.update(_matching_edges("ring_cup_b", b, 0))
        bim_edges, bim_comps = self._block_components(b, a, 2 * n, 4 * n)
        edges.update(bim_edges)
        comps = _offset_circles(glue(b2, b), 0) + bim_comps
        state = SurgeryState(edges, comps, {y.labels + x.labels: 1})
        for r, s in b.pairs:
            state.surgery(
                ("ring_cup_b", r, s),
                ("bim_cap", r, s),
                (("vert", r), (r, 2 * n + r)),
                (("vert", s), (s, 2 * n + s)),
            )
        position_of = self._block_position_of(b2, a, 0)

        def shifted(component: frozenset) -> int:
            # the output's upper line is the ring line at offset 0 here
            tops = frozenset(p for p in component if p <= 2 * self.n)
            if not tops:
                return position_of(component)
            comp = self.composite[a]
            out_circles = {
                frozenset(c): pos
                for pos, c in enumerate(glue(b2, comp.matching).circle_sets)
            }
            return out_circles[tops]

        result = tuple(
            (BasisVector(b2, a, w), c)
            for w, c in sorted(state.finalize(shifted).items())
        )
        self._left[key] = result
        return result

    def right_mul(self, x: BimoduleElement, y: RingElement) -> BimoduleElement:
        if x.n != self.n or x.i != self.i or y.n != self.n:
            raise SizeMismatchError("operands do not match the bimodule")
        acc: dict[BasisVector, int] = {}
        for vx, cx in x.terms.items():
            for vy, cy in y.terms.items():
                for vz, cz in self.right_mul_basis(vx, vy):
                    acc[vz] = acc.get(vz, 0) + cx * cy * cz
        return BimoduleElement(self.n, self.i, acc)

    def left_mul(self, y: RingElement, x: BimoduleElement) -> BimoduleElement:
        if x.n != self.n or x.i != self.i or y.n != self.n:
            raise SizeMismatchError("operands do not match the bimodule")
        acc: dict[BasisVector, int] = {}
        for vy, cy in y.terms.items():
            for vx, cx in x.terms.items():
                for vz, cz in self.left_mul_basis(vy, vx):
                    acc[vz] = acc.get(vz, 0) + cx * cy * cz
        return BimoduleElement(self.n, self.i, acc)

    # -- the saddle maps ---------------------------------------------------

    def alpha_basis(self, x: BasisVector) -> tuple:
        """One saddle collapsing the cup-cap pair: F(U_i) -> H, degree 1."""
        if x in self._alpha:
            return self._alpha[x]
        n, i = self.n, self.i
        b, a = x.row, x.col
        edges, comps = self._block_components(b, a, 0, 2 * n)
        state = SurgeryState(edges, comps, {x.labels: 1})
        state.surgery(
            "bim_cup",
            "bim_capmid",
            (("vert", i), (i, 2 * n + i)),
            (("vert", i + 1), (i + 1, 2 * n + i + 1)),
        )
        out_circles = {
            frozenset(c): pos for pos, c in enumerate(glue(b, a).circle_sets)
        }

        def position_of(component: frozenset) -> int:
            return out_circles[frozenset(p for p in component if p <= 2 * n)]

        result = tuple(
            (BasisVector(b, a, w), c)
            for w, c in sorted(state.finalize(position_of).items())
        )
        self._alpha[x] = result
        return result

    def beta_basis(self, y: BasisVector) -> tuple:
        """The reverse saddle: H -> F(U_i), degree 1."""
        if y in self._beta:
            return self._beta[y]
        n, i = self.n, self.i
        b, a = y.row, y.col
        edges = {}
        edges.update(_matching_edges("bim_cap", b, 0))
        for j in range(1, 2 * n + 1):
            edges[("bim_strand", j)] = (j, 2 * n + j)
        edges.update(_matching_edges("bim_cup_a", a, 2 * n))
        comps = [
            frozenset(c) | frozenset(2 * n + p for p in c)
            for c in glue(b, a).circle_sets
        ]
        state = SurgeryState(edges, comps, {y.labels: 1})
        state.surgery(
            ("bim_strand", i),
            ("bim_strand", i + 1),
            ("bim_cup", (i, i + 1)),
            ("bim_capmid", (2 * n + i, 2 * n + i + 1)),
        )
        position_of = self._block_position_of(b, a, 0)
        result = tuple(
            (BasisVector(b, a, w), c)
            for w, c in sorted(state.finalize(position_of).items())
        )
        self._beta[y] = result
        return result

    def alpha(self, x: BimoduleElement) -> RingElement:
        if x.n != self.n or x.i != self.i:
            raise SizeMismatchError("element does not match the bimodule")
        acc: dict[BasisVector, int] = {}
        for v, c in x.terms.items():
            for vz, cz in self.alpha_basis(v):
                acc[vz] = acc.get(vz, 0) + c * cz
        return RingElement(self.n, acc)

    def beta(self, y: RingElement) -> BimoduleElement:
        if y.n != self.n:
            raise SizeMismatchError("element does not match the bimodule")
        acc: dict[BasisVector, int] = {}
        for v, c in y.terms.items():
            for vz, cz in self.beta_basis(v):
                acc[vz] = acc.get(vz, 0) + c * cz
        return BimoduleElement(self.n, self.i, acc)


@lru_cache(maxsize=None)
def get_bimodule(n: int, i: int) -> UiBimodule:
    return UiBimodule(n, i)


def ui_degree(v: BasisVector, n: int) -> int:
    """Same formula as the ring degree: 2 per X plus n minus circles."""
    return degree(v)


def verify_bimodule_axioms(n: int, i: int, samples: int = 300, seed: int = 0) -> bool:
    """Associativity and unit laws for the two actions, on basis triples.

    Exhaustive when the number of composable triples is small, sampled
    with the given seed otherwise.
    """
    module = get_bimodule(n, i)
    ring = module.ring
    one = ring.unit()
    for v in module.basis:
        x = module.element({v: 1})
        if module.left_mul(one, x) != x or module.right_mul(x, one) != x:
            return False

    def as_ring(v):
        return RingElement(n, {v: 1})

    triples = []
    for y1 in ring.basis:
        for y2 in ring.basis:
            if y1.col != y2.row:
                continue
            for v in module.basis:
                if y2.col == v.row:
                    triples.append(("ll", y1, y2, v))
                if v.col == y1.row:
                    triples.append(("rr", v, y1, y2))
        for v in module.basis:
            if y1.col == v.row:
                for y2 in ring.basis:
                    if v.col == y2.row:
                        triples.append(("lr", y1, v, y2))
    rng = random.Random(seed)
    if len(triples) > samples:
        triples = rng.sample(triples, samples)
    for kind, t1, t2, t3 in triples:
        if kind == "ll":
            lhs = module.left_mul(ring.multiply(as_ring(t1), as_ring(t2)), module.element({t3: 1}))
            rhs = module.left_mul(as_ring(t1), module.left_mul(as_ring(t2), module.element({t3: 1})))
        elif kind == "rr":
            lhs = module.right_mul(module.element({t1: 1}), ring.multiply(as_ring(t2), as_ring(t3)))
            rhs = module.right_mul(module.right_mul(module.element({t1: 1}), as_ring(t2)), as_ring(t3))
        else:
            lhs = module.right_mul(module.left_mul(as_ring(t1), module.element({t2: 1})), as_ring(t3))
            rhs = module.left_mul(as_ring(t1), module.right_mul(module.element({t2: 1}), as_ring(t3)))
        if lhs != rhs:
            return False
    return True


def verify_null_homotopy(i: int, n: int, check_axioms: bool = True) -> dict:
    """Machine check of the saddle null-homotopy for U_i inside H_n.

    For each of the two endomorphisms (left X at one of the endpoints
    i, i+1 minus right X at the other) the check looks for one global
    sign s so that the endomorphism equals s beta after alpha on the
    bimodule and s alpha after beta on the ring, over every basis
    vector.  Also confirms both saddle maps are homogeneous of degree 1
    and commute with the endomorphisms, and (optionally) the bimodule
    axioms.
    """
    from .center import central_X

    module = get_bimodule(n, i)
    ring = module.ring
    z_lo = central_X(i, n, verify=False)
    z_hi = central_X(i + 1, n, verify=False)
    report: dict = {"n": n, "i": i}

    degree_ok = True
    for v in module.basis:
        x = module.element({v: 1})
        image = module.alpha(x)
        if any(degree(w) != degree(v) + 1 for w in image.terms):
            degree_ok = False
    for v in ring.basis:
        image = module.beta(RingElement(n, {v: 1}))
        if any(degree(w) != degree(v) + 1 for w in image.terms):
            degree_ok = False
    report["saddle_maps_degree_one"] = degree_ok

    def phi_ring(zl, zr, y):
        return ring.multiply(zl, y) - ring.multiply(y, zr)

    def phi_module(zl, zr, x):
        return module.left_mul(zl, x) - module.right_mul(x, zr)

    signs = {}
    chain_ok = True
    for name, zl, zr in (
        ("left_lower_minus_right_upper", z_lo, z_hi),
        ("left_upper_minus_right_lower", z_hi, z_lo),
    ):
        found = None
        for s in (1, -1):
            ok = True
            for v in ring.basis:
                y = RingElement(n, {v: 1})
                if phi_ring(zl, zr, y) != s * module.alpha(module.beta(y)):
                    ok = False
                    break
            if ok:
                for v in module.basis:
                    x = module.element({v: 1})
                    if phi_module(zl, zr, x) != s * module.beta(module.alpha(x)):
                        ok = False
                        break
            if ok:
                found = s
                break
        signs[name] = found
        for v in module.basis:
            x = module.element({v: 1})
            if module.alpha(phi_module(zl, zr, x)) != phi_ring(zl, zr, module.alpha(x)):
                chain_ok = False
                break
    report["homotopy_signs"] = signs
    report["saddle_commutes_with_endomorphisms"] = chain_ok
    if check_axioms:
        report["bimodule_axioms"] = verify_bimodule_axioms(n, i)
    report["passed"] = (
        degree_ok
        and chain_ok
        and all(s in (1, -1) for s in signs.values())
        and report.get("bimodule_axioms", True)
    )
    return report
