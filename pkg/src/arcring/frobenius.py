"""The rank-two Frobenius algebra driving all circle relabelings.

The algebra is Z[X]/(X^2) with basis {1, X}, trace tr(1) = 0, tr(X) = 1,
and grading deg(1) = 0, deg(X) = 2.  Merging two circles multiplies
their labels; splitting a circle comultiplies:

    1 * 1 = 1     1 * X = X * 1 = X     X * X = 0
    split(1) = 1 (x) X + X (x) 1        split(X) = X (x) X

Labels are the one-character strings "1" and "X" so that label words of
a multi-circle diagram are plain strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

ONE = "1"
X = "X"
LABELS = (ONE, X)

LABEL_DEGREE = {ONE: 0, X: 2}

# merge table: pair of labels -> tuple of (label, coefficient)
MERGE = {
    (ONE, ONE): ((ONE, 1),),
    (ONE, X): ((X, 1),),
    (X, ONE): ((X, 1),),
    (X, X): (),
}

# split table: label -> tuple of ((label, label), coefficient);
# both outputs are symmetric in the two tensor factors
SPLIT = {
    ONE: (((ONE, X), 1), ((X, ONE), 1)),
    X: (((X, X), 1),),
}

TRACE = {ONE: 0, X: 1}


def label_degree(word: str) -> int:
    """Total degree of a label word: 2 per X."""
    return 2 * word.count(X)


@dataclass
class TensorElement:
    """An integer combination of label words of fixed tensor arity."""

    arity: int
    terms: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {w: c for w, c in self.terms.items() if c != 0}
        for w in self.terms:
            if len(w) != self.arity or any(ch not in LABELS for ch in w):
                raise ValueError(f"bad word {w!r} for arity {self.arity}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return TensorElement(self.arity, out)

    def __rmul__(self, k: int) -> "TensorElement":
        return TensorElement(self.arity, {w: k * c for w, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms


def merge(x: str, y: str) -> TensorElement:
    """Multiply two circle labels.

    >>> merge("X", "X").is_zero()
    True
    >>> merge("1", "X").terms
    {'X': 1}
    """
    return TensorElement(1, {lab: c for lab, c in MERGE[(x, y)]})


def split(x: str) -> TensorElement:
    """Comultiply one circle label into a two-circle combination.

    >>> sorted(split("1").terms.items())
    [('1X', 1), ('X1', 1)]
    >>> split("X").terms
    {'XX': 1}
    """
    return TensorElement(2, {a + b: c for (a, b), c in SPLIT[x]})


def trace(x: str) -> int:
    """The Frobenius trace: tr(1) = 0, tr(X) = 1."""
    return TRACE[x]
