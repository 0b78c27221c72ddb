"""Sparse elements of the group algebra of S_k^n and the shadow machinery.

An element is a finite complex-valued map on permutation tuples; the group
law is componentwise composition.  Hermitian idempotents of this algebra
yield nonnegative invariant functionals on positive semi-definite
operator lists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ResourceLimitError, ShapeError
from .invariants import invariant, quadratic_enumerator, subset_tuple
from .permtuple import Perm, PermTuple, parse_tuple, tuple_compose, tuple_inverse

__all__ = [
    "AlgebraElement",
    "delta",
    "convolve",
    "adjoint",
    "is_hermitian_idempotent",
    "shadow_element",
    "subgroup_averager",
    "shadow_functional",
    "shadow_enumerator",
    "format_element",
    "parse_element",
]

PRUNE_TOL = 1e-14


@dataclass(frozen=True)
class AlgebraElement:
    """Finite map from PermTuple to complex coefficient (absent = 0)."""

    n: int
    k: int
    terms: dict[PermTuple, complex] = field(default_factory=dict)

    def __post_init__(self):
        for t in self.terms:
            if t.n != self.n or t.k != self.k:
                raise ShapeError(
                    f"term shape ({t.n},{t.k}) does not match element ({self.n},{self.k})"
                )

    def coefficient(self, t: PermTuple) -> complex:
        return self.terms.get(t, 0j)

    def normalized(self) -> "AlgebraElement":
        """Drop coefficients below the pruning threshold."""
        kept = {t: c for t, c in self.terms.items() if abs(c) >= PRUNE_TOL}
        return AlgebraElement(self.n, self.k, kept)

    def scaled(self, factor: complex) -> "AlgebraElement":
        return AlgebraElement(self.n, self.k, {t: c * factor for t, c in self.terms.items()})

    def plus(self, other: "AlgebraElement") -> "AlgebraElement":
        if (self.n, self.k) != (other.n, other.k):
            raise ShapeError("element shapes differ")
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0j) + c
        return AlgebraElement(self.n, self.k, out).normalized()

    def support(self):
        return self.terms.keys()


def delta(t: PermTuple) -> AlgebraElement:
    return AlgebraElement(t.n, t.k, {t: 1.0 + 0j})


def convolve(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """(a * b)(pi) = sum over pi' of a(pi pi'^{-1}) b(pi')."""
    if (a.n, a.k) != (b.n, b.k):
        raise ShapeError(f"element shapes differ: ({a.n},{a.k}) vs ({b.n},{b.k})")
    out: dict[PermTuple, complex] = {}
    for s, ca in a.terms.items():
        for t, cb in b.terms.items():
            st = tuple_compose(s, t)
            out[st] = out.get(st, 0j) + ca * cb
    return AlgebraElement(a.n, a.k, out).normalized()


def adjoint(a: AlgebraElement) -> AlgebraElement:
    """a*(pi) = conj(a(pi^{-1}))."""
    return AlgebraElement(
        a.n, a.k, {tuple_inverse(t): complex(c).conjugate() for t, c in a.terms.items()}
    )


def is_hermitian_idempotent(a: AlgebraElement, tol: float = 1e-10) -> bool:
    diff = convolve(a, a).plus(a.scaled(-1))
    if any(abs(c) >= tol for c in diff.terms.values()):
        return False
    herm = adjoint(a).plus(a.scaled(-1))
    return not any(abs(c) >= tol for c in herm.terms.values())


def shadow_element(subset, n: int) -> AlgebraElement:
    """The k=2 idempotent with coefficient (-1)^{|S(pi) /\\ T|} / 2^n on every
    tuple pi, where S(pi) marks the letters carrying a transposition."""
    tset = set(subset)
    swap = Perm((2, 1))
    ident = Perm.identity(2)
    scale = 2.0 ** (-n)
    terms: dict[PermTuple, complex] = {}
    for mask in itertools.product((False, True), repeat=n):
        t = PermTuple(tuple(swap if m else ident for m in mask))
        hits = sum(1 for i, m in enumerate(mask, 1) if m and i in tset)
        terms[t] = scale * (-1.0) ** hits
    return AlgebraElement(n, 2, terms)


def subgroup_averager(generators, cap: int = 100_000) -> AlgebraElement:
    """Uniform average over the subgroup generated by the given tuples."""
    if not generators:
        raise ValueError("need at least one generator")
    n, k = generators[0].n, generators[0].k
    ident = PermTuple.identity(n, k)
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in generators:
                hg = tuple_compose(h, g)
                if hg not in elements:
                    if len(elements) >= cap:
                        raise ResourceLimitError(f"subgroup closure exceeds cap {cap}")
                    elements.add(hg)
                    nxt.append(hg)
        frontier = nxt
    weight = 1.0 / len(elements)
    return AlgebraElement(n, k, {h: weight + 0j for h in elements})


def shadow_functional(a: AlgebraElement, ops, budget: int | None = None) -> complex:
    """sum over the support of a(pi) * invariant(pi, ops)."""
    total = 0j
    for t, c in a.terms.items():
        total += c * invariant(t, ops, budget)
    return total


def shadow_enumerator(m, n_op, subset) -> complex:
    """Signed subset sum of quadratic enumerators:
    sum over S of (-1)^{|S /\\ T|} Tr(Tr_{S^c}(M) Tr_{S^c}(N))."""
    if m.shape != n_op.shape:
        raise ShapeError(f"operator shapes differ: {m.shape} vs {n_op.shape}")
    n = m.shape.n
    tset = set(subset)
    total = 0j
    for r in range(n + 1):
        for s in itertools.combinations(range(1, n + 1), r):
            signfac = (-1.0) ** len(tset.intersection(s))
            total += signfac * quadratic_enumerator(s, m, n_op)
    return total


# --- text format (for the CLI): lines "coeff_re coeff_im <tuple-string>" --

def format_element(a: AlgebraElement) -> str:
    lines = []
    for t in sorted(a.terms, key=lambda u: u.tuple_string()):
        c = a.terms[t]
        lines.append(f"{c.real:.17g} {c.imag:.17g} {t.tuple_string()}")
    return "\n".join(lines) + "\n"


def parse_element(text: str, k: int | None = None) -> AlgebraElement:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 2)
        if len(parts) != 3:
            raise ValueError(f"bad element line {line!r}")
        rows.append((complex(float(parts[0]), float(parts[1])), parts[2]))
    if not rows:
        raise ValueError("empty algebra element")
    if k is None:
        import re

        points = [int(m) for r in rows for m in re.findall(r"\d+", r[1])]
        k = max(points) if points else 1
    terms: dict[PermTuple, complex] = {}
    shape = None
    for coeff, tup_str in rows:
        t = parse_tuple(tup_str, k)
        if shape is None:
            shape = (t.n, t.k)
        terms[t] = terms.get(t, 0j) + coeff
    return AlgebraElement(shape[0], shape[1], terms).normalized()
