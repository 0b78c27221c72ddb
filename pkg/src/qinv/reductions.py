"""Symbolic rewriting of linear combinations of basic invariants.

Three degree- or complexity-lowering rules, each numerically sound:

* merge: if every letter maps copy j to the same copy c != j, copies j and
  c collapse (projector idempotence), dropping the degree by one;
* splice: if copy j is fixed at exactly the letters of a known purity set's
  complement, it traces out to a multiple of the identity and can be
  spliced from every cycle, contributing a known scalar;
* antisymmetrizer relations: for k > alpha the signed sum of copy
  permutations over any (alpha+1)-subset annihilates the representation,
  giving linear substitutions that eliminate chosen single-letter
  permutations.

Expression keys are stored in simultaneous-conjugation canonical form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import FactsError, NotApplicableError, ShapeError
from .groupalg import AlgebraElement, convolve, delta
from .invariants import invariant_code
from .permtuple import (
    Perm,
    PermTuple,
    all_perms,
    canonicalize,
    compose,
    is_derangement,
    parse_tuple,
    power,
    sign,
)

__all__ = [
    "CodeFacts",
    "InvariantExpression",
    "merge_reduce",
    "splice_reduce",
    "lemma4_relations",
    "lemma4_rewrite",
    "reduce_fixpoint",
    "single_letter_matrix",
    "eliminable_perms",
    "elimination_table",
    "derangement_generators_s4",
    "format_expression",
    "parse_expression",
]


@dataclass(frozen=True)
class CodeFacts:
    """Known purity structure of a projector: kept subsets S (by explicit
    subset or by size) with Tr_{S^c}(P) = c * I."""

    alpha: int
    dimension: float
    by_size: dict[int, float] = field(default_factory=dict)
    by_subset: dict[frozenset, float] = field(default_factory=dict)

    def __post_init__(self):
        for size, c in self.by_size.items():
            self._check(size, c)
        for subset, c in self.by_subset.items():
            self._check(len(subset), c)

    def _check(self, size: int, c: float):
        if c <= 0:
            raise FactsError(f"purity constant {c} must be positive")
        if abs(c * self.alpha**size - self.dimension) > 1e-9 * max(1.0, self.dimension):
            raise FactsError(
                f"constant {c} for kept size {size} inconsistent with "
                f"dimension {self.dimension} (need c*alpha^|S| = K)"
            )

    @staticmethod
    def mds(alpha: int, dimension: float, max_size: int) -> "CodeFacts":
        """Size-keyed facts c = K / alpha^|S| for every |S| <= max_size."""
        sizes = {s: dimension / alpha**s for s in range(max_size + 1)}
        return CodeFacts(alpha, dimension, by_size=sizes)

    def constant_for_traced(self, traced: frozenset, n: int) -> float | None:
        """Constant for tracing out exactly the given letters, if known."""
        kept = frozenset(range(1, n + 1)) - traced
        if kept in self.by_subset:
            return self.by_subset[kept]
        return self.by_size.get(len(kept))


class InvariantExpression:
    """Formal complex combination of (degree, tuple) terms over n letters.

    Keys are canonicalized on insertion; zero coefficients are pruned.
    """

    PRUNE_TOL = 1e-14

    def __init__(self, n: int):
        self.n = n
        self._terms: dict[tuple[int, PermTuple], complex] = {}

    def add(self, coeff: complex, t: PermTuple) -> "InvariantExpression":
        if t.n != self.n:
            raise ShapeError(f"tuple has {t.n} letters, expression has {self.n}")
        key = (t.k, canonicalize(t))
        val = self._terms.get(key, 0j) + coeff
        if abs(val) < self.PRUNE_TOL:
            self._terms.pop(key, None)
        else:
            self._terms[key] = val
        return self

    def items(self):
        return list(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def copy(self) -> "InvariantExpression":
        out = InvariantExpression(self.n)
        out._terms = dict(self._terms)
        return out

    def max_degree(self) -> int:
        return max((k for (k, _t) in self._terms), default=0)

    def evaluate(self, p, budget: int | None = None) -> complex:
        return sum(
            (c * invariant_code(t, p, budget) for (_k, t), c in self._terms.items()),
            start=0j,
        )

    @staticmethod
    def single(t: PermTuple, coeff: complex = 1.0) -> "InvariantExpression":
        return InvariantExpression(t.n).add(coeff, t)


# --- merge and splice -----------------------------------------------------

def _splice_copy(t: PermTuple, j: int) -> PermTuple:
    """Remove copy j from every letter's cycles and renumber to 1..k-1."""
    k = t.k
    renum = {old: new for new, old in enumerate((b for b in range(1, k + 1) if b != j), 1)}
    perms = []
    for p in t.perms:
        images = [0] * (k - 1)
        for b in range(1, k + 1):
            if b == j:
                continue
            target = p(b)
            if target == j:
                target = p(j)
            images[renum[b] - 1] = renum[target]
        perms.append(Perm(tuple(images)))
    return PermTuple(tuple(perms))


def merge_reduce(t: PermTuple) -> PermTuple | None:
    """If every letter maps some copy j to the same copy c != j, identify
    the two copies and return the degree-(k-1) tuple; else None."""
    if t.k < 2:
        return None
    for j in range(1, t.k + 1):
        targets = {p(j) for p in t.perms}
        if len(targets) == 1:
            c = targets.pop()
            if c != j:
                return _splice_copy(t, j)
    return None


def splice_reduce(t: PermTuple, facts: CodeFacts) -> tuple[float, PermTuple] | None:
    """If some copy j is fixed at exactly the letters of a recorded purity
    set's complement, splice it out.  Returns (c, reduced) with
    invariant(t) = c * invariant(reduced); else None."""
    if t.k < 2:
        return None
    n = t.n
    for j in range(1, t.k + 1):
        fixed = frozenset(i for i in range(1, n + 1) if t.perms[i - 1](j) == j)
        if not fixed:
            continue
        c = facts.constant_for_traced(fixed, n)
        if c is None:
            continue
        return c, _splice_copy(t, j)
    return None


# --- antisymmetrizer relations --------------------------------------------

def single_letter_matrix(p: Perm, alpha: int, dtype=np.int64) -> np.ndarray:
    """T(p) on (C^alpha)^{(x)k} as a 0/1 matrix (copy-permutation action)."""
    k = p.k
    nstates = alpha**k
    inv_images = [0] * k
    for j, v in enumerate(p.images, 1):
        inv_images[v - 1] = j
    out = np.zeros((nstates, nstates), dtype=dtype)
    for x in range(nstates):
        digits = [(x // alpha ** (k - 1 - c)) % alpha for c in range(k)]
        y = 0
        for c in range(k):
            y += digits[inv_images[c] - 1] * alpha ** (k - 1 - c)
        out[y, x] = 1
    return out


def _embed_perm(images_on_subset: dict[int, int], k: int) -> Perm:
    images = list(range(1, k + 1))
    for a, b in images_on_subset.items():
        images[a - 1] = b
    return Perm(tuple(images))


def _subset_perms(subset: tuple[int, ...], k: int):
    """All permutations of the subset's points, fixing everything else."""
    for image in itertools.permutations(subset):
        yield _embed_perm(dict(zip(subset, image)), k)


def lemma4_relations(k: int, alpha: int) -> list[AlgebraElement]:
    """Single-letter relations annihilating the copy-permutation
    representation on (C^alpha)^{(x)k}: for each (alpha+1)-subset A, the
    signed sum over permutations of A, composed on the right with each
    representative of the right cosets of S(A)."""
    if k <= alpha:
        raise NotApplicableError(f"need k > alpha, got k={k}, alpha={alpha}")
    relations = []
    for subset in itertools.combinations(range(1, k + 1), alpha + 1):
        base = AlgebraElement(
            1,
            k,
            {PermTuple((h,)): float(sign(h)) + 0j for h in _subset_perms(subset, k)},
        )
        covered: set[Perm] = set()
        for g in all_perms(k):
            if g in covered:
                continue
            for h in _subset_perms(subset, k):
                covered.add(compose(h, g))
            relations.append(convolve(base, delta(PermTuple((g,)))))
    return relations


# --- elimination tables for the rewrite -----------------------------------

def _solve_exact(columns: list[np.ndarray], target: np.ndarray):
    """Solve sum_j c_j * columns[j] = target over the rationals (RREF with
    free variables set to zero).  Returns Fractions or None if unsolvable."""
    ncols = len(columns)
    nrows = target.size
    mat = [
        [Fraction(int(columns[j][i])) for j in range(ncols)] + [Fraction(int(target[i]))]
        for i in range(nrows)
    ]
    rank = 0
    pivots = []
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, nrows) if mat[r][col] != 0), None)
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [v / pv for v in mat[rank]]
        for r in range(nrows):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    for r in range(rank, nrows):
        if mat[r][ncols] != 0 and all(mat[r][c] == 0 for c in range(ncols)):
            return None
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        sol[col] = mat[r][ncols]
    return sol


def derangement_generators_s4() -> tuple[Perm, Perm, Perm]:
    """The three 4-cycles (1,2,3,4), (1,3,4,2), (1,4,2,3), whose powers
    exhaust the derangements of S_4."""
    return (
        Perm.from_cycles([(1, 2, 3, 4)], 4),
        Perm.from_cycles([(1, 3, 4, 2)], 4),
        Perm.from_cycles([(1, 4, 2, 3)], 4),
    )


def eliminable_perms(alpha: int, k: int) -> tuple[Perm, ...]:
    """Single-letter permutations eliminated by the rewrite, in order."""
    if alpha == 2 and k == 3:
        return (Perm.from_cycles([(1, 3, 2)], 3),)
    if alpha == 2 and k == 4:
        g1, g2, g3 = derangement_generators_s4()
        return (
            power(g1, 3),
            power(g2, 3),
            power(g3, 3),
            power(g1, 2),
            power(g2, 2),
            power(g3, 2),
        )
    return ()


def _survivor_perms(alpha: int, k: int) -> list[Perm]:
    if alpha == 2 and k == 3:
        preferred = [Perm.from_cycles([(1, 2, 3)], 3)]
    elif alpha == 2 and k == 4:
        preferred = list(derangement_generators_s4())
    else:
        return []
    rest = sorted(
        (p for p in all_perms(k) if not is_derangement(p)),
        key=lambda p: p.images,
    )
    return preferred + rest


@lru_cache(maxsize=8)
def elimination_table(alpha: int, k: int) -> dict[Perm, tuple[tuple[float, Perm], ...]]:
    """Exact substitution rules target -> sum of (coeff, survivor), valid as
    matrix identities on (C^alpha)^{(x)k}.  Empty for unpinned (alpha, k)."""
    targets = eliminable_perms(alpha, k)
    if not targets:
        return {}
    survivors = _survivor_perms(alpha, k)
    columns = [single_letter_matrix(s, alpha).ravel() for s in survivors]
    table = {}
    for d in targets:
        sol = _solve_exact(columns, single_letter_matrix(d, alpha).ravel())
        if sol is None:  # pragma: no cover - would indicate a broken relation set
            raise RuntimeError(f"no elimination rule for {d} at alpha={alpha}, k={k}")
        table[d] = tuple(
            (float(c), s) for c, s in zip(sol, survivors) if c != 0
        )
    return table


def lemma4_rewrite(e: InvariantExpression, alpha: int) -> InvariantExpression:
    """Substitute eliminable single-letter permutations (first letter first)
    until none remain; the expression's value is preserved on any operator
    of the declared alphabet."""
    # raw (uncanonicalized) work list avoids re-canonicalization between
    # substitution steps, which keeps termination a simple counting argument
    work: list[tuple[complex, int, PermTuple]] = [
        (c, k, t) for (k, t), c in e.items()
    ]
    done: list[tuple[complex, int, PermTuple]] = []
    while work:
        coeff, k, t = work.pop()
        table = elimination_table(alpha, k)
        hit = None
        if table:
            for letter in range(1, t.n + 1):
                p = t.perms[letter - 1]
                if p in table:
                    hit = (letter, p)
                    break
        if hit is None:
            done.append((coeff, k, t))
            continue
        letter, p = hit
        for c2, s in table[p]:
            work.append((coeff * c2, k, t.with_letter(letter, s)))
    out = InvariantExpression(e.n)
    for coeff, _k, t in done:
        out.add(coeff, t)
    return out


def reduce_fixpoint(
    e: InvariantExpression,
    facts: CodeFacts,
    max_rounds: int | None = None,
) -> InvariantExpression:
    """Round-robin merge / splice / antisymmetrizer rewriting (keys are
    re-canonicalized on every insertion) until no rule fires."""
    if max_rounds is None:
        max_rounds = 10 * max(1, len(e)) * max(1, e.max_degree()) * max(1, e.n)
    expr = e.copy()
    for _round in range(max_rounds):
        changed = False
        merged = InvariantExpression(expr.n)
        for (_k, t), coeff in expr.items():
            reduced = merge_reduce(t)
            if reduced is not None:
                merged.add(coeff, reduced)
                changed = True
            else:
                merged.add(coeff, t)
        expr = merged
        if changed:
            continue
        spliced = InvariantExpression(expr.n)
        for (_k, t), coeff in expr.items():
            hit = splice_reduce(t, facts)
            if hit is not None:
                scalar, reduced = hit
                spliced.add(coeff * scalar, reduced)
                changed = True
            else:
                spliced.add(coeff, t)
        expr = spliced
        if changed:
            continue
        rewritten = lemma4_rewrite(expr, facts.alpha)
        if _expressions_differ(expr, rewritten):
            expr = rewritten
            continue
        return expr
    raise RuntimeError(f"reduction did not stabilize within {max_rounds} rounds")


def _expressions_differ(a: InvariantExpression, b: InvariantExpression) -> bool:
    ta, tb = dict(a.items()), dict(b.items())
    if ta.keys() != tb.keys():
        return True
    return any(abs(ta[k] - tb[k]) > 1e-12 for k in ta)


# --- text format: lines "coeff_re coeff_im k <tuple-string>" ---------------

def format_expression(e: InvariantExpression) -> str:
    lines = []
    for (k, t), c in sorted(e.items(), key=lambda kv: (kv[0][0], kv[0][1].tuple_string())):
        lines.append(f"{c.real:.12g} {c.imag:.12g} {k} {t.tuple_string()}")
    return "\n".join(lines) + "\n"


def parse_expression(text: str) -> InvariantExpression:
    expr: InvariantExpression | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 3)
        if len(parts) != 4:
            raise ValueError(f"bad expression line {line!r}")
        coeff = complex(float(parts[0]), float(parts[1]))
        k = int(parts[2])
        t = parse_tuple(parts[3], k)
        if expr is None:
            expr = InvariantExpression(t.n)
        expr.add(coeff, t)
    if expr is None:
        raise ValueError("empty expression")
    return expr
