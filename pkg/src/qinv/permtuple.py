"""Permutations, permutation tuples, and cycle-notation parsing.

Conventions, fixed package-wide:

* points are 1-based: a ``Perm`` of degree k acts on {1, .., k};
* ``compose(a, b)`` applies b first: ``compose(a, b)(j) == a(b(j))``;
* a ``PermTuple`` holds one degree-k permutation per letter, and its text
  form joins per-letter cycle strings with ";", e.g. ``"(1,2)(3,4);e"``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    CycleRangeError,
    CycleSyntaxError,
    MalformedCycleError,
    ShapeError,
)

__all__ = [
    "Perm",
    "PermTuple",
    "parse_cycles",
    "parse_tuple",
    "compose",
    "inverse",
    "conjugate",
    "power",
    "is_derangement",
    "sign",
    "all_perms",
    "tuple_compose",
    "tuple_inverse",
    "canonicalize",
]


@dataclass(frozen=True)
class Perm:
    """A permutation of {1..k}, stored as its image array: images[j-1] = pi(j)."""

    images: tuple[int, ...]

    def __post_init__(self):
        k = len(self.images)
        if k < 1:
            raise ValueError("permutation degree must be >= 1")
        if sorted(self.images) != list(range(1, k + 1)):
            raise ValueError(f"images {self.images} are not a bijection on 1..{k}")

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    @staticmethod
    def identity(k: int) -> "Perm":
        return Perm(tuple(range(1, k + 1)))

    @staticmethod
    def from_cycles(cycles, k: int) -> "Perm":
        images = list(range(1, k + 1))
        for cyc in cycles:
            for idx, pt in enumerate(cyc):
                images[pt - 1] = cyc[(idx + 1) % len(cyc)]
        return Perm(tuple(images))

    def is_identity(self) -> bool:
        return all(v == j + 1 for j, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted by it."""
        out = []
        seen = set()
        for start in range(1, self.k + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "e"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.cycle_string()


def compose(a: Perm, b: Perm) -> Perm:
    """a after b: compose(a, b)(j) = a(b(j))."""
    if a.k != b.k:
        raise ShapeError(f"degree mismatch: {a.k} vs {b.k}")
    return Perm(tuple(a.images[b.images[j] - 1] for j in range(a.k)))


def inverse(a: Perm) -> Perm:
    images = [0] * a.k
    for j, v in enumerate(a.images, 1):
        images[v - 1] = j
    return Perm(tuple(images))


def conjugate(a: Perm, s: Perm) -> Perm:
    """s o a o s^{-1}."""
    return compose(compose(s, a), inverse(s))


def power(a: Perm, exp: int) -> Perm:
    out = Perm.identity(a.k)
    if exp < 0:
        a, exp = inverse(a), -exp
    for _ in range(exp):
        out = compose(a, out)
    return out


def sign(a: Perm) -> int:
    s = 1
    for cyc in a.cycles():
        if len(cyc) % 2 == 0:
            s = -s
    return s


def is_derangement(a: Perm) -> bool:
    return all(a.images[j] != j + 1 for j in range(a.k))


def all_perms(k: int):
    """All of S_k in lexicographic order of image arrays."""
    for images in itertools.permutations(range(1, k + 1)):
        yield Perm(images)


_POINT_RE = re.compile(r"\s*(\d+)\s*$")


def parse_cycles(text: str, k: int) -> Perm:
    """Parse concatenated parenthesized cycles, e.g. "(1,2)(3,4)".

    Unlisted points are fixed; "e" or an empty string is the identity.
    """
    if k < 1:
        raise ValueError("degree k must be >= 1")
    s = text.strip()
    if s in ("", "e"):
        return Perm.identity(k)
    images = list(range(1, k + 1))
    seen: set[int] = set()
    i = 0
    while i < len(s):
        if s[i].isspace():
            i += 1
            continue
        if s[i] != "(":
            raise CycleSyntaxError(f"expected '(' at position {i} in {text!r}")
        close = s.find(")", i)
        if close < 0:
            raise CycleSyntaxError(f"unbalanced parenthesis in {text!r}")
        body = s[i + 1 : close]
        cycle = []
        for tok in body.split(","):
            m = _POINT_RE.match(tok)
            if not m:
                raise CycleSyntaxError(f"bad cycle element {tok!r} in {text!r}")
            pt = int(m.group(1))
            if pt < 1 or pt > k:
                raise CycleRangeError(f"point {pt} outside 1..{k} in {text!r}")
            if pt in seen:
                raise MalformedCycleError(f"point {pt} repeated in {text!r}")
            seen.add(pt)
            cycle.append(pt)
        for idx, pt in enumerate(cycle):
            images[pt - 1] = cycle[(idx + 1) % len(cycle)]
        i = close + 1
    return Perm(tuple(images))


@dataclass(frozen=True)
class PermTuple:
    """One degree-k permutation per letter; indexes one basic invariant."""

    perms: tuple[Perm, ...]

    def __post_init__(self):
        if not self.perms:
            raise ValueError("a tuple needs at least one letter")
        k = self.perms[0].k
        if any(p.k != k for p in self.perms):
            raise ShapeError("all component permutations must share one degree")

    @property
    def n(self) -> int:
        return len(self.perms)

    @property
    def k(self) -> int:
        return self.perms[0].k

    @staticmethod
    def identity(n: int, k: int) -> "PermTuple":
        return PermTuple((Perm.identity(k),) * n)

    @staticmethod
    def constant(p: Perm, n: int) -> "PermTuple":
        return PermTuple((p,) * n)

    def with_letter(self, letter: int, p: Perm) -> "PermTuple":
        perms = list(self.perms)
        perms[letter - 1] = p
        return PermTuple(tuple(perms))

    def reorder_letters(self, order) -> "PermTuple":
        """New tuple whose letter j carries perms[order[j-1]-1]."""
        return PermTuple(tuple(self.perms[i - 1] for i in order))

    def tuple_string(self) -> str:
        return ";".join(p.cycle_string() for p in self.perms)

    def __str__(self) -> str:
        return self.tuple_string()


def parse_tuple(text: str, k: int | None = None) -> PermTuple:
    """Parse ";"-joined cycle strings; k is inferred from the largest point."""
    parts = text.split(";")
    if k is None:
        points = [int(m) for m in re.findall(r"\d+", text)]
        k = max(points) if points else 1
    return PermTuple(tuple(parse_cycles(p, k) for p in parts))


def tuple_compose(a: PermTuple, b: PermTuple) -> PermTuple:
    """Componentwise group law of S_k^n (b first at every letter)."""
    if a.n != b.n or a.k != b.k:
        raise ShapeError(f"tuple shape mismatch: ({a.n},{a.k}) vs ({b.n},{b.k})")
    return PermTuple(tuple(compose(p, q) for p, q in zip(a.perms, b.perms)))


def tuple_inverse(a: PermTuple) -> PermTuple:
    return PermTuple(tuple(inverse(p) for p in a.perms))


@lru_cache(maxsize=16)
def _conjugator_pairs(k: int) -> tuple[tuple[Perm, Perm], ...]:
    return tuple((s, inverse(s)) for s in all_perms(k))


def canonicalize(t: PermTuple) -> PermTuple:
    """Least tuple (by concatenated image arrays) in the orbit under
    simultaneous conjugation of every letter by a common element of S_k."""
    best_key = None
    best = t
    for s, s_inv in _conjugator_pairs(t.k):
        cand = tuple(compose(compose(s, p), s_inv) for p in t.perms)
        key = tuple(x for p in cand for x in p.images)
        if best_key is None or key < best_key:
            best_key = key
            best = PermTuple(cand)
    return best
