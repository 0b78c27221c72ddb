"""Qubit stabilizer codes: projector construction and purity profiling.

A code is given by signed Pauli strings over {I, X, Y, Z}; its projector
is the product of (I + g)/2 over the generators.  Only alpha = 2 codes are
supported; testing against larger alphabets uses random PSD operators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import StructureError
from .qspace import Operator, SystemShape, parse_matrix_text, partial_trace
from .reductions import CodeFacts

__all__ = [
    "StabilizerCode",
    "projector",
    "purity_profile",
    "is_mds_profile",
    "fixture_442",
    "read_qcode",
]

_PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),  # Y = iXZ
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _parse_pauli(text: str) -> tuple[int, str]:
    s = text.strip()
    phase = 1
    if s.startswith("-"):
        phase = -1
        s = s[1:]
    elif s.startswith("+"):
        s = s[1:]
    s = s.strip().upper()
    if not s or any(ch not in "IXYZ" for ch in s):
        raise StructureError(f"bad Pauli string {text!r}")
    return phase, s


def _strings_commute(a: str, b: str) -> bool:
    clashes = sum(1 for x, y in zip(a, b) if x != "I" and y != "I" and x != y)
    return clashes % 2 == 0


def _gf2_rank(strings) -> int:
    rows = []
    for s in strings:
        bits = 0
        for i, ch in enumerate(s):
            if ch in ("X", "Y"):
                bits |= 1 << (2 * i)
            if ch in ("Z", "Y"):
                bits |= 1 << (2 * i + 1)
        rows.append(bits)
    rank = 0
    for row in rows:
        cur = row
        for piv in rows[:rank]:
            cur = min(cur, cur ^ piv)
        if cur:
            rows[rank] = cur
            rank += 1
    return rank


@dataclass(frozen=True)
class StabilizerCode:
    """Commuting signed Pauli-string generators on n qubits."""

    n: int
    generators: tuple[str, ...]
    phases: tuple[int, ...]

    def __post_init__(self):
        if len(self.generators) != len(self.phases):
            raise StructureError("one phase per generator required")
        for g in self.generators:
            if len(g) != self.n or any(ch not in "IXYZ" for ch in g):
                raise StructureError(f"generator {g!r} is not an IXYZ string of length {self.n}")
        for a, b in itertools.combinations(self.generators, 2):
            if not _strings_commute(a, b):
                raise StructureError(f"generators {a} and {b} anticommute")

    @staticmethod
    def from_strings(strings, n: int | None = None) -> "StabilizerCode":
        parsed = [_parse_pauli(s) for s in strings]
        if n is None:
            if not parsed:
                raise StructureError("cannot infer qubit count from an empty generator list")
            n = len(parsed[0][1])
        return StabilizerCode(
            n, tuple(s for _ph, s in parsed), tuple(ph for ph, _s in parsed)
        )

    @property
    def rank(self) -> int:
        return _gf2_rank(list(self.generators))

    @property
    def dimension(self) -> int:
        """Code dimension K = 2^(n - rank)."""
        return 2 ** (self.n - self.rank)


def _pauli_matrix(string: str, phase: int) -> np.ndarray:
    out = np.array([[phase]], dtype=np.complex128)
    for ch in string:
        out = np.kron(out, _PAULI[ch])
    return out


def projector(code: StabilizerCode) -> Operator:
    """P = prod over generators of (I + g)/2; validated idempotent with
    Tr(P) = 2^(n - rank)."""
    dim = 2**code.n
    p = np.eye(dim, dtype=np.complex128)
    for string, phase in zip(code.generators, code.phases):
        p = p @ (np.eye(dim) + _pauli_matrix(string, phase)) / 2
    if abs(np.trace(p).real - code.dimension) > 1e-8 * dim:
        raise StructureError(
            "generator signs are inconsistent: projector trace "
            f"{np.trace(p).real:g} != {code.dimension}"
        )
    return Operator(SystemShape(code.n, 2), p)


def purity_profile(p: Operator, max_size: int, tol: float = 1e-10) -> CodeFacts:
    """Test, for every kept subset S with |S| <= max_size, whether the
    partial trace onto S is proportional to the identity; record the
    constants.  Size-keyed facts are recorded when a whole size passes.
    """
    ent = p.entries
    if np.abs(ent @ ent - ent).max() > 1e-8:
        raise ValueError("input is not a projector")
    n = p.shape.n
    alpha = p.shape.alpha
    dimension = np.trace(ent).real
    by_subset: dict[frozenset, float] = {}
    size_ok: dict[int, bool] = {}
    for size in range(0, min(max_size, n) + 1):
        size_ok[size] = True
        for kept in itertools.combinations(range(1, n + 1), size):
            traced = [i for i in range(1, n + 1) if i not in kept]
            reduced = partial_trace(p, traced).entries
            d = alpha**size
            c = np.trace(reduced).real / d
            if np.abs(reduced - c * np.eye(d)).max() <= tol:
                by_subset[frozenset(kept)] = c
            else:
                size_ok[size] = False
    by_size = {
        s: dimension / alpha**s for s, ok in size_ok.items() if ok
    }
    return CodeFacts(alpha, dimension, by_size=by_size, by_subset=by_subset)


def is_mds_profile(p: Operator, tol: float = 1e-10) -> bool:
    """All kept subsets of size < n/2 + 1 proportional to the identity with
    c = K / alpha^|S|."""
    n = p.shape.n
    limit = n // 2 if n % 2 == 0 else (n + 1) // 2
    facts = purity_profile(p, limit, tol)
    for size in range(0, limit + 1):
        for kept in itertools.combinations(range(1, n + 1), size):
            if frozenset(kept) not in facts.by_subset:
                return False
    return True


def fixture_442() -> StabilizerCode:
    """The ((4,4,2)) code stabilized by XXXX and ZZZZ."""
    return StabilizerCode.from_strings(["XXXX", "ZZZZ"])


def read_qcode(lines) -> tuple[Operator, StabilizerCode | None]:
    """Read the .qcode file format.

    Stabilizer form: first line "n=<int> alpha=2"; then lines
    "stab <IXYZ string>" (optionally prefixed "-").  Matrix form: first
    line "matrix" (optionally "matrix alpha=<int>"), then the dense
    matrix text format.
    """
    lines = [ln.rstrip("\n") for ln in lines]
    stripped = [ln.strip() for ln in lines if ln.strip()]
    if not stripped:
        raise ValueError("empty code file")
    head = stripped[0]
    if head.startswith("matrix"):
        alpha = 2
        for tok in head.split()[1:]:
            key, _, val = tok.partition("=")
            if key == "alpha":
                alpha = int(val)
            else:
                raise ValueError(f"bad matrix header token {tok!r}")
        entries = parse_matrix_text(stripped[1:])
        return Operator.from_matrix(entries, alpha), None
    fields = dict(tok.partition("=")[::2] for tok in head.split())
    if "n" not in fields:
        raise ValueError('code file must start with "n=<int> alpha=2" or "matrix"')
    n = int(fields["n"])
    alpha = int(fields.get("alpha", "2"))
    if alpha != 2:
        raise ValueError("stabilizer codes support alpha=2 only")
    gens = []
    for ln in stripped[1:]:
        if not ln.startswith("stab"):
            raise ValueError(f"bad code line {ln!r}")
        gens.append(ln[4:].strip())
    code = StabilizerCode.from_strings(gens, n)
    return projector(code), code
