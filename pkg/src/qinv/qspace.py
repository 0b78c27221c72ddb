"""Dense complex tensor algebra on multi-letter Hilbert spaces.

Basis order, fixed package-wide: a basis index of an n-letter space with
alphabet alpha is a base-alpha number whose most significant digit is
letter 1.  Tensor products therefore put the left factor's letters first,
matching numpy's Kronecker product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError

__all__ = [
    "SystemShape",
    "Operator",
    "tensor_product",
    "partial_trace",
    "is_psd",
    "is_hermitian",
    "random_local_unitary",
    "write_matrix_text",
    "parse_matrix_text",
]

_MAX_DIM_BITS = 62  # alpha**n must fit a signed 64-bit index


@dataclass(frozen=True)
class SystemShape:
    """n letters, each of dimension alpha.

    n = 0 denotes the empty system (dimension 1); it only arises as the
    result of tracing out every letter.
    """

    n: int
    alpha: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("letter count must be >= 0")
        if self.alpha < 2:
            raise ValueError("alphabet size must be >= 2")
        if self.n * self.alpha.bit_length() > _MAX_DIM_BITS:
            raise ValueError(f"dimension {self.alpha}**{self.n} overflows")

    @property
    def dim(self) -> int:
        return self.alpha**self.n


@dataclass(frozen=True)
class Operator:
    """A dense complex square matrix on an n-letter space."""

    shape: SystemShape
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        entries = np.ascontiguousarray(self.entries, dtype=np.complex128)
        d = self.shape.dim
        if entries.shape != (d, d):
            raise ShapeError(
                f"entries are {entries.shape}, expected ({d}, {d}) for {self.shape}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @staticmethod
    def identity(shape: SystemShape) -> "Operator":
        return Operator(shape, np.eye(shape.dim))

    @staticmethod
    def from_matrix(entries, alpha: int) -> "Operator":
        """Wrap a matrix, inferring the letter count from its dimension."""
        entries = np.asarray(entries)
        d = entries.shape[0]
        n = 0
        while alpha**n < d:
            n += 1
        if alpha**n != d:
            raise ShapeError(f"dimension {d} is not a power of alpha={alpha}")
        return Operator(SystemShape(n, alpha), entries)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def dagger(self) -> "Operator":
        return Operator(self.shape, self.entries.conj().T)


def tensor_product(a: Operator, b: Operator) -> Operator:
    """Kronecker product; a's letters become the leading letters."""
    if a.shape.alpha != b.shape.alpha:
        raise ShapeError(
            f"alphabet mismatch: {a.shape.alpha} vs {b.shape.alpha}"
        )
    shape = SystemShape(a.shape.n + b.shape.n, a.shape.alpha)
    return Operator(shape, np.kron(a.entries, b.entries))


def partial_trace(m: Operator, traced_letters) -> Operator:
    """Trace out the given letters; the result lives on the rest, in order.

    Tracing every letter yields the 1x1 operator holding Tr(m).
    """
    n, alpha = m.shape.n, m.shape.alpha
    traced = set(traced_letters)
    for i in traced:
        if not 1 <= i <= n:
            raise IndexError(f"letter {i} outside 1..{n}")
    keep = [i for i in range(1, n + 1) if i not in traced]
    if 2 * n > 52:
        raise ShapeError("partial_trace supports at most 26 letters")
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    row = [letters[i] for i in range(n)]
    col = [row[i - 1] if i in traced else letters[n + i - 1] for i in range(1, n + 1)]
    out = [row[i - 1] for i in keep] + [letters[n + i - 1] for i in keep]
    spec = "".join(row + col) + "->" + "".join(out)
    tensor = m.entries.reshape((alpha,) * (2 * n))
    reduced = np.einsum(spec, tensor)
    d = alpha ** len(keep)
    return Operator(SystemShape(len(keep), alpha), reduced.reshape(d, d))


def is_hermitian(m: Operator, tol: float = 1e-10) -> bool:
    return bool(np.abs(m.entries - m.entries.conj().T).max() <= tol)


def is_psd(m: Operator, tol: float = 1e-9) -> bool:
    """Hermitian within tol (entrywise) and min eigenvalue >= -tol."""
    if not is_hermitian(m, tol):
        return False
    sym = (m.entries + m.entries.conj().T) / 2
    return bool(np.linalg.eigvalsh(sym).min() >= -tol)


def _haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_local_unitary(shape: SystemShape, seed: int) -> Operator:
    """U_1 (x) ... (x) U_n with each factor Haar-distributed on U(alpha)."""
    rng = np.random.default_rng(seed)
    out = np.ones((1, 1), dtype=np.complex128)
    for _ in range(shape.n):
        out = np.kron(out, _haar_unitary(shape.alpha, rng))
    return Operator(shape, out)


# --- dense matrix text format (shared with the CLI) ---------------------

def _format_entry(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY_RE = re.compile(rf"^([+-]?{_FLOAT})([+-]{_FLOAT})i$")


def _parse_entry(tok: str) -> complex:
    m = _ENTRY_RE.match(tok)
    if not m:
        raise ValueError(f"bad matrix entry {tok!r} (expected a+bi form)")
    return complex(float(m.group(1)), float(m.group(2)))


def write_matrix_text(entries: np.ndarray, f) -> None:
    """First line "dim D", then D rows of D whitespace-separated a+bi entries."""
    d = entries.shape[0]
    f.write(f"dim {d}\n")
    for row in entries:
        f.write(" ".join(_format_entry(z) for z in row) + "\n")


def parse_matrix_text(lines) -> np.ndarray:
    lines = [ln.strip() for ln in lines if ln.strip()]
    if not lines or not lines[0].startswith("dim "):
        raise ValueError('matrix text must start with "dim D"')
    d = int(lines[0].split()[1])
    if len(lines) != d + 1:
        raise ValueError(f"expected {d} matrix rows, found {len(lines) - 1}")
    out = np.zeros((d, d), dtype=np.complex128)
    for i, ln in enumerate(lines[1:]):
        toks = ln.split()
        if len(toks) != d:
            raise ValueError(f"row {i} has {len(toks)} entries, expected {d}")
        out[i] = [_parse_entry(t) for t in toks]
    return out
