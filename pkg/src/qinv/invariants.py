"""Evaluation of basic invariants Tr(T(t) (M_1 (x) ... (x) M_k)).

A composite basis state of ((C^alpha)^{(x)n})^{(x)k} is written as k*n
base-alpha digits, copy-major and letter-minor: digit position (c, i)
(0-based copy c, letter i) has weight alpha**(n*k - 1 - (c*n + i)).  The
copy-permuting operator T(t) maps basis state x to sigma(x), where the
digit of sigma(x) at (copy c, letter i) is the digit of x at
(perms[i]^{-1}(c), letter i).

Two evaluation paths are provided: the workhorse index contraction
(O(alpha**(n*k) * k), compiled kernel when available) and a small dense
oracle that materializes T(t) and the Kronecker product for testing.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache

import numpy as np

from .errors import ResourceLimitError, ShapeError
from .permtuple import PermTuple, canonicalize, inverse
from .qspace import Operator, SystemShape, partial_trace

try:  # compiled kernel, with pure-Python fallback selected at import
    from ._contract import contract_blocks

    KERNEL_BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from ._contract_py import contract_blocks

    KERNEL_BACKEND = "python"

__all__ = [
    "KERNEL_BACKEND",
    "max_dim_budget",
    "perm_operator_index",
    "invariant",
    "invariant_code",
    "invariant_oracle",
    "quadratic_enumerator",
    "symmetrize",
    "apply_perm_tuple",
    "subset_tuple",
]

_DEFAULT_BUDGET = 1 << 20


def max_dim_budget() -> int:
    """Cap on alpha**(n*k), from QINV_MAX_DIM (default 2**20)."""
    raw = os.environ.get("QINV_MAX_DIM")
    return int(raw) if raw else _DEFAULT_BUDGET


def _check_budget(shape: SystemShape, k: int, budget: int | None) -> int:
    if budget is None:
        budget = max_dim_budget()
    bits = shape.n * k * shape.alpha.bit_length()
    if bits > 62 or shape.alpha ** (shape.n * k) > budget:
        raise ResourceLimitError(
            f"alpha**(n*k) = {shape.alpha}**{shape.n * k} exceeds budget {budget}"
        )
    return shape.alpha ** (shape.n * k)


@lru_cache(maxsize=8)
def _digit_cache(alpha: int, n: int, k: int):
    """Base-alpha digits of every composite index (read-only, shared), plus
    the per-copy row blocks, which do not depend on the tuple."""
    nk = n * k
    nstates = alpha**nk
    x = np.arange(nstates, dtype=np.int64)
    dtype = np.int8 if alpha < 128 else np.int64
    digits = np.empty((nstates, nk), dtype=dtype)
    for pos in range(nk):
        digits[:, pos] = (x // alpha ** (nk - 1 - pos)) % alpha
    rows = np.empty((nstates, k), dtype=np.uint32)
    for c in range(k):
        acc = np.zeros(nstates, dtype=np.int64)
        for i in range(n):
            acc += digits[:, c * n + i].astype(np.int64) * alpha ** (n - 1 - i)
        rows[:, c] = acc
    digits.setflags(write=False)
    rows.setflags(write=False)
    return digits, rows


@lru_cache(maxsize=8)
def _col_cache(t: PermTuple, alpha: int) -> np.ndarray:
    """Per-copy column blocks of sigma(x) for every composite index."""
    n, k = t.n, t.k
    digits, _rows = _digit_cache(alpha, n, k)
    invs = [inverse(p).images for p in t.perms]
    cols = np.empty((digits.shape[0], k), dtype=np.uint32)
    for c in range(k):
        acc = np.zeros(digits.shape[0], dtype=np.int64)
        for i in range(n):
            src = (invs[i][c] - 1) * n + i
            acc += digits[:, src].astype(np.int64) * alpha ** (n - 1 - i)
        cols[:, c] = acc
    cols.setflags(write=False)
    return cols


def perm_operator_index(t: PermTuple, shape: SystemShape, budget: int | None = None) -> np.ndarray:
    """The basis bijection sigma realizing T(t), as an index array.

    T(t) maps |x> to |sigma[x]>; as a matrix, T[sigma[x], x] = 1.
    """
    if shape.n != t.n:
        raise ShapeError(f"tuple has {t.n} letters, shape has {shape.n}")
    _check_budget(shape, t.k, budget)
    cols = _col_cache(t, shape.alpha)
    dim = shape.dim
    sigma = np.zeros(cols.shape[0], dtype=np.int64)
    for c in range(t.k):
        sigma += cols[:, c].astype(np.int64) * dim ** (t.k - 1 - c)
    return sigma


def _common_shape(t: PermTuple, ops) -> SystemShape:
    if len(ops) != t.k:
        raise ShapeError(f"tuple degree {t.k} needs {t.k} operators, got {len(ops)}")
    shape = ops[0].shape
    for op in ops:
        if op.shape != shape:
            raise ShapeError(f"operator shapes differ: {op.shape} vs {shape}")
    if shape.n != t.n:
        raise ShapeError(f"tuple has {t.n} letters, operators have {shape.n}")
    return shape


def invariant(t: PermTuple, ops, budget: int | None = None) -> complex:
    """Tr(T(t) (ops[0] (x) ... (x) ops[k-1])) by index contraction."""
    shape = _common_shape(t, ops)
    _check_budget(shape, t.k, budget)
    _digits, rows = _digit_cache(shape.alpha, t.n, t.k)
    cols = _col_cache(t, shape.alpha)
    mats = np.ascontiguousarray(np.stack([op.entries for op in ops]))
    return contract_blocks(mats, rows, cols)


def invariant_code(t: PermTuple, p: Operator, budget: int | None = None) -> complex:
    """Degree-k invariant of a single operator: invariant(t, [p] * k)."""
    return invariant(t, [p] * t.k, budget)


def invariant_oracle(t: PermTuple, ops, budget: int = 4096) -> complex:
    """Dense test oracle: explicit T(t) matrix against the explicit
    Kronecker product.  Memory is O(budget**2); keep budget small."""
    shape = _common_shape(t, ops)
    sigma = perm_operator_index(t, shape, budget)
    nstates = sigma.size
    tmat = np.zeros((nstates, nstates))
    tmat[sigma, np.arange(nstates)] = 1.0
    kron = ops[0].entries
    for op in ops[1:]:
        kron = np.kron(kron, op.entries)
    return complex(np.einsum("xy,yx->", tmat, kron))


def apply_perm_tuple(t: PermTuple, vec: np.ndarray, shape: SystemShape,
                     budget: int | None = None) -> np.ndarray:
    """Apply T(t) to a vector of the composite space."""
    sigma = perm_operator_index(t, shape, budget)
    if vec.shape != (sigma.size,):
        raise ShapeError(f"vector has shape {vec.shape}, expected ({sigma.size},)")
    out = np.empty_like(vec)
    out[sigma] = vec
    return out


def subset_tuple(subset, n: int) -> PermTuple:
    """The k=2 tuple with a transposition at each letter of the subset."""
    from .permtuple import Perm

    swap = Perm((2, 1))
    ident = Perm.identity(2)
    return PermTuple(tuple(swap if i in set(subset) else ident for i in range(1, n + 1)))


def quadratic_enumerator(subset, m: Operator, n_op: Operator) -> complex:
    """Tr(Tr_{S^c}(M) Tr_{S^c}(N)) for a letter subset S, via partial traces."""
    if m.shape != n_op.shape:
        raise ShapeError(f"operator shapes differ: {m.shape} vs {n_op.shape}")
    traced = [i for i in range(1, m.shape.n + 1) if i not in set(subset)]
    a = partial_trace(m, traced)
    b = partial_trace(n_op, traced)
    return complex(np.trace(a.entries @ b.entries))


def symmetrize(t: PermTuple, p: Operator, budget: int | None = None) -> complex:
    """Mean of invariant_code over all n! reorderings of the letters."""
    n = t.n
    cache: dict[PermTuple, complex] = {}
    total = 0.0 + 0.0j
    count = 0
    for order in itertools.permutations(range(1, n + 1)):
        u = canonicalize(t.reorder_letters(order))
        if u not in cache:
            cache[u] = invariant_code(u, p, budget)
        total += cache[u]
        count += 1
    return total / count
